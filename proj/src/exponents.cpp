#include "emtk/exponents.hpp"

#include <cmath>
#include <limits>

namespace emtk {

namespace {

const Rational kHalf(1, 2);
const Rational kThird(1, 3);

Rational two_minus_3x(const Rational& x) { return Rational(2) - Rational(3) * x; }

// (1/2 - x)(2 - 3x): the parabola bounding Region III from below and
// Region V from above in the range 2 < p < 3.
Rational parabola(const Rational& x) { return (kHalf - x) * two_minus_3x(x); }

}  // namespace

PQPoint PQPoint::from_pq(const Rational& p, const Rational& q, int n) {
    if (p < Rational(1) || q < Rational(1)) throw std::invalid_argument("PQPoint: p, q must be >= 1");
    return from_reciprocals(Rational(1) / p, Rational(1) / q, n);
}

PQPoint PQPoint::from_reciprocals(const Rational& x, const Rational& y, int n) {
    if (n < 2) throw std::invalid_argument("PQPoint: spatial dimension must be >= 2");
    if (x.is_negative() || y.is_negative() || x > Rational(1) || y > Rational(1))
        throw std::invalid_argument("PQPoint: reciprocals must lie in [0,1]");
    return PQPoint{x, y, n};
}

PQPoint PQPoint::parse(const std::string& p, const std::string& q, int n) {
    auto parse_one = [](const std::string& s) -> Rational {
        if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") return Rational(0);
        return Rational(1) / Rational::from_decimal_string(s);
    };
    return from_reciprocals(parse_one(p), parse_one(q), n);
}

ScalingExponents scaling_exponents(const PQPoint& pq) {
    if (pq.y >= Rational(1))
        throw std::domain_error("scaling_exponents: requires q > 1 (alpha undefined at q = 1)");
    const Rational one_minus_y = Rational(1) - pq.y;
    const Rational qc = Rational(1) / one_minus_y;
    const Rational alpha = (Rational(1) + Rational(pq.n) * pq.x) / one_minus_y;
    const Rational beta =
        (Rational(pq.n) - Rational(2 * pq.n) * pq.x - Rational(2 + pq.n) * pq.y) / one_minus_y;
    return ScalingExponents{alpha.to_double(), beta.to_double(), qc.to_double(),
                            !beta.is_negative(), alpha, beta, qc};
}

ThresholdResult euler_threshold(const PQPoint& pq) {
    ThresholdResult res;
    if (!pq.admissible()) {
        res.applicable = false;
        res.formula_branch = "inadmissible";
        res.value = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    const Rational n(pq.n);
    if (pq.q_infinite()) {
        if (pq.x < kHalf) {
            res.value = pq.n;
            res.value_exact = n;
            res.strict = true;
            res.formula_branch = "q=inf";
        } else {
            // p <= 2 falls outside every printed branch.
            res.applicable = false;
            res.formula_branch = "none";
            res.value = std::numeric_limits<double>::quiet_NaN();
        }
        return res;
    }
    const Rational denom = Rational(1) - Rational(2) * pq.x - pq.y;
    if (!(denom > Rational(0))) {
        res.applicable = false;
        res.formula_branch = "degenerate-denominator";
        res.value = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    const Rational value = n - Rational(2) * pq.y / denom;
    if (pq.y >= pq.x) {
        res.strict = false;
        res.formula_branch = "q<=p";
    } else if (pq.x <= kThird) {
        res.strict = true;
        res.formula_branch = "3<=p<q";
    } else {
        // p < 3 with p < q is not covered by the Euler theorem.
        res.applicable = false;
        res.formula_branch = "none";
        res.value = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    res.value = value.to_double();
    res.value_exact = value;
    return res;
}

Rational optimal_alpha(const PQPoint& pq) {
    const Rational denom = Rational(1) - Rational(2) * pq.x - pq.y;
    if (!(denom > Rational(0)))
        throw std::domain_error("optimal_alpha: requires 1 - 2/p - 1/q > 0");
    return (Rational(1) - Rational(2) * pq.x) / denom;
}

std::string region_name(RegionTag tag) {
    switch (tag) {
        case RegionTag::I: return "I";
        case RegionTag::II: return "II";
        case RegionTag::III: return "III";
        case RegionTag::IV: return "IV";
        case RegionTag::V: return "V";
        default: return "OUTSIDE";
    }
}

std::optional<RegionTag> region_predicate(const PQPoint& pq) {
    const Rational& x = pq.x;
    const Rational& y = pq.y;
    const Rational three(3);
    const Rational epq = Rational(6) * x + Rational(5) * y;  // e:pq at n = 3

    const bool in_IV = (x + y <= kHalf) && (Rational(3) * x + y <= Rational(1));

    if (x <= y && x + y > kHalf && epq <= three) return RegionTag::I;
    if (x <= kThird && x > y && x + y >= kHalf && epq <= three) return RegionTag::II;
    if (kThird < x && x < kHalf) {
        const Rational lower = parabola(x);
        const Rational upper = lower / (Rational(7, 6) - x);
        if (lower <= y && y <= upper) return RegionTag::III;
    }
    if (in_IV) return RegionTag::IV;
    if (x + y < kHalf && y < parabola(x) && !in_IV) return RegionTag::V;
    return std::nullopt;
}

namespace {

// Nearest region for an OUTSIDE report, by scanning a fixed reciprocal grid.
std::optional<RegionTag> nearest_region(const PQPoint& pq) {
    const int grid = 160;
    double best = std::numeric_limits<double>::infinity();
    std::optional<RegionTag> best_tag;
    const double px = pq.x.to_double();
    const double py = pq.y.to_double();
    for (int i = 0; i <= grid; ++i) {
        for (int j = 0; j <= grid; ++j) {
            Rational gx(i, 2 * grid);  // x in [0, 1/2]
            Rational gy(j, grid);      // y in [0, 1]
            auto tag = region_predicate(PQPoint{gx, gy, pq.n});
            if (!tag) continue;
            double dx = gx.to_double() - px;
            double dy = gy.to_double() - py;
            double d2 = dx * dx + dy * dy;
            if (d2 < best) { best = d2; best_tag = *tag; }
        }
    }
    return best_tag;
}

}  // namespace

Region classify_region(const PQPoint& pq) {
    if (pq.n != 3) throw std::invalid_argument("classify_region: only n = 3 is supported");
    Region region;
    auto fired = region_predicate(pq);
    if (pq.q_infinite()) {
        // The five-set theorem needs q < infinity (its proof shrinks the time
        // interval); L^infty-in-time points are governed by the p > 2
        // corollary instead.  Report OUTSIDE, keep the literal predicate.
        region.tag = RegionTag::OUTSIDE;
        region.nearest = fired ? fired : nearest_region(pq);
        return region;
    }
    if (fired) {
        region.tag = *fired;
        region.strict_threshold = (*fired != RegionTag::I);
    } else {
        region.tag = RegionTag::OUTSIDE;
        region.nearest = nearest_region(pq);
    }
    return region;
}

ThresholdResult nse_threshold(const PQPoint& pq) {
    if (pq.n != 3) throw std::invalid_argument("nse_threshold: only n = 3 is supported");
    ThresholdResult res;
    if (!pq.admissible()) {
        res.applicable = false;
        res.formula_branch = "inadmissible";
        res.value = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    const Rational& x = pq.x;
    const Rational& y = pq.y;
    if (pq.q_infinite()) {
        if (x < kHalf) {
            res.value = 3.0;
            res.value_exact = Rational(3);
            res.strict = true;
            res.formula_branch = "c:Lp";
        } else {
            res.applicable = false;
            res.formula_branch = "none";
            res.value = std::numeric_limits<double>::quiet_NaN();
        }
        return res;
    }
    Region region = classify_region(pq);
    Rational value(3);
    switch (region.tag) {
        case RegionTag::I:
        case RegionTag::II:
            value = Rational(3) - Rational(2) * y / (Rational(1) - Rational(2) * x - y);
            break;
        case RegionTag::III:
            value = Rational(3) - Rational(2) * y * (Rational(6) * x - Rational(1)) /
                                      ((Rational(2) - Rational(3) * x - Rational(3) * y) *
                                       (Rational(1) - Rational(2) * x));
            break;
        case RegionTag::IV:
        case RegionTag::V:
            value = Rational(3);
            break;
        case RegionTag::OUTSIDE:
            res.applicable = false;
            res.formula_branch = "outside-regions";
            res.value = std::numeric_limits<double>::quiet_NaN();
            return res;
    }
    res.value = value.to_double();
    res.value_exact = value;
    res.strict = region.strict_threshold;
    res.formula_branch = region_name(region.tag);
    return res;
}

Rational region3_identity_residual_exact(const PQPoint& pq) {
    const Rational& x = pq.x;
    const Rational& y = pq.y;
    const Rational one(1), two(2), three(3);
    const Rational d1 = (two - three * x - three * y) * (one - two * x);
    const Rational d2 = one - two * x - y;
    const Rational d3 = (one - two * x) * d2 * (two - three * x - three * y);
    if (d1.is_zero() || d2.is_zero() || d3.is_zero())
        throw std::domain_error("region3_identity_residual: zero denominator");
    const Rational lhs = three - two * y * (Rational(6) * x - one) / d1;
    const Rational deviation =
        two * y * (three * x - one) * (three - Rational(6) * x - Rational(4) * y) / d3;
    const Rational rhs = three - two * y / d2 - deviation;
    return lhs - rhs;
}

double region3_identity_residual(const PQPoint& pq) {
    // Floating mirror of the exact route, for irrational sweeps.
    const double x = pq.x.to_double();
    const double y = pq.y.to_double();
    const double d1 = (2 - 3 * x - 3 * y) * (1 - 2 * x);
    const double d2 = 1 - 2 * x - y;
    const double d3 = (1 - 2 * x) * d2 * (2 - 3 * x - 3 * y);
    if (d1 == 0.0 || d2 == 0.0 || d3 == 0.0)
        throw std::domain_error("region3_identity_residual: zero denominator");
    const double lhs = 3 - 2 * y * (6 * x - 1) / d1;
    const double rhs = 3 - 2 * y / d2 - 2 * y * (3 * x - 1) * (3 - 6 * x - 4 * y) / d3;
    return lhs - rhs;
}

PQPoint interp_to_diagonal(const PQPoint& pq) {
    if (!(pq.y > pq.x)) throw std::domain_error("interp_to_diagonal: requires q < p");
    // r = 2 + q - 2q/p, taken in reciprocals: 1/r = y / (2y + 1 - 2x).
    const Rational inv_r = pq.y / (Rational(2) * pq.y + Rational(1) - Rational(2) * pq.x);
    return PQPoint::from_reciprocals(inv_r, inv_r, pq.n);
}

Below3Exponents interp_below3(const PQPoint& pq) {
    const Rational& x = pq.x;
    const Rational& y = pq.y;
    if (!(kThird < x && x < kHalf))
        throw std::domain_error("interp_below3: requires 2 < p < 3");
    if (Rational(9) * x + Rational(5) * y > Rational(4))
        throw std::domain_error("interp_below3: requires 9/p + 5/q <= 4");
    const Rational six_x_m1 = Rational(6) * x - Rational(1);
    Below3Exponents out;
    out.a = six_x_m1 / (Rational(3) * x + y - Rational(1));
    out.alpha_t = Rational(2) * six_x_m1 / (Rational(3) * x - y);
    out.beta_t = (Rational(4) - Rational(9) * x - Rational(5) * y) / (Rational(3) * x - y);
    return out;
}

Rational region5_g(const PQPoint& pq) {
    auto fired = region_predicate(pq);
    if (!fired || *fired != RegionTag::V)
        throw std::domain_error("region5_g: point is not in Region V");
    const Rational& x = pq.x;
    const Rational& y = pq.y;
    const Rational one_m2x = Rational(1) - Rational(2) * x;
    if (Rational(2) * x + y > Rational(5, 6)) {
        // V_c: enstrophy route, same formula as the Region III threshold.
        return Rational(3) - Rational(2) * y * (Rational(6) * x - Rational(1)) /
                                 (one_m2x * (Rational(2) - Rational(3) * x - Rational(3) * y));
    }
    // V_a and V_b: alpha = 2 makes the C_N and F_N restrictions coincide.
    return Rational(3) - Rational(4) * y / one_m2x;
}

}  // namespace emtk
