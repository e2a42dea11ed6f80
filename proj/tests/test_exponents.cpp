#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "emtk/exponents.hpp"

using namespace emtk;

namespace {

PQPoint pq(const std::string& p, const std::string& q, int n = 3) {
    return PQPoint::parse(p, q, n);
}

// Deterministic rational sample of the admissible set (beta >= 0), optionally
// forcing beta > 0 strictly.  Includes the p = infinity edge.
std::vector<PQPoint> sample_admissible(int count, int n, bool strict_beta, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> num(0, 192);
    std::vector<PQPoint> out;
    while ((int)out.size() < count) {
        Rational x(num(rng), 384);  // x in [0, 1/2]
        Rational y(num(rng), 192);  // y in [0, 1]
        if (y >= Rational(1)) continue;
        PQPoint cand{x, y, n};
        if (!cand.admissible()) continue;
        if (strict_beta) {
            auto se = scaling_exponents(cand);
            if (se.beta_exact.is_zero()) continue;
        }
        out.push_back(cand);
    }
    return out;
}

}  // namespace

TEST_CASE("scaling exponents: pinned values") {
    auto se = scaling_exponents(pq("inf", "2"));
    CHECK(se.alpha == 2.0);
    CHECK(se.beta == 1.0);
    CHECK(se.q_conj == 2.0);
    CHECK(se.admissible);
    CHECK(se.alpha_exact == Rational(2));
    CHECK(se.beta_exact == Rational(1));

    auto se2 = scaling_exponents(pq("6", "4"));
    CHECK(se2.alpha_exact == Rational(2));
    CHECK(se2.beta_exact == Rational(1));

    // Morrey exponent n - 2/(q-1) coincides with beta at p = infinity.
    for (long long qn = 2; qn <= 12; ++qn) {
        PQPoint point = PQPoint::from_pq(Rational(1000000), Rational(qn), 3);
        PQPoint point_inf = PQPoint::from_reciprocals(Rational(0), point.y, 3);
        auto b = scaling_exponents(point_inf).beta_exact;
        Rational morrey = Rational(3) - Rational(2) / (Rational(qn) - Rational(1));
        CHECK(b == morrey);
    }
}

TEST_CASE("scaling exponents: boundary of e:pq gives beta = 0 exactly") {
    // 2n x + (2+n) y = n.
    for (int n = 2; n <= 4; ++n) {
        for (long long i = 0; i <= 10; ++i) {
            Rational y(i, 20);
            Rational x = (Rational(n) - Rational(2 + n) * y) / Rational(2 * n);
            if (x.is_negative() || y >= Rational(1)) continue;
            auto se = scaling_exponents(PQPoint::from_reciprocals(x, y, n));
            CHECK(se.beta_exact.is_zero());
            CHECK(se.admissible);
        }
    }
}

TEST_CASE("scaling exponents: q = 1 is a domain error") {
    CHECK_THROWS_AS(scaling_exponents(pq("4", "1")), std::domain_error);
}

TEST_CASE("euler threshold: pinned values") {
    auto r = euler_threshold(pq("inf", "inf"));
    CHECK(r.applicable);
    CHECK(r.value == 3.0);
    CHECK(r.strict);

    auto r2 = euler_threshold(pq("6", "6"));
    CHECK(r2.applicable);
    CHECK(*r2.value_exact == Rational(7, 3));
    CHECK_FALSE(r2.strict);

    // p = 2, q = infinity sits outside every printed branch.
    auto r3 = euler_threshold(pq("2", "inf"));
    CHECK_FALSE(r3.applicable);
}

TEST_CASE("euler threshold: >= beta with equality exactly at p = infinity") {
    auto samples = sample_admissible(1500, 3, /*strict_beta=*/true, 17);
    int equalities = 0;
    for (const auto& point : samples) {
        if (point.q_infinite()) continue;
        auto thr = euler_threshold(point);
        if (!thr.applicable) continue;
        auto se = scaling_exponents(point);
        CHECK(*thr.value_exact >= se.beta_exact);
        bool equal = (*thr.value_exact == se.beta_exact);
        CHECK(equal == point.p_infinite());
        if (equal) ++equalities;
    }
    CHECK(equalities > 0);  // the infinity edge must actually be exercised
}

TEST_CASE("optimal alpha: pinned values and threshold property") {
    CHECK(optimal_alpha(pq("inf", "2")) == Rational(2));
    CHECK(optimal_alpha(pq("4", "4")) == Rational(2));
    CHECK(optimal_alpha(pq("3", "inf")) == Rational(1));
    CHECK_THROWS_AS(optimal_alpha(pq("2", "4")), std::domain_error);

    auto samples = sample_admissible(800, 3, false, 23);
    for (const auto& point : samples) {
        Rational denom = Rational(1) - Rational(2) * point.x - point.y;
        if (!(denom > Rational(0))) continue;
        bool ge2 = optimal_alpha(point) >= Rational(2);
        bool half = point.x + point.y >= Rational(1, 2);
        CHECK(ge2 == half);
    }
}

TEST_CASE("regions: caption facts") {
    auto r44 = classify_region(pq("4", "4"));
    CHECK(r44.tag == RegionTag::IV);

    auto r36 = classify_region(pq("3", "6"));
    CHECK(r36.tag == RegionTag::II);

    // Interior of the segment joining L^4 L^4 with L^6 L^3 lies in II
    // (time exponent first: L^6 L^3 is q = 6, p = 3).
    for (long long k = 1; k <= 12; ++k) {
        Rational t(k, 12);
        Rational x = Rational(1, 4) + t * Rational(1, 12);
        Rational y = Rational(1, 4) - t * Rational(1, 12);
        auto reg = classify_region(PQPoint::from_reciprocals(x, y, 3));
        CHECK(reg.tag == RegionTag::II);
    }

    // Segment joining L^2 L^infinity with L^4 L^4 lies in IV (f = 3 there).
    for (long long k = 0; k <= 11; ++k) {
        Rational t(k, 12);
        Rational x = t * Rational(1, 4);
        Rational y = Rational(1, 2) - t * Rational(1, 4);
        auto reg = classify_region(PQPoint::from_reciprocals(x, y, 3));
        CHECK(reg.tag == RegionTag::IV);
        auto thr = nse_threshold(PQPoint::from_reciprocals(x, y, 3));
        CHECK(thr.value == 3.0);
    }

    auto rinf = classify_region(pq("inf", "inf"));
    CHECK(rinf.tag == RegionTag::OUTSIDE);
    REQUIRE(rinf.nearest.has_value());
    CHECK(*rinf.nearest == RegionTag::IV);  // the literally-firing predicate

    CHECK_THROWS_AS(classify_region(PQPoint::from_pq(Rational(4), Rational(4), 2)),
                    std::invalid_argument);
}

TEST_CASE("regions: (inf,2) boundary case fires the IV predicate literally") {
    auto point = pq("inf", "2");
    auto fired = region_predicate(point);
    REQUIRE(fired.has_value());
    CHECK(*fired == RegionTag::IV);
    auto thr = nse_threshold(point);
    CHECK(thr.applicable);
    CHECK(thr.value == 3.0);
    CHECK(thr.strict);
}

TEST_CASE("regions: pairwise disjoint over a dense rational sweep") {
    // Predicates are mutually exclusive by construction of region_predicate;
    // here we evaluate all five independently and count the firings.
    auto in_I = [](const PQPoint& s) {
        return s.x <= s.y && s.x + s.y > Rational(1, 2) &&
               Rational(6) * s.x + Rational(5) * s.y <= Rational(3);
    };
    auto in_II = [](const PQPoint& s) {
        return s.x <= Rational(1, 3) && s.x > s.y && s.x + s.y >= Rational(1, 2) &&
               Rational(6) * s.x + Rational(5) * s.y <= Rational(3);
    };
    auto in_III = [](const PQPoint& s) {
        if (!(Rational(1, 3) < s.x && s.x < Rational(1, 2))) return false;
        Rational lower = (Rational(1, 2) - s.x) * (Rational(2) - Rational(3) * s.x);
        Rational upper = lower / (Rational(7, 6) - s.x);
        return lower <= s.y && s.y <= upper;
    };
    auto in_IV = [](const PQPoint& s) {
        return s.x + s.y <= Rational(1, 2) && Rational(3) * s.x + s.y <= Rational(1);
    };
    auto in_V = [&](const PQPoint& s) {
        return s.x + s.y < Rational(1, 2) &&
               s.y < (Rational(1, 2) - s.x) * (Rational(2) - Rational(3) * s.x) && !in_IV(s);
    };
    const int grid = 1000;  // 10^6 reciprocal points
    for (int i = 0; i <= grid / 2; ++i) {
        for (int j = 0; j <= grid; ++j) {
            PQPoint s{Rational(i, grid), Rational(j, grid), 3};
            int fired = in_I(s) + in_II(s) + in_III(s) + in_IV(s) + in_V(s);
            REQUIRE(fired <= 1);
        }
    }
}

TEST_CASE("nse threshold: pinned values") {
    auto r44 = nse_threshold(pq("4", "4"));
    CHECK(r44.value == 3.0);
    CHECK(r44.strict);

    auto r36 = nse_threshold(pq("3", "6"));
    CHECK(*r36.value_exact == Rational(1));
    CHECK(r36.strict);

    auto rinf = nse_threshold(pq("inf", "inf"));
    CHECK(rinf.applicable);
    CHECK(rinf.value == 3.0);
    CHECK(rinf.strict);
    CHECK(rinf.formula_branch == "c:Lp");

    auto bad = nse_threshold(pq("2", "2"));
    CHECK_FALSE(bad.applicable);
}

TEST_CASE("nse threshold: values never exceed 3") {
    auto samples = sample_admissible(2000, 3, false, 99);
    for (const auto& point : samples) {
        if (point.y >= Rational(1)) continue;
        auto thr = nse_threshold(point);
        if (!thr.applicable) continue;
        CHECK(thr.value <= 3.0 + 1e-15);
    }
}

TEST_CASE("region III identity: exact residual") {
    CHECK(region3_identity_residual_exact(pq("5/2", "20")).is_zero());
    CHECK(std::abs(region3_identity_residual(pq("5/2", "20"))) < 1e-12);

    // Third term vanishes at p = 3; q >= 5 keeps (3,q) admissible and away
    // from the 2 - 3/p - 3/q = 0 degeneracy.
    for (long long k = 5; k <= 15; ++k)
        CHECK(region3_identity_residual_exact(pq("3", std::to_string(k))).is_zero());

    // Random Region III points.
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long long> xi(0, 2000);
    int found = 0;
    while (found < 1000) {
        Rational x = Rational(1, 3) + Rational(xi(rng), 12000);  // (1/3, 1/2)
        Rational y(xi(rng), 4000);
        PQPoint point{x, y, 3};
        auto fired = region_predicate(point);
        if (!fired || *fired != RegionTag::III) continue;
        ++found;
        CHECK(region3_identity_residual_exact(point).is_zero());
        CHECK(std::abs(region3_identity_residual(point)) < 1e-12);
    }
}

TEST_CASE("diagonal interpolation") {
    auto d = interp_to_diagonal(pq("inf", "4"));
    CHECK(d.x == Rational(1, 6));
    CHECK(d.y == Rational(1, 6));
    auto t1 = euler_threshold(pq("inf", "4"));
    auto t2 = euler_threshold(d);
    CHECK(*t1.value_exact == *t2.value_exact);

    auto d2 = interp_to_diagonal(pq("6", "3"));
    CHECK(d2.x == Rational(1, 4));

    CHECK_THROWS_AS(interp_to_diagonal(pq("4", "4")), std::domain_error);
    CHECK_THROWS_AS(interp_to_diagonal(pq("3", "6")), std::domain_error);

    // Fixed point in the limit q -> p.
    auto dl = interp_to_diagonal(pq("5", "4999/1000"));
    CHECK(std::abs(1.0 / dl.x.to_double() - 5.0) < 1e-2);

    // (1/r, 1/r) lies on the segment joining (1/p, 1/q) and (1/2, 0), and
    // r >= 3 under the theorem hypotheses.
    auto samples = sample_admissible(600, 3, true, 31);
    for (const auto& point : samples) {
        if (!(point.y > point.x)) continue;
        auto diag = interp_to_diagonal(point);
        // Collinearity: y (x0 - 1/2) = y0 (x - 1/2) at (x, y) = (1/r, 1/r).
        Rational lhs = diag.y * (point.x - Rational(1, 2));
        Rational rhs = point.y * (diag.x - Rational(1, 2));
        CHECK(lhs == rhs);
        CHECK(diag.x <= Rational(1, 3));
        auto ta = euler_threshold(point);
        auto tb = euler_threshold(diag);
        if (ta.applicable && tb.applicable) CHECK(*ta.value_exact == *tb.value_exact);
    }
}

TEST_CASE("interpolation below p = 3") {
    // (5/2, 20): 9/p + 5/q = 3.85 <= 4.
    auto r = interp_below3(pq("5/2", "20"));
    CHECK(r.a == Rational(28, 5));
    CHECK(r.alpha_t == Rational(2) * Rational(7, 5) / Rational(23, 20));
    CHECK(r.beta_t == Rational(3, 20) / Rational(23, 20));

    CHECK_THROWS_AS(interp_below3(pq("9/4", "5")), std::domain_error);
    // 9/p + 5/q = 4.1 for (5/2, 10): the theorem's condition fails there.
    CHECK_THROWS_AS(interp_below3(pq("5/2", "10")), std::domain_error);

    // beta-tilde vanishes on 9/p + 5/q = 4.
    for (long long i = 1; i <= 8; ++i) {
        Rational x = Rational(1, 3) + Rational(i, 100);
        Rational y = (Rational(4) - Rational(9) * x) / Rational(5);
        if (y.is_negative()) continue;
        auto rr = interp_below3(PQPoint{x, y, 3});
        CHECK(rr.beta_t.is_zero());
    }
}

TEST_CASE("time-scaling exponent vs the Prodi-Serrin line (n = 3)") {
    // alpha > 2 iff 3/p + 2/q > 1; alpha = 2 exactly on the line.  The
    // energy-decay exponent instead satisfies beta > 2 iff 2/p + 1/q < 1/3.
    auto samples = sample_admissible(1200, 3, false, 77);
    for (const auto& point : samples) {
        if (point.y >= Rational(1)) continue;
        auto se = scaling_exponents(point);
        bool ps_super = Rational(3) * point.x + Rational(2) * point.y > Rational(1);
        CHECK((se.alpha_exact > Rational(2)) == ps_super);
        bool beta_gt2 = se.beta_exact > Rational(2);
        bool small = Rational(2) * point.x + point.y < Rational(1, 3);
        CHECK(beta_gt2 == small);
    }
    auto on_line = scaling_exponents(pq("6", "4"));  // 3/6 + 2/4 = 1
    CHECK(on_line.alpha_exact == Rational(2));
}

TEST_CASE("region V: g > 1 throughout") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long long> xi(0, 5000);
    int found = 0;
    while (found < 2000) {
        PQPoint point{Rational(xi(rng), 10000), Rational(xi(rng), 10000), 3};
        auto fired = region_predicate(point);
        if (!fired || *fired != RegionTag::V) continue;
        ++found;
        CHECK(region5_g(point) > Rational(1));
    }
    CHECK_THROWS_AS(region5_g(pq("4", "4")), std::domain_error);
}

TEST_CASE("f is continuous inside branches, jumps only across dotted segments") {
    // Lipschitz-style check within each region.
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<long long> xi(0, 20000);
    int checked = 0;
    while (checked < 400) {
        Rational x(xi(rng), 40000);
        Rational y(xi(rng), 40000);
        PQPoint a{x, y, 3};
        PQPoint b{x + Rational(1, 40000), y + Rational(1, 40000), 3};
        auto ra = region_predicate(a);
        auto rb = region_predicate(b);
        if (!ra || !rb || *ra != *rb) continue;
        auto ta = nse_threshold(a);
        auto tb = nse_threshold(b);
        if (!ta.applicable || !tb.applicable) continue;
        // Generous slope bound away from the region edges.
        if (std::abs(ta.value) > 10 || std::abs(tb.value) > 10) continue;
        CHECK(std::abs(ta.value - tb.value) < 0.2);
        ++checked;
    }

    // Jump across the II|V boundary at x + y = 1/2.
    auto f_II = nse_threshold(PQPoint{Rational(3, 10), Rational(2, 10), 3});
    auto f_V = nse_threshold(PQPoint{Rational(3, 10), Rational(199, 1000), 3});
    CHECK(f_II.formula_branch == "II");
    CHECK(f_V.formula_branch == "V");
    CHECK(std::abs(f_II.value - f_V.value) > 1.0);
}
