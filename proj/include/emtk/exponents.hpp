#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "emtk/rational.hpp"

namespace emtk {

// Integrability pair (p,q) with spatial dimension n.  Internally held as the
// reciprocals (x,y) = (1/p, 1/q) in [0,1]^2 so that p or q = infinity is the
// exact point x = 0 or y = 0 and all region boundaries are lines or conics
// with rational coefficients.
struct PQPoint {
    Rational x;  // 1/p
    Rational y;  // 1/q
    int n = 3;

    static PQPoint from_pq(const Rational& p, const Rational& q, int n);
    static PQPoint from_reciprocals(const Rational& x, const Rational& y, int n);
    // "inf" maps to reciprocal zero; plain numbers and "a/b" parse exactly.
    static PQPoint parse(const std::string& p, const std::string& q, int n);

    bool p_infinite() const { return x.is_zero(); }
    bool q_infinite() const { return y.is_zero(); }
    double p() const { return x.is_zero() ? std::numeric_limits<double>::infinity() : 1.0 / x.to_double(); }
    double q() const { return y.is_zero() ? std::numeric_limits<double>::infinity() : 1.0 / y.to_double(); }

    // 2n/p + (2+n)/q <= n, equivalently beta >= 0.
    bool admissible() const {
        return Rational(2 * n) * x + Rational(2 + n) * y <= Rational(n);
    }
};

struct ScalingExponents {
    double alpha;       // time-scaling exponent, (q/(q-1))(1 + n/p)
    double beta;        // energy-decay exponent, (q/(q-1))(n - 2n/p - (2+n)/q)
    double q_conj;      // Hoelder conjugate of q
    bool admissible;    // beta >= 0
    Rational alpha_exact;
    Rational beta_exact;
    Rational q_conj_exact;
};

enum class RegionTag { I, II, III, IV, V, OUTSIDE };

std::string region_name(RegionTag tag);

struct Region {
    RegionTag tag = RegionTag::OUTSIDE;
    bool strict_threshold = false;          // "<" vs "<=" in the d-condition
    // For OUTSIDE points: the predicate that fired literally (q = infinity
    // carve-out) or the nearest region in reciprocal coordinates.
    std::optional<RegionTag> nearest;
};

struct ThresholdResult {
    double value = 0.0;                     // in [0, n]
    bool strict = false;
    std::string formula_branch;
    bool applicable = true;                 // false when no branch covers pq
    std::optional<Rational> value_exact;
};

// alpha, beta, q' of Prop. p:A; requires q > 1 and finite n >= 2.
ScalingExponents scaling_exponents(const PQPoint& pq);

// Threshold dimension of the Euler theorem (three-branch piecewise formula).
ThresholdResult euler_threshold(const PQPoint& pq);

// (1 - 2/p) / (1 - 2/p - 1/q); the time scaling that balances the covering
// estimates.  Requires 1 - 2/p - 1/q > 0.
Rational optimal_alpha(const PQPoint& pq);

// Membership in the five NSE regions (n = 3 only).  Boundary conventions
// follow the printed strictness of each set definition; q = infinity points
// are reported OUTSIDE (the L^infty-in-time corollary governs them) with the
// literally-firing predicate recorded in `nearest`.
Region classify_region(const PQPoint& pq);

// Raw evaluation of the five printed membership predicates, no carve-outs.
// Exposed for the pairwise-disjointness property sweeps.
std::optional<RegionTag> region_predicate(const PQPoint& pq);

// Threshold dimension f(p,q) of the NSE theorem with its strictness flag;
// q = infinity with p > 2 falls back to value n, strict.
ThresholdResult nse_threshold(const PQPoint& pq);

// LHS - RHS of the algebraic identity expressing the Region III formula as a
// deviation from the Region I/II formula.  Exact zero for rational input.
Rational region3_identity_residual_exact(const PQPoint& pq);
double region3_identity_residual(const PQPoint& pq);

// Diagonal interpolation r = 2 + q - 2q/p used to reduce q < p to L^r L^r.
PQPoint interp_to_diagonal(const PQPoint& pq);

struct Below3Exponents {
    Rational a;        // u in L^a L^3 by enstrophy interpolation
    Rational alpha_t;  // time-scaling exponent of the interpolated pair
    Rational beta_t;   // energy-decay exponent of the interpolated pair
};

// Enstrophy interpolation for 2 < p < 3 with 9/p + 5/q <= 4.
Below3Exponents interp_below3(const PQPoint& pq);

// g(p,q) of the Region V bootstrap (Step 3): the dimension bound whose
// excess over 1 lets the CKN singular-set bound close the argument.
Rational region5_g(const PQPoint& pq);

}  // namespace emtk
