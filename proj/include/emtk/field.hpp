#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emtk/grid.hpp"

namespace emtk {

// Radial cutoff profile: identically 1 up to inner_ratio, identically 0 from
// outer_ratio on, polynomial smoothstep of order `smoothness` in between.
// The transition derivative has the closed form c_k z^k (1-z)^k with
// c_k = (2k+1) C(2k,k), so the Lipschitz constant is c_k 4^{-k}/(b-a).
struct CutoffProfile {
    double inner_ratio = 1.0;
    double outer_ratio = 2.0;
    int smoothness = 3;

    static CutoffProfile standard_bump() { return {1.0, 2.0, 3}; }       // phi_r of the A/G/P cylinder
    static CutoffProfile half_support() { return {0.5, 1.0, 3}; }        // psi of the E(t,r) window
    static CutoffProfile asymmetric_cover() { return {1.1, 1.9, 3}; }    // the 1.1/1.9 cover cutoff

    double value(double s) const;
    double derivative(double s) const;
    double second_derivative(double s) const;
    double lipschitz_constant() const;
};

// Space-time test bump: profile in |x - center|/radius.
struct BumpSpec {
    Point center = {0, 0, 0};
    double radius = 0.0;
    CutoffProfile profile = CutoffProfile::standard_bump();
};

// Divergence-free velocity (and optional pressure) samples on a periodic
// grid at strictly increasing times in [-1, 0].
struct SampledField {
    PeriodicGrid grid;
    std::vector<double> times;
    // velocity[t][c] and pressure[t] are flat row-major grid arrays.
    std::vector<std::vector<std::vector<double>>> velocity;
    std::vector<std::vector<double>> pressure;

    int dim() const { return grid.n; }
    bool has_pressure() const { return !pressure.empty(); }
    std::size_t time_count() const { return times.size(); }
    int time_index_nearest(double t) const;
    void validate_structure() const;  // counts, shapes, time monotonicity and range
};

// Nonnegative measure: absolutely continuous grid density plus point atoms.
struct SampledMeasure {
    PeriodicGrid grid;
    std::vector<double> density;  // density values (mass per unit volume), may be empty
    struct Atom {
        Point position;
        double weight;
    };
    std::vector<Atom> atoms;

    double total_mass() const;
    void validate() const;  // density >= 0, weights > 0, atoms inside the box
};

// Density integral over the closed ball plus the weights of atoms inside it.
double measure_ball(const SampledMeasure& m, const Point& center, double r);

// Restriction of a field to a ball and a time range: samples outside the
// ball are zeroed, times outside [t_lo, t_hi] dropped.
SampledField window(const SampledField& field, const Point& center, double radius,
                    double t_lo, double t_hi);

}  // namespace emtk
