#pragma once

#include <map>
#include <string>
#include <vector>

#include "emtk/field.hpp"

namespace emtk {

// Ground-truth values a generator promises about its output.  Downstream
// tests read targets from here rather than hard-coding them.
struct GroundTruth {
    std::map<std::string, double> values;
    std::string note;
    std::string json() const;
};

// Power-law concentrating family u(x,t) = c0 lambda(t)^{alpha-1} U(lambda(t)(x - x*)),
// lambda(t) = (-t)^{-1/alpha}, alpha = q' = q/(q-1).  Divergence-free by
// construction (U is a curl), with ||u(t)||_inf = c0 |t|^{-1/q} exactly:
// |U| attains its maximum 1 at the origin and x* sits on a lattice point.
// Not a solution of Euler/NSE; it realizes the hypotheses and conclusions
// of the power-law energy bounds so the diagnostics can be exercised.
struct SelfSimilarSpec {
    double q = 2.0;           // power-law exponent, > 1
    double c0 = 1.0;          // amplitude
    Point concentration = {0, 0, 0};  // x*, snapped to the grid lattice
    double profile_sigma = 0.25;      // Gaussian core width of U, in profile units
    double profile_support = 1.0;     // U vanishes outside this radius
};

struct SelfSimilarField {
    SampledField field;
    GroundTruth truth;
    double alpha;             // q'
    double profile_l2sq;      // || U ||_2^2 (rectangle rule at fine resolution)
};

// Samples the family on an N^n grid (n = 2 or 3) at the given times (all in
// [-1, 0)).  Errors if the scaled support would not fit at the earliest time.
SelfSimilarField gen_selfsimilar(const SelfSimilarSpec& spec, int n, int N, double box_length,
                                 const std::vector<double>& times);

// Evaluate the family analytically at one point (for rescaling oracles).
Point selfsimilar_velocity(const SelfSimilarSpec& spec, double alpha, int n, const Point& x,
                           double t, double box_length);

struct CantorOptions {
    int depth = 10;           // <= 14
    double offset = 0.0;      // left end of the construction interval
    double length = 1.0;      // construction interval length
    int lebesgue_axes = 0;    // product with uniform samples along extra axes
    int samples_per_axis = 1024;  // discretization of each Lebesgue factor
};

struct CantorMeasure {
    SampledMeasure measure;
    GroundTruth truth;
};

// Middle-thirds Cantor measure: atoms of weight 2^-depth at the 2^depth
// interval centers, optionally producted with uniform atoms along extra axes.
CantorMeasure gen_cantor_measure(const CantorOptions& opt, int n, int grid_N, double box_length);

SampledMeasure gen_atom_measure(const std::vector<Point>& positions,
                                const std::vector<double>& weights, int n, int grid_N,
                                double box_length);

// Random band-limited divergence-free field (Leray-projected spectral draw),
// deterministic for a fixed seed.
SampledField gen_smooth_field(unsigned seed, int n, int N, double box_length, int kmax,
                              const std::vector<double>& times, double amplitude = 1.0);

// Steady Taylor-Green sample u = (sin x cos y, -cos x sin y) with its exact
// pressure (cos 2x + cos 2y)/4 on [0,2pi)^2.
SampledField taylor_green_field(int N, const std::vector<double>& times);

}  // namespace emtk
