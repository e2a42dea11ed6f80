#pragma once

#include <string>
#include <vector>

#include "emtk/field.hpp"

namespace emtk {

// Trailing-snapshot approximation of the energy measure: the measures
// |u(t_k)|^2 dx for the last K samples, with the final snapshot taken as
// the limit and Cauchy gaps against a fixed panel of bump functions as the
// convergence evidence.  No extrapolation.
struct EnergyMeasureApprox {
    std::vector<double> snapshot_times;
    std::vector<SampledMeasure> snapshots;     // grid densities, no atoms
    SampledMeasure limit;                      // the final snapshot
    std::vector<std::vector<double>> cauchy_gaps;  // [bump][k]: |<snap_k - limit, sigma_b>|
    std::vector<BumpSpec> bump_panel;
};

EnergyMeasureApprox build_energy_measure(const SampledField& field, int trailing_count);

struct DefectReport {
    SampledMeasure theta;            // limit - reference, clipped at zero
    double negative_part_mass;       // mass clipped away (reported, never hidden)
    double oscillation_indicator;    // mass of the absolutely continuous part of theta
    double concentration_indicator;  // mass of the atomic part of theta
    double total_variation;          // integral |limit - reference| + atomic mass
};

// theta = E.limit - reference_density dx; the atoms of the limit (injected
// synthetic ground truth only) pass through to the concentration indicator.
DefectReport defect_decomposition(const EnergyMeasureApprox& E,
                                  const std::vector<double>& reference_density);

struct DimensionReport {
    std::vector<double> radii;
    std::vector<double> masses;
    std::vector<double> slopes;      // log m ratio / log r ratio between levels
    double estimate;                 // min over the tail (finest half) of slopes
    bool no_local_mass = false;      // +inf sentinel: some ladder mass was zero
    double resolution_floor = 0.0;   // finest radius probed
    std::string csv(const Point& x) const;  // x...,level,r,mass,slope
};

// Finite-scale surrogate of the lower local dimension along a decreasing
// radius ladder (>= 6 levels).
DimensionReport lower_local_dimension(const SampledMeasure& m, const Point& x,
                                      const std::vector<double>& ladder);

struct DensityReport {
    double value;                    // max over the ladder tail of (2r)^-s m(B_r)
    std::vector<double> sequence;    // per-level (2r)^-s m(B_r)
    double tail_max, tail_min;
};

DensityReport upper_s_density(const SampledMeasure& m, const Point& x, double s,
                              const std::vector<double>& ladder);

struct ConcentrationDimResult {
    double s_lower_bound;            // largest certified s in the grid
    std::vector<double> s_grid;
    std::vector<bool> certified;
    std::vector<std::vector<double>> density_sup;  // [s][level]
    double resolution_floor;
};

// Covering-argument lower bound made empirical: the largest s whose
// empirical density sup_x m(B_r(x))/r^s shows no growth across the two
// finest ladder levels.  Centers: a deterministic lattice plus a
// deterministic subsample of the atoms.
ConcentrationDimResult concentration_dim_lower_bound(const SampledMeasure& m,
                                                     const std::vector<double>& s_grid,
                                                     const std::vector<double>& ladder,
                                                     int lattice_per_axis = 8);

}  // namespace emtk
