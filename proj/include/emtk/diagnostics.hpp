#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emtk/exponents.hpp"
#include "emtk/field.hpp"

namespace emtk {

// Energy in a sharp ball at one time sample.
double ball_energy(const SampledField& field, int time_index, const Point& center, double r);

// Scale-invariant quantities over the cylinder Q_r = B_r x (-r^alpha, 0):
//   A = r^-beta sup_t int_{B_r} |u|^2
//   G = r^-(beta+1) int int_{Q_r} |u|^3
//   P = r^-(beta+1) int int_{Q_r} |p - (p)_r| |u|,  (p)_r per-time-slice ball average
// The sup and the time integrals run over the samples inside the open
// window; an empty window is an error naming the window.
double quantity_A(const SampledField& field, const ScalingExponents& se, const Point& center,
                  double r);
double quantity_G(const SampledField& field, const ScalingExponents& se, const Point& center,
                  double r);
double quantity_P(const SampledField& field, const ScalingExponents& se, const Point& center,
                  double r);

struct LadderLevel {
    int level;
    double r;
    double A, G, P;
    double ratio_AG;      // G / A^((p-3)/(p-2)); 0/0 convention flagged below
    double ratio_chain;   // A_{j+1} / (G_j^{2/3} + G_j + P_j)
    bool ratio_AG_zero_convention = false;
    bool ratio_chain_zero_convention = false;
};

struct ScaleLadderReport {
    Point center;
    double base_radius;
    int levels;
    double alpha, beta;
    double exponent_AG;   // (p-3)/(p-2) in reciprocal form (1-3x)/(1-2x)
    std::vector<LadderLevel> rows;
    bool truncated = false;
    std::string truncation_reason;
    double time_sample_spacing = 0.0;  // recorded so refinement studies are explicit
    std::string csv() const;  // level,r,A,G,P,ratio_AG,ratio_chain
};

ScaleLadderReport ladder_report(const SampledField& field, const PQPoint& pq,
                                const Point& center, double base_radius, int levels);

// Windowed energy E(t,r) = int |u|^2 psi(|x - center|/r) at the nearest
// sample to t; profile defaults to the half-support bump (1 on B_{r/2},
// 0 outside B_r).
struct WindowedEnergy {
    double value;
    double sample_time;  // the sample actually used
    double offset;       // |t - sample_time|
};
WindowedEnergy windowed_energy_E(const SampledField& field, double t, const Point& center,
                                 double r,
                                 const CutoffProfile& profile = CutoffProfile::half_support());

// E_k(t,r) = E(t, 2^k r) / 2^{k n}.
WindowedEnergy windowed_energy_Ek(const SampledField& field, double t, const Point& center,
                                  double r, int k,
                                  const CutoffProfile& profile = CutoffProfile::half_support());

struct MorreyReport {
    double lambda;
    double value;
    Point witness_center;
    double witness_r;
    double witness_time;
    double recheck;  // value recomputed at the witness
};

struct MorreySamplePlan {
    int centers_per_axis = 4;   // grid-aligned lattice
    double r_max_fraction = 0.25;  // of the box length
    int radius_levels = 5;         // dyadic
};

MorreyReport morrey_seminorm(const SampledField& field, double lambda,
                             const MorreySamplePlan& plan = {});

// Onsager modulus: |y| -> max over axis directions of
// (1/|y|) int int |u(x+y,t) - u(x,t)|^3 dx dt.  Shifts must be integer
// multiples of the grid spacing (no interpolation).
struct OnsagerPoint {
    double shift;
    double theta;
};
std::vector<OnsagerPoint> onsager_modulus(const SampledField& field,
                                          const std::vector<double>& shifts);

// Local energy equality residual with the viscous terms: evaluates both
// sides of the identity with sigma(x,t) = psi(|x-c|/r) w(t), w a smoothstep
// ramp from 0 at t_a to 1 at t_b, and returns |LHS - RHS| normalized by
// max(|LHS|, peak windowed energy).  Precomputes per-slice budgets once so
// many bumps can be evaluated against one field cheaply.
class EnergyBudgetCache {
  public:
    EnergyBudgetCache(const SampledField& field, double nu);
    double residual(const BumpSpec& bump, double t_a, double t_b,
                    int time_smoothness = 3) const;
    const SampledField& field() const { return field_; }

  private:
    const SampledField& field_;
    double nu_;
    std::vector<std::vector<double>> speed2_;      // |u|^2 per slice
    std::vector<std::vector<double>> gradsq_;      // |grad u|^2 per slice
    std::vector<std::vector<std::vector<double>>> flux_;  // (|u|^2 + 2p) u per slice
};

double local_energy_residual(const SampledField& field, double nu, const BumpSpec& bump,
                             double t_a, double t_b);

}  // namespace emtk
