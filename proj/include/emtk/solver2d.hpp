#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "emtk/field.hpp"

namespace emtk {

// Pseudo-spectral 2D Navier-Stokes on [0,2pi)^2, vorticity form, explicit
// RK4, 2/3 dealiasing.  Emitted snapshot times are mapped to [-t_end, 0].
struct SolverConfig {
    int N = 64;
    double nu = 0.0;
    double dt = 1e-3;
    double t_end = 1.0;           // must be <= 1 so emitted times stay in [-1, 0]
    double cfl_safety = 0.8;

    enum class Init { taylor_green, random_bandlimited };
    Init init = Init::taylor_green;
    unsigned seed = 1;
    int random_kmax = 8;
    double random_rms = 0.5;      // target rms velocity for random data

    int snapshot_stride = 0;      // 0 = final state only
    bool with_pressure = true;
};

struct AuditRow {
    long step;
    double time;                  // solver time in [0, t_end]
    double energy;                // || u ||_2^2
    double enstrophy;             // || grad u ||_2^2
    double residual;              // | dE/dt + 2 nu Z | / E across the step
};

struct CflError : std::runtime_error {
    CflError(long step_, double dt, double limit)
        : std::runtime_error("CFL violation at step " + std::to_string(step_) + ": dt = " +
                             std::to_string(dt) + " exceeds " + std::to_string(limit)),
          step(step_) {}
    long step;
};

struct SolverResult {
    SampledField field;
    std::vector<AuditRow> audit;
    double dt_effective;
};

SolverResult run_solver_2d(const SolverConfig& config);

// CSV schema: step,time,energy,enstrophy,audit_residual.
void write_audit_csv(const std::vector<AuditRow>& audit, const std::string& path);

}  // namespace emtk
