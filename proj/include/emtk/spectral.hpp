#pragma once

#include <array>
#include <vector>

#include "emtk/fft.hpp"
#include "emtk/field.hpp"

namespace emtk {

// n-ball volumes: omega_2 = pi, omega_3 = 4 pi / 3.
double unit_ball_volume(int n);

// Kernel of R_i R_j on R^n: (n y_i y_j - delta_ij |y|^2) / (n omega_n |y|^{n+2}).
double riesz_kernel_eval(int n, const Point& y, int i, int j);

// Spectral utilities over one grid; holds the FFT workspace.
class SpectralOps {
  public:
    explicit SpectralOps(const PeriodicGrid& grid);

    const PeriodicGrid& grid() const { return grid_; }
    const Fft& fft() const { return fft_; }

    std::vector<double> gradient_component(const std::vector<double>& scalar, int axis) const;
    std::vector<double> laplacian(const std::vector<double>& scalar) const;
    std::vector<double> divergence(const std::vector<std::vector<double>>& vec) const;

    // Relative spectral divergence: ||k . u_hat||_2 / || |k| |u_hat| ||_2
    // (zero for the zero field).
    double divergence_rel(const std::vector<std::vector<double>>& vec) const;

    // Leray projection onto divergence-free fields.
    std::vector<std::vector<double>> leray_project(const std::vector<std::vector<double>>& vec) const;

    // p = R_i R_j (u_i u_j) via the multiplier -xi_i xi_j / |xi|^2 applied to
    // the product fields; zero mean.  Requires divergence_rel <= tol.
    std::vector<double> pressure(const std::vector<std::vector<double>>& vel,
                                 double div_tol = 1e-6) const;

    // Residual of -Delta p = d_i d_j (u_i u_j), relative to the forcing norm.
    double pressure_poisson_residual(const std::vector<std::vector<double>>& vel,
                                     const std::vector<double>& p) const;

  private:
    PeriodicGrid grid_;
    Fft fft_;
};

// Pressure at one time index of a sampled field.
std::vector<double> compute_pressure(const SampledField& field, int time_index,
                                     double div_tol = 1e-6);

// Attach spectrally computed pressure at every time.
void attach_pressure(SampledField& field, double div_tol = 1e-6);

struct PressureDecomposition {
    double lhs;          // || p - (p)_r ||_{L^{3/2}(B_r)}
    double term1;        // || u ||_{L^3(B_{2r})}^2
    double term2;        // r^{2n/3+1} int_{2r<|y|<rho} |u|^2 / |y|^{n+1}
    double term2_dyadic; // same content estimated through dyadic shells
    double term3;        // (r/rho)^{2n/3+1} ( int_{B_rho} |u|^3 + |p|^{3/2} )^{2/3}
};

// Ingredients of the local pressure inequality at one time slice.
PressureDecomposition local_pressure_decomposition(const SampledField& field, int time_index,
                                                   const Point& center, double r, double rho);

}  // namespace emtk
