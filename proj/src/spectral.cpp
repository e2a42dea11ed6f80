#include "emtk/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace emtk {

double unit_ball_volume(int n) {
    switch (n) {
        case 1: return 2.0;
        case 2: return M_PI;
        case 3: return 4.0 * M_PI / 3.0;
        default: throw std::invalid_argument("unit_ball_volume: dimension must be 1..3");
    }
}

double riesz_kernel_eval(int n, const Point& y, int i, int j) {
    double norm2 = 0.0;
    for (int a = 0; a < n; ++a) norm2 += y[a] * y[a];
    if (norm2 == 0.0) throw std::domain_error("riesz_kernel_eval: y must be nonzero");
    const double delta = (i == j) ? 1.0 : 0.0;
    const double numerator = n * y[i] * y[j] - delta * norm2;
    return numerator / (n * unit_ball_volume(n) * std::pow(norm2, 0.5 * (n + 2)));
}

SpectralOps::SpectralOps(const PeriodicGrid& grid) : grid_(grid), fft_(grid) {}

std::vector<double> SpectralOps::gradient_component(const std::vector<double>& scalar,
                                                    int axis) const {
    auto spec = fft_.forward(scalar);
    fft_.for_each_mode([&](std::size_t idx, const Point& k) {
        spec[idx] *= std::complex<double>(0.0, k[axis]);
    });
    return fft_.backward(spec);
}

std::vector<double> SpectralOps::laplacian(const std::vector<double>& scalar) const {
    auto spec = fft_.forward(scalar);
    fft_.for_each_mode([&](std::size_t idx, const Point& k) {
        spec[idx] *= -(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    });
    return fft_.backward(spec);
}

std::vector<double> SpectralOps::divergence(const std::vector<std::vector<double>>& vec) const {
    std::vector<std::complex<double>> acc(fft_.complex_size(), 0.0);
    for (int c = 0; c < grid_.n; ++c) {
        auto spec = fft_.forward(vec[c]);
        fft_.for_each_mode([&](std::size_t idx, const Point& k) {
            acc[idx] += std::complex<double>(0.0, k[c]) * spec[idx];
        });
    }
    return fft_.backward(acc);
}

double SpectralOps::divergence_rel(const std::vector<std::vector<double>>& vec) const {
    std::vector<std::vector<std::complex<double>>> spec;
    for (int c = 0; c < grid_.n; ++c) spec.push_back(fft_.forward(vec[c]));
    double div2 = 0.0, grad2 = 0.0;
    fft_.for_each_mode([&](std::size_t idx, const Point& k) {
        std::complex<double> d = 0.0;
        double mag2 = 0.0;
        double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        for (int c = 0; c < grid_.n; ++c) {
            d += k[c] * spec[c][idx];
            mag2 += std::norm(spec[c][idx]);
        }
        div2 += std::norm(d);
        grad2 += k2 * mag2;
    });
    if (grad2 == 0.0) return 0.0;
    return std::sqrt(div2 / grad2);
}

std::vector<std::vector<double>> SpectralOps::leray_project(
    const std::vector<std::vector<double>>& vec) const {
    std::vector<std::vector<std::complex<double>>> spec;
    for (int c = 0; c < grid_.n; ++c) spec.push_back(fft_.forward(vec[c]));
    fft_.for_each_mode([&](std::size_t idx, const Point& k) {
        double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if (k2 == 0.0) return;
        std::complex<double> kdotu = 0.0;
        for (int c = 0; c < grid_.n; ++c) kdotu += k[c] * spec[c][idx];
        for (int c = 0; c < grid_.n; ++c) spec[c][idx] -= k[c] * kdotu / k2;
    });
    std::vector<std::vector<double>> out;
    for (int c = 0; c < grid_.n; ++c) out.push_back(fft_.backward(spec[c]));
    return out;
}

std::vector<double> SpectralOps::pressure(const std::vector<std::vector<double>>& vel,
                                          double div_tol) const {
    const double dr = divergence_rel(vel);
    if (dr > div_tol)
        throw std::invalid_argument("pressure: input is not divergence-free (relative " +
                                    std::to_string(dr) + ")");
    const std::size_t cells = grid_.size();
    std::vector<std::complex<double>> phat(fft_.complex_size(), 0.0);
    std::vector<double> prod(cells);
    for (int i = 0; i < grid_.n; ++i) {
        for (int j = i; j < grid_.n; ++j) {
            for (std::size_t m = 0; m < cells; ++m) prod[m] = vel[i][m] * vel[j][m];
            auto spec = fft_.forward(prod);
            const double sym = (i == j) ? 1.0 : 2.0;
            fft_.for_each_mode([&](std::size_t idx, const Point& k) {
                double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                if (k2 == 0.0) return;  // zero-mean normalization
                phat[idx] += -sym * k[i] * k[j] / k2 * spec[idx];
            });
        }
    }
    return fft_.backward(phat);
}

double SpectralOps::pressure_poisson_residual(const std::vector<std::vector<double>>& vel,
                                              const std::vector<double>& p) const {
    const std::size_t cells = grid_.size();
    auto phat = fft_.forward(p);
    std::vector<std::complex<double>> rhs(fft_.complex_size(), 0.0);
    std::vector<double> prod(cells);
    for (int i = 0; i < grid_.n; ++i) {
        for (int j = i; j < grid_.n; ++j) {
            for (std::size_t m = 0; m < cells; ++m) prod[m] = vel[i][m] * vel[j][m];
            auto spec = fft_.forward(prod);
            const double sym = (i == j) ? 1.0 : 2.0;
            fft_.for_each_mode([&](std::size_t idx, const Point& k) {
                rhs[idx] += -sym * k[i] * k[j] * spec[idx];
            });
        }
    }
    double num = 0.0, den = 0.0;
    fft_.for_each_mode([&](std::size_t idx, const Point& k) {
        double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if (k2 == 0.0) return;
        std::complex<double> lhs = k2 * phat[idx];
        num += std::norm(lhs - rhs[idx]);
        den += std::norm(rhs[idx]);
    });
    if (den == 0.0) return std::sqrt(num);
    return std::sqrt(num / den);
}

std::vector<double> compute_pressure(const SampledField& field, int time_index, double div_tol) {
    if (time_index < 0 || std::size_t(time_index) >= field.times.size())
        throw std::invalid_argument("compute_pressure: bad time index");
    SpectralOps ops(field.grid);
    return ops.pressure(field.velocity[time_index], div_tol);
}

void attach_pressure(SampledField& field, double div_tol) {
    SpectralOps ops(field.grid);
    field.pressure.clear();
    for (std::size_t t = 0; t < field.times.size(); ++t)
        field.pressure.push_back(ops.pressure(field.velocity[t], div_tol));
}

namespace {

double lp_norm_ball(const PeriodicGrid& g, const std::vector<double>& data, const Point& center,
                    double r, double p, double shift) {
    double s = 0.0;
    g.for_each_in_ball(center, r, [&](std::size_t idx, const Point&) {
        s += std::pow(std::fabs(data[idx] - shift), p);
    });
    return std::pow(s * g.cell_volume(), 1.0 / p);
}

}  // namespace

PressureDecomposition local_pressure_decomposition(const SampledField& field, int time_index,
                                                   const Point& center, double r, double rho) {
    if (!(r > 0) || !(r <= rho / 2))
        throw std::domain_error("local_pressure_decomposition: requires 0 < r <= rho/2");
    const auto& g = field.grid;
    const int n = g.n;
    std::vector<double> p = field.has_pressure() ? field.pressure[time_index]
                                                 : compute_pressure(field, time_index);
    const auto& vel = field.velocity[time_index];
    std::vector<double> speed(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        double s2 = 0.0;
        for (int c = 0; c < n; ++c) s2 += vel[c][i] * vel[c][i];
        speed[i] = std::sqrt(s2);
    }

    // (p)_r: average over cells of B_r.
    double psum = 0.0;
    std::size_t pcount = 0;
    g.for_each_in_ball(center, r, [&](std::size_t idx, const Point&) {
        psum += p[idx];
        ++pcount;
    });
    const double pavg = pcount ? psum / double(pcount) : 0.0;

    PressureDecomposition out{};
    out.lhs = lp_norm_ball(g, p, center, r, 1.5, pavg);

    out.term1 = std::pow(lp_norm_ball(g, speed, center, 2 * r, 3.0, 0.0), 2.0);

    // Middle term: integral over the annulus 2r < |y| < rho.
    const double w = std::pow(r, 2.0 * n / 3.0 + 1.0);
    double annulus = 0.0;
    g.for_each_in_ball(center, rho, [&](std::size_t idx, const Point& x) {
        double d = g.periodic_distance(x, center);
        if (d <= 2 * r || d == 0.0) return;
        annulus += speed[idx] * speed[idx] / std::pow(d, n + 1);
    });
    out.term2 = w * annulus * g.cell_volume();

    // Dyadic-shell estimate of the same term: shells r_{j+1} <= |y| < r_j
    // from rho halving down to 2r, with |y|^{-n-1} bounded per shell and the
    // shells then replaced by balls.
    double dyadic = 0.0;
    for (double rj = rho; rj > 2 * r; rj /= 2) {
        double inner = std::max(rj / 2, 2 * r);
        double mass = 0.0;
        g.for_each_in_ball(center, rj, [&](std::size_t idx, const Point&) {
            mass += speed[idx] * speed[idx];
        });
        mass *= g.cell_volume();
        dyadic += mass * std::pow(inner, -(n + 1));
    }
    out.term2_dyadic = w * dyadic;

    double cubes = 0.0;
    g.for_each_in_ball(center, rho, [&](std::size_t idx, const Point&) {
        cubes += std::pow(speed[idx], 3.0) + std::pow(std::fabs(p[idx]), 1.5);
    });
    cubes *= g.cell_volume();
    out.term3 = std::pow(r / rho, 2.0 * n / 3.0 + 1.0) * std::pow(cubes, 2.0 / 3.0);
    return out;
}

}  // namespace emtk
