#include "emtk/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "emtk/spectral.hpp"

namespace emtk {

std::string GroundTruth::json() const {
    nlohmann::json j;
    j["ground_truth"] = values;
    if (!note.empty()) j["note"] = note;
    return j.dump(2);
}

namespace {

// Radial scalar g: Gaussian core, smoothly tapered to zero at the support
// radius.  g(0) = 1 is the global max.
struct RadialProfile {
    double sigma;
    double support;
    CutoffProfile taper{0.7, 1.0, 3};

    double value(double s) const {
        if (s >= support) return 0.0;
        return std::exp(-0.5 * s * s / (sigma * sigma)) * taper.value(s / support);
    }
    double derivative(double s) const {
        if (s >= support) return 0.0;
        double gauss = std::exp(-0.5 * s * s / (sigma * sigma));
        double t = taper.value(s / support);
        double dt = taper.derivative(s / support) / support;
        return gauss * (-s / (sigma * sigma) * t + dt);
    }
};

// U = curl((1/2) g(|x|) (-y, x, 0)) in 3D: divergence-free, |U(0)| = g(0).
Point profile_velocity_3d(const RadialProfile& g, const Point& x) {
    double s = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (s >= g.support) return {0, 0, 0};
    if (s < 1e-14) return {0, 0, g.value(0.0)};
    double gp = g.derivative(s);
    double rho2 = x[0] * x[0] + x[1] * x[1];
    return {-x[0] * x[2] * gp / (2 * s), -x[1] * x[2] * gp / (2 * s),
            g.value(s) + rho2 * gp / (2 * s)};
}

// U = perp-gradient of g in 2D.
Point profile_velocity_2d(const RadialProfile& g, const Point& x) {
    double s = std::hypot(x[0], x[1]);
    if (s >= g.support || s < 1e-14) return {0, 0, 0};
    double gp = g.derivative(s);
    return {-x[1] * gp / s, x[0] * gp / s, 0};
}

Point profile_velocity(const RadialProfile& g, int n, const Point& x) {
    return n == 3 ? profile_velocity_3d(g, x) : profile_velocity_2d(g, x);
}

// 2D profiles peak on a circle rather than at the center; normalize so the
// analytic sup is 1 in both dimensions.
double profile_sup(const RadialProfile& g, int n) {
    if (n == 3) return g.value(0.0);
    double best = 0.0;
    for (int i = 1; i < 4000; ++i) {
        double s = g.support * i / 4000.0;
        Point u = profile_velocity_2d(g, {s, 0, 0});
        best = std::max(best, std::hypot(u[0], u[1]));
    }
    return best;
}

double profile_l2sq(const RadialProfile& g, int n, double norm) {
    const int M = n == 3 ? 96 : 512;
    const double h = 2.0 * g.support / M;
    double acc = 0.0;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            if (n == 3) {
                for (int k = 0; k < M; ++k) {
                    Point x = {-g.support + (i + 0.5) * h, -g.support + (j + 0.5) * h,
                               -g.support + (k + 0.5) * h};
                    Point u = profile_velocity_3d(g, x);
                    acc += u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
                }
            } else {
                Point x = {-g.support + (i + 0.5) * h, -g.support + (j + 0.5) * h, 0};
                Point u = profile_velocity_2d(g, x);
                acc += u[0] * u[0] + u[1] * u[1];
            }
        }
    return acc * std::pow(h, n) / (norm * norm);
}

}  // namespace

Point selfsimilar_velocity(const SelfSimilarSpec& spec, double alpha, int n, const Point& x,
                           double t, double box_length) {
    if (!(t < 0)) throw std::domain_error("selfsimilar_velocity: t must be negative");
    RadialProfile g{spec.profile_sigma, spec.profile_support};
    const double norm = profile_sup(g, n);
    const double lambda = std::pow(-t, -1.0 / alpha);
    Point d;
    for (int a = 0; a < 3; ++a) {
        double delta = x[a] - spec.concentration[a];
        delta -= box_length * std::round(delta / box_length);
        d[a] = delta * lambda;
    }
    Point u = profile_velocity(g, n, d);
    const double amp = spec.c0 * std::pow(lambda, alpha - 1.0) / norm;
    return {amp * u[0], amp * u[1], amp * u[2]};
}

SelfSimilarField gen_selfsimilar(const SelfSimilarSpec& spec, int n, int N, double box_length,
                                 const std::vector<double>& times) {
    if (spec.q <= 1.0) throw std::invalid_argument("gen_selfsimilar: q must be > 1");
    if (n != 2 && n != 3) throw std::invalid_argument("gen_selfsimilar: n must be 2 or 3");
    if (times.empty()) throw std::invalid_argument("gen_selfsimilar: no times");
    const double alpha = spec.q / (spec.q - 1.0);

    RadialProfile g{spec.profile_sigma, spec.profile_support};
    const double norm = profile_sup(g, n);

    SelfSimilarField out;
    out.alpha = alpha;
    out.field.grid = PeriodicGrid::cube(n, N, box_length);
    const auto& grid = out.field.grid;

    // Snap the concentration point onto the lattice so the profile's center
    // value (the sup in 3D) is sampled exactly.
    SelfSimilarSpec snapped = spec;
    for (int a = 0; a < n; ++a) {
        double h = grid.spacing(a);
        snapped.concentration[a] = std::round(spec.concentration[a] / h) * h;
    }

    for (double t : times) {
        if (!(t < 0) || t < -1.0)
            throw std::invalid_argument("gen_selfsimilar: times must lie in [-1, 0)");
        double lambda = std::pow(-t, -1.0 / alpha);
        if (spec.profile_support / lambda > box_length / 2)
            throw std::invalid_argument(
                "gen_selfsimilar: scaled support does not fit at t = " + std::to_string(t));
    }

    for (double t : times) {
        const double lambda = std::pow(-t, -1.0 / alpha);
        const double amp = spec.c0 * std::pow(lambda, alpha - 1.0) / norm;
        std::vector<std::vector<double>> comps(n, std::vector<double>(grid.size(), 0.0));
        for (int i = 0; i < grid.shape[0]; ++i)
            for (int j = 0; j < grid.shape[1]; ++j)
                for (int k = 0; k < grid.shape[2]; ++k) {
                    Point x = grid.coords(i, j, k);
                    Point d;
                    for (int a = 0; a < 3; ++a) {
                        double delta = x[a] - snapped.concentration[a];
                        delta -= box_length * std::round(delta / box_length);
                        d[a] = delta * lambda;
                    }
                    Point u = profile_velocity(g, n, d);
                    std::size_t idx = grid.index(i, j, k);
                    for (int c = 0; c < n; ++c) comps[c][idx] = amp * u[c];
                }
        out.field.times.push_back(t);
        out.field.velocity.push_back(std::move(comps));
    }
    out.field.validate_structure();

    out.profile_l2sq = profile_l2sq(g, n, norm);
    out.truth.values["c0"] = spec.c0;
    out.truth.values["q"] = spec.q;
    out.truth.values["alpha"] = alpha;
    out.truth.values["morrey_lambda"] = n - 2.0 / (spec.q - 1.0);
    out.truth.values["energy_exponent"] = (n - 2.0 * (alpha - 1.0)) / alpha;
    out.truth.values["profile_l2sq"] = out.profile_l2sq;
    out.truth.values["linf_exact"] = (n == 3) ? 1.0 : 0.0;
    out.truth.note =
        "power-law family realizing the L^inf law and the r^{n-2/(q-1)} windowed-energy "
        "bound; not a solution of the equations";
    return out;
}

CantorMeasure gen_cantor_measure(const CantorOptions& opt, int n, int grid_N, double box_length) {
    if (opt.depth < 1 || opt.depth > 14)
        throw std::invalid_argument("gen_cantor_measure: depth must be 1..14");
    if (n < 1 || n > 3) throw std::invalid_argument("gen_cantor_measure: n must be 1..3");
    if (opt.lebesgue_axes < 0 || opt.lebesgue_axes > n - 1)
        throw std::invalid_argument("gen_cantor_measure: bad lebesgue_axes");
    if (opt.offset < 0 || opt.offset + opt.length > box_length)
        throw std::invalid_argument("gen_cantor_measure: construction interval must fit the box");

    CantorMeasure out;
    out.measure.grid = PeriodicGrid::cube(n, grid_N, box_length);

    const long count = 1L << opt.depth;
    std::vector<double> centers;
    centers.reserve(count);
    const double unit = opt.length;
    for (long m = 0; m < count; ++m) {
        double x = 0.0;
        double scale = 1.0;
        for (int level = 0; level < opt.depth; ++level) {
            scale /= 3.0;
            if ((m >> (opt.depth - 1 - level)) & 1) x += 2.0 * scale;
        }
        centers.push_back(opt.offset + unit * (x + 0.5 * scale));
    }
    const double w = 1.0 / double(count);

    if (opt.lebesgue_axes == 0) {
        for (double c : centers) out.measure.atoms.push_back({{c, 0, 0}, w});
    } else {
        // Product with uniform samples along the full periodic extent of the
        // extra axes (total mass stays 1).
        const int M = opt.samples_per_axis;
        if (opt.lebesgue_axes > 1)
            throw std::invalid_argument("gen_cantor_measure: at most one Lebesgue axis supported");
        const double wm = w / double(M);
        for (double c : centers)
            for (int j = 0; j < M; ++j) {
                double y = (j + 0.5) * box_length / M;
                out.measure.atoms.push_back({{c, y, 0}, wm});
            }
    }
    out.measure.validate();

    out.truth.values["dimension"] = std::log(2.0) / std::log(3.0) + opt.lebesgue_axes;
    out.truth.values["depth"] = opt.depth;
    out.truth.values["triadic_mass_base"] = 0.5;  // mass scales by 1/2 per radius third
    out.truth.values["lebesgue_axes"] = opt.lebesgue_axes;
    out.truth.note = "middle-thirds construction; triadic ball masses are exact down to 3^-depth";
    return out;
}

SampledMeasure gen_atom_measure(const std::vector<Point>& positions,
                                const std::vector<double>& weights, int n, int grid_N,
                                double box_length) {
    if (positions.size() != weights.size())
        throw std::invalid_argument("gen_atom_measure: position/weight count mismatch");
    SampledMeasure m;
    m.grid = PeriodicGrid::cube(n, grid_N, box_length);
    for (std::size_t i = 0; i < positions.size(); ++i)
        m.atoms.push_back({positions[i], weights[i]});
    m.validate();
    return m;
}

SampledField gen_smooth_field(unsigned seed, int n, int N, double box_length, int kmax,
                              const std::vector<double>& times, double amplitude) {
    if (n != 2 && n != 3) throw std::invalid_argument("gen_smooth_field: n must be 2 or 3");
    PeriodicGrid grid = PeriodicGrid::cube(n, N, box_length);
    SpectralOps ops(grid);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<std::vector<double>> comps;
    for (int c = 0; c < n; ++c) {
        std::vector<double> noise(grid.size());
        for (auto& v : noise) v = gauss(rng);
        auto spec = ops.fft().forward(noise);
        ops.fft().for_each_mode([&](std::size_t idx, const Point& k) {
            double kk = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
            if (kk == 0.0 || kk > kmax) spec[idx] = 0.0;
        });
        comps.push_back(ops.fft().backward(spec));
    }
    comps = ops.leray_project(comps);

    double ms = 0.0;
    for (const auto& comp : comps)
        for (double v : comp) ms += v * v;
    ms = std::sqrt(ms / double(grid.size()));
    if (ms > 0)
        for (auto& comp : comps)
            for (double& v : comp) v *= amplitude / ms;

    SampledField field;
    field.grid = grid;
    field.times = times;
    for (std::size_t t = 0; t < times.size(); ++t) field.velocity.push_back(comps);
    field.validate_structure();
    return field;
}

SampledField taylor_green_field(int N, const std::vector<double>& times) {
    PeriodicGrid grid = PeriodicGrid::cube(2, N, 2.0 * M_PI);
    std::vector<double> ux(grid.size()), uy(grid.size()), p(grid.size());
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            Point x = grid.coords(i, j, 0);
            std::size_t idx = grid.index(i, j, 0);
            ux[idx] = std::sin(x[0]) * std::cos(x[1]);
            uy[idx] = -std::cos(x[0]) * std::sin(x[1]);
            p[idx] = 0.25 * (std::cos(2 * x[0]) + std::cos(2 * x[1]));
        }
    SampledField field;
    field.grid = grid;
    field.times = times;
    for (std::size_t t = 0; t < times.size(); ++t) {
        field.velocity.push_back({ux, uy});
        field.pressure.push_back(p);
    }
    field.validate_structure();
    return field;
}

}  // namespace emtk
