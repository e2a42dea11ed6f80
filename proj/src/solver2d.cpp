#include "emtk/solver2d.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <random>

#include "emtk/spectral.hpp"

namespace emtk {

namespace {

using Cvec = std::vector<std::complex<double>>;

struct Workspace {
    PeriodicGrid grid;
    Fft fft;
    int N;
    double kcut;  // 2/3 dealiasing cutoff

    explicit Workspace(int N_)
        : grid(PeriodicGrid::cube(2, N_, 2.0 * M_PI)), fft(grid), N(N_), kcut(N_ / 3.0) {}

    void dealias(Cvec& what) const {
        fft.for_each_mode([&](std::size_t idx, const Point& k) {
            if (std::fabs(k[0]) > kcut || std::fabs(k[1]) > kcut) what[idx] = 0.0;
        });
    }

    // u = (d_y psi, -d_x psi) with psi_hat = omega_hat / k^2.
    void velocity_hat(const Cvec& what, Cvec& ux, Cvec& uy) const {
        ux.assign(what.size(), 0.0);
        uy.assign(what.size(), 0.0);
        fft.for_each_mode([&](std::size_t idx, const Point& k) {
            double k2 = k[0] * k[0] + k[1] * k[1];
            if (k2 == 0.0) return;
            std::complex<double> psi = what[idx] / k2;
            ux[idx] = std::complex<double>(0.0, k[1]) * psi;
            uy[idx] = std::complex<double>(0.0, -k[0]) * psi;
        });
    }

    // Right-hand side of d omega_hat / dt; also reports max |u| for CFL.
    Cvec rhs(const Cvec& what, double nu, double* max_speed = nullptr) const {
        Cvec ux, uy;
        velocity_hat(what, ux, uy);
        Cvec wx(what.size()), wy(what.size());
        fft.for_each_mode([&](std::size_t idx, const Point& k) {
            wx[idx] = std::complex<double>(0.0, k[0]) * what[idx];
            wy[idx] = std::complex<double>(0.0, k[1]) * what[idx];
        });
        auto ux_r = fft.backward(ux);
        auto uy_r = fft.backward(uy);
        auto wx_r = fft.backward(wx);
        auto wy_r = fft.backward(wy);
        std::vector<double> adv(ux_r.size());
        double vmax = 0.0;
        for (std::size_t i = 0; i < adv.size(); ++i) {
            adv[i] = ux_r[i] * wx_r[i] + uy_r[i] * wy_r[i];
            vmax = std::max(vmax, std::hypot(ux_r[i], uy_r[i]));
        }
        if (max_speed) *max_speed = vmax;
        auto advhat = fft.forward(adv);
        dealias(advhat);
        Cvec out(what.size());
        fft.for_each_mode([&](std::size_t idx, const Point& k) {
            double k2 = k[0] * k[0] + k[1] * k[1];
            out[idx] = -advhat[idx] - nu * k2 * what[idx];
        });
        return out;
    }

    // Parseval with r2c half-spectrum weights: columns ky = 0 and ky = N/2
    // appear once, all others twice.
    double mode_weight(const Point& k) const {
        double ky = k[1] * grid.box_length / (2.0 * M_PI);
        return (ky == 0.0 || int(std::fabs(ky)) == N / 2) ? 1.0 : 2.0;
    }

    void energy_enstrophy(const Cvec& what, double& E, double& Z) const {
        const double area = grid.box_length * grid.box_length;
        double e = 0.0, z = 0.0;
        fft.for_each_mode([&](std::size_t idx, const Point& k) {
            double k2 = k[0] * k[0] + k[1] * k[1];
            if (k2 == 0.0) return;
            double w = mode_weight(k) * std::norm(what[idx]);
            e += w / k2;
            z += w;
        });
        E = area * e;
        Z = area * z;
    }
};

Cvec initial_vorticity(const Workspace& ws, const SolverConfig& cfg) {
    const auto& g = ws.grid;
    std::vector<double> w(g.size());
    if (cfg.init == SolverConfig::Init::taylor_green) {
        for (int i = 0; i < g.shape[0]; ++i)
            for (int j = 0; j < g.shape[1]; ++j) {
                Point x = g.coords(i, j, 0);
                w[g.index(i, j, 0)] = 2.0 * std::sin(x[0]) * std::sin(x[1]);
            }
        return ws.fft.forward(w);
    }
    // Random band-limited data, normalized to the requested rms velocity.
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Cvec what(ws.fft.complex_size(), 0.0);
    ws.fft.for_each_mode([&](std::size_t idx, const Point& k) {
        double kk = std::hypot(k[0], k[1]);
        if (kk == 0.0 || kk > cfg.random_kmax) return;
        what[idx] = std::complex<double>(gauss(rng), gauss(rng));
    });
    ws.dealias(what);
    // Enforce the r2c Hermitian constraint on the self-conjugate columns.
    auto modes = what;
    auto real_w = ws.fft.backward(modes);
    what = ws.fft.forward(real_w);
    Cvec ux, uy;
    ws.velocity_hat(what, ux, uy);
    auto ux_r = ws.fft.backward(ux);
    auto uy_r = ws.fft.backward(uy);
    double ms = 0.0;
    for (std::size_t i = 0; i < ux_r.size(); ++i)
        ms += ux_r[i] * ux_r[i] + uy_r[i] * uy_r[i];
    ms = std::sqrt(ms / double(ux_r.size()));
    if (ms > 0)
        for (auto& v : what) v *= cfg.random_rms / ms;
    return what;
}

}  // namespace

SolverResult run_solver_2d(const SolverConfig& cfg) {
    if (cfg.N < 8 || cfg.N % 2 != 0) throw std::invalid_argument("solver: N must be even, >= 8");
    if (!(cfg.dt > 0) || !(cfg.t_end > 0)) throw std::invalid_argument("solver: dt, t_end > 0");
    if (cfg.t_end > 1.0 + 1e-12)
        throw std::invalid_argument("solver: t_end must be <= 1 (emitted times live in [-1,0])");

    Workspace ws(cfg.N);
    const long steps = std::lround(cfg.t_end / cfg.dt);
    const double dt = cfg.t_end / double(steps);
    const double dx = ws.grid.spacing(0);

    Cvec what = initial_vorticity(ws, cfg);
    ws.dealias(what);

    SolverResult result;
    result.dt_effective = dt;
    result.field.grid = ws.grid;

    SpectralOps ops(ws.grid);
    auto emit = [&](long step) {
        Cvec ux, uy;
        ws.velocity_hat(what, ux, uy);
        std::vector<std::vector<double>> vel;
        vel.push_back(ws.fft.backward(ux));
        vel.push_back(ws.fft.backward(uy));
        double t_field = step * dt - cfg.t_end;
        if (step == steps) t_field = 0.0;
        result.field.times.push_back(t_field);
        if (cfg.with_pressure) result.field.pressure.push_back(ops.pressure(vel, 1e-6));
        result.field.velocity.push_back(std::move(vel));
    };

    double E_prev = 0.0, Z_prev = 0.0;
    ws.energy_enstrophy(what, E_prev, Z_prev);

    if (cfg.snapshot_stride > 0) emit(0);

    for (long step = 0; step < steps; ++step) {
        double vmax = 0.0;
        Cvec k1 = ws.rhs(what, cfg.nu, &vmax);
        double limit = dx / std::max(vmax, 1e-300);
        if (cfg.nu > 0) limit = std::min(limit, dx * dx / cfg.nu);
        if (dt > cfg.cfl_safety * limit) throw CflError(step, dt, cfg.cfl_safety * limit);

        Cvec tmp(what.size());
        for (std::size_t i = 0; i < what.size(); ++i) tmp[i] = what[i] + 0.5 * dt * k1[i];
        Cvec k2 = ws.rhs(tmp, cfg.nu);
        for (std::size_t i = 0; i < what.size(); ++i) tmp[i] = what[i] + 0.5 * dt * k2[i];
        Cvec k3 = ws.rhs(tmp, cfg.nu);
        for (std::size_t i = 0; i < what.size(); ++i) tmp[i] = what[i] + dt * k3[i];
        Cvec k4 = ws.rhs(tmp, cfg.nu);
        for (std::size_t i = 0; i < what.size(); ++i)
            what[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        double E = 0.0, Z = 0.0;
        ws.energy_enstrophy(what, E, Z);
        double residual = std::fabs((E - E_prev) / dt + cfg.nu * (Z + Z_prev)) /
                          std::max({E, E_prev, 1e-300});
        result.audit.push_back({step + 1, (step + 1) * dt, E, Z, residual});
        E_prev = E;
        Z_prev = Z;

        if (cfg.snapshot_stride > 0 && (step + 1) % cfg.snapshot_stride == 0 &&
            step + 1 != steps)
            emit(step + 1);
    }
    emit(steps);
    result.field.validate_structure();
    return result;
}

void write_audit_csv(const std::vector<AuditRow>& audit, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "step,time,energy,enstrophy,audit_residual\n";
    char buf[160];
    for (const auto& row : audit) {
        std::snprintf(buf, sizeof buf, "%ld,%.12g,%.17g,%.17g,%.6g\n", row.step, row.time,
                      row.energy, row.enstrophy, row.residual);
        out << buf;
    }
}

}  // namespace emtk
