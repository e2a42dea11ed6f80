#include "emtk/diagnostics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "emtk/spectral.hpp"

namespace emtk {

namespace {

std::vector<double> speed_squared(const SampledField& field, int t) {
    const auto& vel = field.velocity[t];
    std::vector<double> s2(field.grid.size(), 0.0);
    for (int c = 0; c < field.dim(); ++c)
        for (std::size_t i = 0; i < s2.size(); ++i) s2[i] += vel[c][i] * vel[c][i];
    return s2;
}

// Sample indices inside the open window (-w, 0) with rectangle weights that
// tile the window (cell edges midway between samples, clipped to the window).
struct TimeWindow {
    std::vector<int> indices;
    std::vector<double> weights;
};

TimeWindow window_samples(const SampledField& field, double w) {
    TimeWindow tw;
    const auto& ts = field.times;
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (ts[i] > -w && ts[i] < 0.0) tw.indices.push_back(int(i));
    if (tw.indices.empty())
        throw std::runtime_error("empty time window: no samples inside (" + std::to_string(-w) +
                                 ", 0)");
    for (std::size_t m = 0; m < tw.indices.size(); ++m) {
        double lo = (m == 0) ? -w : 0.5 * (ts[tw.indices[m - 1]] + ts[tw.indices[m]]);
        double hi = (m + 1 == tw.indices.size())
                        ? 0.0
                        : 0.5 * (ts[tw.indices[m]] + ts[tw.indices[m + 1]]);
        lo = std::max(lo, -w);
        tw.weights.push_back(hi - lo);
    }
    return tw;
}

double pressure_ball_average(const PeriodicGrid& g, const std::vector<double>& p,
                             const Point& center, double r) {
    double sum = 0.0;
    std::size_t count = 0;
    g.for_each_in_ball(center, r, [&](std::size_t idx, const Point&) {
        sum += p[idx];
        ++count;
    });
    return count ? sum / double(count) : 0.0;
}

}  // namespace

double ball_energy(const SampledField& field, int time_index, const Point& center, double r) {
    if (!(r > 0)) throw std::domain_error("ball_energy: radius must be positive");
    if (time_index < 0 || std::size_t(time_index) >= field.times.size())
        throw std::invalid_argument("ball_energy: bad time index");
    auto s2 = speed_squared(field, time_index);
    return ball_integral(field.grid, s2, center, r);
}

double quantity_A(const SampledField& field, const ScalingExponents& se, const Point& center,
                  double r) {
    if (!(r > 0)) throw std::domain_error("quantity_A: radius must be positive");
    auto tw = window_samples(field, std::pow(r, se.alpha));
    double sup = 0.0;
    for (int idx : tw.indices) sup = std::max(sup, ball_energy(field, idx, center, r));
    return sup / std::pow(r, se.beta);
}

double quantity_G(const SampledField& field, const ScalingExponents& se, const Point& center,
                  double r) {
    if (!(r > 0)) throw std::domain_error("quantity_G: radius must be positive");
    auto tw = window_samples(field, std::pow(r, se.alpha));
    double acc = 0.0;
    for (std::size_t m = 0; m < tw.indices.size(); ++m) {
        auto s2 = speed_squared(field, tw.indices[m]);
        double slice = 0.0;
        field.grid.for_each_in_ball(center, r, [&](std::size_t i, const Point&) {
            slice += std::pow(s2[i], 1.5);
        });
        acc += slice * field.grid.cell_volume() * tw.weights[m];
    }
    return acc / std::pow(r, se.beta + 1.0);
}

double quantity_P(const SampledField& field, const ScalingExponents& se, const Point& center,
                  double r) {
    if (!(r > 0)) throw std::domain_error("quantity_P: radius must be positive");
    std::vector<std::vector<double>> pressure;
    const std::vector<std::vector<double>>* pptr = &field.pressure;
    if (!field.has_pressure()) {
        SpectralOps ops(field.grid);
        for (std::size_t t = 0; t < field.times.size(); ++t)
            pressure.push_back(ops.pressure(field.velocity[t], 1e-4));
        pptr = &pressure;
    }
    auto tw = window_samples(field, std::pow(r, se.alpha));
    double acc = 0.0;
    for (std::size_t m = 0; m < tw.indices.size(); ++m) {
        int t = tw.indices[m];
        auto s2 = speed_squared(field, t);
        const auto& p = (*pptr)[t];
        double pavg = pressure_ball_average(field.grid, p, center, r);
        double slice = 0.0;
        field.grid.for_each_in_ball(center, r, [&](std::size_t i, const Point&) {
            slice += std::fabs(p[i] - pavg) * std::sqrt(s2[i]);
        });
        acc += slice * field.grid.cell_volume() * tw.weights[m];
    }
    return acc / std::pow(r, se.beta + 1.0);
}

std::string ScaleLadderReport::csv() const {
    std::ostringstream out;
    out << "level,r,A,G,P,ratio_AG,ratio_chain\n";
    char buf[256];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", row.level,
                      row.r, row.A, row.G, row.P, row.ratio_AG, row.ratio_chain);
        out << buf;
    }
    return out.str();
}

ScaleLadderReport ladder_report(const SampledField& field, const PQPoint& pq,
                                const Point& center, double base_radius, int levels) {
    if (levels < 1) throw std::invalid_argument("ladder_report: levels must be >= 1");
    auto se = scaling_exponents(pq);
    ScaleLadderReport report;
    report.center = center;
    report.base_radius = base_radius;
    report.levels = levels;
    report.alpha = se.alpha;
    report.beta = se.beta;
    // (p-3)/(p-2) in reciprocals: (1 - 3x)/(1 - 2x); equals 1 at p = inf.
    const double x = pq.x.to_double();
    report.exponent_AG = (1.0 - 3.0 * x) / (1.0 - 2.0 * x);
    if (field.times.size() > 1) {
        double span = field.times.back() - field.times.front();
        report.time_sample_spacing = span / double(field.times.size() - 1);
    }

    std::vector<double> A(levels + 1), G(levels), P(levels);
    for (int j = 0; j < levels; ++j) {
        double r = base_radius / std::pow(2.0, j);
        try {
            A[j] = quantity_A(field, se, center, r);
            G[j] = quantity_G(field, se, center, r);
            P[j] = quantity_P(field, se, center, r);
        } catch (const std::exception& e) {
            report.truncated = true;
            report.truncation_reason = "level " + std::to_string(j) + ": " + e.what();
            report.levels = j;
            break;
        }
    }
    int J = report.levels;
    // A at one extra half-step for the chain ratio of the finest level.
    bool have_extra = true;
    try {
        A[J] = quantity_A(field, se, center, base_radius / std::pow(2.0, J));
    } catch (const std::exception&) {
        have_extra = false;
    }

    for (int j = 0; j < J; ++j) {
        LadderLevel row{};
        row.level = j;
        row.r = base_radius / std::pow(2.0, j);
        row.A = A[j];
        row.G = G[j];
        row.P = P[j];
        double apow = std::pow(A[j], report.exponent_AG);
        if (G[j] == 0.0 && apow == 0.0) {
            row.ratio_AG = 0.0;
            row.ratio_AG_zero_convention = true;
        } else {
            row.ratio_AG = G[j] / apow;
        }
        double denom = std::pow(G[j], 2.0 / 3.0) + G[j] + P[j];
        double a_next = (j + 1 < J) ? A[j + 1] : (have_extra ? A[J] : 0.0);
        if (a_next == 0.0 && denom == 0.0) {
            row.ratio_chain = 0.0;
            row.ratio_chain_zero_convention = true;
        } else if (denom == 0.0) {
            row.ratio_chain = std::numeric_limits<double>::infinity();
        } else {
            row.ratio_chain = a_next / denom;
        }
        report.rows.push_back(row);
    }
    return report;
}

WindowedEnergy windowed_energy_E(const SampledField& field, double t, const Point& center,
                                 double r, const CutoffProfile& profile) {
    if (!(r > 0)) throw std::domain_error("windowed_energy_E: radius must be positive");
    const auto& g = field.grid;
    if (r * profile.outer_ratio > g.box_length / 2)
        throw std::invalid_argument("windowed_energy_E: profile support exceeds the domain");
    int idx = field.time_index_nearest(t);
    auto s2 = speed_squared(field, idx);
    double acc = 0.0;
    g.for_each_in_ball(center, r * profile.outer_ratio, [&](std::size_t i, const Point& xp) {
        double d = g.periodic_distance(xp, center);
        acc += s2[i] * profile.value(d / r);
    });
    double value = acc * g.cell_volume();
#ifndef NDEBUG
    // Sandwich: ||u||^2_{B_{r * inner}} <= E <= ||u||^2_{B_{r * outer}}.
    double lo = ball_integral(g, s2, center, r * profile.inner_ratio);
    double hi = ball_integral(g, s2, center, r * profile.outer_ratio);
    assert(value >= lo - 1e-12 * (1.0 + hi) && value <= hi + 1e-12 * (1.0 + hi));
#endif
    return {value, field.times[idx], std::fabs(t - field.times[idx])};
}

WindowedEnergy windowed_energy_Ek(const SampledField& field, double t, const Point& center,
                                  double r, int k, const CutoffProfile& profile) {
    WindowedEnergy e = windowed_energy_E(field, t, center, std::ldexp(r, k), profile);
    e.value /= std::pow(2.0, double(k) * field.dim());
    return e;
}

MorreyReport morrey_seminorm(const SampledField& field, double lambda,
                             const MorreySamplePlan& plan) {
    if (lambda < 0 || lambda > field.dim())
        throw std::invalid_argument("morrey_seminorm: lambda must lie in [0, n]");
    const auto& g = field.grid;
    MorreyReport report{};
    report.lambda = lambda;
    report.value = -1.0;
    for (std::size_t t = 0; t < field.times.size(); ++t) {
        auto s2 = speed_squared(field, int(t));
        for (int ci = 0; ci < plan.centers_per_axis; ++ci)
            for (int cj = 0; cj < (g.n > 1 ? plan.centers_per_axis : 1); ++cj)
                for (int ck = 0; ck < (g.n > 2 ? plan.centers_per_axis : 1); ++ck) {
                    Point center = {ci * g.box_length / plan.centers_per_axis,
                                    cj * g.box_length / plan.centers_per_axis,
                                    ck * g.box_length / plan.centers_per_axis};
                    for (int lev = 0; lev < plan.radius_levels; ++lev) {
                        double r = plan.r_max_fraction * g.box_length / std::pow(2.0, lev);
                        double val =
                            ball_integral(g, s2, center, r) / std::pow(r, lambda);
                        if (val > report.value) {
                            report.value = val;
                            report.witness_center = center;
                            report.witness_r = r;
                            report.witness_time = field.times[t];
                        }
                    }
                }
    }
    // The witness must reproduce the reported value.
    int t_idx = field.time_index_nearest(report.witness_time);
    auto s2 = speed_squared(field, t_idx);
    report.recheck = ball_integral(g, s2, report.witness_center, report.witness_r) /
                     std::pow(report.witness_r, lambda);
    return report;
}

std::vector<OnsagerPoint> onsager_modulus(const SampledField& field,
                                          const std::vector<double>& shifts) {
    const auto& g = field.grid;
    // Trapezoid weights in time (single sample: unit weight).
    std::vector<double> tweights(field.times.size(), 1.0);
    if (field.times.size() > 1) {
        for (std::size_t t = 0; t < field.times.size(); ++t) {
            double lo = (t == 0) ? field.times[0] : 0.5 * (field.times[t - 1] + field.times[t]);
            double hi = (t + 1 == field.times.size())
                            ? field.times.back()
                            : 0.5 * (field.times[t] + field.times[t + 1]);
            tweights[t] = hi - lo;
        }
    }
    std::vector<OnsagerPoint> out;
    for (double shift : shifts) {
        double theta = 0.0;
        for (int axis = 0; axis < g.n; ++axis) {
            double h = g.spacing(axis);
            double cells_d = shift / h;
            long cells = std::lround(cells_d);
            if (std::fabs(cells_d - cells) > 1e-9 || cells <= 0)
                throw std::invalid_argument(
                    "onsager_modulus: shift " + std::to_string(shift) +
                    " is not a positive integer multiple of the grid spacing");
            double total = 0.0;
            for (std::size_t t = 0; t < field.times.size(); ++t) {
                const auto& vel = field.velocity[t];
                double acc = 0.0;
                for (int i = 0; i < g.shape[0]; ++i)
                    for (int j = 0; j < g.shape[1]; ++j)
                        for (int k = 0; k < g.shape[2]; ++k) {
                            int is = axis == 0 ? PeriodicGrid::wrap(i + int(cells), g.shape[0]) : i;
                            int js = axis == 1 ? PeriodicGrid::wrap(j + int(cells), g.shape[1]) : j;
                            int ks = axis == 2 ? PeriodicGrid::wrap(k + int(cells), g.shape[2]) : k;
                            std::size_t a = g.index(i, j, k);
                            std::size_t b = g.index(is, js, ks);
                            double d2 = 0.0;
                            for (int c = 0; c < g.n; ++c) {
                                double d = vel[c][b] - vel[c][a];
                                d2 += d * d;
                            }
                            acc += std::pow(d2, 1.5);
                        }
                total += acc * g.cell_volume() * tweights[t];
            }
            theta = std::max(theta, total / shift);
        }
        out.push_back({shift, theta});
    }
    return out;
}

EnergyBudgetCache::EnergyBudgetCache(const SampledField& field, double nu)
    : field_(field), nu_(nu) {
    if (!field.has_pressure())
        throw std::invalid_argument("EnergyBudgetCache: field must carry pressure");
    SpectralOps ops(field.grid);
    const std::size_t cells = field.grid.size();
    for (std::size_t t = 0; t < field.times.size(); ++t) {
        auto s2 = speed_squared(field, int(t));
        std::vector<double> gsq(cells, 0.0);
        if (nu != 0.0) {
            for (int c = 0; c < field.dim(); ++c)
                for (int a = 0; a < field.dim(); ++a) {
                    auto d = ops.gradient_component(field.velocity[t][c], a);
                    for (std::size_t i = 0; i < cells; ++i) gsq[i] += d[i] * d[i];
                }
        }
        std::vector<std::vector<double>> flux(field.dim(), std::vector<double>(cells));
        const auto& p = field.pressure[t];
        for (int c = 0; c < field.dim(); ++c)
            for (std::size_t i = 0; i < cells; ++i)
                flux[c][i] = (s2[i] + 2.0 * p[i]) * field.velocity[t][c][i];
        speed2_.push_back(std::move(s2));
        gradsq_.push_back(std::move(gsq));
        flux_.push_back(std::move(flux));
    }
}

double EnergyBudgetCache::residual(const BumpSpec& bump, double t_a, double t_b,
                                   int time_smoothness) const {
    const auto& field = field_;
    const auto& g = field.grid;
    if (!(t_a < t_b)) throw std::invalid_argument("residual: requires t_a < t_b");
    auto find_sample = [&](double t) {
        int idx = field.time_index_nearest(t);
        if (std::fabs(field.times[idx] - t) > 1e-9)
            throw std::invalid_argument("residual: t = " + std::to_string(t) +
                                        " is not a sample time");
        return idx;
    };
    const int ia = find_sample(t_a);
    const int ib = find_sample(t_b);
    if (bump.radius * bump.profile.outer_ratio > g.box_length / 2)
        throw std::invalid_argument("residual: bump support exceeds the domain");

    // Time ramp w and its derivative.
    CutoffProfile ramp{0.0, 1.0, time_smoothness};
    auto wfun = [&](double t) { return 1.0 - ramp.value((t - t_a) / (t_b - t_a)); };
    auto wdot = [&](double t) { return -ramp.derivative((t - t_a) / (t_b - t_a)) / (t_b - t_a); };

    // Spatial bump, gradient, laplacian on the support.
    const double r = bump.radius;
    struct CellGeom {
        std::size_t idx;
        double psi;
        Point grad;
        double lap;
    };
    std::vector<CellGeom> cells;
    g.for_each_in_ball(bump.center, r * bump.profile.outer_ratio,
                       [&](std::size_t idx, const Point& x) {
                           double d = g.periodic_distance(x, bump.center);
                           CellGeom cg;
                           cg.idx = idx;
                           cg.psi = bump.profile.value(d / r);
                           double dpsi = bump.profile.derivative(d / r) / r;
                           double ddpsi = bump.profile.second_derivative(d / r) / (r * r);
                           Point dir = {0, 0, 0};
                           if (d > 1e-14) {
                               for (int a = 0; a < g.n; ++a) {
                                   double delta = x[a] - bump.center[a];
                                   delta -= g.box_length * std::round(delta / g.box_length);
                                   dir[a] = delta / d;
                               }
                           }
                           for (int a = 0; a < g.n; ++a) cg.grad[a] = dpsi * dir[a];
                           cg.lap = (d > 1e-14) ? ddpsi + dpsi * (g.n - 1) / d : 0.0;
                           cells.push_back(cg);
                       });
    const double vol = g.cell_volume();

    auto slice_terms = [&](int t) {
        // returns {int |u|^2 psi, int |grad u|^2 psi, int |u|^2 lap psi, int flux . grad psi}
        std::array<double, 4> s = {0, 0, 0, 0};
        const auto& s2 = speed2_[t];
        const auto& gsq = gradsq_[t];
        const auto& fl = flux_[t];
        for (const auto& cg : cells) {
            s[0] += s2[cg.idx] * cg.psi;
            s[1] += gsq[cg.idx] * cg.psi;
            s[2] += s2[cg.idx] * cg.lap;
            double dot = 0.0;
            for (int c = 0; c < g.n; ++c) dot += fl[c][cg.idx] * cg.grad[c];
            s[3] += dot;
        }
        for (auto& v : s) v *= vol;
        return s;
    };

    std::vector<std::array<double, 4>> terms;
    terms.reserve(ib - ia + 1);
    for (int t = ia; t <= ib; ++t) terms.push_back(slice_terms(t));

    double first = terms.front()[0] * wfun(field.times[ia]);
    double lhs = terms.back()[0] * wfun(field.times[ib]);
    double energy_scale = 0.0;
    for (const auto& s : terms) energy_scale = std::max(energy_scale, s[0]);

    // Trapezoid over the samples in [t_a, t_b].
    auto integrand = [&](int t) {
        const auto& s = terms[t - ia];
        double tt = field.times[t];
        double w = wfun(tt);
        double wd = wdot(tt);
        return std::array<double, 3>{-2.0 * nu_ * s[1] * w, s[0] * wd + nu_ * s[2] * w,
                                     s[3] * w};
    };
    double visc = 0.0, bulk = 0.0, flux = 0.0;
    auto prev3 = integrand(ia);
    for (int t = ia + 1; t <= ib; ++t) {
        auto cur = integrand(t);
        double dt = field.times[t] - field.times[t - 1];
        visc += 0.5 * dt * (prev3[0] + cur[0]);
        bulk += 0.5 * dt * (prev3[1] + cur[1]);
        flux += 0.5 * dt * (prev3[2] + cur[2]);
        prev3 = cur;
    }
    double rhs = first + visc + bulk + flux;
    double denom = std::max(std::fabs(lhs), energy_scale);
    if (denom == 0.0) return 0.0;
    return std::fabs(lhs - rhs) / denom;
}

double local_energy_residual(const SampledField& field, double nu, const BumpSpec& bump,
                             double t_a, double t_b) {
    EnergyBudgetCache cache(field, nu);
    return cache.residual(bump, t_a, t_b);
}

}  // namespace emtk
