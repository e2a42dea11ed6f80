#include "emtk/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace emtk {

namespace {

std::vector<double> speed_squared_slice(const SampledField& field, int t) {
    std::vector<double> s2(field.grid.size(), 0.0);
    for (int c = 0; c < field.dim(); ++c)
        for (std::size_t i = 0; i < s2.size(); ++i)
            s2[i] += field.velocity[t][c][i] * field.velocity[t][c][i];
    return s2;
}

double bump_pairing(const PeriodicGrid& g, const std::vector<double>& density,
                    const BumpSpec& b) {
    double acc = 0.0;
    g.for_each_in_ball(b.center, b.radius * b.profile.outer_ratio,
                       [&](std::size_t idx, const Point& x) {
                           double d = g.periodic_distance(x, b.center);
                           acc += density[idx] * b.profile.value(d / b.radius);
                       });
    return acc * g.cell_volume();
}

}  // namespace

EnergyMeasureApprox build_energy_measure(const SampledField& field, int trailing_count) {
    if (trailing_count < 2)
        throw std::invalid_argument("build_energy_measure: trailing count must be >= 2");
    if (std::size_t(trailing_count) > field.times.size())
        throw std::invalid_argument("build_energy_measure: trailing count exceeds sample count");
    EnergyMeasureApprox out;
    const int T = int(field.times.size());
    for (int t = T - trailing_count; t < T; ++t) {
        SampledMeasure m;
        m.grid = field.grid;
        m.density = speed_squared_slice(field, t);
        out.snapshot_times.push_back(field.times[t]);
        out.snapshots.push_back(std::move(m));
    }
    out.limit = out.snapshots.back();

    // Fixed panel of 10 bumps: deterministic centers, two radii.
    const double L = field.grid.box_length;
    for (int b = 0; b < 10; ++b) {
        BumpSpec spec;
        double fi = (b % 5) / 5.0;
        double fj = (b % 3) / 3.0;
        spec.center = {L * (0.1 + 0.8 * fi), L * (0.15 + 0.7 * fj), L * 0.5};
        spec.radius = (b < 5) ? L / 8 : L / 5;
        spec.profile = CutoffProfile::standard_bump();
        out.bump_panel.push_back(spec);
    }
    for (const auto& b : out.bump_panel) {
        std::vector<double> gaps;
        double final_pairing = bump_pairing(field.grid, out.limit.density, b);
        for (const auto& snap : out.snapshots)
            gaps.push_back(std::fabs(bump_pairing(field.grid, snap.density, b) - final_pairing));
        out.cauchy_gaps.push_back(std::move(gaps));
    }
    return out;
}

DefectReport defect_decomposition(const EnergyMeasureApprox& E,
                                  const std::vector<double>& reference_density) {
    const auto& g = E.limit.grid;
    if (reference_density.size() != g.size())
        throw std::invalid_argument("defect_decomposition: grid mismatch");
    DefectReport report{};
    report.theta.grid = g;
    report.theta.density.assign(g.size(), 0.0);
    double neg = 0.0, tv = 0.0, osc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        double d = E.limit.density[i] - reference_density[i];
        tv += std::fabs(d);
        if (d >= 0) {
            report.theta.density[i] = d;
            osc += d;
        } else {
            neg += -d;
        }
    }
    const double vol = g.cell_volume();
    report.negative_part_mass = neg * vol;
    report.oscillation_indicator = osc * vol;
    report.total_variation = tv * vol;
    double atom_mass = 0.0;
    for (const auto& a : E.limit.atoms) {
        report.theta.atoms.push_back(a);
        atom_mass += a.weight;
    }
    report.concentration_indicator = atom_mass;
    report.total_variation += atom_mass;
    return report;
}

std::string DimensionReport::csv(const Point& x) const {
    std::ostringstream out;
    out << "x0,x1,x2,level,r,mass,slope\n";
    char buf[256];
    for (std::size_t j = 0; j < radii.size(); ++j) {
        double slope = (j < slopes.size()) ? slopes[j] : std::numeric_limits<double>::quiet_NaN();
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%zu,%.12g,%.12g,%.12g\n", x[0], x[1],
                      x[2], j, radii[j], masses[j], slope);
        out << buf;
    }
    return out.str();
}

DimensionReport lower_local_dimension(const SampledMeasure& m, const Point& x,
                                      const std::vector<double>& ladder) {
    if (ladder.size() < 6)
        throw std::invalid_argument("lower_local_dimension: ladder must have >= 6 levels");
    for (std::size_t j = 1; j < ladder.size(); ++j)
        if (!(ladder[j] < ladder[j - 1]))
            throw std::invalid_argument("lower_local_dimension: ladder must be decreasing");
    DimensionReport report;
    report.radii = ladder;
    report.resolution_floor = ladder.back();
    for (double r : ladder) report.masses.push_back(measure_ball(m, x, r));
    for (std::size_t j = 0; j + 1 < ladder.size(); ++j) {
        if (report.masses[j] <= 0.0 || report.masses[j + 1] <= 0.0) {
            report.no_local_mass = true;
            report.estimate = std::numeric_limits<double>::infinity();
            return report;
        }
        report.slopes.push_back(std::log(report.masses[j + 1] / report.masses[j]) /
                                std::log(ladder[j + 1] / ladder[j]));
    }
    std::size_t tail_start = report.slopes.size() / 2;
    double est = std::numeric_limits<double>::infinity();
    for (std::size_t j = tail_start; j < report.slopes.size(); ++j)
        est = std::min(est, report.slopes[j]);
    report.estimate = est;
    return report;
}

DensityReport upper_s_density(const SampledMeasure& m, const Point& x, double s,
                              const std::vector<double>& ladder) {
    if (ladder.size() < 2) throw std::invalid_argument("upper_s_density: ladder too short");
    DensityReport report{};
    for (double r : ladder)
        report.sequence.push_back(measure_ball(m, x, r) / std::pow(2.0 * r, s));
    std::size_t tail_start = ladder.size() / 2;
    report.value = 0.0;
    report.tail_max = 0.0;
    report.tail_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = tail_start; j < ladder.size(); ++j) {
        report.tail_max = std::max(report.tail_max, report.sequence[j]);
        report.tail_min = std::min(report.tail_min, report.sequence[j]);
    }
    report.value = report.tail_max;
    return report;
}

ConcentrationDimResult concentration_dim_lower_bound(const SampledMeasure& m,
                                                     const std::vector<double>& s_grid,
                                                     const std::vector<double>& ladder,
                                                     int lattice_per_axis) {
    if (m.total_mass() <= 0.0)
        throw std::invalid_argument("concentration_dim_lower_bound: measure must be nonzero");
    if (ladder.size() < 2)
        throw std::invalid_argument("concentration_dim_lower_bound: ladder too short");

    // Deterministic centers: grid-aligned lattice plus an atom subsample.
    std::vector<Point> centers;
    const auto& g = m.grid;
    for (int i = 0; i < lattice_per_axis; ++i)
        for (int j = 0; j < (g.n > 1 ? lattice_per_axis : 1); ++j)
            for (int k = 0; k < (g.n > 2 ? lattice_per_axis : 1); ++k)
                centers.push_back({i * g.box_length / lattice_per_axis,
                                   j * g.box_length / lattice_per_axis,
                                   k * g.box_length / lattice_per_axis});
    if (!m.atoms.empty()) {
        std::size_t stride = std::max<std::size_t>(1, m.atoms.size() / 512);
        for (std::size_t a = 0; a < m.atoms.size(); a += stride)
            centers.push_back(m.atoms[a].position);
    }

    // Per-level maximal ball mass over the centers.
    std::vector<double> max_mass(ladder.size(), 0.0);
    for (std::size_t lev = 0; lev < ladder.size(); ++lev)
        for (const auto& c : centers)
            max_mass[lev] = std::max(max_mass[lev], measure_ball(m, c, ladder[lev]));

    ConcentrationDimResult out;
    out.s_grid = s_grid;
    out.resolution_floor = ladder.back();
    out.s_lower_bound = 0.0;
    const double growth_tol = 1.02;
    for (double s : s_grid) {
        std::vector<double> d;
        for (std::size_t lev = 0; lev < ladder.size(); ++lev)
            d.push_back(max_mass[lev] / std::pow(ladder[lev], s));
        std::size_t last = d.size() - 1;
        bool ok = d[last] <= growth_tol * d[last - 1];
        out.certified.push_back(ok);
        out.density_sup.push_back(std::move(d));
        if (ok) out.s_lower_bound = std::max(out.s_lower_bound, s);
    }
    return out;
}

}  // namespace emtk
