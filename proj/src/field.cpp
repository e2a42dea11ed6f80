#include "emtk/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emtk {

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Smoothstep S_k on [0,1]: S_k(0)=0, S_k(1)=1, C^k at both ends.
// S_k'(z) = c_k z^k (1-z)^k with c_k = (2k+1) C(2k,k).
double smoothstep(int k, double z) {
    if (z <= 0) return 0.0;
    if (z >= 1) return 1.0;
    double ck = (2 * k + 1) * binomial(2 * k, k);
    double s = 0.0;
    for (int i = 0; i <= k; ++i)
        s += binomial(k, i) * ((i % 2) ? -1.0 : 1.0) * std::pow(z, k + i + 1) / (k + i + 1);
    return ck * s;
}

double smoothstep_deriv(int k, double z) {
    if (z <= 0 || z >= 1) return 0.0;
    double ck = (2 * k + 1) * binomial(2 * k, k);
    return ck * std::pow(z, k) * std::pow(1 - z, k);
}

double smoothstep_deriv2(int k, double z) {
    if (z <= 0 || z >= 1) return 0.0;
    double ck = (2 * k + 1) * binomial(2 * k, k);
    return ck * k * std::pow(z, k - 1) * std::pow(1 - z, k - 1) * (1 - 2 * z);
}

}  // namespace

double CutoffProfile::value(double s) const {
    if (s <= inner_ratio) return 1.0;
    if (s >= outer_ratio) return 0.0;
    return 1.0 - smoothstep(smoothness, (s - inner_ratio) / (outer_ratio - inner_ratio));
}

double CutoffProfile::derivative(double s) const {
    if (s <= inner_ratio || s >= outer_ratio) return 0.0;
    double w = outer_ratio - inner_ratio;
    return -smoothstep_deriv(smoothness, (s - inner_ratio) / w) / w;
}

double CutoffProfile::second_derivative(double s) const {
    if (s <= inner_ratio || s >= outer_ratio) return 0.0;
    double w = outer_ratio - inner_ratio;
    return -smoothstep_deriv2(smoothness, (s - inner_ratio) / w) / (w * w);
}

double CutoffProfile::lipschitz_constant() const {
    int k = smoothness;
    double ck = (2 * k + 1) * binomial(2 * k, k);
    return ck * std::pow(0.25, k) / (outer_ratio - inner_ratio);
}

int SampledField::time_index_nearest(double t) const {
    if (times.empty()) throw std::runtime_error("SampledField: no time samples");
    auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.end()) return int(times.size()) - 1;
    if (it == times.begin()) return 0;
    auto prev = it - 1;
    return (t - *prev <= *it - t) ? int(prev - times.begin()) : int(it - times.begin());
}

void SampledField::validate_structure() const {
    if (grid.n < 2 || grid.n > 3)
        throw std::invalid_argument("SampledField: dimension must be 2 or 3");
    if (velocity.size() != times.size())
        throw std::invalid_argument("SampledField: velocity/time count mismatch");
    for (std::size_t t = 0; t < times.size(); ++t) {
        if (velocity[t].size() != std::size_t(grid.n))
            throw std::invalid_argument("SampledField: component count must equal n");
        for (const auto& comp : velocity[t])
            if (comp.size() != grid.size())
                throw std::invalid_argument("SampledField: component size mismatch");
    }
    if (!pressure.empty()) {
        if (pressure.size() != times.size())
            throw std::invalid_argument("SampledField: pressure/time count mismatch");
        for (const auto& p : pressure)
            if (p.size() != grid.size())
                throw std::invalid_argument("SampledField: pressure size mismatch");
    }
    for (std::size_t t = 1; t < times.size(); ++t)
        if (!(times[t] > times[t - 1]))
            throw std::invalid_argument("SampledField: times must be strictly increasing");
    for (double t : times)
        if (t < -1.0 || t > 0.0)
            throw std::invalid_argument("SampledField: times must lie in [-1, 0]");
}

double SampledMeasure::total_mass() const {
    double m = density.empty() ? 0.0 : grid_integral(grid, density);
    for (const auto& a : atoms) m += a.weight;
    return m;
}

void SampledMeasure::validate() const {
    if (!density.empty() && density.size() != grid.size())
        throw std::invalid_argument("SampledMeasure: density size mismatch");
    for (double v : density)
        if (v < 0 || std::isnan(v)) throw std::invalid_argument("SampledMeasure: negative density");
    for (const auto& a : atoms) {
        if (!(a.weight > 0)) throw std::invalid_argument("SampledMeasure: atom weight must be > 0");
        for (int ax = 0; ax < grid.n; ++ax)
            if (a.position[ax] < 0 || a.position[ax] >= grid.box_length)
                throw std::invalid_argument("SampledMeasure: atom outside the box");
    }
}

double measure_ball(const SampledMeasure& m, const Point& center, double r) {
    if (!(r > 0)) throw std::domain_error("measure_ball: radius must be positive");
    double mass = 0.0;
    if (!m.density.empty()) mass += ball_integral(m.grid, m.density, center, r);
    const double r2 = r * r;
    for (const auto& a : m.atoms)
        if (m.grid.periodic_distance2(a.position, center) <= r2) mass += a.weight;
    return mass;
}

SampledField window(const SampledField& field, const Point& center, double radius,
                    double t_lo, double t_hi) {
    SampledField out;
    out.grid = field.grid;
    const double r2 = radius * radius;
    std::vector<char> inside(field.grid.size(), 0);
    field.grid.for_each_in_ball(center, radius, [&](std::size_t idx, const Point&) {
        inside[idx] = 1;
    });
    (void)r2;
    for (std::size_t t = 0; t < field.times.size(); ++t) {
        if (field.times[t] < t_lo || field.times[t] > t_hi) continue;
        out.times.push_back(field.times[t]);
        out.velocity.emplace_back();
        auto& vt = out.velocity.back();
        for (const auto& comp : field.velocity[t]) {
            std::vector<double> masked(comp.size(), 0.0);
            for (std::size_t i = 0; i < comp.size(); ++i)
                if (inside[i]) masked[i] = comp[i];
            vt.push_back(std::move(masked));
        }
        if (field.has_pressure()) {
            std::vector<double> masked(field.pressure[t].size(), 0.0);
            for (std::size_t i = 0; i < masked.size(); ++i)
                if (inside[i]) masked[i] = field.pressure[t][i];
            out.pressure.push_back(std::move(masked));
        }
    }
    if (out.times.empty())
        throw std::invalid_argument("window: empty time selection [" + std::to_string(t_lo) +
                                    ", " + std::to_string(t_hi) + "]");
    return out;
}

}  // namespace emtk
