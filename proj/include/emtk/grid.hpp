#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace emtk {

using Point = std::array<double, 3>;  // trailing coordinates unused below dimension n

// Uniform periodic grid on [0,L)^n with point samples at cell corners
// x_i = i L / N.  All integrals use the rectangle rule with cell volume
// (L/N1)...(L/Nn), which is spectrally accurate for smooth periodic data.
struct PeriodicGrid {
    int n = 0;
    std::array<int, 3> shape = {1, 1, 1};
    double box_length = 0.0;

    PeriodicGrid() = default;
    PeriodicGrid(int dim, std::array<int, 3> sh, double L) : n(dim), shape(sh), box_length(L) {
        if (dim < 1 || dim > 3) throw std::invalid_argument("PeriodicGrid: dimension must be 1..3");
        for (int a = dim; a < 3; ++a) shape[a] = 1;
        if (L <= 0) throw std::invalid_argument("PeriodicGrid: box length must be positive");
    }
    static PeriodicGrid cube(int dim, int N, double L) {
        return PeriodicGrid(dim, {N, N, N}, L);
    }

    std::size_t size() const {
        return std::size_t(shape[0]) * std::size_t(shape[1]) * std::size_t(shape[2]);
    }
    double spacing(int axis) const { return box_length / shape[axis]; }
    double cell_volume() const {
        double v = 1.0;
        for (int a = 0; a < n; ++a) v *= spacing(a);
        return v;
    }
    std::size_t index(int i, int j, int k) const {
        return (std::size_t(i) * shape[1] + j) * shape[2] + k;
    }
    Point coords(int i, int j, int k) const {
        return {i * spacing(0), n > 1 ? j * spacing(1) : 0.0, n > 2 ? k * spacing(2) : 0.0};
    }

    double periodic_delta(double a, double b) const {
        double d = std::fabs(a - b);
        d = std::fmod(d, box_length);
        return std::min(d, box_length - d);
    }
    double periodic_distance2(const Point& a, const Point& b) const {
        double s = 0.0;
        for (int ax = 0; ax < n; ++ax) {
            double d = periodic_delta(a[ax], b[ax]);
            s += d * d;
        }
        return s;
    }
    double periodic_distance(const Point& a, const Point& b) const {
        return std::sqrt(periodic_distance2(a, b));
    }

    // Visit every cell whose sample point lies within distance r of center
    // (closed ball, periodic wrap).  Iterates the index bounding box only.
    template <typename Fn>
    void for_each_in_ball(const Point& center, double r, Fn&& fn) const {
        if (r < 0) return;
        std::array<int, 3> lo = {0, 0, 0}, hi = {0, 0, 0};
        for (int a = 0; a < n; ++a) {
            double h = spacing(a);
            int span = int(std::floor(r / h)) + 1;
            int c = int(std::floor(center[a] / h));
            if (2 * span + 1 >= shape[a]) {
                lo[a] = 0;
                hi[a] = shape[a] - 1;
            } else {
                lo[a] = c - span;
                hi[a] = c + span;
            }
        }
        const double r2 = r * r;
        for (int i = lo[0]; i <= hi[0]; ++i) {
            int iw = wrap(i, shape[0]);
            for (int j = lo[1]; j <= hi[1]; ++j) {
                int jw = wrap(j, shape[1]);
                for (int k = lo[2]; k <= hi[2]; ++k) {
                    int kw = wrap(k, shape[2]);
                    Point x = coords(iw, jw, kw);
                    if (periodic_distance2(x, center) <= r2) fn(index(iw, jw, kw), x);
                }
            }
        }
    }

    static int wrap(int i, int N) {
        int m = i % N;
        return m < 0 ? m + N : m;
    }

    bool operator==(const PeriodicGrid& o) const {
        return n == o.n && shape == o.shape && box_length == o.box_length;
    }
};

inline double grid_integral(const PeriodicGrid& g, const std::vector<double>& data) {
    double s = 0.0;
    for (double v : data) s += v;
    return s * g.cell_volume();
}

inline double ball_integral(const PeriodicGrid& g, const std::vector<double>& data,
                            const Point& center, double r) {
    double s = 0.0;
    g.for_each_in_ball(center, r, [&](std::size_t idx, const Point&) { s += data[idx]; });
    return s * g.cell_volume();
}

// Rectangle-rule count version, for measured ball volumes.
inline double ball_volume(const PeriodicGrid& g, const Point& center, double r) {
    std::size_t count = 0;
    g.for_each_in_ball(center, r, [&](std::size_t, const Point&) { ++count; });
    return double(count) * g.cell_volume();
}

}  // namespace emtk
