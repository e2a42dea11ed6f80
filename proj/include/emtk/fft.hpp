#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "emtk/grid.hpp"

namespace emtk {

// Real <-> complex FFT on a periodic grid (FFTW r2c/c2r, row-major, last
// axis halved).  Backward is normalized so backward(forward(x)) == x.
// Plans and scratch buffers are confined to one workspace; create one
// workspace per thread if transforming in parallel.
class Fft {
  public:
    explicit Fft(const PeriodicGrid& grid);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    const PeriodicGrid& grid() const { return grid_; }
    std::size_t complex_size() const { return csize_; }

    std::vector<std::complex<double>> forward(const std::vector<double>& real) const;
    std::vector<double> backward(const std::vector<std::complex<double>>& spec) const;

    // Signed wavenumber (2 pi / L times the signed integer index) for the
    // complex-layout index along `axis`.
    double wavenumber(int axis, int idx) const;

    // Visit every complex-layout entry with its flat index and wavevector.
    template <typename Fn>
    void for_each_mode(Fn&& fn) const {
        const int n = grid_.n;
        const int nx = grid_.shape[0];
        const int ny = n > 1 ? grid_.shape[1] : 1;
        std::array<int, 3> cshape = cshape_;
        std::size_t flat = 0;
        for (int i = 0; i < cshape[0]; ++i)
            for (int j = 0; j < cshape[1]; ++j)
                for (int k = 0; k < cshape[2]; ++k, ++flat) {
                    Point kv = {wavenumber(0, i), n > 1 ? wavenumber(1, j) : 0.0,
                                n > 2 ? wavenumber(2, k) : 0.0};
                    fn(flat, kv);
                }
        (void)nx;
        (void)ny;
    }

  private:
    PeriodicGrid grid_;
    std::array<int, 3> cshape_;
    std::size_t csize_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace emtk
