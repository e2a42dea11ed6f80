#include "emtk/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <stdexcept>

namespace emtk {

struct Fft::Impl {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    double* rbuf = nullptr;
    fftw_complex* cbuf = nullptr;
    std::size_t rsize = 0;
    std::size_t csize = 0;

    ~Impl() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (rbuf) fftw_free(rbuf);
        if (cbuf) fftw_free(cbuf);
    }
};

Fft::Fft(const PeriodicGrid& grid) : grid_(grid), impl_(new Impl) {
    const int n = grid.n;
    cshape_ = {grid.shape[0], n > 1 ? grid.shape[1] : 1, n > 2 ? grid.shape[2] : 1};
    cshape_[n - 1] = grid.shape[n - 1] / 2 + 1;
    csize_ = std::size_t(cshape_[0]) * cshape_[1] * cshape_[2];

    impl_->rsize = grid.size();
    impl_->csize = csize_;
    impl_->rbuf = fftw_alloc_real(impl_->rsize);
    impl_->cbuf = fftw_alloc_complex(impl_->csize);
    if (!impl_->rbuf || !impl_->cbuf) throw std::bad_alloc();

    int dims[3] = {grid.shape[0], grid.shape[1], grid.shape[2]};
    impl_->fwd = fftw_plan_dft_r2c(n, dims, impl_->rbuf, impl_->cbuf, FFTW_ESTIMATE);
    impl_->bwd = fftw_plan_dft_c2r(n, dims, impl_->cbuf, impl_->rbuf, FFTW_ESTIMATE);
    if (!impl_->fwd || !impl_->bwd) throw std::runtime_error("FFTW plan creation failed");
}

Fft::~Fft() = default;

std::vector<std::complex<double>> Fft::forward(const std::vector<double>& real) const {
    if (real.size() != impl_->rsize) throw std::invalid_argument("Fft::forward: size mismatch");
    std::memcpy(impl_->rbuf, real.data(), impl_->rsize * sizeof(double));
    fftw_execute(impl_->fwd);
    std::vector<std::complex<double>> out(csize_);
    std::memcpy(reinterpret_cast<double*>(out.data()), impl_->cbuf,
                csize_ * sizeof(fftw_complex));
    const double scale = 1.0 / double(impl_->rsize);
    for (auto& v : out) v *= scale;
    return out;
}

std::vector<double> Fft::backward(const std::vector<std::complex<double>>& spec) const {
    if (spec.size() != csize_) throw std::invalid_argument("Fft::backward: size mismatch");
    std::memcpy(impl_->cbuf, reinterpret_cast<const double*>(spec.data()),
                csize_ * sizeof(fftw_complex));
    fftw_execute(impl_->bwd);
    std::vector<double> out(impl_->rsize);
    std::memcpy(out.data(), impl_->rbuf, impl_->rsize * sizeof(double));
    return out;
}

double Fft::wavenumber(int axis, int idx) const {
    const int N = grid_.shape[axis];
    int s = idx;
    if (axis != grid_.n - 1 && idx > N / 2) s = idx - N;
    return 2.0 * M_PI / grid_.box_length * s;
}

}  // namespace emtk
