#include "lady/spectral/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace lady {

namespace {

// The FFTW planner is not re-entrant; execution with the new-array API is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct Grid::Tables {
    int dim = 0;
    int n = 0;
    std::vector<int> wavevectors;  // dim entries per mode
    std::vector<double> k2;
    std::vector<std::vector<double>> kd;
    std::vector<double> weight;
    std::vector<unsigned char> mask;
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;

    ~Tables() {
        std::lock_guard lock(planner_mutex());
        if (r2c) fftw_destroy_plan(r2c);
        if (c2r) fftw_destroy_plan(c2r);
    }
};

Grid::Grid(int dim, int n) : dim_(dim), n_(n) {
    if (dim != 2 && dim != 3) {
        throw std::invalid_argument("grid dimension must be 2 or 3, got " + std::to_string(dim));
    }
    if (n < 8 || n % 2 != 0) {
        throw std::invalid_argument("grid size must be even and >= 8, got " + std::to_string(n));
    }
    physical_size_ = 1;
    for (int a = 0; a < dim; ++a) physical_size_ *= static_cast<std::size_t>(n);
    spectral_size_ = physical_size_ / static_cast<std::size_t>(n) * static_cast<std::size_t>(half_n());

    auto t = std::make_shared<Tables>();
    t->dim = dim;
    t->n = n;
    t->wavevectors.resize(spectral_size_ * static_cast<std::size_t>(dim));
    t->k2.resize(spectral_size_);
    t->kd.assign(static_cast<std::size_t>(dim), std::vector<double>(spectral_size_));
    t->weight.resize(spectral_size_);
    t->mask.resize(spectral_size_);

    const int cutoff = dealias_cutoff();
    const int hn = half_n();
    for (std::size_t flat = 0; flat < spectral_size_; ++flat) {
        std::size_t rem = flat;
        int idx[3] = {0, 0, 0};
        idx[dim - 1] = static_cast<int>(rem % static_cast<std::size_t>(hn));
        rem /= static_cast<std::size_t>(hn);
        for (int a = dim - 2; a >= 0; --a) {
            idx[a] = static_cast<int>(rem % static_cast<std::size_t>(n));
            rem /= static_cast<std::size_t>(n);
        }
        double k2 = 0.0;
        bool keep = true;
        for (int a = 0; a < dim; ++a) {
            const int k = (a == dim - 1) ? idx[a] : wavenumber(idx[a]);
            t->wavevectors[flat * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)] = k;
            k2 += static_cast<double>(k) * k;
            const bool nyquist = std::abs(k) == n / 2;
            t->kd[static_cast<std::size_t>(a)][flat] = nyquist ? 0.0 : static_cast<double>(k);
            if (std::abs(k) > cutoff) keep = false;
        }
        t->k2[flat] = k2;
        const int last = idx[dim - 1];
        t->weight[flat] = (last == 0 || last == n / 2) ? 1.0 : 2.0;
        t->mask[flat] = keep ? 1 : 0;
    }

    int dims[3] = {n, n, n};
    std::vector<double> rbuf(physical_size_);
    std::vector<std::complex<double>> cbuf(spectral_size_);
    {
        std::lock_guard lock(planner_mutex());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        t->r2c = fftw_plan_dft_r2c(dim, dims, rbuf.data(),
                                   reinterpret_cast<fftw_complex*>(cbuf.data()), flags);
        t->c2r = fftw_plan_dft_c2r(dim, dims, reinterpret_cast<fftw_complex*>(cbuf.data()),
                                   rbuf.data(), flags);
    }
    if (!t->r2c || !t->c2r) throw std::runtime_error("FFTW planning failed");
    tables_ = std::move(t);
}

Wavevector Grid::wavevector(std::size_t flat) const {
    Wavevector k{0, 0, 0};
    const int* w = tables_->wavevectors.data() + flat * static_cast<std::size_t>(dim_);
    for (int a = 0; a < dim_; ++a) k[static_cast<std::size_t>(a)] = w[a];
    return k;
}

std::size_t Grid::spectral_index(const Wavevector& kin, bool* conjugate) const {
    Wavevector k = kin;
    bool conj = false;
    if (k[static_cast<std::size_t>(dim_ - 1)] < 0) {
        for (int a = 0; a < dim_; ++a) k[static_cast<std::size_t>(a)] = -k[static_cast<std::size_t>(a)];
        conj = true;
    }
    if (conjugate) *conjugate = conj;
    std::size_t flat = 0;
    for (int a = 0; a < dim_ - 1; ++a) {
        flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(axis_index(k[static_cast<std::size_t>(a)]));
    }
    const int last = k[static_cast<std::size_t>(dim_ - 1)];
    if (last > n_ / 2) throw std::out_of_range("wavevector outside the stored spectrum");
    return flat * static_cast<std::size_t>(half_n()) + static_cast<std::size_t>(last);
}

std::span<const double> Grid::k_squared() const { return tables_->k2; }

std::span<const double> Grid::derivative_wavenumber(int axis) const {
    return tables_->kd.at(static_cast<std::size_t>(axis));
}

std::span<const double> Grid::mode_weight() const { return tables_->weight; }

std::span<const unsigned char> Grid::dealias_mask() const { return tables_->mask; }

void Grid::forward(const double* in, std::complex<double>* out) const {
    // Out-of-place r2c leaves its input untouched.
    fftw_execute_dft_r2c(tables_->r2c, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void Grid::inverse(std::complex<double>* in, double* out) const {
    fftw_execute_dft_c2r(tables_->c2r, reinterpret_cast<fftw_complex*>(in), out);
}

}  // namespace lady
