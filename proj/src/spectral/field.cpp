#include "lady/spectral/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace lady {

int component_count(Rank rank, int dim) {
    switch (rank) {
    case Rank::scalar: return 1;
    case Rank::vector: return dim;
    case Rank::tensor: return dim * dim;
    }
    return 1;
}

SpectralField::SpectralField(const Grid& grid, Rank rank)
    : grid_(grid), rank_(rank), components_(component_count(rank, grid.dim())),
      data_(static_cast<std::size_t>(components_) * grid.spectral_size()) {}

std::span<Complex> SpectralField::component(int c) {
    return std::span<Complex>(data_).subspan(offset(c), grid_.spectral_size());
}

std::span<const Complex> SpectralField::component(int c) const {
    return std::span<const Complex>(data_).subspan(offset(c), grid_.spectral_size());
}

Complex SpectralField::coefficient(int c, const Wavevector& k) const {
    bool conj = false;
    const std::size_t idx = grid_.spectral_index(k, &conj);
    const Complex v = (*this)(c, idx);
    return conj ? std::conj(v) : v;
}

void SpectralField::set_coefficient(int c, const Wavevector& k, Complex value) {
    bool conj = false;
    const std::size_t idx = grid_.spectral_index(k, &conj);
    (*this)(c, idx) = conj ? std::conj(value) : value;
    const int last = k[static_cast<std::size_t>(grid_.dim() - 1)];
    if (last == 0 || std::abs(last) == grid_.n() / 2) {
        Wavevector mk{-k[0], -k[1], -k[2]};
        mk[static_cast<std::size_t>(grid_.dim() - 1)] = std::abs(last);
        const std::size_t partner = grid_.spectral_index(mk);
        (*this)(c, partner) = conj ? value : std::conj(value);
    }
}

void SpectralField::set_zero() { std::fill(data_.begin(), data_.end(), Complex{}); }

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    if (!same_shape(other)) throw std::invalid_argument("spectral field shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    if (!same_shape(other)) throw std::invalid_argument("spectral field shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& v : data_) v *= s;
    return *this;
}

void SpectralField::axpy(double s, const SpectralField& other) {
    if (!same_shape(other)) throw std::invalid_argument("spectral field shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * other.data_[i];
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    SpectralField r = a;
    r -= b;
    return r;
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    SpectralField r = a;
    r += b;
    return r;
}

SpectralField operator*(double s, const SpectralField& a) {
    SpectralField r = a;
    r *= s;
    return r;
}

PhysicalField::PhysicalField(const Grid& grid, Rank rank)
    : grid_(grid), rank_(rank), components_(component_count(rank, grid.dim())),
      data_(static_cast<std::size_t>(components_) * grid.physical_size()) {}

std::span<double> PhysicalField::component(int c) {
    return std::span<double>(data_).subspan(offset(c), grid_.physical_size());
}

std::span<const double> PhysicalField::component(int c) const {
    return std::span<const double>(data_).subspan(offset(c), grid_.physical_size());
}

double PhysicalField::coordinate(std::size_t node, int axis) const {
    const auto n = static_cast<std::size_t>(grid_.n());
    for (int a = grid_.dim() - 1; a > axis; --a) node /= n;
    return static_cast<double>(node % n) * grid_.spacing();
}

void to_physical(const SpectralField& f, PhysicalField& out) {
    if (f.grid() != out.grid() || f.components() != out.components()) {
        throw std::invalid_argument("to_physical: shape mismatch");
    }
    const Grid& g = f.grid();
    std::vector<Complex> scratch(g.spectral_size());
    for (int c = 0; c < f.components(); ++c) {
        auto src = f.component(c);
        std::copy(src.begin(), src.end(), scratch.begin());
        g.inverse(scratch.data(), out.component(c).data());
    }
}

PhysicalField to_physical(const SpectralField& f) {
    PhysicalField out(f.grid(), f.rank());
    to_physical(f, out);
    return out;
}

void to_spectral(const PhysicalField& gphys, SpectralField& out) {
    if (gphys.grid() != out.grid() || gphys.components() != out.components()) {
        throw std::invalid_argument("to_spectral: shape mismatch");
    }
    const Grid& g = gphys.grid();
    const double scale = 1.0 / static_cast<double>(g.physical_size());
    for (int c = 0; c < gphys.components(); ++c) {
        auto dst = out.component(c);
        g.forward(gphys.component(c).data(), dst.data());
        for (auto& v : dst) v *= scale;
    }
}

SpectralField to_spectral(const PhysicalField& g) {
    SpectralField out(g.grid(), g.rank());
    to_spectral(g, out);
    return out;
}

void enforce_hermitian(SpectralField& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    const int d = g.dim();
    const int hn = g.half_n();
    const std::size_t plane = g.spectral_size() / static_cast<std::size_t>(hn);
    for (int c = 0; c < f.components(); ++c) {
        auto comp = f.component(c);
        for (int last : {0, n / 2}) {
            for (std::size_t p = 0; p < plane; ++p) {
                // Partner of the leading indices (i1[, i2]) is (-i1[, -i2]) mod N.
                std::size_t q = 0;
                if (d == 2) {
                    q = static_cast<std::size_t>((n - static_cast<int>(p)) % n);
                } else {
                    const int i1 = static_cast<int>(p) / n;
                    const int i2 = static_cast<int>(p) % n;
                    q = static_cast<std::size_t>(((n - i1) % n) * n + (n - i2) % n);
                }
                if (q < p) continue;
                const std::size_t a = p * static_cast<std::size_t>(hn) + static_cast<std::size_t>(last);
                const std::size_t b = q * static_cast<std::size_t>(hn) + static_cast<std::size_t>(last);
                if (a == b) {
                    comp[a] = Complex(comp[a].real(), 0.0);
                } else {
                    const Complex avg = 0.5 * (comp[a] + std::conj(comp[b]));
                    comp[a] = avg;
                    comp[b] = std::conj(avg);
                }
            }
        }
    }
}

}  // namespace lady
