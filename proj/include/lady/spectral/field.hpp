#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "lady/spectral/grid.hpp"

namespace lady {

using Complex = std::complex<double>;

enum class Rank { scalar, vector, tensor };

/// i k z without the NaN bookkeeping of a general complex product.
inline Complex times_ik(double k, Complex z) { return {-k * z.imag(), k * z.real()}; }

/// Number of stored components: 1, d or d*d. Tensor component (i, j) lives at i*d + j.
int component_count(Rank rank, int dim);

/// Fourier coefficients of a real field, one half-spectrum block per component.
/// Coefficients are normalized so that the k = 0 entry is the spatial mean.
class SpectralField {
public:
    SpectralField(const Grid& grid, Rank rank);

    const Grid& grid() const { return grid_; }
    Rank rank() const { return rank_; }
    int components() const { return components_; }

    std::span<Complex> component(int c);
    std::span<const Complex> component(int c) const;
    std::span<Complex> data() { return data_; }
    std::span<const Complex> data() const { return data_; }

    Complex& operator()(int c, std::size_t mode) { return data_[offset(c) + mode]; }
    const Complex& operator()(int c, std::size_t mode) const { return data_[offset(c) + mode]; }

    /// Coefficient at an arbitrary wavevector, resolving the unstored half by conjugation.
    Complex coefficient(int c, const Wavevector& k) const;
    /// Writes a coefficient and its Hermitian partner when the latter is stored too.
    void set_coefficient(int c, const Wavevector& k, Complex value);

    void set_zero();
    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double s);
    /// this += s * other
    void axpy(double s, const SpectralField& other);

    bool same_shape(const SpectralField& other) const {
        return grid_ == other.grid_ && rank_ == other.rank_;
    }

private:
    std::size_t offset(int c) const { return static_cast<std::size_t>(c) * grid_.spectral_size(); }

    Grid grid_;
    Rank rank_;
    int components_;
    std::vector<Complex> data_;
};

SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& a);

/// Real nodal values, one N^d block per component.
class PhysicalField {
public:
    PhysicalField(const Grid& grid, Rank rank);

    const Grid& grid() const { return grid_; }
    Rank rank() const { return rank_; }
    int components() const { return components_; }

    std::span<double> component(int c);
    std::span<const double> component(int c) const;
    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    double& operator()(int c, std::size_t node) { return data_[offset(c) + node]; }
    double operator()(int c, std::size_t node) const { return data_[offset(c) + node]; }

    /// Coordinate of node `node` along `axis`.
    double coordinate(std::size_t node, int axis) const;

    bool same_shape(const PhysicalField& other) const {
        return grid_ == other.grid_ && rank_ == other.rank_;
    }

private:
    std::size_t offset(int c) const { return static_cast<std::size_t>(c) * grid_.physical_size(); }

    Grid grid_;
    Rank rank_;
    int components_;
    std::vector<double> data_;
};

/// Inverse transform. Throws std::invalid_argument on grid or rank mismatch.
void to_physical(const SpectralField& f, PhysicalField& out);
PhysicalField to_physical(const SpectralField& f);
/// Forward transform, normalized by N^d.
void to_spectral(const PhysicalField& g, SpectralField& out);
SpectralField to_spectral(const PhysicalField& g);

/// Symmetrizes the self-conjugate planes so that c(-k) = conj(c(k)) holds exactly.
void enforce_hermitian(SpectralField& f);

}  // namespace lady
