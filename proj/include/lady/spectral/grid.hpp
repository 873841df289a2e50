#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace lady {

/// Integer wavevector. Unused trailing entries are zero in 2D.
using Wavevector = std::array<int, 3>;

/// Periodic box [0, 2pi]^d sampled on N nodes per direction.
///
/// Physical arrays are row-major with x1 slowest. Spectral arrays use the
/// real-to-complex half layout: the last axis stores wavenumbers 0..N/2 only,
/// the other axes store index i for wavenumber i (i < N/2) or i - N.
///
/// A Grid is a cheap handle: copies share the wavenumber tables and FFT plans.
class Grid {
public:
    Grid(int dim, int n);

    int dim() const { return dim_; }
    int n() const { return n_; }
    static constexpr double length() { return 6.283185307179586476925286766559; }
    double spacing() const { return length() / n_; }

    /// Largest retained |k_j| under the 2/3 rule.
    int dealias_cutoff() const { return n_ / 3; }

    /// Smallest Stokes eigenvalue on the 2pi box.
    static constexpr double lambda1() { return 1.0; }

    std::size_t physical_size() const { return physical_size_; }
    std::size_t spectral_size() const { return spectral_size_; }
    /// Length of the stored (halved) last axis.
    int half_n() const { return n_ / 2 + 1; }

    /// Signed wavenumber of a full-axis index.
    int wavenumber(int index) const { return index <= n_ / 2 - 1 ? index : index - n_; }
    /// Full-axis index of a signed wavenumber (taken mod N).
    int axis_index(int k) const { return ((k % n_) + n_) % n_; }

    Wavevector wavevector(std::size_t flat) const;
    /// Flat spectral index of a wavevector; if the last component is negative the
    /// Hermitian partner's index is returned and `conjugate` is set.
    std::size_t spectral_index(const Wavevector& k, bool* conjugate = nullptr) const;

    /// |k|^2 per stored mode.
    std::span<const double> k_squared() const;
    /// Wavenumber along `axis` per stored mode, zeroed at the Nyquist index so that
    /// spectral derivatives stay Hermitian.
    std::span<const double> derivative_wavenumber(int axis) const;
    /// Multiplicity of a stored mode in full-spectrum sums (1 on the self-conjugate
    /// planes of the last axis, 2 elsewhere).
    std::span<const double> mode_weight() const;
    /// 1 where every |k_j| <= dealias_cutoff(), else 0.
    std::span<const unsigned char> dealias_mask() const;

    /// Unnormalized real-to-complex transform of one component.
    void forward(const double* in, std::complex<double>* out) const;
    /// Complex-to-real inverse of one component; `in` is overwritten.
    void inverse(std::complex<double>* in, double* out) const;

    bool operator==(const Grid& other) const { return dim_ == other.dim_ && n_ == other.n_; }
    bool operator!=(const Grid& other) const { return !(*this == other); }

private:
    struct Tables;
    int dim_;
    int n_;
    std::size_t physical_size_;
    std::size_t spectral_size_;
    std::shared_ptr<const Tables> tables_;
};

}  // namespace lady
