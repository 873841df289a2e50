#pragma once

#include <array>

#include "lady/spectral/field.hpp"

namespace lady {

/// Parameters of the shear-dependent viscosity T(D) = 2 (nu0 + nu1 |D|_F^{p-2}) D.
///
/// nu0 has units length^2/time, nu1 has units time^{p-3} length^2.
struct StressParams {
    double p = 3.0;
    double nu0 = 1e-2;
    double nu1 = 0.0;

    /// Throws std::invalid_argument unless nu0 > 0, nu1 >= 0, p >= 2.
    void validate() const;
};

/// Dense d x d matrix (d = 2 or 3), row-major.
struct SmallMatrix {
    int dim = 3;
    std::array<double, 9> a{};

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i * dim + j)]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i * dim + j)]; }
};

double frobenius_norm(const SmallMatrix& m);
/// A : B
double double_dot(const SmallMatrix& a, const SmallMatrix& b);

/// |D|_F^{p-2}, via exp((p-2) log |D|_F); exactly 1 for p = 2, |D|_F
/// for p = 3 and 0 for |D|_F = 0, p > 2.
double power_law_factor(double frobenius, double p);

/// T(D) for a single symmetric matrix.
SmallMatrix stress(const SmallMatrix& strain, const StressParams& params);

/// (T(A) - T(B)) : (A - B) - 2 nu0 |A - B|_F^2. Non-negative for symmetric A, B.
double monotonicity_gap(const SmallMatrix& a, const SmallMatrix& b, const StressParams& params);

/// Symmetric part of a velocity-gradient tensor field. The result is symmetric bit for bit.
SpectralField strain_rate(const SpectralField& grad_u);

/// Pointwise T(D) on nodal tensor values.
PhysicalField stress(const PhysicalField& strain, const StressParams& params);

}  // namespace lady
