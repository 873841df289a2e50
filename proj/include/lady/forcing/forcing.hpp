#pragma once

#include <cstdint>
#include <string>

#include "lady/spectral/field.hpp"

namespace lady {

/// G = ||f|| / (nu0^2 lambda1^{3/4}).
double grashof(double force_norm, double nu0, double lambda1 = 1.0);

/// nu0 solving grashof(force_norm, nu0, lambda1) = target.
double nu0_for_grashof(double force_norm, double target, double lambda1 = 1.0);

/// Smagorinsky-style power-law coefficient nu1 = (1/2) (cs * 2pi/N)^2 nu0^{3-p}.
double nu1_of(double cs, int n, double nu0, double p);

struct ForceSpec {
    enum class Kind { builtin2d, lifted3d, file };

    Kind kind = Kind::builtin2d;
    std::uint64_t seed = 1;
    double shell_min = 4.0;  ///< |k| band of the generated 2D pattern
    double shell_max = 6.0;
    double grashof = 1e4;
    /// Viscosity the 2D pattern is normalized with before lifting (lifted3d only).
    double nu0_2d = 1e-2;
    /// Third coefficient family reads g(k1, k2) instead of g(k2, k3).
    bool third_family_k1k2 = false;
    std::string path;  ///< file kind

    void validate() const;
};

/// Solenoidal, zero-mean, Hermitian 2D force on the shell, with ||f|| = G nu0^2 lambda1^{3/4}.
/// Throws std::invalid_argument on an empty shell or a 3D grid.
SpectralField build_force_2d(const ForceSpec& spec, const Grid& grid, double nu0);

/// Scalar vorticity g = curl f of a 2D vector field.
SpectralField curl_2d(const SpectralField& f);

struct LiftReport {
    int collisions = 0;          ///< components written by two families with different values
    double divergence_max = 0.0; ///< max |k . f| before any clean-up
};

/// Builds the 3D force whose coordinate-plane slices repeat the 2D pattern through
/// g = curl f2d:
///
///   f1(k1,0,k3) =  i k3 g(k1,k3)/(k1^2+k3^2)   f1(k1,k2,0) =  i k2 g(k1,k2)/(k1^2+k2^2)
///   f2(k1,k2,0) = -i k1 g(k1,k2)/(k1^2+k2^2)   f2(0,k2,k3) =  i k3 g(k2,k3)/(k2^2+k3^2)
///   f3(k1,0,k3) = -i k1 g(k1,k3)/(k1^2+k3^2)   f3(0,k2,k3) = -i k2 g(k2,k3)/(k2^2+k3^2)
///
/// Families are written in this order; the first writer of a component wins. With
/// `third_family_k1k2` the last family reads g(k1,k2) (always k1 = 0 there) and the
/// result is Leray-projected afterwards.
SpectralField lift_force_3d(const SpectralField& f2d, const Grid& grid3d, bool third_family_k1k2 = false,
                            LiftReport* report = nullptr);

/// A force together with the viscosity that makes its Grashof number hit the target.
struct BuiltForce {
    SpectralField force;
    double nu0;
};

/// builtin2d: normalizes the force to G with the given nu0.
/// lifted3d: builds the 2D pattern with spec.nu0_2d, lifts it and returns the nu0 that
///           restores G for the lifted norm.
/// file:     renormalizes the supplied coefficients to G with the given nu0 (kept as
///           is when spec.grashof <= 0).
BuiltForce build_force(const ForceSpec& spec, const Grid& grid, double nu0,
                       const SpectralField* file_coefficients = nullptr);

}  // namespace lady
