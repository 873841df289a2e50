#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lady/constitutive/stress.hpp"
#include "lady/spectral/field.hpp"

namespace lady {

/// Norms of a velocity field.
struct FieldNorms {
    double l2_squared = 0.0;  ///< ||u||^2, Parseval
    double h1_squared = 0.0;  ///< ||grad u||^2, Parseval
    double strain_lp_p = 0.0; ///< ||Du||_{L^p}^p, node quadrature
    double strain_lp = 0.0;   ///< ||Du||_{L^p}
};

/// L2 and H1 seminorm in Fourier space; ||Du||_{L^p} by the periodic trapezoid rule on
/// the grid nodes (|Du| is the Frobenius norm).
FieldNorms norms(const SpectralField& u, double p);

/// ||Du||^2 computed entirely in Fourier space.
double strain_l2_norm_squared(const SpectralField& u);

/// ||f||^2 from nodal values by the periodic trapezoid rule.
double l2_norm_squared_nodal(const PhysicalField& f);

/// One time sample of a twin run (or of a solo run, with the error fields left at 0).
struct DiagnosticsRow {
    double t = 0.0;
    double energy = 0.0;          ///< ||u||^2
    double grad_squared = 0.0;    ///< ||grad u||^2
    double strain_lp_p = 0.0;     ///< ||Du||_{L^p}^p
    double forcing_power = 0.0;   ///< (f, u)
    double energy_nudged = 0.0;   ///< ||v||^2
    double error_l2 = 0.0;        ///< ||u - v||
    double error_h1 = 0.0;        ///< ||grad (u - v)||
    double eneq_residual = 0.0;
    std::vector<double> error_components;  ///< ||u_c - v_c|| per component
};

/// Fills the reference-side fields of a row (energy, gradient, strain, forcing power).
DiagnosticsRow diagnostics_of(double t, const SpectralField& u, const SpectralField& force, double p);

/// Adds the error fields of v against u to a row.
void add_errors(DiagnosticsRow& row, const SpectralField& u, const SpectralField& v);

/// |(1/2)||u(T)||^2 - (1/2)||u(0)||^2 + int_0^T (2 nu0 ||Du||^2 + 2 nu1 ||Du||_{L^p}^p - (f,u)) dt|
/// with the trapezoid rule over a uniformly sampled history (2 nu0 ||Du||^2 is taken as
/// nu0 ||grad u||^2, equal for divergence-free u).
/// Throws std::invalid_argument for fewer than 2 rows or non-uniform sampling.
double energy_equality_residual(std::span<const DiagnosticsRow> history, const StressParams& params);

/// Same balance when the time integral is supplied by the integrator itself
/// (Simulation::dissipated()).
double energy_equality_residual(double energy_start, double energy_end, double integrated_dissipation);

struct RateFit {
    double rate = 0.0;        ///< slope of log(error) against t
    double r_squared = 0.0;
    std::size_t samples = 0;
    bool reached_zero = false;  ///< a non-positive error was met; rate is -infinity
};

/// Least-squares fit of log(e) = a + rate * t over samples with t in [t_begin, t_end].
/// Throws std::invalid_argument when fewer than 10 samples fall in the window.
RateFit fit_exponential_rate(std::span<const double> t, std::span<const double> e, double t_begin,
                             double t_end);
RateFit fit_exponential_rate(std::span<const double> t, std::span<const double> e);

}  // namespace lady
