#pragma once

#include <optional>
#include <stdexcept>

#include "lady/constitutive/stress.hpp"
#include "lady/spectral/field.hpp"

namespace lady {

/// Thrown when a state or tendency stops being finite.
class NumericalBlowup : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Instantaneous energy budget: d/dt (1/2)||u||^2 = forcing_power - newtonian - power_law.
struct EnergyBudget {
    double newtonian = 0.0;  ///< 2 nu0 ||Du||^2
    double power_law = 0.0;  ///< 2 nu1 ||Du||_{L^p}^p, node quadrature
    double forcing = 0.0;    ///< (f, u)

    /// Rate at which energy leaves the system.
    double net_dissipation() const { return newtonian + power_law - forcing; }
};

struct RhsOptions {
    bool advection = true;
    bool power_law = true;
};

/// Explicit part of the Ladyzhenskaya momentum equation in projected form:
///
///     P [ -(u . grad) u + div(2 nu1 |Du|^{p-2} Du) + f + nudge ]
///
/// Products and the power nonlinearity are evaluated at the nodes and dealiased.
/// The nu0 Laplacian is left to the implicit stage solve. One instance owns its
/// scratch buffers, so concurrent use needs one instance per thread.
class LadyzhenskayaRhs {
public:
    LadyzhenskayaRhs(const Grid& grid, const StressParams& params, SpectralField force,
                     RhsOptions options = {});

    const Grid& grid() const { return grid_; }
    const StressParams& params() const { return params_; }
    const SpectralField& force() const { return force_; }
    const RhsOptions& options() const { return options_; }

    /// Projected, dealiased, zero-mean tendency. Throws NumericalBlowup on NaN/Inf.
    void evaluate(const SpectralField& u, const SpectralField* nudge, SpectralField& out,
                  EnergyBudget* budget = nullptr);

    /// -(u . grad) u + div(T(Du)) + f + nudge before projection, with the full stress
    /// (nu0 part included). Dealiased.
    SpectralField momentum_forcing(const SpectralField& u, const SpectralField* nudge);

    /// Largest nodal speed seen by the last evaluate() call.
    double last_max_speed() const { return max_speed_; }

private:
    void nonlinear_terms(const SpectralField& u, bool include_nu0, EnergyBudget* budget);

    Grid grid_;
    StressParams params_;
    SpectralField force_;
    RhsOptions options_;

    std::vector<Complex> spec_scratch_;
    std::vector<double> velocity_;   // d components
    std::vector<double> gradient_;   // d*d components
    std::vector<double> advection_;  // d components
    std::vector<double> stress_;     // d*d components (symmetric, full storage)
    SpectralField advection_hat_;
    SpectralField stress_hat_;
    double max_speed_ = 0.0;
};

/// Free-function form of LadyzhenskayaRhs::evaluate.
SpectralField rhs_explicit(const SpectralField& u, const SpectralField& force, const StressParams& params,
                           const SpectralField* nudge = nullptr);

/// Energy budget of a state without computing a tendency.
EnergyBudget energy_budget(const SpectralField& u, const SpectralField& force, const StressParams& params);

}  // namespace lady
