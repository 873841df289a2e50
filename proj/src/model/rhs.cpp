#include "lady/model/rhs.hpp"

#include <algorithm>
#include <cmath>

#include "lady/spectral/calculus.hpp"

namespace lady {

namespace {


bool all_finite(std::span<const Complex> v) {
    return std::all_of(v.begin(), v.end(),
                       [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

}  // namespace

LadyzhenskayaRhs::LadyzhenskayaRhs(const Grid& grid, const StressParams& params, SpectralField force,
                                   RhsOptions options)
    : grid_(grid), params_(params), force_(std::move(force)), options_(options),
      spec_scratch_(grid.spectral_size()),
      velocity_(static_cast<std::size_t>(grid.dim()) * grid.physical_size()),
      gradient_(static_cast<std::size_t>(grid.dim() * grid.dim()) * grid.physical_size()),
      advection_(static_cast<std::size_t>(grid.dim()) * grid.physical_size()),
      stress_(static_cast<std::size_t>(grid.dim() * grid.dim()) * grid.physical_size()),
      advection_hat_(grid, Rank::vector), stress_hat_(grid, Rank::tensor) {
    params_.validate();
    if (force_.grid() != grid || force_.rank() != Rank::vector) {
        throw std::invalid_argument("rhs: force must be a vector field on the simulation grid");
    }
}

void LadyzhenskayaRhs::nonlinear_terms(const SpectralField& u, bool include_nu0, EnergyBudget* budget) {
    const Grid& g = grid_;
    const int d = g.dim();
    const std::size_t np = g.physical_size();
    const std::size_t ns = g.spectral_size();
    const bool want_stress = include_nu0 || (options_.power_law && params_.nu1 > 0.0);

    for (int i = 0; i < d; ++i) {
        auto src = u.component(i);
        std::copy(src.begin(), src.end(), spec_scratch_.begin());
        g.inverse(spec_scratch_.data(), velocity_.data() + static_cast<std::size_t>(i) * np);
        for (int j = 0; j < d; ++j) {
            auto kd = g.derivative_wavenumber(j);
            for (std::size_t m = 0; m < ns; ++m) spec_scratch_[m] = times_ik(kd[m], src[m]);
            g.inverse(spec_scratch_.data(), gradient_.data() + static_cast<std::size_t>(i * d + j) * np);
        }
    }

    const double nu0 = include_nu0 ? params_.nu0 : 0.0;
    const double nu1 = options_.power_law ? params_.nu1 : 0.0;
    const double p = params_.p;
    double max_speed2 = 0.0;
    double power_sum = 0.0;
    for (std::size_t x = 0; x < np; ++x) {
        double uvec[3];
        double grad[9];
        double speed2 = 0.0;
        for (int i = 0; i < d; ++i) {
            uvec[i] = velocity_[static_cast<std::size_t>(i) * np + x];
            speed2 += uvec[i] * uvec[i];
        }
        max_speed2 = std::max(max_speed2, speed2);
        for (int c = 0; c < d * d; ++c) grad[c] = gradient_[static_cast<std::size_t>(c) * np + x];
        if (options_.advection) {
            for (int i = 0; i < d; ++i) {
                double a = 0.0;
                for (int j = 0; j < d; ++j) a += uvec[j] * grad[i * d + j];
                advection_[static_cast<std::size_t>(i) * np + x] = a;
            }
        }
        if (want_stress || budget) {
            double strain[9];
            double f2 = 0.0;
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    strain[i * d + j] = 0.5 * (grad[i * d + j] + grad[j * d + i]);
                    f2 += strain[i * d + j] * strain[i * d + j];
                }
            }
            const double pw = power_law_factor(std::sqrt(f2), p);
            power_sum += f2 * pw;
            if (want_stress) {
                const double factor = 2.0 * (nu0 + nu1 * pw);
                for (int c = 0; c < d * d; ++c) stress_[static_cast<std::size_t>(c) * np + x] = factor * strain[c];
            }
        }
    }
    max_speed_ = std::sqrt(max_speed2);

    const double scale = 1.0 / static_cast<double>(np);
    if (options_.advection) {
        for (int i = 0; i < d; ++i) {
            auto dst = advection_hat_.component(i);
            g.forward(advection_.data() + static_cast<std::size_t>(i) * np, dst.data());
            for (auto& z : dst) z *= scale;
        }
        dealias_inplace(advection_hat_);
    } else {
        advection_hat_.set_zero();
    }
    if (want_stress) {
        for (int i = 0; i < d; ++i) {
            for (int j = i; j < d; ++j) {
                auto dst = stress_hat_.component(i * d + j);
                g.forward(stress_.data() + static_cast<std::size_t>(i * d + j) * np, dst.data());
                for (auto& z : dst) z *= scale;
                if (i != j) {
                    auto mirror = stress_hat_.component(j * d + i);
                    std::copy(dst.begin(), dst.end(), mirror.begin());
                }
            }
        }
        dealias_inplace(stress_hat_);
    } else {
        stress_hat_.set_zero();
    }

    if (budget) {
        budget->newtonian = params_.nu0 * h1_seminorm_squared(u);
        double cell = 1.0;
        for (int a = 0; a < d; ++a) cell *= g.spacing();
        budget->power_law = options_.power_law ? 2.0 * params_.nu1 * cell * power_sum : 0.0;
        budget->forcing = inner_product(force_, u);
    }
}

void LadyzhenskayaRhs::evaluate(const SpectralField& u, const SpectralField* nudge, SpectralField& out,
                                EnergyBudget* budget) {
    if (u.grid() != grid_ || u.rank() != Rank::vector || !out.same_shape(u)) {
        throw std::invalid_argument("rhs: state shape mismatch");
    }
    const Grid& g = grid_;
    const int d = g.dim();
    const std::size_t ns = g.spectral_size();
    const bool need_nodes = options_.advection || (options_.power_law && params_.nu1 > 0.0) || budget;
    if (need_nodes) {
        nonlinear_terms(u, false, budget);
    } else {
        advection_hat_.set_zero();
        stress_hat_.set_zero();
        max_speed_ = 0.0;
    }

    auto mask = g.dealias_mask();
    for (int i = 0; i < d; ++i) {
        auto dst = out.component(i);
        auto adv = advection_hat_.component(i);
        auto f = force_.component(i);
        for (std::size_t m = 0; m < ns; ++m) dst[m] = f[m] - adv[m];
        for (int j = 0; j < d; ++j) {
            auto kd = g.derivative_wavenumber(j);
            auto s = stress_hat_.component(i * d + j);
            for (std::size_t m = 0; m < ns; ++m) dst[m] += times_ik(kd[m], s[m]);
        }
        if (nudge) {
            auto nu = nudge->component(i);
            for (std::size_t m = 0; m < ns; ++m) dst[m] += nu[m];
        }
        for (std::size_t m = 0; m < ns; ++m) {
            if (!mask[m]) dst[m] = Complex{};
        }
    }
    leray_project_inplace(out);
    remove_mean(out);
    enforce_hermitian(out);
    if (!all_finite(out.data())) throw NumericalBlowup("non-finite tendency in explicit right-hand side");
}

SpectralField LadyzhenskayaRhs::momentum_forcing(const SpectralField& u, const SpectralField* nudge) {
    const Grid& g = grid_;
    const int d = g.dim();
    const std::size_t ns = g.spectral_size();
    nonlinear_terms(u, true, nullptr);
    SpectralField out(g, Rank::vector);
    for (int i = 0; i < d; ++i) {
        auto dst = out.component(i);
        auto adv = advection_hat_.component(i);
        auto f = force_.component(i);
        for (std::size_t m = 0; m < ns; ++m) dst[m] = f[m] - adv[m];
        for (int j = 0; j < d; ++j) {
            auto kd = g.derivative_wavenumber(j);
            auto s = stress_hat_.component(i * d + j);
            for (std::size_t m = 0; m < ns; ++m) dst[m] += times_ik(kd[m], s[m]);
        }
        if (nudge) {
            auto nu = nudge->component(i);
            for (std::size_t m = 0; m < ns; ++m) dst[m] += nu[m];
        }
    }
    dealias_inplace(out);
    return out;
}

SpectralField rhs_explicit(const SpectralField& u, const SpectralField& force, const StressParams& params,
                           const SpectralField* nudge) {
    LadyzhenskayaRhs rhs(u.grid(), params, force);
    SpectralField out(u.grid(), Rank::vector);
    rhs.evaluate(u, nudge, out);
    return out;
}

EnergyBudget energy_budget(const SpectralField& u, const SpectralField& force, const StressParams& params) {
    LadyzhenskayaRhs rhs(u.grid(), params, force);
    SpectralField out(u.grid(), Rank::vector);
    EnergyBudget b;
    rhs.evaluate(u, nullptr, out, &b);
    return b;
}

}  // namespace lady
