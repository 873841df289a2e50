#include "lady/model/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <random>
#include <stdexcept>

#include "lady/spectral/calculus.hpp"

namespace lady {

namespace {

constexpr Complex kI{0.0, 1.0};

// Uniform in [-1, 1) from the raw engine output; std distributions are not
// reproducible across standard libraries.
double signed_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

double max_speed_of(const SpectralField& u) {
    const PhysicalField phys = to_physical(u);
    const int d = u.components();
    double best = 0.0;
    for (std::size_t x = 0; x < u.grid().physical_size(); ++x) {
        double s = 0.0;
        for (int c = 0; c < d; ++c) s += phys(c, x) * phys(c, x);
        best = std::max(best, s);
    }
    return std::sqrt(best);
}

void check_finite(const SpectralField& u, double t) {
    const double e = l2_norm_squared(u);
    if (!std::isfinite(e)) {
        throw NumericalBlowup("solution blew up at t = " + std::to_string(t));
    }
}

}  // namespace

void SimConfig::validate() const {
    (void)grid();
    stress.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be non-negative");
    if (cfl_safety < 0.0) throw std::invalid_argument("cfl_safety must be non-negative");
}

State zero_state(const Grid& grid, double t) { return State{t, SpectralField(grid, Rank::vector)}; }

SpectralField random_solenoidal_field(const Grid& grid, std::uint64_t seed, double kmax, double energy) {
    std::mt19937_64 rng(seed);
    SpectralField u(grid, Rank::vector);
    auto k2 = grid.k_squared();
    for (std::size_t m = 0; m < grid.spectral_size(); ++m) {
        for (int c = 0; c < grid.dim(); ++c) {
            const double re = signed_unit(rng);
            const double im = signed_unit(rng);
            if (k2[m] == 0.0 || k2[m] > kmax * kmax) continue;
            u(c, m) = Complex(re, im) / (1.0 + k2[m]);
        }
    }
    dealias_inplace(u);
    enforce_hermitian(u);
    leray_project_inplace(u);
    remove_mean(u);
    const double e = l2_norm_squared(u);
    if (e > 0.0) u *= std::sqrt(energy / e);
    return u;
}

Simulation::Simulation(const SimConfig& cfg, SpectralField force, RhsOptions options)
    : cfg_(cfg), grid_(cfg.grid()), rhs_(grid_, cfg.stress, std::move(force), options),
      stepper_(grid_, cfg.stress.nu0), state_(zero_state(grid_)) {
    cfg_.validate();
}

void Simulation::set_state(State s) {
    if (s.u.grid() != grid_ || s.u.rank() != Rank::vector) throw std::invalid_argument("state grid mismatch");
    state_ = std::move(s);
    steps_ = 0;
    dissipated_ = 0.0;
    max_speed_ = cfg_.cfl_safety > 0.0 ? max_speed_of(state_.u) : 0.0;
}

double Simulation::next_dt() const {
    double dt = cfg_.dt;
    if (cfg_.cfl_safety > 0.0 && max_speed_ > 0.0) dt = std::min(dt, cfg_.cfl_safety * grid_.spacing() / max_speed_);
    return dt;
}

double Simulation::cfl_number() const { return next_dt() * max_speed_ / grid_.spacing(); }

double Simulation::step() {
    const double dt = next_dt();
    SpectralField* systems[1] = {&state_.u};
    const ImexTableau& tab = stepper_.tableau();
    double acc = 0.0;
    stepper_.step(systems, state_.t, dt,
                  [&](int stage, double, std::span<const SpectralField* const> x, std::span<SpectralField* const> f) {
                      EnergyBudget b;
                      rhs_.evaluate(*x[0], nullptr, *f[0], &b);
                      acc += tab.weight(stage) * b.net_dissipation();
                      if (stage == 0) max_speed_ = rhs_.last_max_speed();
                  });
    dissipated_ += dt * acc;
    state_.t += dt;
    ++steps_;
    check_finite(state_.u, state_.t);
    if (!cfl_warned_ && dt * max_speed_ / grid_.spacing() > 1.0) {
        std::cerr << "warning: advective CFL number " << dt * max_speed_ / grid_.spacing() << " exceeds 1 at t = "
                  << state_.t << "\n";
        cfl_warned_ = true;
    }
    return dt;
}

void Simulation::advance_to(double t_end, const std::function<void(const Simulation&)>& after_step) {
    const double saved = cfg_.dt;
    // A final step within this slack of dt is taken in full rather than split off.
    const double eps = 1e-9 * saved;
    while (state_.t < t_end - eps) {
        const double remaining = t_end - state_.t;
        if (next_dt() > remaining + eps) cfg_.dt = remaining;
        step();
        cfg_.dt = saved;
        if (after_step) after_step(*this);
    }
}

TwinSimulation::TwinSimulation(const SimConfig& cfg, SpectralField force, NudgingConfig nudging)
    : cfg_(cfg), grid_(cfg.grid()), nudging_(std::move(nudging)), reference_rhs_(grid_, cfg.stress, force),
      nudged_rhs_(grid_, cfg.stress, force), stepper_(grid_, cfg.stress.nu0), reference_(zero_state(grid_)),
      nudged_(grid_, Rank::vector) {
    cfg_.validate();
    nudging_.validate(grid_);
}

void TwinSimulation::set_states(State reference, SpectralField nudged) {
    if (reference.u.grid() != grid_ || nudged.grid() != grid_) throw std::invalid_argument("twin: grid mismatch");
    reference_ = std::move(reference);
    nudged_ = std::move(nudged);
    held_.reset();
    steps_ = 0;
    dissipated_ = 0.0;
    max_speed_ = cfg_.cfl_safety > 0.0 ? max_speed_of(reference_.u) : 0.0;
}

double TwinSimulation::next_dt() const {
    double dt = cfg_.dt;
    if (cfg_.cfl_safety > 0.0 && max_speed_ > 0.0) dt = std::min(dt, cfg_.cfl_safety * grid_.spacing() / max_speed_);
    return dt;
}

double TwinSimulation::step(double max_dt) {
    const double dt = std::min(next_dt(), max_dt);
    if (!warned_) {
        double mu_max = 0.0;
        for (double m : nudging_.mu) mu_max = std::max(mu_max, m);
        if (mu_max * dt > 1.0) {
            std::cerr << "warning: mu * dt = " << mu_max * dt << " > 1; explicit nudging may be unstable\n";
        }
        warned_ = true;
    }
    SpectralField* systems[2] = {&reference_.u, &nudged_};
    const ImexTableau& tab = stepper_.tableau();
    const bool observe_now = steps_ % nudging_.cadence == 0;
    const bool active = nudging_.active();
    double acc = 0.0;
    stepper_.step(systems, reference_.t, dt,
                  [&](int stage, double ts, std::span<const SpectralField* const> x, std::span<SpectralField* const> f) {
                      EnergyBudget b;
                      reference_rhs_.evaluate(*x[0], nullptr, *f[0], &b);
                      acc += tab.weight(stage) * b.net_dissipation();
                      if (stage == 0) max_speed_ = reference_rhs_.last_max_speed();
                      if (!active) {
                          nudged_rhs_.evaluate(*x[1], nullptr, *f[1]);
                          return;
                      }
                      if (observe_now || !held_) held_ = observe(*x[0], ts, nudging_.interp);
                      const SpectralField relax = nudging_term(*x[1], *held_, nudging_);
                      nudged_rhs_.evaluate(*x[1], &relax, *f[1]);
                  });
    dissipated_ += dt * acc;
    reference_.t += dt;
    ++steps_;
    check_finite(reference_.u, reference_.t);
    check_finite(nudged_, reference_.t);
    return dt;
}

SpectralField recover_pressure_spectral(const SpectralField& u, const SpectralField& force,
                                        const StressParams& params, const SpectralField* nudge) {
    const Grid& g = u.grid();
    LadyzhenskayaRhs rhs(g, params, force);
    const SpectralField m = rhs.momentum_forcing(u, nudge);
    SpectralField p(g, Rank::scalar);
    auto dst = p.component(0);
    for (std::size_t mode = 0; mode < g.spectral_size(); ++mode) {
        double kk = 0.0;
        Complex kdotm{};
        for (int a = 0; a < g.dim(); ++a) {
            const double k = g.derivative_wavenumber(a)[mode];
            kk += k * k;
            kdotm += k * m(a, mode);
        }
        dst[mode] = kk == 0.0 ? Complex{} : -kI * kdotm / kk;
    }
    enforce_hermitian(p);
    return p;
}

PhysicalField recover_pressure(const State& s, const SpectralField& force, const StressParams& params,
                               const SpectralField* nudge) {
    return to_physical(recover_pressure_spectral(s.u, force, params, nudge));
}

double final_third_drift(const std::vector<EnergySample>& series) {
    if (series.size() < 6) return std::numeric_limits<double>::infinity();
    const double t_first = series.front().t;
    const double t_last = series.back().t;
    const double start = t_last - (t_last - t_first) / 3.0;
    std::vector<double> tail;
    for (const auto& s : series)
        if (s.t >= start) tail.push_back(s.energy);
    if (tail.size() < 4) return std::numeric_limits<double>::infinity();
    const std::size_t half = tail.size() / 2;
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < half; ++i) m1 += tail[i];
    for (std::size_t i = half; i < tail.size(); ++i) m2 += tail[i];
    m1 /= static_cast<double>(half);
    m2 /= static_cast<double>(tail.size() - half);
    const double mean = 0.5 * (m1 + m2);
    if (mean == 0.0) return 0.0;
    return std::abs(m2 - m1) / mean;
}

SpinUpResult spin_up(const SimConfig& cfg, const SpectralField& force, const SpinUpRule& rule) {
    Simulation sim(cfg, force);
    State init = zero_state(sim.grid());
    if (rule.initial_energy > 0.0) {
        init.u = random_solenoidal_field(sim.grid(), rule.seed, sim.grid().dealias_cutoff(), rule.initial_energy);
    }
    sim.set_state(std::move(init));

    SpinUpResult result{sim.state(), {}, false};
    result.energy.push_back({0.0, l2_norm_squared(sim.state().u)});
    double next_sample = rule.sample_interval;
    while (sim.state().t < rule.t0 - 1e-9 * cfg.dt) {
        sim.advance_to(std::min(next_sample, rule.t0));
        result.energy.push_back({sim.state().t, l2_norm_squared(sim.state().u)});
        next_sample += rule.sample_interval;
        if (rule.stationarity && sim.state().t >= rule.min_time &&
            final_third_drift(result.energy) < rule.drift_tolerance) {
            result.stationary = true;
            break;
        }
    }
    if (!rule.stationarity) result.stationary = final_third_drift(result.energy) < rule.drift_tolerance;
    result.state = sim.state();
    return result;
}

}  // namespace lady
