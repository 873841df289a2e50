#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "lady/assimilation/nudging.hpp"
#include "lady/model/imex.hpp"
#include "lady/model/rhs.hpp"

namespace lady {

struct SimConfig {
    int dim = 2;
    int n = 64;
    StressParams stress;
    double dt = 1e-3;
    double t_end = 1.0;
    /// When positive, dt shrinks to cfl_safety * dx / max|u| whenever that is smaller.
    double cfl_safety = 0.0;

    Grid grid() const { return Grid(dim, n); }
    void validate() const;
};

/// Velocity in Fourier space plus the time it belongs to.
struct State {
    double t = 0.0;
    SpectralField u;
};

/// Zero state on a grid.
State zero_state(const Grid& grid, double t = 0.0);

/// Random divergence-free, zero-mean, dealiased field supported on |k| <= kmax with
/// ||u||^2 = energy. Deterministic in the seed.
SpectralField random_solenoidal_field(const Grid& grid, std::uint64_t seed, double kmax, double energy);

/// Integrates the Ladyzhenskaya system for one velocity field.
class Simulation {
public:
    Simulation(const SimConfig& cfg, SpectralField force, RhsOptions options = {});

    const SimConfig& config() const { return cfg_; }
    const Grid& grid() const { return grid_; }
    const State& state() const { return state_; }
    void set_state(State s);

    /// Advances one step and returns the dt used.
    double step();
    /// Steps until t >= t_end (last step shortened to land on t_end).
    void advance_to(double t_end, const std::function<void(const Simulation&)>& after_step = {});

    std::int64_t steps() const { return steps_; }
    /// Running integral of EnergyBudget::net_dissipation since the last set_state,
    /// accumulated with the explicit stage weights (same order as the scheme).
    double dissipated() const { return dissipated_; }
    double cfl_number() const;
    double next_dt() const;

private:
    SimConfig cfg_;
    Grid grid_;
    LadyzhenskayaRhs rhs_;
    ImexStepper stepper_;
    State state_;
    std::int64_t steps_ = 0;
    double dissipated_ = 0.0;
    double max_speed_ = 0.0;
    bool cfl_warned_ = false;
};

/// Reference u and nudged v advanced in lockstep. At every stage the reference's stage
/// value is observed and the nudged right-hand side receives only that Observation.
class TwinSimulation {
public:
    TwinSimulation(const SimConfig& cfg, SpectralField force, NudgingConfig nudging);

    const SimConfig& config() const { return cfg_; }
    const NudgingConfig& nudging() const { return nudging_; }
    const State& reference() const { return reference_; }
    const SpectralField& nudged() const { return nudged_; }
    double time() const { return reference_.t; }
    std::int64_t steps() const { return steps_; }
    double reference_dissipated() const { return dissipated_; }

    void set_states(State reference, SpectralField nudged);
    /// Advances both systems by min(next_dt(), max_dt) and returns the dt used.
    double step(double max_dt = std::numeric_limits<double>::infinity());
    double next_dt() const;

private:
    SimConfig cfg_;
    Grid grid_;
    NudgingConfig nudging_;
    LadyzhenskayaRhs reference_rhs_;
    LadyzhenskayaRhs nudged_rhs_;
    ImexStepper stepper_;
    State reference_;
    SpectralField nudged_;
    std::optional<Observation> held_;  // used between observation times when cadence > 1
    std::int64_t steps_ = 0;
    double dissipated_ = 0.0;
    double max_speed_ = 0.0;
    bool warned_ = false;
};

/// Pressure solving -Lap P = div[(u.grad)u - div T(Du) - f - nudge], zero mean.
PhysicalField recover_pressure(const State& s, const SpectralField& force, const StressParams& params,
                               const SpectralField* nudge = nullptr);
/// Same, in Fourier space.
SpectralField recover_pressure_spectral(const SpectralField& u, const SpectralField& force,
                                        const StressParams& params, const SpectralField* nudge = nullptr);

/// How long to spin the reference run up.
struct SpinUpRule {
    double t0 = 100.0;  ///< fixed end time, or the cap when `stationarity` is set
    bool stationarity = false;
    double min_time = 0.0;       ///< earliest time the stationarity test may stop the run
    double drift_tolerance = 0.05;
    double sample_interval = 0.5;
    double initial_energy = 0.0;  ///< optional seeded perturbation of u(0) = 0
    std::uint64_t seed = 1;
};

struct EnergySample {
    double t;
    double energy;  // ||u||^2
};

struct SpinUpResult {
    State state;
    std::vector<EnergySample> energy;
    bool stationary = false;
};

/// Relative drift of the sliding mean over the final third of an energy series: the
/// final third is split in halves and |mean_2 - mean_1| / mean is returned.
double final_third_drift(const std::vector<EnergySample>& series);

SpinUpResult spin_up(const SimConfig& cfg, const SpectralField& force, const SpinUpRule& rule);

}  // namespace lady
