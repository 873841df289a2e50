#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lady/analysis/diagnostics.hpp"
#include "lady/harness/config.hpp"

namespace lady {

/// Version written on the first line of every diagnostics CSV as `# schema=1`.
inline constexpr int kCsvSchemaVersion = 1;

/// `t,E_u,E_v,err_L2,err_H1,err_c1..err_cd,eneq_residual`
std::string csv_header(int dim);
std::string csv_row(const DiagnosticsRow& row);

/// Spins the reference run up to t0 from rest (or loads spinup.load) and returns u(t0).
/// Writes spinup.save when set, plus `<name>_energy.csv` in the output directory.
SpinUpResult run_spin_up(const ExperimentConfig& cfg, const ResolvedSetup& setup, bool write_files = true);

struct TwinSummary {
    std::string name;
    double t0 = 0.0;
    double t_end = 0.0;
    std::int64_t steps = 0;
    double initial_error = 0.0;
    double final_error = 0.0;
    double final_error_h1 = 0.0;
    double reference_energy = 0.0;  ///< ||u||^2 at the end
    RateFit fit;
    std::vector<RateFit> component_fits;
    std::vector<double> initial_component_errors;
    std::vector<double> final_component_errors;
    bool blew_up = false;
    std::string csv_path;
    std::vector<DiagnosticsRow> rows;
};

/// Spin-up, then u and v advanced in lockstep from v(t0) = 0 (or u(t0) with
/// run.sync_initial), v seeing u only through observations. Writes the CSV,
/// checkpoints, optional slices and `<name>_summary.txt`. A blow-up writes
/// `<name>_last_valid.ckpt` and rethrows NumericalBlowup.
TwinSummary run_twin_experiment(const ExperimentConfig& cfg, std::ostream* log = nullptr);

/// Key-value text of a summary.
std::string summary_text(const TwinSummary& s);

/// Writes velocity components and pressure on the plane x_axis = position as CSV with
/// columns `a,b,u1..ud,P` (a, b the in-plane coordinates). In 2D the whole field is
/// written and `axis` / `position` are ignored. Off-node planes are evaluated by exact
/// trigonometric interpolation along the axis. Throws std::invalid_argument for a
/// position outside [0, 2pi] or a bad axis.
/// `nudge` is the relaxation term when slicing a nudged field, so its pressure is consistent.
void emit_slices(const SpectralField& u, const SpectralField& force, const StressParams& params, int axis,
                 double position, const std::string& path, const SpectralField* nudge = nullptr);

}  // namespace lady
