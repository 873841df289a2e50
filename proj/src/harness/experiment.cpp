#include "lady/harness/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "lady/harness/checkpoint.hpp"
#include "lady/spectral/calculus.hpp"

namespace lady {

namespace {

namespace fs = std::filesystem;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string out_path(const ExperimentConfig& cfg, const std::string& suffix) {
    return (fs::path(cfg.output.dir) / (cfg.name + suffix)).string();
}

Checkpoint twin_checkpoint(const SimConfig& sim, double t, const SpectralField& u, const SpectralField& v) {
    Checkpoint ck;
    ck.dim = sim.dim;
    ck.n = sim.n;
    ck.params = sim.stress;
    ck.t = t;
    ck.fields = {u, v};
    return ck;
}

RateFit safe_fit(const std::vector<double>& t, const std::vector<double>& e, double t_begin) {
    try {
        return fit_exponential_rate(t, e, t_begin, std::numeric_limits<double>::infinity());
    } catch (const std::invalid_argument&) {
        RateFit f;
        f.rate = std::numeric_limits<double>::quiet_NaN();
        f.r_squared = std::numeric_limits<double>::quiet_NaN();
        return f;
    }
}

// Periodic interpolation weights D(x - x_j) for band-limited data with zero Nyquist mode.
std::vector<double> dirichlet_weights(int n, double x) {
    std::vector<double> w(static_cast<std::size_t>(n));
    const double dx = Grid::length() / n;
    for (int j = 0; j < n; ++j) {
        const double s = x - j * dx;
        double acc = 1.0;
        for (int k = 1; k < n / 2; ++k) acc += 2.0 * std::cos(k * s);
        w[static_cast<std::size_t>(j)] = acc / n;
    }
    return w;
}

}  // namespace

std::string csv_header(int dim) {
    std::string h = "t,E_u,E_v,err_L2,err_H1";
    for (int c = 1; c <= dim; ++c) h += ",err_c" + std::to_string(c);
    return h + ",eneq_residual";
}

std::string csv_row(const DiagnosticsRow& r) {
    std::string s = num(r.t) + "," + num(r.energy) + "," + num(r.energy_nudged) + "," + num(r.error_l2) + "," +
                    num(r.error_h1);
    for (double e : r.error_components) s += "," + num(e);
    return s + "," + num(r.eneq_residual);
}

SpinUpResult run_spin_up(const ExperimentConfig& cfg, const ResolvedSetup& setup, bool write_files) {
    if (!cfg.spin_up_load.empty()) {
        const Checkpoint ck = load_checkpoint(cfg.spin_up_load, setup.sim.grid());
        if (ck.fields.empty()) throw CheckpointError(cfg.spin_up_load + ": no velocity field");
        return SpinUpResult{State{ck.t, ck.fields.front()}, {{ck.t, l2_norm_squared(ck.fields.front())}}, false};
    }
    SpinUpResult result = spin_up(setup.sim, setup.force, cfg.spin_up);
    if (!write_files) return result;
    fs::create_directories(cfg.output.dir);
    std::ofstream csv(out_path(cfg, "_energy.csv"));
    csv << "# schema=" << kCsvSchemaVersion << "\n" << "t,E_u\n";
    for (const auto& s : result.energy) csv << num(s.t) << "," << num(s.energy) << "\n";
    if (!cfg.spin_up_save.empty()) {
        Checkpoint ck;
        ck.dim = setup.sim.dim;
        ck.n = setup.sim.n;
        ck.params = setup.sim.stress;
        ck.t = result.state.t;
        ck.fields = {result.state.u};
        save_checkpoint(ck, cfg.spin_up_save);
    }
    return result;
}

TwinSummary run_twin_experiment(const ExperimentConfig& cfg, std::ostream* log) {
    cfg.validate();
    const ResolvedSetup setup = resolve_setup(cfg);
    const Grid grid = setup.sim.grid();
    fs::create_directories(cfg.output.dir);

    State reference = zero_state(grid);
    SpectralField nudged(grid, Rank::vector);
    if (!cfg.resume.empty()) {
        const Checkpoint ck = load_checkpoint(cfg.resume, grid);
        if (ck.fields.size() != 2) throw CheckpointError(cfg.resume + ": a twin checkpoint holds two fields");
        reference = State{ck.t, ck.fields[0]};
        nudged = ck.fields[1];
    } else {
        SpinUpResult spun = run_spin_up(cfg, setup);
        if (log) {
            *log << cfg.name << ": spin-up reached t0 = " << spun.state.t << ", ||u||^2 = "
                 << l2_norm_squared(spun.state.u) << (spun.stationary ? " (stationary)" : "") << "\n";
        }
        reference = std::move(spun.state);
        if (cfg.sync_initial) nudged = reference.u;
    }

    TwinSimulation twin(setup.sim, setup.force, cfg.nudging);
    twin.set_states(reference, nudged);

    TwinSummary summary;
    summary.name = cfg.name;
    summary.t0 = twin.time();
    summary.csv_path = out_path(cfg, ".csv");
    const double t_stop = summary.t0 + cfg.run_length;
    const double energy_start = l2_norm_squared(twin.reference().u);
    const double p = setup.sim.stress.p;

    std::ofstream csv(summary.csv_path);
    if (!csv) throw std::runtime_error("cannot write " + summary.csv_path);
    csv << "# schema=" << kCsvSchemaVersion << "\n" << csv_header(grid.dim()) << "\n";

    auto sample = [&] {
        DiagnosticsRow row = diagnostics_of(twin.time(), twin.reference().u, setup.force, p);
        add_errors(row, twin.reference().u, twin.nudged());
        row.eneq_residual = energy_equality_residual(energy_start, row.energy, twin.reference_dissipated());
        csv << csv_row(row) << "\n";
        summary.rows.push_back(std::move(row));
    };
    auto slice = [&](std::int64_t step) {
        const std::string tag = "_slice_" + std::to_string(step);
        const SpectralField relax =
            nudging_term(twin.nudged(), observe(twin.reference().u, twin.time(), cfg.nudging.interp), cfg.nudging);
        emit_slices(twin.reference().u, setup.force, setup.sim.stress, cfg.output.slice_axis,
                    cfg.output.slice_position, out_path(cfg, tag + "_u.csv"));
        emit_slices(twin.nudged(), setup.force, setup.sim.stress, cfg.output.slice_axis, cfg.output.slice_position,
                    out_path(cfg, tag + "_v.csv"), &relax);
    };

    sample();
    if (cfg.output.slice_every > 0) slice(0);
    // Step lengths within this slack of the remaining time are taken in full, so runs
    // whose length is a multiple of dt never take a rounding-sized final step.
    const double eps = 1e-9 * setup.sim.dt;
    State last_ref = twin.reference();
    SpectralField last_v = twin.nudged();
    double next_report = summary.t0 + 0.1 * cfg.run_length;
    try {
        while (twin.time() < t_stop - eps) {
            last_ref = twin.reference();
            last_v = twin.nudged();
            const double remaining = t_stop - twin.time();
            twin.step(remaining < twin.next_dt() - eps ? remaining : twin.next_dt());
            const std::int64_t k = twin.steps();
            const bool last = twin.time() >= t_stop - eps;
            if (k % cfg.output.sample_every == 0 || last) sample();
            if (cfg.output.checkpoint_every > 0 && k % cfg.output.checkpoint_every == 0) {
                save_checkpoint(twin_checkpoint(setup.sim, twin.time(), twin.reference().u, twin.nudged()),
                                out_path(cfg, "_twin.ckpt"));
            }
            if (cfg.output.slice_every > 0 && k % cfg.output.slice_every == 0) slice(k);
            if (log && twin.time() >= next_report) {
                *log << cfg.name << ": t = " << twin.time() << ", ||u - v|| = " << summary.rows.back().error_l2
                     << "\n";
                next_report += 0.1 * cfg.run_length;
            }
        }
    } catch (const NumericalBlowup&) {
        summary.blew_up = true;
        save_checkpoint(twin_checkpoint(setup.sim, last_ref.t, last_ref.u, last_v), out_path(cfg, "_last_valid.ckpt"));
        csv.flush();
        throw;
    }
    save_checkpoint(twin_checkpoint(setup.sim, twin.time(), twin.reference().u, twin.nudged()),
                    out_path(cfg, "_final.ckpt"));

    summary.t_end = twin.time();
    summary.steps = twin.steps();
    summary.reference_energy = l2_norm_squared(twin.reference().u);
    const DiagnosticsRow& first = summary.rows.front();
    const DiagnosticsRow& final_row = summary.rows.back();
    summary.initial_error = first.error_l2;
    summary.final_error = final_row.error_l2;
    summary.final_error_h1 = final_row.error_h1;
    summary.initial_component_errors = first.error_components;
    summary.final_component_errors = final_row.error_components;

    std::vector<double> ts, es;
    for (const auto& r : summary.rows) {
        ts.push_back(r.t);
        es.push_back(r.error_l2);
    }
    const double fit_from = summary.t0 + cfg.fit_begin;
    summary.fit = safe_fit(ts, es, fit_from);
    for (int c = 0; c < grid.dim(); ++c) {
        std::vector<double> ec;
        for (const auto& r : summary.rows) ec.push_back(r.error_components[static_cast<std::size_t>(c)]);
        summary.component_fits.push_back(safe_fit(ts, ec, fit_from));
    }
    std::ofstream(out_path(cfg, "_summary.txt")) << summary_text(summary);
    return summary;
}

std::string summary_text(const TwinSummary& s) {
    std::ostringstream os;
    os << "name = " << s.name << "\n";
    os << "t0 = " << num(s.t0) << "\n";
    os << "t_end = " << num(s.t_end) << "\n";
    os << "steps = " << s.steps << "\n";
    os << "initial_error_l2 = " << num(s.initial_error) << "\n";
    os << "final_error_l2 = " << num(s.final_error) << "\n";
    os << "final_error_h1 = " << num(s.final_error_h1) << "\n";
    os << "reference_energy = " << num(s.reference_energy) << "\n";
    os << "rate = " << num(s.fit.rate) << "\n";
    os << "rate_r2 = " << num(s.fit.r_squared) << "\n";
    for (std::size_t c = 0; c < s.component_fits.size(); ++c) {
        os << "rate_c" << c + 1 << " = " << num(s.component_fits[c].rate) << "\n";
        os << "final_error_c" << c + 1 << " = " << num(s.final_component_errors[c]) << "\n";
    }
    os << "blew_up = " << (s.blew_up ? "true" : "false") << "\n";
    return os.str();
}

void emit_slices(const SpectralField& u, const SpectralField& force, const StressParams& params, int axis,
                 double position, const std::string& path, const SpectralField* nudge) {
    const Grid& g = u.grid();
    const int d = g.dim();
    const int n = g.n();
    if (u.rank() != Rank::vector) throw std::invalid_argument("emit_slices: vector field required");
    const PhysicalField vel = to_physical(u);
    const PhysicalField pres = to_physical(recover_pressure_spectral(u, force, params, nudge));

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "a,b";
    for (int c = 1; c <= d; ++c) out << ",u" << c;
    out << ",P\n";

    if (d == 2) {
        for (std::size_t x = 0; x < g.physical_size(); ++x) {
            out << num(vel.coordinate(x, 0)) << "," << num(vel.coordinate(x, 1));
            for (int c = 0; c < 2; ++c) out << "," << num(vel(c, x));
            out << "," << num(pres(0, x)) << "\n";
        }
        return;
    }
    if (axis < 0 || axis > 2) throw std::invalid_argument("emit_slices: axis must be 0, 1 or 2");
    if (!(position >= 0.0 && position <= Grid::length())) {
        throw std::invalid_argument("emit_slices: plane position outside [0, 2pi]");
    }
    const double dx = g.spacing();
    const double r = position / dx;
    const bool on_node = std::abs(r - std::round(r)) < 1e-10;
    const int node = static_cast<int>(std::lround(r)) % n;
    const std::vector<double> w = on_node ? std::vector<double>{} : dirichlet_weights(n, position);
    int other[2];
    for (int a = 0, k = 0; a < 3; ++a)
        if (a != axis) other[k++] = a;

    auto flat = [&](int ia, int ib, int ic) {
        int idx[3];
        idx[axis] = ia;
        idx[other[0]] = ib;
        idx[other[1]] = ic;
        return (static_cast<std::size_t>(idx[0]) * n + idx[1]) * n + idx[2];
    };
    auto value = [&](const PhysicalField& f, int c, int ib, int ic) {
        if (on_node) return f(c, flat(node, ib, ic));
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += w[static_cast<std::size_t>(j)] * f(c, flat(j, ib, ic));
        return s;
    };
    for (int ib = 0; ib < n; ++ib) {
        for (int ic = 0; ic < n; ++ic) {
            out << num(ib * dx) << "," << num(ic * dx);
            for (int c = 0; c < 3; ++c) out << "," << num(value(vel, c, ib, ic));
            out << "," << num(value(pres, 0, ib, ic)) << "\n";
        }
    }
}

}  // namespace lady
