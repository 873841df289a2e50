// Command-line front end: spin-up, run, thresholds, validate, slice.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "lady/analysis/thresholds.hpp"
#include "lady/harness/checkpoint.hpp"
#include "lady/harness/config.hpp"
#include "lady/harness/experiment.hpp"
#include "lady/harness/validate.hpp"
#include "lady/spectral/calculus.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBlowup = 3;

std::vector<lady::ConfigMap> load_maps(const std::string& path, const std::vector<std::string>& overrides) {
    lady::ConfigMap map = lady::read_config_file(path);
    if (!map.count("experiment.name")) map["experiment.name"] = std::filesystem::path(path).stem().string();
    lady::apply_overrides(map, overrides);
    return lady::expand_sweep(map);
}

// The keys a spin-up depends on; sweep members that agree on them share one spin-up.
std::string spin_up_key(const lady::ConfigMap& map, const std::string& save) {
    std::string key = save;
    for (const auto& [k, v] : map) {
        if (k.rfind("grid.", 0) == 0 || k.rfind("model.", 0) == 0 || k.rfind("force.", 0) == 0 ||
            k.rfind("spinup.", 0) == 0) {
            key += "\n" + k + "=" + v;
        }
    }
    return key;
}

int cmd_spin_up(const std::string& path, const std::vector<std::string>& overrides, const std::string& out) {
    const auto maps = load_maps(path, overrides);
    std::set<std::string> done;
    if (!out.empty()) {
        std::set<std::string> distinct;
        for (const auto& map : maps) distinct.insert(spin_up_key(map, out));
        if (distinct.size() > 1) throw lady::ConfigError("-o names one file but the sweep needs several spin-ups");
    }
    for (const auto& map : maps) {
        lady::ExperimentConfig cfg = lady::parse_experiment_config(map);
        if (!out.empty()) cfg.spin_up_save = out;
        if (cfg.spin_up_save.empty()) {
            cfg.spin_up_save = (std::filesystem::path(cfg.output.dir) / (cfg.name + "_t0.ckpt")).string();
        }
        if (!done.insert(spin_up_key(map, cfg.spin_up_save)).second) continue;
        const lady::ResolvedSetup setup = lady::resolve_setup(cfg);
        const lady::SpinUpResult r = lady::run_spin_up(cfg, setup);
        std::cout << cfg.name << ": t0 = " << r.state.t << ", energy = " << lady::l2_norm_squared(r.state.u)
                  << ", stationary = " << (r.stationary ? "yes" : "no") << ", nu0 = " << setup.sim.stress.nu0
                  << ", nu1 = " << setup.sim.stress.nu1 << " -> " << cfg.spin_up_save << "\n";
    }
    return kExitOk;
}

int cmd_run(const std::string& path, const std::vector<std::string>& overrides) {
    for (const auto& map : load_maps(path, overrides)) {
        const lady::ExperimentConfig cfg = lady::parse_experiment_config(map);
        const lady::TwinSummary s = lady::run_twin_experiment(cfg, &std::cerr);
        std::cout << lady::summary_text(s) << "csv = " << s.csv_path << "\n\n";
    }
    return kExitOk;
}

int cmd_slice(const std::string& config, const std::vector<std::string>& overrides, const std::string& ckpt,
              int field, int axis, double position, const std::string& out) {
    const auto maps = load_maps(config, overrides);
    const lady::ExperimentConfig cfg = lady::parse_experiment_config(maps.front());
    const lady::ResolvedSetup setup = lady::resolve_setup(cfg);
    const lady::Checkpoint ck = lady::load_checkpoint(ckpt, setup.sim.grid());
    if (field < 0 || field >= static_cast<int>(ck.fields.size())) {
        throw lady::ConfigError("checkpoint holds " + std::to_string(ck.fields.size()) + " field(s)");
    }
    try {
        lady::emit_slices(ck.fields[static_cast<std::size_t>(field)], setup.force, setup.sim.stress, axis, position,
                          out);
    } catch (const std::invalid_argument& e) {
        throw lady::ConfigError(e.what());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudospectral Ladyzhenskaya solver with nudging data assimilation"};
    app.require_subcommand(1);

    std::string config;
    std::vector<std::string> overrides;
    std::string out;

    auto* spin = app.add_subcommand("spin-up", "Integrate the reference run from rest to t0 and checkpoint it");
    spin->add_option("config", config, "Experiment file")->required()->check(CLI::ExistingFile);
    spin->add_option("--set", overrides, "Override section.key=value");
    spin->add_option("-o,--out", out, "Checkpoint path (default <dir>/<name>_t0.ckpt)");

    auto* run = app.add_subcommand("run", "Spin-up followed by the twin nudging run");
    run->add_option("config", config, "Experiment file")->required()->check(CLI::ExistingFile);
    run->add_option("--set", overrides, "Override section.key=value");

    lady::ThresholdInputs th;
    auto* thr = app.add_subcommand("thresholds", "Evaluate the nudging-parameter thresholds");
    thr->add_option("--p", th.p, "Power-law exponent");
    thr->add_option("--nu0", th.nu0);
    thr->add_option("--nu1", th.nu1);
    thr->add_option("--lambda1", th.lambda1);
    thr->add_option("--G", th.G, "Grashof number");
    thr->add_option("--mu", th.mu, "mu for h_max (default: 3D periodic threshold)");
    thr->add_option("--c-tilde", th.constants.c_tilde);
    thr->add_option("--c-bar", th.constants.c_bar);
    thr->add_option("--C-tilde", th.constants.C_tilde);
    thr->add_option("--C", th.constants.C);
    thr->add_option("--c-K", th.constants.c_K);
    thr->add_option("--c0", th.constants.c0);

    std::string suite = "all";
    unsigned long long seed = 1;
    auto* val = app.add_subcommand("validate", "Run built-in property suites");
    val->add_option("--suite", suite)->check(CLI::IsMember(lady::property_suite_names()));
    val->add_option("--seed", seed);

    std::string ckpt;
    int field = 0;
    int axis = 2;
    double position = 3.141592653589793;
    auto* sl = app.add_subcommand("slice", "Write a plane of velocity and pressure from a checkpoint");
    sl->add_option("config", config, "Experiment file (grid, force, parameters)")->required()->check(CLI::ExistingFile);
    sl->add_option("checkpoint", ckpt)->required()->check(CLI::ExistingFile);
    sl->add_option("--set", overrides, "Override section.key=value");
    sl->add_option("--field", field, "Field index in the checkpoint (0 = u, 1 = v)");
    sl->add_option("--axis", axis, "Plane normal, 0-based");
    sl->add_option("--position", position, "Plane position in [0, 2pi]");
    sl->add_option("-o,--out", out, "CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*spin) return cmd_spin_up(config, overrides, out);
        if (*run) return cmd_run(config, overrides);
        if (*thr) {
            std::cout << lady::to_key_value(lady::threshold_report(th));
            return kExitOk;
        }
        if (*val) {
            bool ok = true;
            for (const auto& r : lady::run_property_suite(suite, seed)) {
                std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
                ok = ok && r.passed;
            }
            return ok ? kExitOk : kExitFailure;
        }
        if (*sl) return cmd_slice(config, overrides, ckpt, field, axis, position, out);
    } catch (const lady::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const lady::NumericalBlowup& e) {
        std::cerr << "numerical blow-up: " << e.what() << "\n";
        return kExitBlowup;
    } catch (const lady::CheckpointError& e) {
        std::cerr << "checkpoint error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}
