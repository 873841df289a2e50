#include "lady/harness/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#include "lady/harness/checkpoint.hpp"

namespace lady {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "experiment.name",
        "grid.dim", "grid.n",
        "model.p", "model.nu0", "model.nu1", "model.cs", "model.dt", "model.cfl_safety",
        "force.kind", "force.seed", "force.shell_min", "force.shell_max", "force.grashof", "force.nu0_2d",
        "force.third_family_k1k2", "force.path",
        "nudging.interpolant", "nudging.modes", "nudging.stride", "nudging.mu", "nudging.cadence",
        "spinup.t0", "spinup.stationarity", "spinup.min_time", "spinup.drift_tolerance",
        "spinup.sample_interval", "spinup.initial_energy", "spinup.seed", "spinup.load", "spinup.save",
        "run.length", "run.fit_begin", "run.sync_initial", "run.resume",
        "output.dir", "output.sample_every", "output.checkpoint_every", "output.slice_every",
        "output.slice_axis", "output.slice_position",
    };
    return keys;
}

class Reader {
public:
    explicit Reader(const ConfigMap& m) : map_(m) {}

    bool has(const std::string& key) const { return map_.count(key) != 0; }

    std::string text(const std::string& key, const std::string& fallback) const {
        auto it = map_.find(key);
        return it == map_.end() ? fallback : it->second;
    }

    double number(const std::string& key, double fallback) const {
        auto it = map_.find(key);
        if (it == map_.end()) return fallback;
        try {
            std::size_t used = 0;
            const double v = std::stod(it->second, &used);
            if (trim(it->second.substr(used)).empty()) return v;
        } catch (const std::exception&) {
        }
        throw ConfigError(key + ": expected a number, got '" + it->second + "'");
    }

    long long integer(const std::string& key, long long fallback) const {
        auto it = map_.find(key);
        if (it == map_.end()) return fallback;
        try {
            std::size_t used = 0;
            const long long v = std::stoll(it->second, &used);
            if (trim(it->second.substr(used)).empty()) return v;
        } catch (const std::exception&) {
        }
        throw ConfigError(key + ": expected an integer, got '" + it->second + "'");
    }

    bool boolean(const std::string& key, bool fallback) const {
        auto it = map_.find(key);
        if (it == map_.end()) return fallback;
        const std::string v = it->second;
        if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
        if (v == "false" || v == "0" || v == "no" || v == "off") return false;
        throw ConfigError(key + ": expected a boolean, got '" + v + "'");
    }

private:
    const ConfigMap& map_;
};

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-') {
            out += c;
        } else if (c == ',') {
            out += '_';
        }
    }
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    try {
        sim.validate();
        const Grid g = sim.grid();
        force.validate();
        if (force.kind == ForceSpec::Kind::lifted3d && sim.dim != 3) throw ConfigError("force.kind = lifted3d needs grid.dim = 3");
        if (force.kind == ForceSpec::Kind::builtin2d && sim.dim != 2) throw ConfigError("force.kind = builtin2d needs grid.dim = 2");
        nudging.validate(g);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(run_length > 0.0)) throw ConfigError("run.length must be positive");
    if (!(spin_up.t0 >= 0.0)) throw ConfigError("spinup.t0 must be non-negative");
    if (!(spin_up.sample_interval > 0.0)) throw ConfigError("spinup.sample_interval must be positive");
    if (!(cs > 0.0)) throw ConfigError("model.cs must be positive");
    if (fit_begin < 0.0 || fit_begin >= run_length) throw ConfigError("run.fit_begin must lie in [0, run.length)");
    if (output.sample_every < 1) throw ConfigError("output.sample_every must be >= 1");
    if (output.checkpoint_every < 0 || output.slice_every < 0) throw ConfigError("output cadences must be >= 0");
    if (sim.dim == 3 && (output.slice_axis < 0 || output.slice_axis >= 3)) throw ConfigError("output.slice_axis out of range");
}

ConfigMap read_config_file(const std::string& path) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(path, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(e.what());
    }
    ConfigMap map;
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw ConfigError("key '" + section + "' outside any section in " + path);
        for (const auto& [key, value] : body) map[section + "." + key] = trim(value.data());
    }
    return map;
}

void apply_overrides(ConfigMap& map, const std::vector<std::string>& overrides) {
    for (const std::string& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw ConfigError("override '" + o + "' is not key=value");
        const std::string key = trim(o.substr(0, eq));
        if (key.find('.') == std::string::npos) throw ConfigError("override key '" + key + "' needs a section");
        map[key] = trim(o.substr(eq + 1));
    }
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (!trim(item.substr(used)).empty()) throw ConfigError("");
        } catch (const std::exception&) {
            throw ConfigError("bad number '" + item + "' in list '" + text + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty number list");
    return out;
}

ExperimentConfig parse_experiment_config(const ConfigMap& map) {
    for (const auto& [key, value] : map) {
        if (key.rfind("sweep.", 0) == 0) continue;
        if (!known_keys().count(key)) throw ConfigError("unknown configuration key '" + key + "'");
    }
    const Reader r(map);
    ExperimentConfig c;
    c.name = r.text("experiment.name", c.name);

    c.sim.dim = static_cast<int>(r.integer("grid.dim", c.sim.dim));
    c.sim.n = static_cast<int>(r.integer("grid.n", c.sim.n));
    c.sim.stress.p = r.number("model.p", c.sim.stress.p);
    c.sim.stress.nu0 = r.number("model.nu0", c.sim.stress.nu0);
    if (r.text("model.nu1", "0") == "auto") {
        c.nu1_auto = true;
    } else {
        c.sim.stress.nu1 = r.number("model.nu1", c.sim.stress.nu1);
    }
    c.cs = r.number("model.cs", c.cs);
    c.sim.dt = r.number("model.dt", c.sim.dt);
    c.sim.cfl_safety = r.number("model.cfl_safety", c.sim.cfl_safety);

    const std::string kind = r.text("force.kind", c.sim.dim == 3 ? "lifted3d" : "builtin2d");
    if (kind == "builtin2d") {
        c.force.kind = ForceSpec::Kind::builtin2d;
    } else if (kind == "lifted3d") {
        c.force.kind = ForceSpec::Kind::lifted3d;
    } else if (kind == "file") {
        c.force.kind = ForceSpec::Kind::file;
    } else {
        throw ConfigError("force.kind must be builtin2d, lifted3d or file");
    }
    c.force.seed = static_cast<std::uint64_t>(r.integer("force.seed", static_cast<long long>(c.force.seed)));
    c.force.shell_min = r.number("force.shell_min", c.force.shell_min);
    c.force.shell_max = r.number("force.shell_max", c.force.shell_max);
    c.force.grashof = r.number("force.grashof", c.force.grashof);
    c.force.nu0_2d = r.number("force.nu0_2d", c.force.nu0_2d);
    c.force.third_family_k1k2 = r.boolean("force.third_family_k1k2", c.force.third_family_k1k2);
    c.force.path = r.text("force.path", "");

    const std::string interp = r.text("nudging.interpolant", "fourier");
    if (interp == "fourier") {
        c.nudging.interp = InterpolantSpec::fourier(static_cast<int>(r.integer("nudging.modes", 1)));
    } else if (interp == "nodal") {
        c.nudging.interp = InterpolantSpec::nodal(static_cast<int>(r.integer("nudging.stride", 1)));
    } else {
        throw ConfigError("nudging.interpolant must be fourier or nodal");
    }
    std::vector<double> mu = parse_number_list(r.text("nudging.mu", "0"));
    if (mu.size() == 1) mu.assign(static_cast<std::size_t>(c.sim.dim), mu[0]);
    c.nudging.mu = mu;
    c.nudging.cadence = static_cast<int>(r.integer("nudging.cadence", 1));

    c.spin_up.t0 = r.number("spinup.t0", c.spin_up.t0);
    c.spin_up.stationarity = r.boolean("spinup.stationarity", c.spin_up.stationarity);
    c.spin_up.min_time = r.number("spinup.min_time", c.spin_up.min_time);
    c.spin_up.drift_tolerance = r.number("spinup.drift_tolerance", c.spin_up.drift_tolerance);
    c.spin_up.sample_interval = r.number("spinup.sample_interval", c.spin_up.sample_interval);
    c.spin_up.initial_energy = r.number("spinup.initial_energy", c.spin_up.initial_energy);
    c.spin_up.seed = static_cast<std::uint64_t>(r.integer("spinup.seed", static_cast<long long>(c.spin_up.seed)));
    c.spin_up_load = r.text("spinup.load", "");
    c.spin_up_save = r.text("spinup.save", "");

    c.run_length = r.number("run.length", c.run_length);
    c.fit_begin = r.number("run.fit_begin", c.fit_begin);
    c.sync_initial = r.boolean("run.sync_initial", c.sync_initial);
    c.resume = r.text("run.resume", "");

    c.output.dir = r.text("output.dir", c.output.dir);
    c.output.sample_every = static_cast<int>(r.integer("output.sample_every", c.output.sample_every));
    c.output.checkpoint_every = static_cast<int>(r.integer("output.checkpoint_every", c.output.checkpoint_every));
    c.output.slice_every = static_cast<int>(r.integer("output.slice_every", c.output.slice_every));
    c.output.slice_axis = static_cast<int>(r.integer("output.slice_axis", c.output.slice_axis));
    c.output.slice_position = r.number("output.slice_position", c.output.slice_position);

    c.validate();
    return c;
}

std::vector<ConfigMap> expand_sweep(const ConfigMap& map) {
    ConfigMap base;
    std::vector<std::pair<std::string, std::vector<std::string>>> axes;
    for (const auto& [key, value] : map) {
        if (key.rfind("sweep.", 0) != 0) {
            base[key] = value;
            continue;
        }
        std::vector<std::string> values;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ';')) {
            item = trim(item);
            if (!item.empty()) values.push_back(item);
        }
        if (values.empty()) throw ConfigError(key + ": empty sweep");
        axes.emplace_back(key.substr(6), std::move(values));
    }
    std::vector<ConfigMap> out{base};
    const std::string name = base.count("experiment.name") ? base.at("experiment.name") : "experiment";
    for (const auto& [key, values] : axes) {
        std::vector<ConfigMap> next;
        for (const ConfigMap& m : out) {
            for (const std::string& v : values) {
                ConfigMap copy = m;
                copy[key] = v;
                const std::string current = copy.count("experiment.name") ? copy.at("experiment.name") : name;
                const auto dot = key.rfind('.');
                copy["experiment.name"] = current + "_" + key.substr(dot + 1) + sanitize(v);
                next.push_back(std::move(copy));
            }
        }
        out = std::move(next);
    }
    return out;
}

ResolvedSetup resolve_setup(const ExperimentConfig& cfg) {
    SimConfig sim = cfg.sim;
    const Grid grid = sim.grid();
    BuiltForce built{SpectralField(grid, Rank::vector), sim.stress.nu0};
    try {
        if (cfg.force.kind == ForceSpec::Kind::file) {
            const Checkpoint ck = load_checkpoint(cfg.force.path, grid);
            if (ck.fields.empty()) throw ConfigError("force file holds no field");
            built = build_force(cfg.force, grid, sim.stress.nu0, &ck.fields.front());
        } else {
            built = build_force(cfg.force, grid, sim.stress.nu0);
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    sim.stress.nu0 = built.nu0;
    if (cfg.nu1_auto) sim.stress.nu1 = nu1_of(cfg.cs, sim.n, sim.stress.nu0, sim.stress.p);
    return {sim, std::move(built.force)};
}

}  // namespace lady
