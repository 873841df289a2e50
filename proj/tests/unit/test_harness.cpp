#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "lady/harness/checkpoint.hpp"
#include "lady/harness/config.hpp"
#include "lady/harness/experiment.hpp"
#include "lady/harness/validate.hpp"
#include "lady/spectral/calculus.hpp"
#include "support.hpp"

using namespace lady;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("lady_unit_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

const char* kSmallConfig = R"([experiment]
name = small
[grid]
dim = 2
n = 16
[model]
p = 3
nu0 = 0.05
nu1 = 0.01
dt = 0.02
[force]
kind = builtin2d
grashof = 50
shell_min = 1
shell_max = 3
[nudging]
interpolant = fourier
modes = 4
mu = 5
[spinup]
t0 = 1
initial_energy = 0.1
[run]
length = 0.4
[output]
sample_every = 2
)";

ExperimentConfig small_config(const fs::path& dir, std::vector<std::string> overrides = {}) {
    write_text(dir / "small.ini", kSmallConfig);
    ConfigMap map = read_config_file((dir / "small.ini").string());
    overrides.push_back("output.dir=" + dir.string());
    apply_overrides(map, overrides);
    return parse_experiment_config(map);
}

}  // namespace

TEST_CASE("config parsing") {
    const fs::path dir = scratch_dir("config");
    const ExperimentConfig cfg = small_config(dir);
    CHECK(cfg.name == "small");
    CHECK(cfg.sim.dim == 2);
    CHECK(cfg.sim.n == 16);
    CHECK(cfg.sim.stress.p == 3.0);
    CHECK(cfg.nudging.mu == std::vector<double>{5.0, 5.0});
    CHECK(cfg.nudging.interp.kind == InterpolantSpec::Kind::fourier);
    CHECK(cfg.nudging.interp.modes == 4);
    CHECK(cfg.force.kind == ForceSpec::Kind::builtin2d);
    CHECK(cfg.spin_up.t0 == 1.0);
    CHECK(cfg.output.sample_every == 2);
}

TEST_CASE("overrides, auto nu1 and component-wise mu") {
    const fs::path dir = scratch_dir("overrides");
    const ExperimentConfig cfg = small_config(dir, {"grid.dim=3", "force.kind=lifted3d", "model.nu1=auto", "nudging.mu=10,10,0",
                                                    "nudging.interpolant=nodal", "nudging.stride=4"});
    CHECK(cfg.sim.dim == 3);
    CHECK(cfg.nu1_auto);
    CHECK(cfg.nudging.mu == std::vector<double>{10.0, 10.0, 0.0});
    CHECK(cfg.nudging.interp.kind == InterpolantSpec::Kind::nodal);
    CHECK(cfg.nudging.interp.stride == 4);
}

TEST_CASE("config errors are reported") {
    const fs::path dir = scratch_dir("errors");
    CHECK_THROWS_AS(small_config(dir, {"model.viscosity=1"}), ConfigError);
    CHECK_THROWS_AS(small_config(dir, {"grid.n=abc"}), ConfigError);
    CHECK_THROWS_AS(small_config(dir, {"nudging.mu=1,2,3"}), ConfigError);
    CHECK_THROWS_AS(small_config(dir, {"nudging.modes=99"}), ConfigError);
    ConfigMap map;
    CHECK_THROWS_AS(apply_overrides(map, {"no_equals_sign"}), ConfigError);
    CHECK_THROWS(read_config_file((dir / "missing.ini").string()));
}

TEST_CASE("sweeps expand to the Cartesian product") {
    ConfigMap map{{"experiment.name", "s"}, {"sweep.nudging.mu", "0; 10"}, {"sweep.nudging.modes", "2;4;8"}};
    const auto runs = expand_sweep(map);
    REQUIRE(runs.size() == 6);
    std::set<std::string> names;
    for (const auto& r : runs) {
        names.insert(r.at("experiment.name"));
        CHECK(r.count("sweep.nudging.mu") == 0);
    }
    CHECK(names.size() == 6);
    CHECK(parse_number_list("1, 2.5, 3") == std::vector<double>{1.0, 2.5, 3.0});
}

TEST_CASE("checkpoint round trip is byte-identical") {
    const fs::path dir = scratch_dir("ckpt");
    const Grid g(3, 8);
    Checkpoint ck{3, 8, {2.6, 0.01, 0.02}, 1.25,
                  {random_solenoidal_field(g, 1, 3.0, 1.0), random_solenoidal_field(g, 2, 3.0, 1.0)}};
    save_checkpoint(ck, (dir / "a.ckpt").string());
    const Checkpoint back = load_checkpoint((dir / "a.ckpt").string(), g);
    CHECK(back.t == 1.25);
    CHECK(back.params.p == 2.6);
    REQUIRE(back.fields.size() == 2);
    CHECK(lady::testing::max_abs(back.fields[1] - ck.fields[1]) == 0.0);
    save_checkpoint(back, (dir / "b.ckpt").string());
    CHECK(read_bytes(dir / "a.ckpt") == read_bytes(dir / "b.ckpt"));

    CHECK_THROWS_AS(load_checkpoint((dir / "a.ckpt").string(), Grid(3, 16)), CheckpointError);

    const std::string bytes = read_bytes(dir / "a.ckpt");
    write_text(dir / "short.ckpt", bytes.substr(0, bytes.size() - 7));
    CHECK_THROWS_AS(load_checkpoint((dir / "short.ckpt").string()), CheckpointError);
    write_text(dir / "long.ckpt", bytes + "x");
    CHECK_THROWS_AS(load_checkpoint((dir / "long.ckpt").string()), CheckpointError);
    std::string version = bytes;
    version[8] = 9;
    write_text(dir / "version.ckpt", version);
    CHECK_THROWS_AS(load_checkpoint((dir / "version.ckpt").string()), CheckpointError);
    std::string magic = bytes;
    magic[0] = 'X';
    write_text(dir / "magic.ckpt", magic);
    CHECK_THROWS_AS(load_checkpoint((dir / "magic.ckpt").string()), CheckpointError);
}

TEST_CASE("observation serialization round trip") {
    const Grid g(3, 16);
    const SpectralField u = random_solenoidal_field(g, 4, 5.0, 1.0);
    for (const auto& spec : {InterpolantSpec::fourier(3), InterpolantSpec::nodal(4)}) {
        const Observation obs = observe(u, 0.75, spec);
        const auto bytes = serialize_observation(obs);
        CHECK(deserialize_observation(bytes) == obs);
        auto cut = bytes;
        cut.pop_back();
        CHECK_THROWS(deserialize_observation(cut));
    }
}

TEST_CASE("twin experiment end to end") {
    const fs::path dir = scratch_dir("twin");
    const ExperimentConfig cfg = small_config(dir);
    const TwinSummary s = run_twin_experiment(cfg);
    CHECK(s.t0 == doctest::Approx(1.0));
    CHECK(s.t_end == doctest::Approx(1.4));
    CHECK(s.final_error < s.initial_error);
    CHECK(s.initial_error == doctest::Approx(std::sqrt(s.rows.front().energy)).epsilon(1e-12));
    CHECK(fs::exists(dir / "small_final.ckpt"));
    CHECK(fs::exists(dir / "small_summary.txt"));
    CHECK(fs::exists(dir / "small_energy.csv"));
    for (const auto& row : s.rows) {
        double sum = 0.0;
        for (double e : row.error_components) sum += e * e;
        CHECK(sum == doctest::Approx(row.error_l2 * row.error_l2).epsilon(1e-12));
    }
    std::ifstream csv(s.csv_path);
    std::string first, header;
    std::getline(csv, first);
    std::getline(csv, header);
    CHECK(first == "# schema=1");
    CHECK(header == csv_header(2));

    // Same config, same bytes.
    const std::string csv_a = read_bytes(s.csv_path);
    run_twin_experiment(cfg);
    CHECK(read_bytes(s.csv_path) == csv_a);
}

TEST_CASE("synchronized start stays synchronized") {
    const fs::path dir = scratch_dir("sync");
    const TwinSummary s = run_twin_experiment(small_config(dir, {"run.sync_initial=true"}));
    CHECK(s.initial_error == 0.0);
    CHECK(s.final_error <= 1e-12);
}

TEST_CASE("resuming from a twin checkpoint is bitwise identical") {
    const fs::path dir = scratch_dir("resume");
    // 20 steps in one go against 10 + 10.
    run_twin_experiment(small_config(dir, {"experiment.name=whole", "run.length=0.4"}));
    run_twin_experiment(small_config(dir, {"experiment.name=first", "run.length=0.2"}));
    run_twin_experiment(small_config(dir, {"experiment.name=second", "run.length=0.2",
                                           "run.resume=" + (dir / "first_final.ckpt").string()}));
    const Checkpoint a = load_checkpoint((dir / "whole_final.ckpt").string());
    const Checkpoint b = load_checkpoint((dir / "second_final.ckpt").string());
    CHECK(a.t == doctest::Approx(b.t).epsilon(1e-14));
    for (std::size_t f = 0; f < 2; ++f) {
        const auto& x = a.fields[f].data();
        const auto& y = b.fields[f].data();
        CHECK(std::equal(x.begin(), x.end(), y.begin()));
    }
}

TEST_CASE("slices") {
    const fs::path dir = scratch_dir("slices");
    const Grid g3(3, 16);
    const SpectralField zero(g3, Rank::vector);
    const StressParams params{2.0, 0.01, 0.0};

    auto read_csv = [](const fs::path& p) {
        std::ifstream in(p);
        std::string line;
        std::getline(in, line);
        std::vector<std::vector<double>> rows;
        while (std::getline(in, line)) {
            std::vector<double> r;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) r.push_back(std::stod(cell));
            rows.push_back(r);
        }
        return rows;
    };

    // sin(x3) e1 vanishes on the plane x3 = pi, whether or not the plane is on a node.
    const SpectralField u = to_spectral(lady::testing::sample(g3, Rank::vector, [](int c, double, double, double z) {
        return c == 0 ? std::sin(z) : 0.0;
    }));
    emit_slices(u, zero, params, 2, M_PI, (dir / "pi.csv").string());
    auto rows = read_csv(dir / "pi.csv");
    CHECK(rows.size() == 256);
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, std::abs(r[2]));
    CHECK(worst < 1e-14);

    emit_slices(u, zero, params, 2, 1.0, (dir / "off.csv").string());
    rows = read_csv(dir / "off.csv");
    worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, std::abs(r[2] - std::sin(1.0)));
    CHECK(worst < 1e-13);

    CHECK_THROWS_AS(emit_slices(u, zero, params, 2, 7.0, (dir / "bad.csv").string()), std::invalid_argument);
    CHECK_THROWS_AS(emit_slices(u, zero, params, 3, 1.0, (dir / "bad.csv").string()), std::invalid_argument);

    // 2D writes the whole field; its mean square reproduces the L2 norm.
    const Grid g2(2, 16);
    const SpectralField w = random_solenoidal_field(g2, 9, 5.0, 1.0);
    emit_slices(w, SpectralField(g2, Rank::vector), params, 0, 0.0, (dir / "full.csv").string());
    rows = read_csv(dir / "full.csv");
    REQUIRE(rows.size() == 256);
    double sum = 0.0;
    for (const auto& r : rows) sum += r[2] * r[2] + r[3] * r[3];
    CHECK(sum * std::pow(2 * M_PI / 16, 2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("property suites pass") {
    for (const auto& name : property_suite_names()) {
        for (const PropertyResult& r : run_property_suite(name, 1)) {
            CAPTURE(r.detail);
            CHECK_MESSAGE(r.passed, r.name);
        }
    }
}

TEST_CASE("command-line exit codes") {
    const fs::path dir = scratch_dir("cli");
    write_text(dir / "small.ini", kSmallConfig);
    const std::string cli = LADY_CLI_PATH;
    auto run = [&](const std::string& args) {
        const int status = std::system((cli + " " + args + " > " + (dir / "log.txt").string() + " 2>&1").c_str());
        return WEXITSTATUS(status);
    };
    CHECK(run("thresholds --G 10 --nu1 1") == 0);
    CHECK(run("validate --suite parseval") == 0);
    CHECK(run("run " + (dir / "small.ini").string() + " --set output.dir=" + dir.string()) == 0);
    CHECK(run("run " + (dir / "small.ini").string() + " --set model.bogus=1") == 2);
    CHECK(run("run " + (dir / "missing.ini").string()) != 0);
    CHECK(run("no-such-command") == 2);
    CHECK(run("run " + (dir / "small.ini").string() + " --set output.dir=" + dir.string() +
              " --set model.dt=5 --set model.nu1=0 --set force.grashof=1e6") == 3);
}
