#include "lady/harness/validate.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "lady/assimilation/interpolant.hpp"
#include "lady/constitutive/stress.hpp"
#include "lady/model/simulation.hpp"
#include "lady/spectral/calculus.hpp"

namespace lady {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

PropertyResult make(const std::string& name, bool ok, double worst, const char* what) {
    std::ostringstream os;
    os << what << " = " << worst;
    return {name, ok, os.str()};
}

PropertyResult monotonicity(unsigned long long seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    bool ok = true;
    for (double p : {2.2, 2.5, 3.0}) {
        for (double nu1 : {0.0, 0.5, 2.0}) {
            const StressParams params{p, 1.0, nu1};
            for (int trial = 0; trial < 2000; ++trial) {
                SmallMatrix a{3, {}}, b{3, {}};
                for (int i = 0; i < 3; ++i) {
                    for (int j = i; j < 3; ++j) {
                        a(i, j) = a(j, i) = 20.0 * unit(rng) - 10.0;
                        b(i, j) = b(j, i) = 20.0 * unit(rng) - 10.0;
                    }
                }
                const double scale = std::pow(frobenius_norm(a) + frobenius_norm(b), p);
                const double gap = monotonicity_gap(a, b, params) / scale;
                worst = std::min(worst, gap);
                if (gap < -1e-12) ok = false;
            }
        }
    }
    return make("monotonicity", ok, worst, "min scaled gap");
}

PropertyResult leray(unsigned long long seed) {
    double worst = 0.0;
    for (int d : {2, 3}) {
        const Grid g(d, 16);
        SpectralField f = random_solenoidal_field(g, seed, 5.0, 1.0);
        // Add a gradient part so the projector has something to remove.
        SpectralField phi(g, Rank::scalar);
        std::mt19937_64 rng(seed + 7);
        for (std::size_t m = 0; m < g.spectral_size(); ++m) phi(0, m) = Complex(unit(rng) - 0.5, unit(rng) - 0.5);
        enforce_hermitian(phi);
        dealias_inplace(phi);
        SpectralField mixed = f + gradient(phi);
        const SpectralField once = leray_project(mixed);
        const SpectralField twice = leray_project(once);
        // Defects are measured against the input, since the projector cancels its gradient part.
        const double scale = l2_norm_squared(mixed);
        worst = std::max(worst, std::sqrt(l2_norm_squared(twice - once) / scale));
        worst = std::max(worst, std::sqrt(l2_norm_squared(divergence(once)) / h1_seminorm_squared(mixed)));
    }
    return make("leray", worst < 1e-13, worst, "max relative defect");
}

PropertyResult parseval(unsigned long long seed) {
    double worst = 0.0;
    for (int d : {2, 3}) {
        const Grid g(d, 16);
        const SpectralField f = random_solenoidal_field(g, seed, 5.0, 2.0);
        const PhysicalField p = to_physical(f);
        double s = 0.0;
        for (double v : p.data()) s += v * v;
        s *= std::pow(g.spacing(), d);
        worst = std::max(worst, std::abs(s - l2_norm_squared(f)) / l2_norm_squared(f));
    }
    return make("parseval", worst < 1e-13, worst, "max relative defect");
}

PropertyResult interpolant(unsigned long long seed) {
    const Grid g(2, 32);
    bool ok = true;
    double worst = -1.0;
    for (int trial = 0; trial < 20; ++trial) {
        const SpectralField phi = random_solenoidal_field(g, seed + trial, 10.0, 1.0);
        for (int m : {2, 4, 8}) {
            const SpectralField ih = interp_fourier(phi, m);
            const double n_phi = std::sqrt(l2_norm_squared(phi));
            const double bound = std::sqrt(h1_seminorm_squared(phi)) / m;
            const double a = std::sqrt(l2_norm_squared(ih)) - n_phi;
            const double b = std::sqrt(l2_norm_squared(phi - ih)) - bound;
            worst = std::max({worst, a / n_phi, b / n_phi});
            if (a > 1e-12 * n_phi || b > 1e-12 * n_phi) ok = false;
        }
    }
    return make("interpolant", ok, worst, "max relative excess");
}

PropertyResult hermitian(unsigned long long seed) {
    double worst = 0.0;
    for (int d : {2, 3}) {
        const Grid g(d, 16);
        PhysicalField p(g, Rank::scalar);
        std::mt19937_64 rng(seed);
        for (double& v : p.data()) v = unit(rng) - 0.5;
        const PhysicalField back = to_physical(to_spectral(p));
        for (std::size_t i = 0; i < p.data().size(); ++i) worst = std::max(worst, std::abs(back.data()[i] - p.data()[i]));
    }
    return make("hermitian", worst < 1e-14, worst, "max round-trip error");
}

PropertyResult taylor_green() {
    // u = (sin x cos y, -cos x sin y) e^{-2 nu t} solves the Newtonian equations unforced.
    const double nu0 = 0.01;
    SimConfig cfg;
    cfg.dim = 2;
    cfg.n = 16;
    cfg.stress = {2.0, nu0, 0.0};
    cfg.dt = 1e-2;
    const Grid g = cfg.grid();
    Simulation sim(cfg, SpectralField(g, Rank::vector));
    PhysicalField u0(g, Rank::vector);
    for (std::size_t x = 0; x < g.physical_size(); ++x) {
        const double a = u0.coordinate(x, 0), b = u0.coordinate(x, 1);
        u0(0, x) = std::sin(a) * std::cos(b);
        u0(1, x) = -std::cos(a) * std::sin(b);
    }
    sim.set_state(State{0.0, to_spectral(u0)});
    sim.advance_to(0.5);
    const PhysicalField u = to_physical(sim.state().u);
    const double decay = std::exp(-2.0 * nu0 * 0.5);
    double worst = 0.0;
    for (std::size_t x = 0; x < g.physical_size(); ++x) {
        for (int c = 0; c < 2; ++c) worst = std::max(worst, std::abs(u(c, x) - decay * u0(c, x)));
    }
    return make("taylor_green", worst < 1e-10, worst, "max nodal error");
}

}  // namespace

std::vector<std::string> property_suite_names() {
    return {"all", "monotonicity", "leray", "parseval", "interpolant", "hermitian", "taylor_green"};
}

std::vector<PropertyResult> run_property_suite(const std::string& name, unsigned long long seed) {
    std::vector<PropertyResult> out;
    const bool all = name == "all";
    bool known = all;
    auto want = [&](const char* s) {
        const bool hit = all || name == s;
        known = known || hit;
        return hit;
    };
    if (want("monotonicity")) out.push_back(monotonicity(seed));
    if (want("leray")) out.push_back(leray(seed));
    if (want("parseval")) out.push_back(parseval(seed));
    if (want("interpolant")) out.push_back(interpolant(seed));
    if (want("hermitian")) out.push_back(hermitian(seed));
    if (want("taylor_green")) out.push_back(taylor_green());
    if (!known) throw std::invalid_argument("unknown property suite '" + name + "'");
    return out;
}

}  // namespace lady
