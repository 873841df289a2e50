#include <doctest.h>

#include <cmath>

#include "lady/forcing/forcing.hpp"
#include "lady/spectral/calculus.hpp"
#include "support.hpp"

using namespace lady;
using lady::testing::max_abs;

namespace {

double divergence_norm(const SpectralField& f) { return std::sqrt(l2_norm_squared(divergence(f))); }

ForceSpec spec_with(double grashof) {
    ForceSpec s;
    s.seed = 42;
    s.shell_min = 2.0;
    s.shell_max = 4.0;
    s.grashof = grashof;
    return s;
}

}  // namespace

TEST_CASE("grashof number and its inverse") {
    CHECK(grashof(2.5e-3, 1e-4) == doctest::Approx(2.5e5).epsilon(1e-12));
    CHECK(nu0_for_grashof(2.5e-3, 2.5e5) == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(grashof(1.0, 1.0, 16.0) == doctest::Approx(0.125));
    CHECK_THROWS_AS(grashof(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("power-law coefficient from the grid scale") {
    // 0.5 (0.1 * 2pi / 512)^2 with the nu0 factor cancelling at p = 3.
    CHECK(nu1_of(0.1, 512, 1e-4, 3.0) == doctest::Approx(7.530e-7).epsilon(1e-3));
    CHECK(nu1_of(0.1, 256, 1e-4, 3.0) / nu1_of(0.1, 512, 1e-4, 3.0) == doctest::Approx(4.0));
    CHECK(nu1_of(0.1, 64, 0.01, 2.5) == doctest::Approx(nu1_of(0.1, 64, 1.0, 2.5) * 0.1));
}

TEST_CASE("generated 2D force has the requested Grashof number") {
    const Grid g(2, 64);
    for (double G : {1.0, 1e4, 2.5e5}) {
        const SpectralField f = build_force_2d(spec_with(G), g, 0.01);
        CHECK(grashof(std::sqrt(l2_norm_squared(f)), 0.01) == doctest::Approx(G).epsilon(1e-12));
        CHECK(divergence_norm(f) <= 1e-13 * std::sqrt(h1_seminorm_squared(f)));
        for (int c = 0; c < 2; ++c) CHECK(f(c, 0) == Complex{});
        CHECK(max_abs(f - dealias(f)) == 0.0);
        SpectralField sym = f;
        enforce_hermitian(sym);
        CHECK(max_abs(sym - f) == 0.0);
    }
}

TEST_CASE("zero Grashof number gives zero forcing") {
    const SpectralField f = build_force_2d(spec_with(0.0), Grid(2, 32), 0.01);
    CHECK(max_abs(f) == 0.0);
}

TEST_CASE("2D force is deterministic in the seed and lives on the shell") {
    const Grid g(2, 64);
    const SpectralField a = build_force_2d(spec_with(10.0), g, 0.01);
    const SpectralField b = build_force_2d(spec_with(10.0), g, 0.01);
    CHECK(std::equal(a.data().begin(), a.data().end(), b.data().begin()));
    ForceSpec other = spec_with(10.0);
    other.seed = 43;
    CHECK(max_abs(build_force_2d(other, g, 0.01) - a) > 0.0);
    auto k2 = g.k_squared();
    for (std::size_t m = 0; m < g.spectral_size(); ++m) {
        if (k2[m] < 4.0 || k2[m] > 16.0) CHECK(std::abs(a(0, m)) + std::abs(a(1, m)) == 0.0);
    }
}

TEST_CASE("empty shell and 3D grids are rejected") {
    ForceSpec s = spec_with(1.0);
    s.shell_min = 30.0;
    s.shell_max = 40.0;
    CHECK_THROWS_AS(build_force_2d(s, Grid(2, 32), 0.01), std::invalid_argument);
    CHECK_THROWS_AS(build_force_2d(spec_with(1.0), Grid(3, 16), 0.01), std::invalid_argument);
}

TEST_CASE("curl of the generated force") {
    const Grid g(2, 32);
    const SpectralField f = to_spectral(lady::testing::sample(g, Rank::vector, [](int c, double x, double y, double) {
        return c == 0 ? std::sin(y) : 0.0;
    }));
    // curl (sin y, 0) = -cos y
    const PhysicalField w = to_physical(curl_2d(f));
    const PhysicalField want = lady::testing::sample(g, Rank::scalar, [](int, double, double y, double) {
        return -std::cos(y);
    });
    CHECK(lady::testing::max_abs_diff(w, want) < 1e-14);
}

TEST_CASE("single-mode lift reproduces the 2D pattern on the coordinate planes") {
    const Grid g2(2, 16);
    const Grid g3(3, 16);
    const Complex psi(0.3, -0.7);
    SpectralField f2(g2, Rank::vector);
    f2.set_coefficient(0, {1, 1, 0}, Complex(0.0, 1.0) * psi);
    f2.set_coefficient(1, {1, 1, 0}, Complex(0.0, -1.0) * psi);
    const Complex ghat = curl_2d(f2).coefficient(0, {1, 1, 0});
    CHECK(std::abs(ghat - 2.0 * psi) < 1e-15);

    LiftReport report;
    const SpectralField f3 = lift_force_3d(f2, g3, false, &report);
    const Complex half_i_g = Complex(0.0, 0.5) * ghat;
    CHECK(std::abs(f3.coefficient(0, {1, 1, 0}) - half_i_g) < 1e-15);
    CHECK(std::abs(f3.coefficient(1, {1, 1, 0}) + half_i_g) < 1e-15);
    CHECK(std::abs(f3.coefficient(0, {1, 0, 1}) - half_i_g) < 1e-15);
    CHECK(std::abs(f3.coefficient(2, {1, 0, 1}) + half_i_g) < 1e-15);
    CHECK(std::abs(f3.coefficient(1, {0, 1, 1}) - half_i_g) < 1e-15);
    CHECK(std::abs(f3.coefficient(2, {0, 1, 1}) + half_i_g) < 1e-15);
    CHECK(report.collisions == 0);
    CHECK(report.divergence_max < 1e-15);
    // Exactly three mode pairs carry energy: ||f3||^2 = 3 * 2 * (2pi)^3 * 2 |g/2|^2.
    const double want = 3.0 * 2.0 * std::pow(2.0 * M_PI, 3) * 2.0 * std::norm(half_i_g);
    CHECK(l2_norm_squared(f3) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("lifted force is real, solenoidal and zero-mean") {
    const Grid g2(2, 32);
    const Grid g3(3, 32);
    const SpectralField f2 = build_force_2d(spec_with(1.0), g2, 0.01);
    for (bool k1k2 : {false, true}) {
        LiftReport report;
        const SpectralField f3 = lift_force_3d(f2, g3, k1k2, &report);
        CHECK(l2_norm_squared(f3) > 0.0);
        CHECK(divergence_norm(f3) <= 1e-13 * std::sqrt(h1_seminorm_squared(f3)));
        for (int c = 0; c < 3; ++c) CHECK(f3(c, 0) == Complex{});
        SpectralField sym = f3;
        enforce_hermitian(sym);
        CHECK(max_abs(sym - f3) <= 1e-15 * max_abs(f3));
        if (!k1k2) CHECK(report.divergence_max < 1e-13);
    }
}

TEST_CASE("build_force reaches the Grashof target in 3D") {
    const Grid g3(3, 32);
    ForceSpec s = spec_with(1e4);
    s.kind = ForceSpec::Kind::lifted3d;
    s.nu0_2d = 0.01;
    const BuiltForce built = build_force(s, g3, 0.0);
    CHECK(built.nu0 > 0.0);
    CHECK(grashof(std::sqrt(l2_norm_squared(built.force)), built.nu0) == doctest::Approx(1e4).epsilon(1e-12));
    CHECK(divergence_norm(built.force) <= 1e-13 * std::sqrt(h1_seminorm_squared(built.force)));

    const BuiltForce again = build_force(s, g3, 0.0);
    CHECK(std::equal(built.force.data().begin(), built.force.data().end(), again.force.data().begin()));
}

TEST_CASE("file force is renormalized") {
    const Grid g(2, 32);
    const SpectralField raw = build_force_2d(spec_with(3.0), g, 0.02);
    ForceSpec s = spec_with(7.0);
    s.kind = ForceSpec::Kind::file;
    s.path = "unused";
    const BuiltForce built = build_force(s, g, 0.02, &raw);
    CHECK(grashof(std::sqrt(l2_norm_squared(built.force)), 0.02) == doctest::Approx(7.0).epsilon(1e-12));
    s.grashof = 0.0;
    CHECK(max_abs(build_force(s, g, 0.02, &raw).force - raw) == 0.0);
}
