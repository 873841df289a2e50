#include <doctest.h>

#include <cmath>
#include <map>

#include "lady/spectral/calculus.hpp"
#include "support.hpp"

using namespace lady;
using lady::testing::max_abs;
using lady::testing::max_abs_diff;
using lady::testing::random_band_limited;
using lady::testing::sample;

TEST_CASE("grid rejects bad shapes") {
    CHECK_THROWS_AS(Grid(1, 16), std::invalid_argument);
    CHECK_THROWS_AS(Grid(4, 16), std::invalid_argument);
    CHECK_THROWS_AS(Grid(2, 6), std::invalid_argument);
    CHECK_THROWS_AS(Grid(2, 15), std::invalid_argument);
    CHECK_NOTHROW(Grid(2, 8));
}

TEST_CASE("grid wavenumbers and derived quantities") {
    const Grid g(3, 16);
    CHECK(g.dealias_cutoff() == 5);
    CHECK(Grid::lambda1() == 1.0);
    CHECK(g.spacing() == doctest::Approx(2.0 * M_PI / 16).epsilon(1e-15));
    CHECK(g.spectral_size() == 16u * 16u * 9u);
    CHECK(g.wavenumber(7) == 7);
    CHECK(g.wavenumber(8) == -8);
    CHECK(g.wavenumber(15) == -1);
    for (std::size_t m = 0; m < g.spectral_size(); m += 37) {
        const Wavevector k = g.wavevector(m);
        CHECK(g.spectral_index(k) == m);
    }
    bool conj = false;
    const std::size_t idx = g.spectral_index({1, 2, -3}, &conj);
    CHECK(conj);
    CHECK(g.wavevector(idx) == Wavevector{-1, -2, 3});
}

TEST_CASE("constant field has only the mean mode") {
    const Grid g(2, 16);
    const SpectralField f = to_spectral(sample(g, Rank::scalar, [](int, double, double, double) { return 2.5; }));
    CHECK(std::abs(f(0, 0) - Complex(2.5, 0.0)) < 1e-15);
    double rest = 0.0;
    for (std::size_t m = 1; m < g.spectral_size(); ++m) rest = std::max(rest, std::abs(f(0, m)));
    CHECK(rest < 1e-15);
}

TEST_CASE("sin(x1) has coefficients -i/2 and +i/2 at +-e1") {
    for (int d : {2, 3}) {
        const Grid g(d, 16);
        const SpectralField f =
            to_spectral(sample(g, Rank::scalar, [](int, double x, double, double) { return std::sin(x); }));
        CHECK(std::abs(f.coefficient(0, {1, 0, 0}) - Complex(0.0, -0.5)) < 1e-15);
        CHECK(std::abs(f.coefficient(0, {-1, 0, 0}) - Complex(0.0, 0.5)) < 1e-15);
        double rest = 0.0;
        for (std::size_t m = 0; m < g.spectral_size(); ++m) {
            const Wavevector k = g.wavevector(m);
            if (std::abs(k[0]) == 1 && k[1] == 0 && k[2] == 0) continue;
            rest = std::max(rest, std::abs(f(0, m)));
        }
        CHECK(rest < 1e-15);
    }
}

TEST_CASE("transform round trip on random smooth data") {
    for (int d : {2, 3}) {
        const Grid g(d, 16);
        const PhysicalField p = sample(g, Rank::vector, [](int c, double x, double y, double z) {
            return std::exp(std::sin(x + c) * std::cos(2 * y)) + 0.3 * std::cos(z - y);
        });
        const PhysicalField back = to_physical(to_spectral(p));
        CHECK(max_abs_diff(p, back) <= 1e-12 * max_abs(p));
    }
}

TEST_CASE("transform rejects shape mismatch") {
    const Grid a(2, 16), b(2, 32);
    SpectralField f(a, Rank::scalar);
    PhysicalField out(b, Rank::scalar);
    CHECK_THROWS_AS(to_physical(f, out), std::invalid_argument);
    PhysicalField wrong_rank(a, Rank::vector);
    CHECK_THROWS_AS(to_physical(f, wrong_rank), std::invalid_argument);
}

TEST_CASE("Parseval on random fields") {
    for (int d : {2, 3}) {
        const Grid g(d, 16);
        const SpectralField f = random_band_limited(g, Rank::vector, 7, 11 + d);
        const PhysicalField p = to_physical(f);
        double nodal = 0.0;
        for (double v : p.data()) nodal += v * v;
        nodal *= std::pow(g.spacing(), d);
        CHECK(std::abs(nodal - l2_norm_squared(f)) <= 1e-12 * nodal);
    }
}

TEST_CASE("gradient of sin(x1) and of a constant") {
    const Grid g(3, 16);
    const SpectralField s =
        to_spectral(sample(g, Rank::scalar, [](int, double x, double, double) { return std::sin(x); }));
    const PhysicalField grad = to_physical(gradient(s));
    const PhysicalField expected = sample(g, Rank::vector, [](int c, double x, double, double) {
        return c == 0 ? std::cos(x) : 0.0;
    });
    CHECK(max_abs_diff(grad, expected) < 1e-14);

    const SpectralField k =
        to_spectral(sample(g, Rank::scalar, [](int, double, double, double) { return 3.0; }));
    CHECK(max_abs(gradient(k)) == 0.0);
}

TEST_CASE("gradient of a zero-mean field has zero mean") {
    const Grid g(2, 16);
    const SpectralField f = random_band_limited(g, Rank::vector, 5, 3);
    const SpectralField grad = gradient(f);
    for (int c = 0; c < grad.components(); ++c) CHECK(grad(c, 0) == Complex{});
}

namespace {

// Fourth-order central difference along x1 of nodal data.
double fd4_max_error(int n) {
    const Grid g(2, n);
    auto fn = [](int, double x, double y, double) {
        return std::sin(x) * std::cos(2 * y) + 0.5 * std::cos(3 * x + y) + 0.25 * std::sin(2 * x - 3 * y);
    };
    const PhysicalField p = sample(g, Rank::scalar, fn);
    const PhysicalField spectral = to_physical(gradient(to_spectral(p)));
    const double h = g.spacing();
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            auto at = [&](int di) { return p(0, static_cast<std::size_t>(((i + di + n) % n) * n + j)); };
            const double fd = (-at(2) + 8 * at(1) - 8 * at(-1) + at(-2)) / (12 * h);
            err = std::max(err, std::abs(fd - spectral(0, static_cast<std::size_t>(i * n + j))));
        }
    }
    return err;
}

}  // namespace

TEST_CASE("spectral gradient agrees with fourth-order finite differences") {
    const double e32 = fd4_max_error(32);
    const double e64 = fd4_max_error(64);
    const double h32 = 2 * M_PI / 32;
    // The FD truncation error is (h^4/30) f^(5); |f^(5)| <= 3^5 * 0.5 + 2^5 * 0.25 + 1 for this field.
    CHECK(e32 <= h32 * h32 * h32 * h32 / 30.0 * (243 * 0.5 + 32 * 0.25 + 1) * 1.01);
    CHECK(e32 / e64 > 14.0);
    CHECK(e32 / e64 < 18.0);
}

TEST_CASE("Leray projection annihilates gradients and keeps the mean") {
    const Grid g(3, 16);
    const SpectralField phi = random_band_limited(g, Rank::scalar, 5, 5);
    SpectralField grad = gradient(phi);
    grad(0, 0) = Complex(1.5, 0.0);
    const SpectralField p = leray_project(grad);
    CHECK(p(0, 0) == Complex(1.5, 0.0));
    double rest = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t m = 1; m < g.spectral_size(); ++m) rest = std::max(rest, std::abs(p(c, m)));
    CHECK(rest < 1e-14);
}

TEST_CASE("Leray projection is idempotent, self-adjoint and divergence-free") {
    for (int d : {2, 3}) {
        const Grid g(d, 16);
        const SpectralField f = random_band_limited(g, Rank::vector, 7, 21);
        const SpectralField h = random_band_limited(g, Rank::vector, 7, 22);
        const SpectralField pf = leray_project(f);
        const SpectralField ppf = leray_project(pf);
        CHECK(std::sqrt(l2_norm_squared(ppf - pf)) <= 1e-14 * std::sqrt(l2_norm_squared(pf)));
        const double a = inner_product(pf, h);
        const double b = inner_product(f, leray_project(h));
        CHECK(std::abs(a - b) <= 1e-12 * std::sqrt(l2_norm_squared(f) * l2_norm_squared(h)));
        const double div = std::sqrt(l2_norm_squared(divergence(pf)));
        CHECK(div <= 1e-12 * std::sqrt(l2_norm_squared(f) + h1_seminorm_squared(f)));
    }
}

TEST_CASE("Leray projection leaves divergence-free fields unchanged") {
    const Grid g(2, 16);
    const SpectralField f = leray_project(random_band_limited(g, Rank::vector, 5, 8));
    const SpectralField pf = leray_project(f);
    CHECK(std::sqrt(l2_norm_squared(pf - f)) <= 1e-14 * std::sqrt(l2_norm_squared(f)));
}

TEST_CASE("dealias keeps resolved modes and removes the rest") {
    const Grid g(3, 16);
    const SpectralField f = random_band_limited(g, Rank::scalar, g.dealias_cutoff(), 4);
    const SpectralField df = dealias(f);
    CHECK(std::sqrt(l2_norm_squared(df - f)) == 0.0);

    SpectralField single(g, Rank::scalar);
    single.set_coefficient(0, {g.n() / 2 - 1, 0, 0}, Complex(1.0, 0.5));
    CHECK(max_abs(dealias(single)) == 0.0);
}

TEST_CASE("pseudospectral product with dealiasing equals the exact truncated convolution") {
    for (int d : {2, 3}) {
        const Grid g(d, 16);
        const int kc = g.dealias_cutoff();
        const SpectralField a = random_band_limited(g, Rank::scalar, kc, 31);
        const SpectralField b = random_band_limited(g, Rank::scalar, kc, 32);

        const PhysicalField pa = to_physical(a);
        const PhysicalField pb = to_physical(b);
        PhysicalField prod(g, Rank::scalar);
        for (std::size_t x = 0; x < g.physical_size(); ++x) prod(0, x) = pa(0, x) * pb(0, x);
        const SpectralField ps = dealias(to_spectral(prod));

        // Direct convolution over the full (unhalved) spectrum.
        std::vector<std::pair<Wavevector, Complex>> modes_a, modes_b;
        const int zmax = d == 3 ? kc : 0;
        for (int i = -kc; i <= kc; ++i)
            for (int j = -kc; j <= kc; ++j)
                for (int l = -zmax; l <= zmax; ++l) {
                    const Wavevector k{i, j, l};
                    modes_a.emplace_back(k, a.coefficient(0, k));
                    modes_b.emplace_back(k, b.coefficient(0, k));
                }
        std::map<Wavevector, Complex> exact;
        for (const auto& [ka, ca] : modes_a)
            for (const auto& [kb, cb] : modes_b) {
                const Wavevector k{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]};
                if (std::abs(k[0]) > kc || std::abs(k[1]) > kc || std::abs(k[2]) > kc) continue;
                exact[k] += ca * cb;
            }
        double err = 0.0, scale = 0.0;
        for (std::size_t m = 0; m < g.spectral_size(); ++m) {
            const Wavevector k = g.wavevector(m);
            auto it = exact.find(k);
            const Complex want = it == exact.end() ? Complex{} : it->second;
            err = std::max(err, std::abs(ps(0, m) - want));
            scale = std::max(scale, std::abs(want));
        }
        CHECK(err <= 1e-12 * scale);
    }
}

TEST_CASE("Hermitian bookkeeping") {
    const Grid g(2, 16);
    SpectralField f(g, Rank::scalar);
    f.set_coefficient(0, {3, 0, 0}, Complex(1.0, 2.0));
    CHECK(f.coefficient(0, {-3, 0, 0}) == Complex(1.0, -2.0));
    f.set_coefficient(0, {2, -5, 0}, Complex(0.5, 0.25));
    CHECK(f.coefficient(0, {-2, 5, 0}) == Complex(0.5, -0.25));

    SpectralField broken(g, Rank::scalar);
    broken(0, g.spectral_index({3, 0, 0})) = Complex(1.0, 1.0);
    broken(0, g.spectral_index({-3, 0, 0})) = Complex(3.0, 1.0);
    broken(0, 0) = Complex(1.0, 4.0);
    enforce_hermitian(broken);
    CHECK(broken.coefficient(0, {3, 0, 0}) == std::conj(broken.coefficient(0, {-3, 0, 0})));
    CHECK(broken(0, 0).imag() == 0.0);
}

TEST_CASE("norms agree with their definitions") {
    const Grid g(2, 32);
    // u = sin(x1) e2 has ||u||^2 = 2 pi^2 and ||grad u||^2 = 2 pi^2.
    const SpectralField u = to_spectral(
        sample(g, Rank::vector, [](int c, double x, double, double) { return c == 1 ? std::sin(x) : 0.0; }));
    CHECK(l2_norm_squared(u) == doctest::Approx(2 * M_PI * M_PI).epsilon(1e-14));
    CHECK(h1_seminorm_squared(u) == doctest::Approx(2 * M_PI * M_PI).epsilon(1e-14));
    CHECK(component_l2_norm_squared(u, 0) == 0.0);
    CHECK(laplacian(u).coefficient(1, {1, 0, 0}) == -u.coefficient(1, {1, 0, 0}));
}
