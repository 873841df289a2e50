#include "lady/forcing/forcing.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lady/spectral/calculus.hpp"

namespace lady {

namespace {

constexpr Complex kI{0.0, 1.0};

double signed_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

void normalize_to(SpectralField& f, double norm) {
    const double current = std::sqrt(l2_norm_squared(f));
    if (current == 0.0) {
        if (norm != 0.0) throw std::invalid_argument("cannot normalize a zero force");
        return;
    }
    f *= norm / current;
}

}  // namespace

double grashof(double force_norm, double nu0, double lambda1) {
    if (!(nu0 > 0.0)) throw std::invalid_argument("grashof: nu0 must be positive");
    return force_norm / (nu0 * nu0 * std::pow(lambda1, 0.75));
}

double nu0_for_grashof(double force_norm, double target, double lambda1) {
    if (!(target > 0.0)) throw std::invalid_argument("nu0_for_grashof: target must be positive");
    return std::sqrt(force_norm / (target * std::pow(lambda1, 0.75)));
}

double nu1_of(double cs, int n, double nu0, double p) {
    const double delta = Grid::length() / n;
    return 0.5 * (cs * delta) * (cs * delta) * std::pow(nu0, 3.0 - p);
}

void ForceSpec::validate() const {
    if (!(shell_min >= 0.0) || !(shell_max >= shell_min)) throw std::invalid_argument("force: bad shell band");
    if (!(grashof >= 0.0)) throw std::invalid_argument("force: Grashof target must be non-negative");
    if (kind == Kind::lifted3d && !(nu0_2d > 0.0)) throw std::invalid_argument("force: nu0_2d must be positive");
    if (kind == Kind::file && path.empty()) throw std::invalid_argument("force: file kind needs a path");
}

SpectralField build_force_2d(const ForceSpec& spec, const Grid& grid, double nu0) {
    if (grid.dim() != 2) throw std::invalid_argument("build_force_2d: 2D grid required");
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    SpectralField f(grid, Rank::vector);
    auto k2 = grid.k_squared();
    auto mask = grid.dealias_mask();
    auto kx = grid.derivative_wavenumber(0);
    auto ky = grid.derivative_wavenumber(1);
    const double lo = spec.shell_min * spec.shell_min;
    const double hi = spec.shell_max * spec.shell_max;
    bool any = false;
    for (std::size_t m = 0; m < grid.spectral_size(); ++m) {
        // Random stream function with unit modulus and random phase on the shell.
        const double phase = std::numbers::pi * signed_unit(rng);
        if (k2[m] < lo || k2[m] > hi || k2[m] == 0.0 || !mask[m]) continue;
        const Complex psi = std::polar(1.0, phase);
        f(0, m) = kI * ky[m] * psi;
        f(1, m) = -kI * kx[m] * psi;
        any = true;
    }
    if (!any) throw std::invalid_argument("build_force_2d: forcing shell contains no resolved modes");
    enforce_hermitian(f);
    remove_mean(f);
    const double target = spec.grashof * nu0 * nu0 * std::pow(Grid::lambda1(), 0.75);
    if (spec.grashof == 0.0) {
        f.set_zero();
        return f;
    }
    normalize_to(f, target);
    return f;
}

SpectralField curl_2d(const SpectralField& f) {
    const Grid& g = f.grid();
    if (g.dim() != 2 || f.rank() != Rank::vector) throw std::invalid_argument("curl_2d: 2D vector field required");
    SpectralField out(g, Rank::scalar);
    auto kx = g.derivative_wavenumber(0);
    auto ky = g.derivative_wavenumber(1);
    for (std::size_t m = 0; m < g.spectral_size(); ++m) out(0, m) = kI * kx[m] * f(1, m) - kI * ky[m] * f(0, m);
    return out;
}

SpectralField lift_force_3d(const SpectralField& f2d, const Grid& grid3d, bool third_family_k1k2,
                            LiftReport* report) {
    if (f2d.grid().dim() != 2 || grid3d.dim() != 3) throw std::invalid_argument("lift_force_3d: need 2D -> 3D");
    if (f2d.grid().n() != grid3d.n()) throw std::invalid_argument("lift_force_3d: grids must share N");
    const SpectralField g = curl_2d(f2d);
    const int half = grid3d.n() / 2;
    auto ghat = [&](int a, int b) -> Complex {
        if (std::abs(a) >= half || std::abs(b) >= half) return Complex{};
        return g.coefficient(0, {a, b, 0});
    };

    SpectralField f(grid3d, Rank::vector);
    std::vector<unsigned char> written(3 * grid3d.spectral_size(), 0);
    int collisions = 0;
    auto put = [&](int comp, std::size_t mode, Complex value) {
        auto& flag = written[static_cast<std::size_t>(comp) * grid3d.spectral_size() + mode];
        if (flag) {
            if (value != f(comp, mode) && value != Complex{} && f(comp, mode) != Complex{}) {
                ++collisions;
                std::cerr << "lift_force_3d: coefficient collision in component " << comp + 1 << "\n";
            }
            return;
        }
        f(comp, mode) = value;
        flag = 1;
    };

    for (std::size_t m = 0; m < grid3d.spectral_size(); ++m) {
        const Wavevector k = grid3d.wavevector(m);
        const int k1 = k[0], k2 = k[1], k3 = k[2];
        if (std::abs(k1) >= half || std::abs(k2) >= half || std::abs(k3) >= half) continue;
        const double d13 = static_cast<double>(k1) * k1 + static_cast<double>(k3) * k3;
        const double d12 = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
        const double d23 = static_cast<double>(k2) * k2 + static_cast<double>(k3) * k3;
        const bool plane13 = k2 == 0 && d13 > 0.0;
        const bool plane12 = k3 == 0 && d12 > 0.0;
        const bool plane23 = k1 == 0 && d23 > 0.0;
        // Family order: f1(k1,0,k3), f1(k1,k2,0), f2(k1,k2,0), f2(0,k2,k3), f3(k1,0,k3), f3(0,k2,k3).
        if (plane13) put(0, m, kI * static_cast<double>(k3) * ghat(k1, k3) / d13);
        if (plane12) put(0, m, kI * static_cast<double>(k2) * ghat(k1, k2) / d12);
        if (plane12) put(1, m, -kI * static_cast<double>(k1) * ghat(k1, k2) / d12);
        if (plane23) put(1, m, kI * static_cast<double>(k3) * ghat(k2, k3) / d23);
        if (plane13) put(2, m, -kI * static_cast<double>(k1) * ghat(k1, k3) / d13);
        if (plane23) {
            const Complex gv = third_family_k1k2 ? ghat(k1, k2) : ghat(k2, k3);
            put(2, m, -kI * static_cast<double>(k2) * gv / d23);
        }
    }
    enforce_hermitian(f);

    double divmax = 0.0;
    for (std::size_t m = 0; m < grid3d.spectral_size(); ++m) {
        Complex div{};
        for (int a = 0; a < 3; ++a) div += grid3d.derivative_wavenumber(a)[m] * f(a, m);
        divmax = std::max(divmax, std::abs(div));
    }
    if (third_family_k1k2) leray_project_inplace(f);
    dealias_inplace(f);
    remove_mean(f);
    if (report) {
        report->collisions = collisions;
        report->divergence_max = divmax;
    }
    return f;
}

BuiltForce build_force(const ForceSpec& spec, const Grid& grid, double nu0, const SpectralField* file_coefficients) {
    spec.validate();
    switch (spec.kind) {
    case ForceSpec::Kind::builtin2d:
        return {build_force_2d(spec, grid, nu0), nu0};
    case ForceSpec::Kind::lifted3d: {
        if (grid.dim() != 3) throw std::invalid_argument("lifted3d force requires a 3D grid");
        const Grid g2(2, grid.n());
        const SpectralField f2 = build_force_2d(spec, g2, spec.nu0_2d);
        SpectralField f3 = lift_force_3d(f2, grid, spec.third_family_k1k2);
        if (spec.grashof == 0.0) return {SpectralField(grid, Rank::vector), nu0};
        const double norm = std::sqrt(l2_norm_squared(f3));
        return {std::move(f3), nu0_for_grashof(norm, spec.grashof, Grid::lambda1())};
    }
    case ForceSpec::Kind::file: {
        if (!file_coefficients) throw std::invalid_argument("file force: coefficients not supplied");
        if (file_coefficients->grid() != grid || file_coefficients->rank() != Rank::vector) {
            throw std::invalid_argument("file force: grid mismatch");
        }
        SpectralField f = *file_coefficients;
        enforce_hermitian(f);
        remove_mean(f);
        if (spec.grashof > 0.0) normalize_to(f, spec.grashof * nu0 * nu0 * std::pow(Grid::lambda1(), 0.75));
        return {std::move(f), nu0};
    }
    }
    throw std::logic_error("unknown force kind");
}

}  // namespace lady
