#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "lady/spectral/field.hpp"

namespace lady::testing {

using NodeFunction = std::function<double(int component, double x, double y, double z)>;

inline PhysicalField sample(const Grid& g, Rank rank, const NodeFunction& fn) {
    PhysicalField out(g, rank);
    for (int c = 0; c < out.components(); ++c) {
        for (std::size_t n = 0; n < g.physical_size(); ++n) {
            const double x = out.coordinate(n, 0);
            const double y = out.coordinate(n, 1);
            const double z = g.dim() == 3 ? out.coordinate(n, 2) : 0.0;
            out(c, n) = fn(c, x, y, z);
        }
    }
    return out;
}

inline double max_abs_diff(const PhysicalField& a, const PhysicalField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

inline double max_abs(const PhysicalField& a) {
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

inline double max_abs(const SpectralField& a) {
    double m = 0.0;
    for (const Complex& v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

/// Random coefficients on |k_j| <= kmax for every component, Hermitian and zero-mean.
inline SpectralField random_band_limited(const Grid& g, Rank rank, int kmax, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SpectralField f(g, rank);
    for (int c = 0; c < f.components(); ++c) {
        for (std::size_t m = 0; m < g.spectral_size(); ++m) {
            const Wavevector k = g.wavevector(m);
            bool inside = true;
            for (int a = 0; a < g.dim(); ++a) inside = inside && std::abs(k[static_cast<std::size_t>(a)]) <= kmax;
            const double re = u(rng), im = u(rng);
            if (inside) f(c, m) = Complex(re, im);
        }
    }
    enforce_hermitian(f);
    for (int c = 0; c < f.components(); ++c) f(c, 0) = Complex{};
    return f;
}

}  // namespace lady::testing
