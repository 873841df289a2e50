#include "lady/assimilation/interpolant.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lady {

double InterpolantSpec::resolution(const Grid& grid) const {
    if (kind == Kind::fourier) return std::numbers::pi / modes;
    return stride * grid.spacing();
}

void InterpolantSpec::validate(const Grid& grid) const {
    if (kind == Kind::fourier) {
        if (modes < 1 || modes > grid.dealias_cutoff()) {
            throw std::invalid_argument("fourier interpolant: m = " + std::to_string(modes) +
                                        " outside [1, " + std::to_string(grid.dealias_cutoff()) + "]");
        }
    } else {
        if (stride < 1 || grid.n() % stride != 0) {
            throw std::invalid_argument("nodal interpolant: stride " + std::to_string(stride) +
                                        " does not divide N = " + std::to_string(grid.n()));
        }
    }
}

std::string InterpolantSpec::describe() const {
    return kind == Kind::fourier ? "fourier(m=" + std::to_string(modes) + ")"
                                 : "nodal(stride=" + std::to_string(stride) + ")";
}

SpectralField interp_fourier(const SpectralField& f, int m) {
    InterpolantSpec::fourier(m).validate(f.grid());
    const Grid& g = f.grid();
    SpectralField out(g, f.rank());
    for (std::size_t mode = 0; mode < g.spectral_size(); ++mode) {
        const Wavevector k = g.wavevector(mode);
        bool keep = true;
        for (int a = 0; a < g.dim(); ++a) keep = keep && std::abs(k[static_cast<std::size_t>(a)]) <= m;
        if (!keep) continue;
        for (int c = 0; c < f.components(); ++c) out(c, mode) = f(c, mode);
    }
    return out;
}

PhysicalField interp_nodal(const PhysicalField& f, int stride) {
    InterpolantSpec::nodal(stride).validate(f.grid());
    const Grid& g = f.grid();
    const auto n = static_cast<std::size_t>(g.n());
    const auto s = static_cast<std::size_t>(stride);
    PhysicalField out(g, f.rank());
    for (std::size_t node = 0; node < g.physical_size(); ++node) {
        // Round every index down to a multiple of the stride.
        std::size_t rem = node;
        std::size_t corner = 0;
        std::size_t scale = 1;
        for (int a = g.dim() - 1; a >= 0; --a) {
            const std::size_t i = rem % n;
            rem /= n;
            corner += (i - i % s) * scale;
            scale *= n;
        }
        for (int c = 0; c < f.components(); ++c) out(c, node) = f(c, corner);
    }
    return out;
}

}  // namespace lady
