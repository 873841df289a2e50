#pragma once

#include <string>

#include "lady/spectral/field.hpp"

namespace lady {

/// Observation operator I_h.
///
/// fourier(m): projection onto modes with every |k_j| <= m, resolution h = pi / m.
/// nodal(s):   piecewise-constant interpolation of every s-th node, h = s * 2pi / N.
struct InterpolantSpec {
    enum class Kind { fourier, nodal };

    Kind kind = Kind::fourier;
    int modes = 1;   ///< m, fourier only
    int stride = 1;  ///< s, nodal only

    static InterpolantSpec fourier(int m) { return {Kind::fourier, m, 1}; }
    static InterpolantSpec nodal(int s) { return {Kind::nodal, 1, s}; }

    double resolution(const Grid& grid) const;
    /// Throws std::invalid_argument when m is outside [1, N/3] or s does not divide N.
    void validate(const Grid& grid) const;
    std::string describe() const;
};

/// Keeps modes with all |k_j| <= m.
SpectralField interp_fourier(const SpectralField& f, int m);

/// Each s^d block takes the value at its lowest-corner node.
PhysicalField interp_nodal(const PhysicalField& f, int stride);

}  // namespace lady
