#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lady/assimilation/interpolant.hpp"

namespace lady {

/// Relaxation -mu_j I_h(v_j - u_j) applied component by component.
struct NudgingConfig {
    InterpolantSpec interp = InterpolantSpec::fourier(1);
    std::vector<double> mu;  ///< one entry per velocity component, 1/time
    int cadence = 1;         ///< observe every `cadence` steps

    void validate(const Grid& grid) const;
    bool active() const;
};

/// Coarse data I_h u(t) handed from the reference run to the nudged run.
///
/// Fourier observations carry only the observed coefficients (modes with every
/// |k_j| <= m, in stored-spectrum order); nodal observations carry the values at
/// every s-th node. Either way the payload size does not depend on N.
class Observation {
public:
    Observation(const Grid& grid, InterpolantSpec spec, int components, double time,
                std::vector<Complex> modes, std::vector<double> nodes);

    const Grid& grid() const { return grid_; }
    const InterpolantSpec& spec() const { return spec_; }
    int components() const { return components_; }
    double time() const { return time_; }

    std::span<const Complex> modes() const { return modes_; }
    std::span<const double> nodes() const { return nodes_; }
    std::size_t byte_size() const;

    /// Observed data expanded to a full spectral field (zero outside the observed set).
    /// Nodal data is expanded piecewise-constant before transforming.
    SpectralField to_field() const;

    bool operator==(const Observation& other) const;

private:
    Grid grid_;
    InterpolantSpec spec_;
    int components_;
    double time_;
    std::vector<Complex> modes_;
    std::vector<double> nodes_;
};

/// Stored-spectrum indices of the modes a fourier(m) interpolant keeps.
std::vector<std::size_t> observed_modes(const Grid& grid, int m);
/// Node indices sampled by a nodal(s) interpolant, coarse-grid row-major order.
std::vector<std::size_t> observed_nodes(const Grid& grid, int stride);

/// Packages I_h u(t).
Observation observe(const SpectralField& u, double time, const InterpolantSpec& spec);

/// Vector with j-th component -mu_j I_h(v_j - u_j). Nodal differences have their own
/// mean removed first. The caller applies the Leray projection.
SpectralField nudging_term(const SpectralField& v, const Observation& obs, const NudgingConfig& cfg);

}  // namespace lady
