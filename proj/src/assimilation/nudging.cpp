#include "lady/assimilation/nudging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lady {

void NudgingConfig::validate(const Grid& grid) const {
    interp.validate(grid);
    if (static_cast<int>(mu.size()) != grid.dim()) {
        throw std::invalid_argument("nudging: mu needs " + std::to_string(grid.dim()) + " entries");
    }
    for (double m : mu) {
        if (!(m >= 0.0) || !std::isfinite(m)) throw std::invalid_argument("nudging: mu must be >= 0");
    }
    if (cadence < 1) throw std::invalid_argument("nudging: cadence must be >= 1");
}

bool NudgingConfig::active() const {
    return std::any_of(mu.begin(), mu.end(), [](double m) { return m > 0.0; });
}

Observation::Observation(const Grid& grid, InterpolantSpec spec, int components, double time,
                         std::vector<Complex> modes, std::vector<double> nodes)
    : grid_(grid), spec_(spec), components_(components), time_(time), modes_(std::move(modes)),
      nodes_(std::move(nodes)) {}

std::size_t Observation::byte_size() const {
    return modes_.size() * sizeof(Complex) + nodes_.size() * sizeof(double);
}

bool Observation::operator==(const Observation& other) const {
    return grid_ == other.grid_ && spec_.kind == other.spec_.kind && spec_.modes == other.spec_.modes &&
           spec_.stride == other.spec_.stride && components_ == other.components_ &&
           time_ == other.time_ && modes_ == other.modes_ && nodes_ == other.nodes_;
}

std::vector<std::size_t> observed_modes(const Grid& grid, int m) {
    std::vector<std::size_t> idx;
    for (std::size_t mode = 0; mode < grid.spectral_size(); ++mode) {
        const Wavevector k = grid.wavevector(mode);
        bool keep = true;
        for (int a = 0; a < grid.dim(); ++a) keep = keep && std::abs(k[static_cast<std::size_t>(a)]) <= m;
        if (keep) idx.push_back(mode);
    }
    return idx;
}

std::vector<std::size_t> observed_nodes(const Grid& grid, int stride) {
    const auto n = static_cast<std::size_t>(grid.n());
    const auto s = static_cast<std::size_t>(stride);
    const std::size_t coarse = n / s;
    std::vector<std::size_t> idx;
    if (grid.dim() == 2) {
        for (std::size_t i = 0; i < coarse; ++i)
            for (std::size_t j = 0; j < coarse; ++j) idx.push_back((i * s) * n + j * s);
    } else {
        for (std::size_t i = 0; i < coarse; ++i)
            for (std::size_t j = 0; j < coarse; ++j)
                for (std::size_t k = 0; k < coarse; ++k) idx.push_back(((i * s) * n + j * s) * n + k * s);
    }
    return idx;
}

namespace {

// Piecewise-constant expansion of coarse node values into a full nodal field.
void expand_blocks(const Grid& g, int stride, std::span<const double> coarse, std::span<double> out) {
    const auto n = static_cast<std::size_t>(g.n());
    const auto s = static_cast<std::size_t>(stride);
    const std::size_t nc = n / s;
    for (std::size_t node = 0; node < g.physical_size(); ++node) {
        std::size_t rem = node;
        std::size_t cidx = 0;
        std::size_t scale = 1;
        for (int a = g.dim() - 1; a >= 0; --a) {
            const std::size_t i = rem % n;
            rem /= n;
            cidx += (i / s) * scale;
            scale *= nc;
        }
        out[node] = coarse[cidx];
    }
}

}  // namespace

SpectralField Observation::to_field() const {
    const Rank rank = components_ == 1 ? Rank::scalar : Rank::vector;
    SpectralField out(grid_, rank);
    if (spec_.kind == InterpolantSpec::Kind::fourier) {
        const auto idx = observed_modes(grid_, spec_.modes);
        for (int c = 0; c < components_; ++c)
            for (std::size_t i = 0; i < idx.size(); ++i)
                out(c, idx[i]) = modes_[static_cast<std::size_t>(c) * idx.size() + i];
        return out;
    }
    PhysicalField phys(grid_, rank);
    const std::size_t per = nodes_.size() / static_cast<std::size_t>(components_);
    for (int c = 0; c < components_; ++c) {
        expand_blocks(grid_, spec_.stride,
                      std::span<const double>(nodes_).subspan(static_cast<std::size_t>(c) * per, per),
                      phys.component(c));
    }
    to_spectral(phys, out);
    return out;
}

Observation observe(const SpectralField& u, double time, const InterpolantSpec& spec) {
    const Grid& g = u.grid();
    spec.validate(g);
    std::vector<Complex> modes;
    std::vector<double> nodes;
    if (spec.kind == InterpolantSpec::Kind::fourier) {
        const auto idx = observed_modes(g, spec.modes);
        modes.reserve(idx.size() * static_cast<std::size_t>(u.components()));
        for (int c = 0; c < u.components(); ++c)
            for (std::size_t i : idx) modes.push_back(u(c, i));
    } else {
        const PhysicalField phys = to_physical(u);
        const auto idx = observed_nodes(g, spec.stride);
        nodes.reserve(idx.size() * static_cast<std::size_t>(u.components()));
        for (int c = 0; c < u.components(); ++c)
            for (std::size_t i : idx) nodes.push_back(phys(c, i));
    }
    return Observation(g, spec, u.components(), time, std::move(modes), std::move(nodes));
}

SpectralField nudging_term(const SpectralField& v, const Observation& obs, const NudgingConfig& cfg) {
    const Grid& g = v.grid();
    if (obs.grid() != g) throw std::invalid_argument("nudging_term: grid mismatch");
    if (obs.components() != v.components() || v.rank() != Rank::vector) {
        throw std::invalid_argument("nudging_term: component mismatch");
    }
    const InterpolantSpec& spec = obs.spec();
    if (spec.kind != cfg.interp.kind || spec.modes != cfg.interp.modes || spec.stride != cfg.interp.stride) {
        throw std::invalid_argument("nudging_term: observation does not match the configured interpolant");
    }
    SpectralField out(g, Rank::vector);
    const int d = v.components();
    if (spec.kind == InterpolantSpec::Kind::fourier) {
        const auto idx = observed_modes(g, spec.modes);
        auto data = obs.modes();
        for (int c = 0; c < d; ++c) {
            const double mu = cfg.mu[static_cast<std::size_t>(c)];
            if (mu == 0.0) continue;
            for (std::size_t i = 0; i < idx.size(); ++i) {
                out(c, idx[i]) = -mu * (v(c, idx[i]) - data[static_cast<std::size_t>(c) * idx.size() + i]);
            }
        }
        return out;
    }

    const PhysicalField vphys = to_physical(v);
    const auto idx = observed_nodes(g, spec.stride);
    auto data = obs.nodes();
    PhysicalField block(g, Rank::vector);
    std::vector<double> diff(idx.size());
    for (int c = 0; c < d; ++c) {
        const double mu = cfg.mu[static_cast<std::size_t>(c)];
        if (mu == 0.0) continue;
        double mean = 0.0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            diff[i] = vphys(c, idx[i]) - data[static_cast<std::size_t>(c) * idx.size() + i];
            mean += diff[i];
        }
        mean /= static_cast<double>(idx.size());
        for (double& x : diff) x = -mu * (x - mean);
        expand_blocks(g, spec.stride, diff, block.component(c));
    }
    to_spectral(block, out);
    return out;
}

}  // namespace lady
