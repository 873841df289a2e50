#include "lady/constitutive/stress.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lady {

void StressParams::validate() const {
    if (!(nu0 > 0.0)) throw std::invalid_argument("nu0 must be positive");
    if (!(nu1 >= 0.0)) throw std::invalid_argument("nu1 must be non-negative");
    if (!(p >= 2.0)) throw std::invalid_argument("p must be >= 2, got " + std::to_string(p));
}

double frobenius_norm(const SmallMatrix& m) { return std::sqrt(double_dot(m, m)); }

double double_dot(const SmallMatrix& a, const SmallMatrix& b) {
    double s = 0.0;
    const int n = a.dim * a.dim;
    for (int i = 0; i < n; ++i) s += a.a[static_cast<std::size_t>(i)] * b.a[static_cast<std::size_t>(i)];
    return s;
}

double power_law_factor(double frobenius, double p) {
    if (p == 2.0) return 1.0;
    if (frobenius == 0.0) return 0.0;
    if (p == 3.0) return frobenius;
    return std::exp((p - 2.0) * std::log(frobenius));
}

SmallMatrix stress(const SmallMatrix& strain, const StressParams& params) {
    const double factor =
        2.0 * (params.nu0 + params.nu1 * power_law_factor(frobenius_norm(strain), params.p));
    SmallMatrix t;
    t.dim = strain.dim;
    for (std::size_t i = 0; i < t.a.size(); ++i) t.a[i] = factor * strain.a[i];
    return t;
}

double monotonicity_gap(const SmallMatrix& a, const SmallMatrix& b, const StressParams& params) {
    if (a.dim != b.dim) throw std::invalid_argument("monotonicity_gap: dimension mismatch");
    const SmallMatrix ta = stress(a, params);
    const SmallMatrix tb = stress(b, params);
    SmallMatrix dt;
    SmallMatrix dm;
    dt.dim = dm.dim = a.dim;
    for (std::size_t i = 0; i < dt.a.size(); ++i) {
        dt.a[i] = ta.a[i] - tb.a[i];
        dm.a[i] = a.a[i] - b.a[i];
    }
    return double_dot(dt, dm) - 2.0 * params.nu0 * double_dot(dm, dm);
}

SpectralField strain_rate(const SpectralField& grad_u) {
    if (grad_u.rank() != Rank::tensor) throw std::invalid_argument("strain_rate: tensor field required");
    const int d = grad_u.grid().dim();
    SpectralField out(grad_u.grid(), Rank::tensor);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            auto gij = grad_u.component(i * d + j);
            auto gji = grad_u.component(j * d + i);
            auto dij = out.component(i * d + j);
            for (std::size_t m = 0; m < dij.size(); ++m) dij[m] = 0.5 * (gij[m] + gji[m]);
            if (i != j) {
                auto dji = out.component(j * d + i);
                std::copy(dij.begin(), dij.end(), dji.begin());
            }
        }
    }
    return out;
}

PhysicalField stress(const PhysicalField& strain, const StressParams& params) {
    if (strain.rank() != Rank::tensor) throw std::invalid_argument("stress: tensor field required");
    const int d = strain.grid().dim();
    PhysicalField out(strain.grid(), Rank::tensor);
    const std::size_t nodes = strain.grid().physical_size();
    for (std::size_t x = 0; x < nodes; ++x) {
        double f2 = 0.0;
        for (int c = 0; c < d * d; ++c) f2 += strain(c, x) * strain(c, x);
        const double factor =
            2.0 * (params.nu0 + params.nu1 * power_law_factor(std::sqrt(f2), params.p));
        for (int c = 0; c < d * d; ++c) out(c, x) = factor * strain(c, x);
    }
    return out;
}

}  // namespace lady
