#include "lady/spectral/calculus.hpp"

#include <stdexcept>

namespace lady {

namespace {


double box_volume(int dim) {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= Grid::length();
    return v;
}

}  // namespace

SpectralField gradient(const SpectralField& f) {
    const Grid& g = f.grid();
    const int d = g.dim();
    Rank out_rank;
    if (f.rank() == Rank::scalar) {
        out_rank = Rank::vector;
    } else if (f.rank() == Rank::vector) {
        out_rank = Rank::tensor;
    } else {
        throw std::invalid_argument("gradient: tensor input not supported");
    }
    SpectralField out(g, out_rank);
    for (int i = 0; i < f.components(); ++i) {
        auto src = f.component(i);
        for (int j = 0; j < d; ++j) {
            auto kd = g.derivative_wavenumber(j);
            auto dst = out.component(i * d + j);
            for (std::size_t m = 0; m < src.size(); ++m) dst[m] = times_ik(kd[m], src[m]);
        }
    }
    return out;
}

SpectralField divergence(const SpectralField& f) {
    const Grid& g = f.grid();
    const int d = g.dim();
    if (f.rank() == Rank::scalar) throw std::invalid_argument("divergence: scalar input");
    const Rank out_rank = f.rank() == Rank::vector ? Rank::scalar : Rank::vector;
    SpectralField out(g, out_rank);
    const int rows = f.rank() == Rank::vector ? 1 : d;
    for (int i = 0; i < rows; ++i) {
        auto dst = out.component(i);
        for (int j = 0; j < d; ++j) {
            auto kd = g.derivative_wavenumber(j);
            auto src = f.component(f.rank() == Rank::vector ? j : i * d + j);
            for (std::size_t m = 0; m < dst.size(); ++m) dst[m] += times_ik(kd[m], src[m]);
        }
    }
    return out;
}

SpectralField laplacian(const SpectralField& f) {
    SpectralField out = f;
    auto k2 = f.grid().k_squared();
    for (int c = 0; c < out.components(); ++c) {
        auto comp = out.component(c);
        for (std::size_t m = 0; m < comp.size(); ++m) comp[m] *= -k2[m];
    }
    return out;
}

void leray_project_inplace(SpectralField& f) {
    if (f.rank() != Rank::vector) throw std::invalid_argument("leray_project: vector field required");
    const Grid& g = f.grid();
    const int d = g.dim();
    auto k2 = g.k_squared();
    std::span<const double> kd[3];
    std::span<Complex> comp[3];
    for (int a = 0; a < d; ++a) {
        kd[a] = g.derivative_wavenumber(a);
        comp[a] = f.component(a);
    }
    for (std::size_t m = 0; m < g.spectral_size(); ++m) {
        if (k2[m] == 0.0) continue;
        // Use the same wavenumbers as the derivative so that the projected field has
        // zero spectral divergence exactly, Nyquist modes included.
        double kk = 0.0;
        Complex kdotf{};
        for (int a = 0; a < d; ++a) {
            kk += kd[a][m] * kd[a][m];
            kdotf += kd[a][m] * comp[a][m];
        }
        if (kk == 0.0) continue;
        const Complex s = kdotf / kk;
        for (int a = 0; a < d; ++a) comp[a][m] -= kd[a][m] * s;
    }
}

SpectralField leray_project(const SpectralField& f) {
    SpectralField out = f;
    leray_project_inplace(out);
    return out;
}

void dealias_inplace(SpectralField& f) {
    auto mask = f.grid().dealias_mask();
    for (int c = 0; c < f.components(); ++c) {
        auto comp = f.component(c);
        for (std::size_t m = 0; m < comp.size(); ++m) {
            if (!mask[m]) comp[m] = Complex{};
        }
    }
}

SpectralField dealias(const SpectralField& f) {
    SpectralField out = f;
    dealias_inplace(out);
    return out;
}

void remove_mean(SpectralField& f) {
    for (int c = 0; c < f.components(); ++c) f.component(c)[0] = Complex{};
}

double inner_product(const SpectralField& a, const SpectralField& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("inner_product: shape mismatch");
    auto w = a.grid().mode_weight();
    double sum = 0.0;
    for (int c = 0; c < a.components(); ++c) {
        auto x = a.component(c);
        auto y = b.component(c);
        for (std::size_t m = 0; m < x.size(); ++m) {
            sum += w[m] * (x[m].real() * y[m].real() + x[m].imag() * y[m].imag());
        }
    }
    return box_volume(a.grid().dim()) * sum;
}

double component_l2_norm_squared(const SpectralField& f, int c) {
    auto w = f.grid().mode_weight();
    auto x = f.component(c);
    double sum = 0.0;
    for (std::size_t m = 0; m < x.size(); ++m) sum += w[m] * std::norm(x[m]);
    return box_volume(f.grid().dim()) * sum;
}

double l2_norm_squared(const SpectralField& f) {
    double sum = 0.0;
    for (int c = 0; c < f.components(); ++c) sum += component_l2_norm_squared(f, c);
    return sum;
}

double h1_seminorm_squared(const SpectralField& f) {
    auto w = f.grid().mode_weight();
    auto k2 = f.grid().k_squared();
    double sum = 0.0;
    for (int c = 0; c < f.components(); ++c) {
        auto x = f.component(c);
        for (std::size_t m = 0; m < x.size(); ++m) sum += w[m] * k2[m] * std::norm(x[m]);
    }
    return box_volume(f.grid().dim()) * sum;
}

}  // namespace lady
