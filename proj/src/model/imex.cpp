#include "lady/model/imex.hpp"

#include <stdexcept>

#include "lady/spectral/calculus.hpp"

namespace lady {

const ImexTableau& ImexTableau::ars443() {
    static const ImexTableau t = [] {
        ImexTableau tab;
        tab.rows = 5;
        tab.c = {0.0, 1.0 / 2.0, 2.0 / 3.0, 1.0 / 2.0, 1.0};
        tab.explicit_a = {
            0.0,         0.0,        0.0,       0.0,        0.0,
            1.0 / 2.0,   0.0,        0.0,       0.0,        0.0,
            11.0 / 18.0, 1.0 / 18.0, 0.0,       0.0,        0.0,
            5.0 / 6.0,   -5.0 / 6.0, 1.0 / 2.0, 0.0,        0.0,
            1.0 / 4.0,   7.0 / 4.0,  3.0 / 4.0, -7.0 / 4.0, 0.0,
        };
        tab.implicit_a = {
            0.0, 0.0,        0.0,        0.0,       0.0,
            0.0, 1.0 / 2.0,  0.0,        0.0,       0.0,
            0.0, 1.0 / 6.0,  1.0 / 2.0,  0.0,       0.0,
            0.0, -1.0 / 2.0, 1.0 / 2.0,  1.0 / 2.0, 0.0,
            0.0, 3.0 / 2.0,  -3.0 / 2.0, 1.0 / 2.0, 1.0 / 2.0,
        };
        return tab;
    }();
    return t;
}

ImexStepper::ImexStepper(const Grid& grid, double nu0, const ImexTableau& tableau)
    : grid_(grid), nu0_(nu0), tableau_(tableau) {}

void ImexStepper::ensure_workspace(std::size_t count) {
    while (work_.size() < count) {
        Workspace w;
        for (int j = 0; j < tableau_.rows; ++j) {
            w.tendencies.emplace_back(grid_, Rank::vector);
            w.implicit.emplace_back(grid_, Rank::vector);
            w.stages.emplace_back(grid_, Rank::vector);
        }
        work_.push_back(std::move(w));
    }
}

void ImexStepper::step(std::span<SpectralField* const> systems, double t, double dt, const StageRhs& rhs) {
    const std::size_t count = systems.size();
    for (auto* s : systems) {
        if (s->grid() != grid_ || s->rank() != Rank::vector) throw std::invalid_argument("imex: system shape");
    }
    ensure_workspace(count);
    const int rows = tableau_.rows;
    const int d = grid_.dim();
    const std::size_t ns = grid_.spectral_size();
    auto k2 = grid_.k_squared();

    std::vector<const SpectralField*> x(count);
    std::vector<SpectralField*> f(count);

    for (std::size_t s = 0; s < count; ++s) {
        Workspace& w = work_[s];
        w.stages[0] = *systems[s];
        for (int c = 0; c < d; ++c) {
            auto src = w.stages[0].component(c);
            auto dst = w.implicit[0].component(c);
            for (std::size_t m = 0; m < ns; ++m) dst[m] = -nu0_ * k2[m] * src[m];
        }
        x[s] = &w.stages[0];
        f[s] = &w.tendencies[0];
    }
    rhs(0, t, x, f);

    for (int i = 1; i < rows; ++i) {
        const double diag = tableau_.ai(i, i);
        for (std::size_t s = 0; s < count; ++s) {
            Workspace& w = work_[s];
            SpectralField& xi = w.stages[static_cast<std::size_t>(i)];
            xi = *systems[s];
            for (int j = 0; j < i; ++j) {
                const double ae = dt * tableau_.ae(i, j);
                const double ai = dt * tableau_.ai(i, j);
                if (ae != 0.0) xi.axpy(ae, w.tendencies[static_cast<std::size_t>(j)]);
                if (ai != 0.0) xi.axpy(ai, w.implicit[static_cast<std::size_t>(j)]);
            }
            for (int c = 0; c < d; ++c) {
                auto v = xi.component(c);
                for (std::size_t m = 0; m < ns; ++m) v[m] /= 1.0 + dt * diag * nu0_ * k2[m];
            }
            leray_project_inplace(xi);
            remove_mean(xi);
            enforce_hermitian(xi);
            for (int c = 0; c < d; ++c) {
                auto src = xi.component(c);
                auto dst = w.implicit[static_cast<std::size_t>(i)].component(c);
                for (std::size_t m = 0; m < ns; ++m) dst[m] = -nu0_ * k2[m] * src[m];
            }
            x[s] = &xi;
            f[s] = &w.tendencies[static_cast<std::size_t>(i)];
        }
        if (i < rows - 1) rhs(i, t + tableau_.c[static_cast<std::size_t>(i)] * dt, x, f);
    }

    for (std::size_t s = 0; s < count; ++s) *systems[s] = work_[s].stages[static_cast<std::size_t>(rows - 1)];
}

}  // namespace lady
