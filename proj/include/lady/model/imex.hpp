#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lady/spectral/field.hpp"

namespace lady {

/// Additive IMEX Runge-Kutta tableau with an explicit first stage.
///
/// Row i of `explicit_a` / `implicit_a` builds stage i from stages j < i (explicit)
/// and j <= i (implicit). Both parts are stiffly accurate, so the last stage is the
/// new solution and the last explicit row doubles as the quadrature weights.
struct ImexTableau {
    int rows = 0;
    std::vector<double> c;
    std::vector<double> explicit_a;  // rows x rows
    std::vector<double> implicit_a;  // rows x rows

    double ae(int i, int j) const { return explicit_a[static_cast<std::size_t>(i * rows + j)]; }
    double ai(int i, int j) const { return implicit_a[static_cast<std::size_t>(i * rows + j)]; }
    /// Number of explicit right-hand-side evaluations per step.
    int explicit_stages() const { return rows - 1; }
    /// Quadrature weight of explicit stage j.
    double weight(int j) const { return ae(rows - 1, j); }

    /// Ascher-Ruuth-Spiteri (4,4,3): four stages, third order, L-stable implicit part.
    static const ImexTableau& ars443();
};

/// Advances one or more systems du/dt = F(u) - nu0 |k|^2 u in lockstep, F explicit
/// and the Laplacian implicit (diagonal in Fourier space).
///
/// All systems see the same stage times, which is what lets a nudged system consume
/// observations of a reference system's stage values.
class ImexStepper {
public:
    /// stage: explicit-stage index; t: stage time; x: stage values; f: tendencies to fill.
    using StageRhs = std::function<void(int stage, double t, std::span<const SpectralField* const> x,
                                        std::span<SpectralField* const> f)>;

    ImexStepper(const Grid& grid, double nu0, const ImexTableau& tableau = ImexTableau::ars443());

    const ImexTableau& tableau() const { return tableau_; }

    /// Replaces each system's value with its value at t + dt. After every stage the
    /// values are re-projected, made Hermitian and given zero mean.
    void step(std::span<SpectralField* const> systems, double t, double dt, const StageRhs& rhs);

private:
    struct Workspace {
        std::vector<SpectralField> tendencies;  // explicit F_j
        std::vector<SpectralField> implicit;    // -nu0 k^2 X_j
        std::vector<SpectralField> stages;      // X_j
    };
    void ensure_workspace(std::size_t count);

    Grid grid_;
    double nu0_;
    ImexTableau tableau_;
    std::vector<Workspace> work_;
};

}  // namespace lady
