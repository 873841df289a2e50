#include "lady/analysis/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lady/spectral/calculus.hpp"

namespace lady {

FieldNorms norms(const SpectralField& u, double p) {
    if (u.rank() != Rank::vector) throw std::invalid_argument("norms: vector field required");
    const Grid& g = u.grid();
    FieldNorms out;
    out.l2_squared = l2_norm_squared(u);
    out.h1_squared = h1_seminorm_squared(u);

    const PhysicalField strain = to_physical(strain_rate(gradient(u)));
    const int dd = g.dim() * g.dim();
    double sum = 0.0;
    for (std::size_t x = 0; x < g.physical_size(); ++x) {
        double f2 = 0.0;
        for (int c = 0; c < dd; ++c) f2 += strain(c, x) * strain(c, x);
        sum += f2 == 0.0 ? 0.0 : std::pow(f2, 0.5 * p);
    }
    double cell = 1.0;
    for (int a = 0; a < g.dim(); ++a) cell *= g.spacing();
    out.strain_lp_p = cell * sum;
    out.strain_lp = std::pow(out.strain_lp_p, 1.0 / p);
    return out;
}

double strain_l2_norm_squared(const SpectralField& u) { return l2_norm_squared(strain_rate(gradient(u))); }

double l2_norm_squared_nodal(const PhysicalField& f) {
    const Grid& g = f.grid();
    double sum = 0.0;
    for (int c = 0; c < f.components(); ++c) {
        for (std::size_t x = 0; x < g.physical_size(); ++x) sum += f(c, x) * f(c, x);
    }
    double cell = 1.0;
    for (int a = 0; a < g.dim(); ++a) cell *= g.spacing();
    return cell * sum;
}

DiagnosticsRow diagnostics_of(double t, const SpectralField& u, const SpectralField& force, double p) {
    const FieldNorms n = norms(u, p);
    DiagnosticsRow row;
    row.t = t;
    row.energy = n.l2_squared;
    row.grad_squared = n.h1_squared;
    row.strain_lp_p = n.strain_lp_p;
    row.forcing_power = inner_product(force, u);
    return row;
}

void add_errors(DiagnosticsRow& row, const SpectralField& u, const SpectralField& v) {
    const SpectralField diff = u - v;
    row.energy_nudged = l2_norm_squared(v);
    row.error_l2 = std::sqrt(l2_norm_squared(diff));
    row.error_h1 = std::sqrt(h1_seminorm_squared(diff));
    row.error_components.resize(static_cast<std::size_t>(diff.components()));
    for (int c = 0; c < diff.components(); ++c) {
        row.error_components[static_cast<std::size_t>(c)] = std::sqrt(component_l2_norm_squared(diff, c));
    }
}

double energy_equality_residual(std::span<const DiagnosticsRow> history, const StressParams& params) {
    if (history.size() < 2) throw std::invalid_argument("energy_equality_residual: history needs >= 2 samples");
    const double h = history[1].t - history[0].t;
    if (!(h > 0.0)) throw std::invalid_argument("energy_equality_residual: times must increase");
    for (std::size_t i = 1; i < history.size(); ++i) {
        const double hi = history[i].t - history[i - 1].t;
        if (std::abs(hi - h) > 1e-9 * std::max(1.0, std::abs(h))) {
            throw std::invalid_argument("energy_equality_residual: history is not uniformly sampled");
        }
    }
    auto integrand = [&](const DiagnosticsRow& r) {
        return params.nu0 * r.grad_squared + 2.0 * params.nu1 * r.strain_lp_p - r.forcing_power;
    };
    double integral = 0.0;
    for (std::size_t i = 1; i < history.size(); ++i) {
        integral += 0.5 * (history[i].t - history[i - 1].t) * (integrand(history[i]) + integrand(history[i - 1]));
    }
    return energy_equality_residual(history.front().energy, history.back().energy, integral);
}

double energy_equality_residual(double energy_start, double energy_end, double integrated_dissipation) {
    return std::abs(0.5 * energy_end - 0.5 * energy_start + integrated_dissipation);
}

RateFit fit_exponential_rate(std::span<const double> t, std::span<const double> e, double t_begin,
                             double t_end) {
    if (t.size() != e.size()) throw std::invalid_argument("fit_exponential_rate: size mismatch");
    RateFit fit;
    double st = 0.0, sy = 0.0;
    std::vector<double> ts, ys;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_begin || t[i] > t_end) continue;
        ++fit.samples;
        if (!(e[i] > 0.0)) {
            fit.reached_zero = true;
            continue;
        }
        ts.push_back(t[i]);
        ys.push_back(std::log(e[i]));
    }
    if (fit.samples < 10) throw std::invalid_argument("fit_exponential_rate: need at least 10 samples in the window");
    if (fit.reached_zero) {
        fit.rate = -std::numeric_limits<double>::infinity();
        return fit;
    }
    const double n = static_cast<double>(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sy += ys[i];
    }
    const double tm = st / n;
    const double ym = sy / n;
    double stt = 0.0, sty = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        stt += (ts[i] - tm) * (ts[i] - tm);
        sty += (ts[i] - tm) * (ys[i] - ym);
        syy += (ys[i] - ym) * (ys[i] - ym);
    }
    if (stt == 0.0) throw std::invalid_argument("fit_exponential_rate: all samples at one time");
    fit.rate = sty / stt;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double r = ys[i] - (ym + fit.rate * (ts[i] - tm));
        ss_res += r * r;
    }
    // A constant series (up to rounding of the mean) is fitted perfectly by a zero slope.
    const double noise_floor = n * std::pow(1e-14 * std::max(1.0, std::abs(ym)), 2);
    if (syy <= noise_floor) {
        fit.rate = 0.0;
        fit.r_squared = 1.0;
    } else {
        fit.r_squared = 1.0 - ss_res / syy;
    }
    return fit;
}

RateFit fit_exponential_rate(std::span<const double> t, std::span<const double> e) {
    return fit_exponential_rate(t, e, -std::numeric_limits<double>::infinity(),
                                std::numeric_limits<double>::infinity());
}

}  // namespace lady
