#include "lady/analysis/thresholds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lady {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " must be positive");
}

}  // namespace

NoSlipThreshold mu_threshold_noslip(double p, double nu0, double nu1, double lambda1, double G, double c_tilde,
                                    double c0) {
    if (!(p >= 2.5)) throw std::invalid_argument("no-slip threshold requires p >= 5/2");
    require_positive(nu0, "nu0");
    require_positive(nu1, "nu1");
    require_positive(lambda1, "lambda1");
    if (!(G >= 0.0)) throw std::invalid_argument("G must be non-negative");
    const double q = 2.0 * p - 3.0;
    NoSlipThreshold out;
    out.mu_star = c_tilde * std::pow(nu0, 3.0 / q) * std::pow(nu1, -2.0 / q) * std::pow(lambda1, 1.0 / q) *
                  std::pow(G, 4.0 / q);
    out.h_max = h_max(out.mu_star, nu0, c0);
    return out;
}

double h_max(double mu, double nu0, double c0) {
    if (mu == 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(nu0 / (mu * c0 * c0));
}

KRConstants constants_K_R(double nu0, double nu1, double lambda1, double G, double C_tilde, double C, double c_K) {
    require_positive(nu0, "nu0");
    require_positive(nu1, "nu1");
    require_positive(lambda1, "lambda1");
    require_positive(C_tilde, "C_tilde");
    require_positive(C, "C");
    require_positive(c_K, "c_K");
    if (!(G >= 0.0)) throw std::invalid_argument("G must be non-negative");
    KRConstants k;
    const double sl = std::sqrt(lambda1);
    k.K1 = nu1 * C_tilde / 4.0;
    k.K2 = 0.4 * std::pow(24.0 / (5.0 * nu1 * C_tilde), 1.5);
    k.K3 = 2.0 * nu1 * C / 3.0;
    k.R1 = 8.0 * nu0 * G * G / sl;
    k.R2 = 4.0 * std::pow(c_K, 2.2) * nu0 * nu0 * G * G / (nu1 * sl);
    k.R3_star = nu0 * lambda1 * k.R1 + k.K3 * k.R2 + nu0 * nu0 * sl * G * G;
    const double growth = std::exp(k.K2 * k.R2);
    if (!std::isfinite(growth)) {
        k.overflow = true;
        k.R3 = std::numeric_limits<double>::infinity();
    } else {
        k.R3 = k.R3_star * growth;
    }
    return k;
}

double mu_threshold_periodic(const KRConstants& k, double nu0, double lambda1, double G, double c_bar, bool two_d) {
    const double forcing = nu0 * nu0 * std::sqrt(lambda1) * G * G;
    double bracket;
    double k1;
    if (two_d) {
        bracket = k.R3_star + k.K3 * k.R2 + forcing;
        k1 = 2.0 * k.K1;
    } else {
        if (k.overflow) return std::numeric_limits<double>::infinity();
        bracket = k.R3 + k.K2 * k.R2 * k.R3 + k.K3 * k.R2 + forcing;
        k1 = k.K1;
    }
    const double e = 10.0 / 17.0;
    return 2.0 * c_bar * std::pow(nu0, 5.0 / 17.0) * std::pow(lambda1, e) / std::pow(k1, e) * std::pow(bracket, e);
}

ThresholdReport threshold_report(const ThresholdInputs& in) {
    ThresholdReport r;
    r.inputs = in;
    const ThresholdConstants& c = in.constants;
    r.kr = constants_K_R(in.nu0, in.nu1, in.lambda1, in.G, c.C_tilde, c.C, c.c_K);
    r.mu_periodic_3d = mu_threshold_periodic(r.kr, in.nu0, in.lambda1, in.G, c.c_bar, false);
    r.mu_periodic_2d = mu_threshold_periodic(r.kr, in.nu0, in.lambda1, in.G, c.c_bar, true);
    r.noslip_applicable = in.p >= 2.5;
    r.mu_noslip = r.noslip_applicable
                      ? mu_threshold_noslip(in.p, in.nu0, in.nu1, in.lambda1, in.G, c.c_tilde, c.c0).mu_star
                      : std::numeric_limits<double>::quiet_NaN();
    r.mu = in.mu > 0.0 ? in.mu : r.mu_periodic_3d;
    r.h_max = h_max(r.mu, in.nu0, c.c0);
    return r;
}

std::string to_key_value(const ThresholdReport& r) {
    std::ostringstream os;
    auto put = [&](const char* name, double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << name << " = " << buf << "\n";
    };
    const ThresholdInputs& in = r.inputs;
    put("p", in.p);
    put("nu0", in.nu0);
    put("nu1", in.nu1);
    put("lambda1", in.lambda1);
    put("G", in.G);
    put("c_tilde", in.constants.c_tilde);
    put("c_bar", in.constants.c_bar);
    put("C_tilde", in.constants.C_tilde);
    put("C", in.constants.C);
    put("c_K", in.constants.c_K);
    put("c0", in.constants.c0);
    put("K1", r.kr.K1);
    put("K2", r.kr.K2);
    put("K3", r.kr.K3);
    put("R1", r.kr.R1);
    put("R2", r.kr.R2);
    put("R3", r.kr.R3);
    put("R3_star", r.kr.R3_star);
    os << "R3_overflow = " << (r.kr.overflow ? "true" : "false") << "\n";
    os << "noslip_applicable = " << (r.noslip_applicable ? "true" : "false") << "\n";
    put("mu_noslip", r.mu_noslip);
    put("mu_periodic_3d", r.mu_periodic_3d);
    put("mu_periodic_2d", r.mu_periodic_2d);
    put("mu", r.mu);
    put("h_max", r.h_max);
    return os.str();
}

}  // namespace lady
