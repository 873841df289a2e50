#pragma once

#include <string>

namespace lady {

/// Dimensionless constants the threshold estimates depend on but do not fix
/// numerically. All default to 1; reports echo the values used.
struct ThresholdConstants {
    double c_tilde = 1.0;  ///< no-slip threshold prefactor
    double c_bar = 1.0;    ///< periodic threshold prefactor
    double C_tilde = 1.0;  ///< enters K1 and K2
    double C = 1.0;        ///< enters K3
    double c_K = 1.0;      ///< enters R2
    double c0 = 1.0;       ///< interpolant constant in mu c0^2 h^2 <= nu0
};

struct NoSlipThreshold {
    double mu_star = 0.0;
    /// Largest admissible resolution sqrt(nu0 / (mu c0^2)) at mu = mu_star (infinite when mu_star = 0).
    double h_max = 0.0;
};

/// mu* = c_tilde nu0^{3/(2p-3)} nu1^{-2/(2p-3)} lambda1^{1/(2p-3)} G^{4/(2p-3)} for the
/// bounded domain with no-slip walls. Throws std::invalid_argument for p < 5/2 or
/// non-positive nu0, nu1, lambda1.
NoSlipThreshold mu_threshold_noslip(double p, double nu0, double nu1, double lambda1, double G,
                                    double c_tilde = 1.0, double c0 = 1.0);

/// sqrt(nu0 / (mu c0^2)).
double h_max(double mu, double nu0, double c0 = 1.0);

struct KRConstants {
    double K1 = 0.0, K2 = 0.0, K3 = 0.0;
    double R1 = 0.0, R2 = 0.0, R3 = 0.0;
    double R3_star = 0.0;     ///< R3 without the factor e^{K2 R2} (two-dimensional bound)
    bool overflow = false;    ///< e^{K2 R2} is not representable; R3 is +infinity
};

/// K1 = nu1 C~/4, K2 = (2/5)(24/(5 nu1 C~))^{3/2}, K3 = 2 nu1 C/3,
/// R1 = 8 nu0 G^2 / lambda1^{1/2}, R2 = 4 c_K^{11/5} nu0^2 G^2 / (nu1 lambda1^{1/2}),
/// R3 = (nu0 lambda1 R1 + K3 R2 + nu0^2 lambda1^{1/2} G^2) e^{K2 R2}.
/// Throws std::invalid_argument unless nu0, nu1, lambda1, C~, C, c_K > 0 and G >= 0.
KRConstants constants_K_R(double nu0, double nu1, double lambda1, double G, double C_tilde = 1.0,
                          double C = 1.0, double c_K = 1.0);

/// Periodic-box threshold
///   3D: 2 C_bar nu0^{5/17} lambda1^{10/17} / K1^{10/17} (R3 + K2 R2 R3 + K3 R2 + nu0^2 lambda1^{1/2} G^2)^{10/17}
///   2D: 2 C_bar nu0^{5/17} lambda1^{10/17} / (2 K1)^{10/17} (R3* + K3 R2 + nu0^2 lambda1^{1/2} G^2)^{10/17}
double mu_threshold_periodic(const KRConstants& k, double nu0, double lambda1, double G, double c_bar = 1.0,
                             bool two_d = false);

struct ThresholdInputs {
    double p = 3.0;
    double nu0 = 1e-2;
    double nu1 = 1e-3;
    double lambda1 = 1.0;
    double G = 1.0;
    double mu = 0.0;  ///< mu used for h_max; 0 means "use the periodic 3D threshold"
    ThresholdConstants constants;
};

struct ThresholdReport {
    ThresholdInputs inputs;
    KRConstants kr;
    bool noslip_applicable = false;  ///< p >= 5/2
    double mu_noslip = 0.0;          ///< NaN when not applicable
    double mu_periodic_3d = 0.0;
    double mu_periodic_2d = 0.0;
    double mu = 0.0;
    double h_max = 0.0;
};

ThresholdReport threshold_report(const ThresholdInputs& in);

/// One `name = value` line per quantity, values with 17 significant digits.
std::string to_key_value(const ThresholdReport& r);

}  // namespace lady
