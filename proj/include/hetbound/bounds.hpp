#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hetbound/model.hpp"

namespace hetbound {

/// s - z - z log(s/z): the Lyapunov level of (z, s) above (z, z). Requires s, z > 0.
double excess_level(double s, double z);

/// E = (a0+1)w - z - z log((a0+1)w/z). Throws HypothesisError if (a0+1)w < z.
double excess_E(const SystemModel& model);

/// Unique x >= z with H(x) = level. Throws DomainError if the level is not
/// reached below x_max.
double invert_H(const SystemModel& model, double level);

/// Constants of the kappa-family closed form.
///
/// `alpha`, `D` and `log_coeff` follow the commonly quoted display, whose
/// log(1-x) coefficient (1+k)/(2k) (4k+(1+k)^3)/(4k+(1+k)^2) is exact only at
/// k = 1. The `_exact` fields use the coefficient obtained by integrating
/// a and b, z * delta = (1+k)^2 (5k+1) / (2k (k^2+6k+1)).
struct KappaConstants {
    double kappa;
    double z;
    double w;
    double alpha;
    double D;
    double E;
    double delta;
    double C;
    double log_coeff;
    double alpha_exact;
    double D_exact;
    double log_coeff_exact;
    double E_explicit;  ///< E from the expanded display in kappa
};

/// Throws std::invalid_argument unless kappa in (0, 1].
KappaConstants kappa_constants(double kappa);

/// 1 + W0(-alpha exp(-alpha - (E - D)/log_coeff)) / alpha with the printed constants.
double kappa_bound_printed(const KappaConstants& k);
/// Same Lambert-W form with the exact constants; equals H^{-1}(E).
double kappa_bound_exact(const KappaConstants& k);
/// 1 + (25/42) W0(-8 3^(41/50) 7^(9/50) e^(-6/5) / 25), the kappa = 1/3 display.
double kappa_one_third_display();

/// 1 + W0(-2^(1/3) e^(-4/3)) / 2.
double stiff_bound_closed();
/// 2 + 2 sqrt(2 - log 3).
double nonrel_bound_closed();

struct BoundReport {
    std::string model;
    double z = 0.0;
    double w = 0.0;
    double E = 0.0;
    double X_numeric = 0.0;
    std::optional<double> X_closed;
    std::optional<double> agreement;
    std::string closed_form;
    /// kappa family only: the quoted closed form, and its distance from X_numeric.
    std::optional<double> X_closed_printed;
    std::optional<double> printed_discrepancy;
};

inline constexpr double kClosedFormAgreement = 1e-9;

/// Checks the hypotheses of the bound on sampled points (throws
/// HypothesisError naming the failing condition and point).
void check_bound_hypotheses(const SystemModel& model);

/// X = H^{-1}(E) together with the family's Lambert-W closed form.
BoundReport bound_X(const SystemModel& model);

struct SweepRow {
    double kappa;
    double z;
    double w;
    double alpha;
    double D;
    double E;
    double X_closed;
    double X_numeric;
};

/// n evenly spaced kappa values on [lo, hi]; alpha and D are the exact constants.
std::vector<SweepRow> kappa_sweep(double lo, double hi, std::size_t n);

}  // namespace hetbound
