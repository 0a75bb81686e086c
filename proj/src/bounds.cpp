#include "hetbound/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hetbound/errors.hpp"
#include "hetbound/lambert_w.hpp"
#include "hetbound/lyapunov.hpp"
#include "hetbound/roots.hpp"

namespace hetbound {

namespace {

constexpr std::size_t kHypothesisSamples = 1000;
constexpr std::size_t kRectangleSamples = 200;
constexpr double kHypothesisTolerance = 1e-10;

double lambert_bound(double alpha, double D, double E, double log_coeff) {
    const double arg = -alpha * std::exp(-alpha - (E - D) / log_coeff);
    return 1.0 + lambert_w(LambertBranch::Principal, arg) / alpha;
}

[[noreturn]] void hypothesis_failed(const SystemModel& model, const std::string& what, double x,
                                    double y = std::numeric_limits<double>::quiet_NaN()) {
    std::ostringstream os;
    os << model.label() << ": hypothesis '" << what << "' fails at x=" << x;
    if (!std::isnan(y)) os << ", y=" << y;
    throw HypothesisError(os.str());
}

}  // namespace

double excess_level(double s, double z) {
    if (!(s > 0.0 && z > 0.0)) throw std::invalid_argument("excess_level needs s, z > 0");
    return s - z - z * std::log(s / z);
}

double excess_E(const SystemModel& model) {
    const double s = (model.a0() + 1.0) * model.w();
    if (s < model.z()) {
        throw HypothesisError("(a0+1)w < z for " + model.label());
    }
    return excess_level(s, model.z());
}

double invert_H(const SystemModel& model, double level) {
    if (!(level >= 0.0)) throw std::invalid_argument("H level must be nonnegative");
    const double z = model.z();
    if (level == 0.0) return z;
    auto f = [&](double x) { return potential(model, x) - level; };
    const double limit = model.x_max() - kDomainGuard;
    auto bracket = roots::expand_bracket(f, z, limit);
    if (!bracket) {
        std::ostringstream os;
        const double near_top = std::isfinite(limit) ? limit - 1e-9 * limit : 1e300;
        os << "H never reaches " << level << " below x_max=" << model.x_max()
           << " (sup H ~ " << potential(model, std::max(z, near_top)) << ")";
        throw DomainError(os.str());
    }
    if (bracket->lo == bracket->hi) return bracket->lo;
    return roots::solve_bracketed(f, *bracket, 1e-15);
}

KappaConstants kappa_constants(double kappa) {
    if (!(kappa > 0.0 && kappa <= 1.0)) {
        throw std::invalid_argument("kappa must lie in (0, 1], got " + std::to_string(kappa));
    }
    const double k = kappa;
    const double kp1 = 1.0 + k;
    const double sq = kp1 * kp1 + 4.0 * k;  // 4k + (1+k)^2
    const double cube = 4.0 * k + kp1 * kp1 * kp1;
    const double lin = (1.0 + 5.0 * k) / (2.0 * k);
    const double s = kp1 / (2.0 * k);

    KappaConstants c{};
    c.kappa = k;
    c.z = 4.0 * k / sq;
    c.w = 4.0 * k / (3.0 * k * k + 8.0 * k + 1.0);
    c.log_coeff = s * cube / sq;
    c.alpha = (1.0 + 5.0 * k) / kp1 * sq / cube;
    c.D = 2.0 * (1.0 + 5.0 * k) / sq + c.log_coeff * std::log(kp1 * kp1 / sq);
    c.E = excess_level(3.0 * c.w, c.z);
    c.E_explicit = 12.0 * k / (3.0 * k * k + 8.0 * k + 1.0) - c.z -
                   c.z * std::log((3.0 * k * k + 18.0 * k + 3.0) / (3.0 * k * k + 8.0 * k + 1.0));
    c.delta = (5.0 * k + 1.0) * kp1 * kp1 / (8.0 * k * k);
    c.C = (3.0 + 1.0 / k) * c.z + 2.0 * c.z * std::log(c.z * std::pow(1.0 - c.z, c.delta));

    c.log_coeff_exact = c.z * c.delta;
    c.alpha_exact = lin / c.log_coeff_exact;
    c.D_exact = lin * c.z + c.log_coeff_exact * std::log1p(-c.z);
    return c;
}

double kappa_bound_printed(const KappaConstants& k) {
    return lambert_bound(k.alpha, k.D, k.E, k.log_coeff);
}

double kappa_bound_exact(const KappaConstants& k) {
    return lambert_bound(k.alpha_exact, k.D_exact, k.E, k.log_coeff_exact);
}

double kappa_one_third_display() {
    const double arg =
        -8.0 * std::pow(3.0, 41.0 / 50.0) * std::pow(7.0, 9.0 / 50.0) * std::exp(-6.0 / 5.0) / 25.0;
    return 1.0 + 25.0 / 42.0 * lambert_w(LambertBranch::Principal, arg);
}

double stiff_bound_closed() {
    const double arg = -std::cbrt(2.0) * std::exp(-4.0 / 3.0);
    return 1.0 + 0.5 * lambert_w(LambertBranch::Principal, arg);
}

double nonrel_bound_closed() { return 2.0 + 2.0 * std::sqrt(2.0 - std::log(3.0)); }

void check_bound_hypotheses(const SystemModel& model) {
    const double z = model.z();
    const double w = model.w();
    const double a0 = model.a0();
    const double slope = a0 + 1.0;
    if (!(a0 > 0.0)) hypothesis_failed(model, "a(0) > 0", 0.0);
    if (!(slope * w > z && z >= w && w > 0.0)) {
        hypothesis_failed(model, "(a0+1)w > z >= w > 0", w);
    }

    const double top = std::isfinite(model.x_max()) ? model.x_max() * (1.0 - 1e-6) : 10.0 * z;
    for (std::size_t i = 0; i < kHypothesisSamples; ++i) {
        const double x = top * static_cast<double>(i) / static_cast<double>(kHypothesisSamples);
        if (model.b(x) < 0.0) hypothesis_failed(model, "b(x) >= 0", x);
        const double r = r_factor(model, x);
        if (r < -kHypothesisTolerance) hypothesis_failed(model, "r(x) >= 0", x);
        const double identity = z * model.b(x) - model.a(x) + r * (z - x);
        const double scale = 1.0 + std::abs(model.a(x)) + std::abs(z * model.b(x));
        if (std::abs(identity) > kHypothesisTolerance * scale) {
            hypothesis_failed(model, "zb(x) - a(x) = -r(x)(z - x)", x);
        }
    }

    const double lhs = slope * w * model.b(w);
    if (std::abs(lhs - model.a(w)) > kHypothesisTolerance * (1.0 + std::abs(lhs))) {
        hypothesis_failed(model, "(a0+1) w b(w) = a(w)", w);
    }

    for (std::size_t i = 0; i <= kHypothesisSamples; ++i) {
        const double x = w * static_cast<double>(i) / static_cast<double>(kHypothesisSamples);
        if (slope * w * model.b(x) < model.a(x) - a0 - kHypothesisTolerance) {
            hypothesis_failed(model, "(a0+1) w b(x) >= a(x) - a(0) for x <= w", x);
        }
    }

    for (std::size_t i = 0; i < kRectangleSamples; ++i) {
        const double x = w + (z - w) * static_cast<double>(i) / (kRectangleSamples - 1);
        for (std::size_t j = 0; j < kRectangleSamples; ++j) {
            const double y = z + (slope * w - z) * static_cast<double>(j) / (kRectangleSamples - 1);
            if (!(model.da(x) - model.db(x) * y < 0.0)) {
                hypothesis_failed(model, "a'(x) - b'(x) y < 0 on [w,z] x [z,(a0+1)w]", x, y);
            }
        }
    }
}

BoundReport bound_X(const SystemModel& model) {
    check_bound_hypotheses(model);
    BoundReport rep;
    rep.model = model.label();
    rep.z = model.z();
    rep.w = model.w();
    rep.E = excess_E(model);
    rep.X_numeric = invert_H(model, rep.E);

    switch (model.family()) {
        case Family::Nonrelativistic:
            rep.X_closed = nonrel_bound_closed();
            rep.closed_form = "2 + 2 sqrt(2 - log 3)";
            break;
        case Family::StiffRelativistic:
            rep.X_closed = stiff_bound_closed();
            rep.closed_form = "1 + W0(-2^(1/3) e^(-4/3)) / 2";
            break;
        case Family::ScaledRelativistic:
            rep.X_closed = stiff_bound_closed() / model.spec().scale;
            rep.closed_form = "(1 + W0(-2^(1/3) e^(-4/3)) / 2) / scale";
            break;
        case Family::KappaFamily: {
            const auto k = kappa_constants(model.spec().kappa);
            rep.X_closed = kappa_bound_exact(k);
            rep.closed_form = "1 + W0(-alpha exp(-alpha - (E - D)/(z delta))) / alpha";
            rep.X_closed_printed = kappa_bound_printed(k);
            rep.printed_discrepancy = std::abs(*rep.X_closed_printed - rep.X_numeric);
            break;
        }
    }
    rep.agreement = std::abs(*rep.X_closed - rep.X_numeric);
    if (!(*rep.agreement <= kClosedFormAgreement)) {
        std::ostringstream os;
        os << model.label() << ": closed form " << *rep.X_closed << " disagrees with H^{-1}(E) = "
           << rep.X_numeric;
        throw ConvergenceError(os.str());
    }
    return rep;
}

std::vector<SweepRow> kappa_sweep(double lo, double hi, std::size_t n) {
    if (n == 0 || !(lo > 0.0) || !(hi <= 1.0) || !(lo <= hi) || (n > 1 && lo == hi)) {
        throw std::invalid_argument("kappa sweep needs 0 < lo <= hi <= 1 and n >= 1");
    }
    std::vector<SweepRow> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double kappa =
            n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        const auto model = make_model({Family::KappaFamily, kappa});
        const auto k = kappa_constants(kappa);
        const auto rep = bound_X(model);
        rows.push_back({kappa, k.z, k.w, k.alpha_exact, k.D_exact, k.E, *rep.X_closed,
                        rep.X_numeric});
    }
    return rows;
}

}  // namespace hetbound
