#include "hetbound/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hetbound/errors.hpp"

namespace hetbound {

namespace {

constexpr double kInvE = 1.0 / std::numbers::e;
constexpr int kMaxHalley = 64;

// Seed near the branch point -1/e: w = -1 +- p - p^2/3 + 11/72 p^3 - 43/540 p^4,
// with p = sqrt(2 (e x + 1)); plus sign on the principal branch.
double branch_point_seed(double arg, double sign) {
    // fma keeps e*x + 1 to one rounding near the branch point.
    constexpr double kE = std::numbers::e;
    const double q = std::fma(kE, arg, 1.0);
    const double p = sign * std::sqrt(2.0 * std::max(q, 0.0));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))));
}

double seed(LambertBranch branch, double arg) {
    if (branch == LambertBranch::Principal) {
        if (arg < -0.25) return branch_point_seed(arg, 1.0);
        if (arg < 3.0) {
            // log1p(x) is a decent start on (-0.25, 3).
            return std::log1p(arg) * (1.0 - std::log1p(std::log1p(arg)) / (2.0 + std::log1p(arg)));
        }
        const double l1 = std::log(arg);
        const double l2 = std::log(l1);
        return l1 - l2 + l2 / l1;
    }
    if (arg < -0.25) return branch_point_seed(arg, -1.0);
    const double l1 = std::log(-arg);
    const double l2 = std::log(-l1);
    return l1 - l2 + l2 / l1;
}

// f(w) = w e^w - x, monotone on each branch.
double residual(double w, double arg) { return w * std::exp(w) - arg; }

double bisect(LambertBranch branch, double arg) {
    double lo;
    double hi;
    if (branch == LambertBranch::Principal) {
        lo = -1.0;
        hi = std::max(1.0, std::log1p(arg) + 1.0);
        // residual increasing in w on [-1, inf)
        for (int i = 0; i < 2000; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            (residual(mid, arg) < 0.0 ? lo : hi) = mid;
        }
    } else {
        lo = std::min(-1.0, 2.0 * std::log(-arg) - 2.0);
        hi = -1.0;
        // residual decreasing in w on (-inf, -1]
        for (int i = 0; i < 2000; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            (residual(mid, arg) > 0.0 ? lo : hi) = mid;
        }
    }
    return 0.5 * (lo + hi);
}

bool on_branch(LambertBranch branch, double w) {
    if (!std::isfinite(w)) return false;
    return branch == LambertBranch::Principal ? w >= -1.0 : w <= -1.0;
}

}  // namespace

std::string_view to_string(LambertBranch branch) {
    return branch == LambertBranch::Principal ? "principal" : "minus_one";
}

double lambert_w(LambertBranch branch, double arg) {
    if (std::isnan(arg) || arg < -kInvE - 4 * std::numeric_limits<double>::epsilon() * kInvE) {
        throw DomainError("Lambert W argument " + std::to_string(arg) + " below -1/e");
    }
    if (branch == LambertBranch::MinusOne && !(arg < 0.0)) {
        throw DomainError("Lambert W_{-1} needs -1/e <= arg < 0, got " + std::to_string(arg));
    }
    if (arg == 0.0) return 0.0;
    if (std::isinf(arg)) return arg;
    if (arg <= -kInvE) return -1.0;

    double w = seed(branch, arg);
    for (int i = 0; i < kMaxHalley && on_branch(branch, w); ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - arg;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0) break;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        const double next = w - step;
        if (!std::isfinite(next)) break;
        if (std::abs(next - w) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(next)) {
            w = next;
            break;
        }
        w = next;
    }
    if (!on_branch(branch, w)) {
        w = bisect(branch, arg);
    }
    return w;
}

}  // namespace hetbound
