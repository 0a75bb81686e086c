#pragma once

#include <functional>
#include <optional>

namespace hetbound::roots {

inline constexpr double kDefaultTolerance = 1e-12;

struct Bracket {
    double lo;
    double hi;
};

/// Root of f on [lo, hi]; f(lo) and f(hi) must differ in sign (or one be zero).
/// Throws ConvergenceError when the sign condition fails.
double solve_bracketed(const std::function<double(double)>& f, Bracket bracket,
                       double tolerance = kDefaultTolerance);

/// Expands outward from `start` toward `limit` until f changes sign. The
/// trial point approaches `limit` geometrically, so open poles are never
/// evaluated. Returns nullopt if no sign change is found.
std::optional<Bracket> expand_bracket(const std::function<double(double)>& f, double start,
                                      double limit, int max_expansions = 200);

/// Convenience: expand from `start` toward `limit`, then solve.
double find_root(const std::function<double(double)>& f, double start, double limit,
                 double tolerance = kDefaultTolerance);

}  // namespace hetbound::roots
