#include "hetbound/roots.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "hetbound/errors.hpp"

namespace hetbound::roots {

double solve_bracketed(const std::function<double(double)>& f, Bracket bracket,
                       double tolerance) {
    double flo = f(bracket.lo);
    double fhi = f(bracket.hi);
    if (flo == 0.0) return bracket.lo;
    if (fhi == 0.0) return bracket.hi;
    if (!(std::signbit(flo) != std::signbit(fhi)) || !std::isfinite(flo) || !std::isfinite(fhi)) {
        throw ConvergenceError("root not bracketed on [" + std::to_string(bracket.lo) + ", " +
                               std::to_string(bracket.hi) + "]");
    }
    auto done = [tolerance](double a, double b) { return std::abs(b - a) <= tolerance; };
    std::uintmax_t iterations = 200;
    auto [a, b] = boost::math::tools::toms748_solve(f, bracket.lo, bracket.hi, flo, fhi, done,
                                                    iterations);
    if (iterations >= 200 && !done(a, b)) {
        throw ConvergenceError("toms748 did not converge");
    }
    // Return the endpoint with the smaller residual.
    return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

std::optional<Bracket> expand_bracket(const std::function<double(double)>& f, double start,
                                      double limit, int max_expansions) {
    double lo = start;
    double flo = f(lo);
    if (flo == 0.0) return Bracket{lo, lo};
    const bool bounded = std::isfinite(limit);
    double step = bounded ? 0.0 : std::max(1.0, std::abs(start));
    for (int i = 0; i < max_expansions; ++i) {
        double hi;
        if (bounded) {
            // Halve the remaining gap to the limit: lo -> (lo + limit) / 2.
            hi = lo + 0.5 * (limit - lo);
            if (hi == lo) return std::nullopt;
        } else {
            hi = lo + step;
            step *= 2.0;
        }
        double fhi = f(hi);
        if (!std::isfinite(fhi)) return std::nullopt;
        if (fhi == 0.0 || std::signbit(fhi) != std::signbit(flo)) return Bracket{lo, hi};
        lo = hi;
        flo = fhi;
    }
    return std::nullopt;
}

double find_root(const std::function<double(double)>& f, double start, double limit,
                 double tolerance) {
    auto bracket = expand_bracket(f, start, limit);
    if (!bracket) {
        throw ConvergenceError("no sign change between " + std::to_string(start) + " and " +
                               std::to_string(limit));
    }
    if (bracket->lo == bracket->hi) return bracket->lo;
    return solve_bracketed(f, *bracket, tolerance);
}

}  // namespace hetbound::roots
