#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hetbound/bounds.hpp"
#include "hetbound/errors.hpp"
#include "hetbound/lyapunov.hpp"
#include "oracles.hpp"

using namespace hetbound;

namespace {

// Reference values computed independently with mpmath at 50 digits.
constexpr double kStiffX = 0.69341596397289068;
constexpr double kNonrelX = 3.8988288088523308;
constexpr double kNonrelE = 1.8027754226637806;
constexpr double kStiffE = 0.15342640972002735;
constexpr double kKappaThirdDisplay = 0.62117005181295743;
constexpr double kKappaThirdExact = 0.63911770148895538;

// H^{-1}(level) by bisection on a quadrature of z b - a.
double oracle_inverse(const SystemModel& m, double level, double hi) {
    return oracle::bisect(
        [&](double x) {
            return oracle::integrate([&](double s) { return m.z() * m.b(s) - m.a(s); }, m.z(), x,
                                     128) -
                   level;
        },
        m.z(), hi);
}

}  // namespace

TEST_CASE("excess level E") {
    CHECK(excess_E(make_model({Family::Nonrelativistic})) ==
          doctest::Approx(kNonrelE).epsilon(1e-14));
    CHECK(excess_E(make_model({Family::Nonrelativistic})) ==
          doctest::Approx(4.0 - 2.0 * std::log(3.0)).epsilon(1e-14));
    CHECK(excess_E(make_model({Family::StiffRelativistic})) ==
          doctest::Approx(kStiffE).epsilon(1e-14));
    CHECK(excess_E(make_model({Family::StiffRelativistic})) ==
          doctest::Approx(0.5 - 0.5 * std::log(2.0)).epsilon(1e-14));
    CHECK(excess_level(1.0, 1.0) == 0.0);
    CHECK_THROWS(excess_level(-1.0, 1.0));
}

TEST_CASE("invert_H") {
    const auto nr = make_model({Family::Nonrelativistic});
    for (double level : {0.0, 0.1, 1.0, 10.0}) {
        CHECK(invert_H(nr, level) == doctest::Approx(2.0 + std::sqrt(2.0 * level)).epsilon(1e-14));
    }
    const auto st = make_model({Family::StiffRelativistic});
    for (double level : {0.01, 0.15, 1.0, 5.0}) {
        const double x = invert_H(st, level);
        CHECK(potential(st, x) == doctest::Approx(level).epsilon(1e-13));
        CHECK(x == doctest::Approx(oracle_inverse(st, level, 1.0 - 1e-14)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(invert_H(st, 1e6), DomainError);
    CHECK_THROWS_AS(invert_H(st, -1.0), std::invalid_argument);
}

TEST_CASE("closed forms match H-inversion") {
    const auto nr = bound_X(make_model({Family::Nonrelativistic}));
    CHECK(nr.X_numeric == doctest::Approx(kNonrelX).epsilon(1e-14));
    CHECK(*nr.X_closed == doctest::Approx(2.0 + 2.0 * std::sqrt(2.0 - std::log(3.0))).epsilon(1e-15));
    CHECK(*nr.agreement <= 1e-9);

    const auto st = bound_X(make_model({Family::StiffRelativistic}));
    CHECK(st.X_numeric == doctest::Approx(kStiffX).epsilon(1e-13));
    CHECK(*st.X_closed == doctest::Approx(1.0 + oracle::lambert_w0(-std::cbrt(2.0) *
                                                                    std::exp(-4.0 / 3.0)) / 2.0)
                              .epsilon(1e-12));
    CHECK(*st.agreement <= 1e-9);
    CHECK(st.X_numeric < 0.7);

    const auto sc = bound_X(make_model({Family::ScaledRelativistic}));
    CHECK(sc.X_numeric * 8.0 * M_PI == doctest::Approx(kStiffX).epsilon(1e-12));
    CHECK(*sc.agreement <= 1e-9);

    const auto k3 = bound_X(make_model({Family::KappaFamily, 1.0 / 3.0}));
    CHECK(k3.X_numeric == doctest::Approx(kKappaThirdExact).epsilon(1e-12));
    CHECK(*k3.X_closed == doctest::Approx(kKappaThirdExact).epsilon(1e-12));
    CHECK(*k3.agreement <= 1e-9);
    CHECK(*k3.X_closed_printed == doctest::Approx(kKappaThirdDisplay).epsilon(1e-12));
    CHECK(*k3.printed_discrepancy == doctest::Approx(kKappaThirdExact - kKappaThirdDisplay).epsilon(1e-9));
}

TEST_CASE("H-inversion agrees with the quadrature oracle for every family") {
    for (const auto& spec : {ModelSpec{Family::Nonrelativistic}, ModelSpec{Family::StiffRelativistic},
                             ModelSpec{Family::ScaledRelativistic},
                             ModelSpec{Family::KappaFamily, 1.0 / 3.0},
                             ModelSpec{Family::KappaFamily, 0.05}}) {
        const auto m = make_model(spec);
        const double hi = std::isfinite(m.x_max()) ? m.x_max() * (1 - 1e-12) : 20.0;
        const auto r = bound_X(m);
        CAPTURE(m.label());
        CHECK(r.X_numeric == doctest::Approx(oracle_inverse(m, r.E, hi)).epsilon(1e-10));
        CHECK(r.X_numeric > m.z());
    }
}

TEST_CASE("kappa constants") {
    SUBCASE("kappa = 1 reproduces the stiff case") {
        const auto k = kappa_constants(1.0);
        CHECK(std::abs(k.alpha - 2.0) <= 1e-14);
        CHECK(std::abs(k.alpha_exact - 2.0) <= 1e-14);
        CHECK(std::abs(k.E - (0.5 - 0.5 * std::log(2.0))) <= 1e-14);
        CHECK(std::abs(k.D - (1.5 - 1.5 * std::log(2.0))) <= 1e-14);
        CHECK(std::abs(k.D_exact - (1.5 - 1.5 * std::log(2.0))) <= 1e-14);
        CHECK(std::abs(1.0 / k.log_coeff - 2.0 / 3.0) <= 1e-14);
        CHECK(k.delta == doctest::Approx(3.0));
        CHECK(kappa_bound_printed(k) == doctest::Approx(kStiffX).epsilon(1e-13));
        CHECK(kappa_bound_exact(k) == doctest::Approx(kStiffX).epsilon(1e-13));
    }
    SUBCASE("kappa = 1/3") {
        const auto k = kappa_constants(1.0 / 3.0);
        CHECK(std::abs(1.0 / k.alpha - 25.0 / 42.0) <= 1e-14);
        CHECK(k.alpha_exact == doctest::Approx(1.75).epsilon(1e-14));
        CHECK(k.delta == doctest::Approx(16.0 / 3.0).epsilon(1e-14));
        CHECK(k.D == doctest::Approx(0.38186717158232694).epsilon(1e-13));
        CHECK(k.E == doctest::Approx(0.20830091697691274).epsilon(1e-13));
        CHECK(kappa_bound_printed(k) == doctest::Approx(kKappaThirdDisplay).epsilon(1e-13));
        CHECK(kappa_one_third_display() == doctest::Approx(kKappaThirdDisplay).epsilon(1e-13));
        CHECK(kappa_one_third_display() < 0.622);
        CHECK(kappa_bound_exact(k) == doctest::Approx(kKappaThirdExact).epsilon(1e-12));
    }
    SUBCASE("expanded E display and the two printed D displays agree") {
        for (double kappa : {0.05, 0.2, 1.0 / 3.0, 0.5, 0.9, 1.0}) {
            const auto k = kappa_constants(kappa);
            CHECK(std::abs(k.E_explicit - k.E) <= 1e-12);
            const double lin = (1 + 5 * kappa) / (2 * kappa);
            const double first_form = lin * k.z + k.log_coeff * std::log(1 - k.z);
            CHECK(std::abs(first_form - k.D) <= 1e-12);
            CHECK(std::abs(k.log_coeff_exact - k.z * k.delta) <= 1e-12);
        }
    }
    SUBCASE("the exact log coefficient matches a quadrature of z b - a") {
        for (double kappa : {0.1, 1.0 / 3.0, 0.7}) {
            const auto k = kappa_constants(kappa);
            const auto m = make_model({Family::KappaFamily, kappa});
            const double lin = (1 + 5 * kappa) / (2 * kappa);
            for (double x : {0.5, 0.8, 0.95}) {
                if (x <= k.z) continue;
                const double h = oracle::integrate(
                    [&](double s) { return k.z * m.b(s) - m.a(s); }, k.z, x, 128);
                const double form = -lin * x - k.log_coeff_exact * std::log(1 - x) + k.D_exact;
                CHECK(h == doctest::Approx(form).epsilon(1e-11));
            }
        }
    }
    CHECK_THROWS_AS(kappa_constants(0.0), std::invalid_argument);
    CHECK_THROWS_AS(kappa_constants(1.5), std::invalid_argument);
}

TEST_CASE("kappa sweep") {
    // X(kappa) rises from 0.2728 at kappa = 0.05 to a maximum near kappa = 0.8 and
    // falls back to the stiff value 0.6934 at kappa = 1 (independent quadrature).
    const auto rows = kappa_sweep(0.05, 1.0, 20);
    REQUIRE(rows.size() == 20);
    CHECK(rows.front().kappa == 0.05);
    CHECK(rows.back().kappa == doctest::Approx(1.0));
    CHECK(rows.front().X_closed == doctest::Approx(0.27275697142007405).epsilon(1e-11));
    CHECK(rows.back().X_closed == doctest::Approx(kStiffX).epsilon(1e-10));
    std::size_t peak = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(std::isfinite(rows[i].X_closed));
        CHECK(rows[i].X_closed >= rows[i].z);
        CHECK(std::abs(rows[i].X_closed - rows[i].X_numeric) <= 1e-9);
        if (rows[i].X_closed > rows[peak].X_closed) peak = i;
    }
    CHECK(rows[peak].kappa == doctest::Approx(0.8));
    CHECK(rows[peak].X_closed == doctest::Approx(0.6965337496).epsilon(1e-9));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (i <= peak) {
            CHECK(rows[i].X_closed > rows[i - 1].X_closed);
        } else {
            CHECK(rows[i].X_closed < rows[i - 1].X_closed);
        }
    }
    const auto mid = kappa_sweep(0.5, 0.5, 1);
    CHECK(mid.at(0).X_numeric == doctest::Approx(0.67922576645810927).epsilon(1e-11));
    CHECK_THROWS_AS(kappa_sweep(0.5, 0.2, 4), std::invalid_argument);
    CHECK_THROWS_AS(kappa_sweep(0.0, 0.2, 4), std::invalid_argument);
}

TEST_CASE("hypotheses hold for all families and the bound exceeds z") {
    for (double kappa : {0.05, 0.3, 1.0}) {
        CHECK_NOTHROW(check_bound_hypotheses(make_model({Family::KappaFamily, kappa})));
    }
    CHECK_NOTHROW(check_bound_hypotheses(make_model({Family::Nonrelativistic})));
    CHECK_NOTHROW(check_bound_hypotheses(make_model({Family::StiffRelativistic})));
    CHECK_NOTHROW(check_bound_hypotheses(make_model({Family::ScaledRelativistic})));
}
