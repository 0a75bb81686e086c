#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "hetbound/kernels.hpp"
#include "hetbound/lyapunov.hpp"
#include "hetbound/model.hpp"

using namespace hetbound;

namespace {

struct Points {
    std::vector<double> x;
    std::vector<double> y;
};

// Odd count so the vector path also exercises its scalar tail.
Points random_points(const SystemModel& m, std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    const double top = std::isfinite(m.x_max()) ? 0.999 * m.x_max() : 6.0 * m.z();
    std::uniform_real_distribution<double> ux(0.0, top);
    std::uniform_real_distribution<double> uy(-12.0, 2.0);
    Points p;
    for (std::size_t i = 0; i < n; ++i) {
        p.x.push_back(ux(rng));
        p.y.push_back(4.0 * m.z() * std::pow(10.0, uy(rng) / 4.0));
    }
    return p;
}

std::vector<SystemModel> models() {
    return {make_model({Family::Nonrelativistic}), make_model({Family::StiffRelativistic}),
            make_model({Family::ScaledRelativistic}),
            make_model({Family::KappaFamily, 1.0 / 3.0})};
}

bool close(double a, double b, double rel, double abs) {
    return std::abs(a - b) <= abs + rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("scalar batch kernels match the pointwise model functions") {
    for (const auto& m : models()) {
        CAPTURE(m.label());
        const auto p = random_points(m, 1001, 7);
        std::vector<double> dx(p.x.size()), dy(p.x.size()), v(p.x.size()), rate(p.x.size());
        kernels::field(field_coeffs(m), p.x, p.y, dx, dy, kernels::Backend::Scalar);
        kernels::lyapunov(lyapunov_coeffs(m), p.x, p.y, v, kernels::Backend::Scalar);
        kernels::lyapunov_rate(lyapunov_coeffs(m), p.x, p.y, rate, kernels::Backend::Scalar);
        for (std::size_t i = 0; i < p.x.size(); ++i) {
            const auto f = eval_field(m, p.x[i], p.y[i]);
            CHECK(close(dx[i], f.dx, 1e-15, 0.0));
            CHECK(close(dy[i], f.dy, 1e-13, 1e-300));
            const double ref_v = lyapunov_value(m, p.x[i], p.y[i]);
            CHECK(close(v[i], ref_v, 1e-12, 1e-12 * (1.0 + std::abs(m.A(p.x[i])))));
            const double ref_rate = lyapunov_derivative(m, p.x[i], p.y[i]);
            CHECK(close(rate[i], ref_rate, 1e-9, 1e-14));
        }
    }
}

TEST_CASE("mismatched spans are rejected") {
    const auto m = make_model({Family::StiffRelativistic});
    std::vector<double> x(4, 0.1), y(3, 0.1), out(4);
    CHECK_THROWS_AS(kernels::lyapunov(lyapunov_coeffs(m), x, y, out), std::invalid_argument);
}

TEST_CASE("backend selection") {
    CHECK(kernels::supported(kernels::Backend::Scalar));
    const auto before = kernels::active();
    kernels::set_active(kernels::Backend::Scalar);
    CHECK(kernels::active() == kernels::Backend::Scalar);
    if (kernels::supported(kernels::Backend::Avx2)) {
        kernels::set_active(kernels::Backend::Avx2);
        CHECK(kernels::active() == kernels::Backend::Avx2);
    } else {
        CHECK_THROWS_AS(kernels::set_active(kernels::Backend::Avx2), std::invalid_argument);
    }
    kernels::set_active(before);
}

#if defined(HETBOUND_HAVE_AVX2)

TEST_CASE("avx2 log agrees with std::log to 2 ulp") {
    if (!kernels::supported(kernels::Backend::Avx2)) return;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> expo(-300.0, 300.0);
    std::vector<double> in;
    for (int i = 0; i < 20003; ++i) in.push_back(std::pow(10.0, expo(rng)));
    for (double special : {1.0, 2.0, 0.5, std::sqrt(2.0), std::sqrt(0.5), 1.0 + 1e-15,
                           1.0 - 1e-16, std::numeric_limits<double>::min(),
                           std::numeric_limits<double>::max()}) {
        in.push_back(special);
    }
    std::vector<double> out(in.size());
    kernels::avx2::log(in.data(), out.data(), in.size());
    double worst_ulps = 0.0;
    for (std::size_t i = 0; i < in.size(); ++i) {
        const double ref = std::log(in[i]);
        const double ulp = std::nextafter(std::abs(ref), INFINITY) - std::abs(ref);
        worst_ulps = std::max(worst_ulps, std::abs(out[i] - ref) / ulp);
    }
    CHECK(worst_ulps <= 2.0);
    CHECK(out[in.size() - 9] == 0.0);  // log(1) is exact
}

TEST_CASE("avx2 kernels are equivalent to the scalar reference") {
    if (!kernels::supported(kernels::Backend::Avx2)) return;
    for (const auto& m : models()) {
        CAPTURE(m.label());
        for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 1001u}) {
            const auto p = random_points(m, n, 100 + static_cast<unsigned>(n));
            std::vector<double> sdx(n), sdy(n), vdx(n), vdy(n);
            kernels::field(field_coeffs(m), p.x, p.y, sdx, sdy, kernels::Backend::Scalar);
            kernels::field(field_coeffs(m), p.x, p.y, vdx, vdy, kernels::Backend::Avx2);
            std::vector<double> sv(n), vv(n), sr(n), vr(n);
            const auto k = lyapunov_coeffs(m);
            kernels::lyapunov(k, p.x, p.y, sv, kernels::Backend::Scalar);
            kernels::lyapunov(k, p.x, p.y, vv, kernels::Backend::Avx2);
            kernels::lyapunov_rate(k, p.x, p.y, sr, kernels::Backend::Scalar);
            kernels::lyapunov_rate(k, p.x, p.y, vr, kernels::Backend::Avx2);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(sdx[i] == vdx[i]);
                // dy = y (a - b y) cancels near the isocline, and 1 - c x loses
                // digits near the pole; compare on the term scale times that condition.
                const double cx = m.coefficients().c * p.x[i];
                const double cond = 1.0 + cx / (1.0 - cx);
                const double dy_scale = p.y[i] * (std::abs(m.a(p.x[i])) + m.b(p.x[i]) * p.y[i]);
                CHECK(std::abs(sdy[i] - vdy[i]) <= 8 * 2.3e-16 * cond * dy_scale);
                // V sums terms of size |A|, |log y|; compare on that scale.
                const double scale = 1.0 + std::abs(m.A(p.x[i])) + std::abs(std::log(p.y[i])) +
                                     p.y[i];
                CHECK(std::abs(sv[i] - vv[i]) <= 1e-14 * scale);
                CHECK(close(sr[i], vr[i], 8 * 2.3e-16 * cond, 1e-300));
            }
        }
    }
}

TEST_CASE("avx2 lyapunov is exactly zero at (z, z)") {
    if (!kernels::supported(kernels::Backend::Avx2)) return;
    for (const auto& m : models()) {
        std::vector<double> x(8, m.z()), y(8, m.z()), v(8);
        kernels::lyapunov(lyapunov_coeffs(m), x, y, v, kernels::Backend::Avx2);
        for (double val : v) CHECK(std::abs(val) <= 1e-15);
    }
}

#endif
