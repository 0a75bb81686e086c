#include "hetbound/stability.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hetbound/errors.hpp"

namespace hetbound {

std::string_view to_string(OriginClass c) {
    return c == OriginClass::Saddle ? "SaddleAtOrigin" : "Other";
}

std::string_view to_string(InteriorClass c) {
    switch (c) {
        case InteriorClass::StableSpiral: return "StableSpiral";
        case InteriorClass::StableNode: return "StableNode";
        case InteriorClass::Unstable: return "Unstable";
    }
    return "Unknown";
}

OriginLinearization linearize_origin(const SystemModel& model) {
    const double a0 = model.a0();
    OriginLinearization out{};
    out.pairs[0] = {-1.0, {1.0, 0.0}};
    out.pairs[1] = {a0, {1.0, a0 + 1.0}};
    out.unstable_slope = a0 + 1.0;
    out.classification = a0 > 0.0 ? OriginClass::Saddle : OriginClass::Other;
    return out;
}

InteriorLinearization linearize_interior(const SystemModel& model) {
    const double z = model.z();
    const double a = model.a(z);
    const double b = model.b(z);
    const double r = model.equilibrium().r_at_z;

    InteriorLinearization out{};
    out.jacobian = {{{-1.0, 1.0}, {model.da(z) * z - model.db(z) * z * z, a - 2.0 * b * z}}};
    out.a_at_z = a;
    out.four_z_r = 4.0 * z * r;
    out.one_minus_a_sq = (1.0 - a) * (1.0 - a);
    out.discriminant = out.one_minus_a_sq - out.four_z_r;

    const std::complex<double> root = std::sqrt(std::complex<double>(out.discriminant, 0.0));
    out.eigenvalues[0] = 0.5 * (-(1.0 + a) + root);
    out.eigenvalues[1] = 0.5 * (-(1.0 + a) - root);

    const bool both_negative =
        out.eigenvalues[0].real() < 0.0 && out.eigenvalues[1].real() < 0.0;
    if (!both_negative) {
        out.classification = InteriorClass::Unstable;
    } else {
        out.classification =
            out.discriminant < 0.0 ? InteriorClass::StableSpiral : InteriorClass::StableNode;
    }
    out.asymptotically_stable = a > -1.0;
    // Under b >= 0 and r >= 0 the trace/determinant test reduces to a(z) > -1.
    if (out.asymptotically_stable != both_negative) {
        throw HypothesisError("a(z) > -1 test disagrees with eigenvalue signs for " +
                              model.label());
    }
    return out;
}

StabilityReport analyze_stability(const SystemModel& model) {
    return {linearize_origin(model), linearize_interior(model)};
}

Matrix2 jacobian_fd(const SystemModel& model, double x, double y, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("step h must be positive");
    if (!(x + h < model.x_max() - kDomainGuard)) {
        throw DomainError("finite-difference stencil at x=" + std::to_string(x) +
                          " crosses the pole");
    }
    const auto& k = model.coefficients();
    auto field = [&k](double px, double py) -> Vector2 {
        const double d = 1.0 - k.c * px;
        return {py - px, (k.a0 + k.a1 * px) / d * py - k.b0 / d * py * py};
    };
    const Vector2 fxp = field(x + h, y);
    const Vector2 fxm = field(x - h, y);
    const Vector2 fyp = field(x, y + h);
    const Vector2 fym = field(x, y - h);
    Matrix2 j{};
    for (int row = 0; row < 2; ++row) {
        j[row][0] = (fxp[row] - fxm[row]) / (2.0 * h);
        j[row][1] = (fyp[row] - fym[row]) / (2.0 * h);
    }
    return j;
}

std::array<std::complex<double>, 2> eigenvalues_2x2(const Matrix2& m) {
    const double tr = m[0][0] + m[1][1];
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const std::complex<double> root = std::sqrt(std::complex<double>(tr * tr - 4.0 * det, 0.0));
    return {0.5 * (tr + root), 0.5 * (tr - root)};
}

}  // namespace hetbound
