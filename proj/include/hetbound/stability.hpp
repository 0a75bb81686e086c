#pragma once

#include <array>
#include <complex>
#include <string_view>

#include "hetbound/model.hpp"

namespace hetbound {

using Matrix2 = std::array<std::array<double, 2>, 2>;
using Vector2 = std::array<double, 2>;

struct EigenPair {
    double value;
    Vector2 vector;
};

enum class OriginClass { Saddle, Other };
enum class InteriorClass { StableSpiral, StableNode, Unstable };

std::string_view to_string(OriginClass c);
std::string_view to_string(InteriorClass c);

struct OriginLinearization {
    std::array<EigenPair, 2> pairs;  // stable (-1) first, then unstable a(0)
    double unstable_slope;           // a(0) + 1
    OriginClass classification;
};

struct InteriorLinearization {
    Matrix2 jacobian;
    std::array<std::complex<double>, 2> eigenvalues;  // lambda_+, lambda_-
    double a_at_z;
    double four_z_r;       // 4 z r(z)
    double one_minus_a_sq;  // (1 - a(z))^2
    double discriminant;   // (1 - a(z))^2 - 4 z r(z)
    InteriorClass classification;
    bool asymptotically_stable;
};

struct StabilityReport {
    OriginLinearization origin;
    InteriorLinearization interior;
};

/// Eigenpairs (-1, [1,0]) and (a(0), [1, a(0)+1]) and slope I = a(0) + 1.
OriginLinearization linearize_origin(const SystemModel& model);

/// Jacobian at (z, z) and 2 lambda = -(1 + a(z)) +- sqrt((1 - a(z))^2 - 4 z r(z)).
InteriorLinearization linearize_interior(const SystemModel& model);

StabilityReport analyze_stability(const SystemModel& model);

/// Central-difference Jacobian of the field. The stencil may cross x = 0 or
/// y = 0 (the formulas extend smoothly); it must stay left of the pole.
Matrix2 jacobian_fd(const SystemModel& model, double x, double y, double h);

/// Roots of the characteristic polynomial of an arbitrary 2x2 matrix.
std::array<std::complex<double>, 2> eigenvalues_2x2(const Matrix2& m);

}  // namespace hetbound
