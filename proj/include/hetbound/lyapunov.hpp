#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hetbound/kernels.hpp"
#include "hetbound/model.hpp"

namespace hetbound {

/// V(x, y) = zB(x) - A(x) + y - z - z log(y/z); zero at (z, z).
/// Requires 0 <= x < x_max and y > 0.
double lyapunov_value(const SystemModel& model, double x, double y);

/// dV/dt along the field, -b(x)(y - z)^2 - r(x)(z - x)^2.
double lyapunov_derivative(const SystemModel& model, double x, double y);

/// H(x) = zB(x) - A(x) for x >= z. Strictly increasing there.
double potential(const SystemModel& model, double x);

/// Coefficients for the batch kernels, matching lyapunov_value().
kernels::LyapunovCoeffs lyapunov_coeffs(const SystemModel& model);
kernels::FieldCoeffs field_coeffs(const SystemModel& model);

struct Interval {
    double lo;
    double hi;
};

struct LevelSetGrid {
    Interval x_range{};
    Interval y_range{};
    std::size_t nx = 0;
    std::size_t ny = 0;
    // Row-major in y: index = j * nx + i. Invalid cells hold 0 and valid = 0.
    std::vector<double> values;
    std::vector<std::uint8_t> valid;

    double x_at(std::size_t i) const;
    double y_at(std::size_t j) const;
    double value(std::size_t i, std::size_t j) const { return values[j * nx + i]; }
    bool is_valid(std::size_t i, std::size_t j) const { return valid[j * nx + i] != 0; }
};

/// Samples V on a uniform node grid. Cells with x outside the domain or
/// y <= 0 are flagged invalid. Throws std::invalid_argument on an empty range.
LevelSetGrid level_set_grid(const SystemModel& model, Interval x_range, Interval y_range,
                            std::size_t nx, std::size_t ny,
                            kernels::Backend backend = kernels::active());

/// CSV with header x,y,V,valid.
void write_csv(const LevelSetGrid& grid, std::ostream& out);

}  // namespace hetbound
