#include "hetbound/lyapunov.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "hetbound/errors.hpp"
#include "hetbound/format.hpp"

namespace hetbound {

namespace {

void check_y(double y) {
    if (!(y > 0.0)) throw DomainError("y must be positive, got " + std::to_string(y));
}

double node(Interval range, std::size_t n, std::size_t i) {
    if (n == 1) return range.lo;
    return range.lo + (range.hi - range.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

void check_range(Interval range, std::size_t n, const char* axis) {
    if (n == 0 || !(range.hi >= range.lo) || (n > 1 && range.hi == range.lo)) {
        throw std::invalid_argument(std::string("empty ") + axis + " range");
    }
}

}  // namespace

double lyapunov_value(const SystemModel& model, double x, double y) {
    check_y(y);
    const double z = model.z();
    return z * model.B(x) - model.A(x) + y - z - z * std::log(y / z);
}

double lyapunov_derivative(const SystemModel& model, double x, double y) {
    check_y(y);
    const double z = model.z();
    const double dy = y - z;
    const double dx = z - x;
    return -model.b(x) * dy * dy - r_factor(model, x) * dx * dx;
}

double potential(const SystemModel& model, double x) {
    if (x < model.z()) {
        throw DomainError("H is defined for x >= z; got x=" + std::to_string(x));
    }
    return model.z() * model.B(x) - model.A(x);
}

kernels::FieldCoeffs field_coeffs(const SystemModel& model) {
    const auto& k = model.coefficients();
    return {k.a0, k.a1, k.b0, k.c};
}

kernels::LyapunovCoeffs lyapunov_coeffs(const SystemModel& model) {
    const auto terms = model.potential_terms();
    return {field_coeffs(model), model.z(), terms.lin, terms.quad, terms.log_coeff, terms.offset};
}

double LevelSetGrid::x_at(std::size_t i) const { return node(x_range, nx, i); }
double LevelSetGrid::y_at(std::size_t j) const { return node(y_range, ny, j); }

LevelSetGrid level_set_grid(const SystemModel& model, Interval x_range, Interval y_range,
                            std::size_t nx, std::size_t ny, kernels::Backend backend) {
    check_range(x_range, nx, "x");
    check_range(y_range, ny, "y");
    LevelSetGrid grid{x_range, y_range, nx, ny, std::vector<double>(nx * ny, 0.0),
                      std::vector<std::uint8_t>(nx * ny, 0)};

    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<std::size_t> slots;
    xs.reserve(nx * ny);
    ys.reserve(nx * ny);
    slots.reserve(nx * ny);
    for (std::size_t j = 0; j < ny; ++j) {
        const double y = grid.y_at(j);
        for (std::size_t i = 0; i < nx; ++i) {
            const double x = grid.x_at(i);
            if (model.in_domain(x) && y > 0.0) {
                xs.push_back(x);
                ys.push_back(y);
                slots.push_back(j * nx + i);
            }
        }
    }
    std::vector<double> vs(xs.size());
    kernels::lyapunov(lyapunov_coeffs(model), xs, ys, vs, backend);
    for (std::size_t k = 0; k < slots.size(); ++k) {
        grid.values[slots[k]] = vs[k];
        grid.valid[slots[k]] = 1;
    }
    return grid;
}

void write_csv(const LevelSetGrid& grid, std::ostream& out) {
    out << "x,y,V,valid\n";
    for (std::size_t j = 0; j < grid.ny; ++j) {
        for (std::size_t i = 0; i < grid.nx; ++i) {
            out << format_double(grid.x_at(i)) << ',' << format_double(grid.y_at(j)) << ','
                << format_double(grid.value(i, j)) << ',' << (grid.is_valid(i, j) ? 1 : 0)
                << '\n';
        }
    }
}

}  // namespace hetbound
