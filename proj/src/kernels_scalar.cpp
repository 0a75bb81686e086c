#include <cmath>

#include "hetbound/kernels.hpp"

namespace hetbound::kernels::scalar {

void field(const FieldCoeffs& k, const double* x, const double* y, double* dx, double* dy,
           std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double d = 1.0 - k.c * x[i];
        const double a = (k.a0 + k.a1 * x[i]) / d;
        const double b = k.b0 / d;
        dx[i] = y[i] - x[i];
        dy[i] = y[i] * (a - b * y[i]);
    }
}

void lyapunov(const LyapunovCoeffs& k, const double* x, const double* y, double* v,
              std::size_t n) {
    const double log_z = std::log(k.z);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        double pot = k.lin * xi + k.quad * xi * xi + k.offset;
        if (k.log_coeff != 0.0) pot += k.log_coeff * std::log1p(-k.field.c * xi);
        v[i] = pot + (y[i] - k.z) - k.z * (std::log(y[i]) - log_z);
    }
}

void lyapunov_rate(const LyapunovCoeffs& k, const double* x, const double* y, double* rate,
                   std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double d = 1.0 - k.field.c * x[i];
        const double b = k.field.b0 / d;
        const double r = -k.field.a1 / d;
        const double dy = y[i] - k.z;
        const double dx = k.z - x[i];
        rate[i] = -b * dy * dy - r * dx * dx;
    }
}

}  // namespace hetbound::kernels::scalar
