#pragma once

// Batch evaluation of the planar field and the Lyapunov function over
// structure-of-arrays point sets. The scalar backend is the reference; the
// AVX2 backend must agree with it to a few ulp (see tests/test_kernels.cpp).

#include <span>
#include <string_view>

namespace hetbound::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend backend);

/// a(x) = (a0 + a1 x)/(1 - c x), b(x) = b0/(1 - c x).
struct FieldCoeffs {
    double a0;
    double a1;
    double b0;
    double c;
};

/// V(x,y) = lin x + quad x^2 + log_coeff log(1 - c x) + offset + y - z - z log(y/z).
struct LyapunovCoeffs {
    FieldCoeffs field;
    double z;
    double lin;
    double quad;
    double log_coeff;
    double offset;
};

bool supported(Backend backend) noexcept;

/// Best supported backend, unless HETBOUND_KERNELS=scalar is set in the environment.
Backend active() noexcept;

/// Overrides the process-wide choice; throws std::invalid_argument if unsupported.
void set_active(Backend backend);

// All spans must have equal length. Inputs must satisfy c x < 1 and y > 0
// (y >= 0 for field); the AVX2 log assumes positive normal arguments.

void field(const FieldCoeffs& k, std::span<const double> x, std::span<const double> y,
           std::span<double> dx, std::span<double> dy, Backend backend = active());

void lyapunov(const LyapunovCoeffs& k, std::span<const double> x, std::span<const double> y,
              std::span<double> v, Backend backend = active());

/// dV/dt along the field: -b(x)(y - z)^2 - r(x)(z - x)^2 with r(x) = -a1/(1 - c x).
void lyapunov_rate(const LyapunovCoeffs& k, std::span<const double> x,
                   std::span<const double> y, std::span<double> rate,
                   Backend backend = active());

namespace scalar {
void field(const FieldCoeffs& k, const double* x, const double* y, double* dx, double* dy,
           std::size_t n);
void lyapunov(const LyapunovCoeffs& k, const double* x, const double* y, double* v,
              std::size_t n);
void lyapunov_rate(const LyapunovCoeffs& k, const double* x, const double* y, double* rate,
                   std::size_t n);
}  // namespace scalar

#if defined(HETBOUND_HAVE_AVX2)
namespace avx2 {
void field(const FieldCoeffs& k, const double* x, const double* y, double* dx, double* dy,
           std::size_t n);
void lyapunov(const LyapunovCoeffs& k, const double* x, const double* y, double* v,
              std::size_t n);
void lyapunov_rate(const LyapunovCoeffs& k, const double* x, const double* y, double* rate,
                   std::size_t n);
/// Vector natural log, exposed for testing against std::log.
void log(const double* in, double* out, std::size_t n);
}  // namespace avx2
#endif

}  // namespace hetbound::kernels
