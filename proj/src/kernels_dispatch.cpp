#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "hetbound/kernels.hpp"

namespace hetbound::kernels {

namespace {

Backend detect() noexcept {
    if (const char* env = std::getenv("HETBOUND_KERNELS"); env && std::string(env) == "scalar") {
        return Backend::Scalar;
    }
    return supported(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& selected() {
    static std::atomic<Backend> backend{detect()};
    return backend;
}

void require_equal(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("kernel spans differ in length");
}

void require_supported(Backend backend) {
    if (!supported(backend)) {
        throw std::invalid_argument("kernel backend " + std::string(to_string(backend)) +
                                    " not supported on this CPU");
    }
}

}  // namespace

std::string_view to_string(Backend backend) {
    return backend == Backend::Avx2 ? "avx2" : "scalar";
}

bool supported(Backend backend) noexcept {
    if (backend == Backend::Scalar) return true;
#if defined(HETBOUND_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend active() noexcept { return selected().load(std::memory_order_relaxed); }

void set_active(Backend backend) {
    require_supported(backend);
    selected().store(backend, std::memory_order_relaxed);
}

void field(const FieldCoeffs& k, std::span<const double> x, std::span<const double> y,
           std::span<double> dx, std::span<double> dy, Backend backend) {
    require_equal(x.size(), y.size());
    require_equal(x.size(), dx.size());
    require_equal(x.size(), dy.size());
    require_supported(backend);
#if defined(HETBOUND_HAVE_AVX2)
    if (backend == Backend::Avx2) {
        avx2::field(k, x.data(), y.data(), dx.data(), dy.data(), x.size());
        return;
    }
#endif
    (void)backend;
    scalar::field(k, x.data(), y.data(), dx.data(), dy.data(), x.size());
}

void lyapunov(const LyapunovCoeffs& k, std::span<const double> x, std::span<const double> y,
              std::span<double> v, Backend backend) {
    require_equal(x.size(), y.size());
    require_equal(x.size(), v.size());
    require_supported(backend);
#if defined(HETBOUND_HAVE_AVX2)
    if (backend == Backend::Avx2) {
        avx2::lyapunov(k, x.data(), y.data(), v.data(), x.size());
        return;
    }
#endif
    (void)backend;
    scalar::lyapunov(k, x.data(), y.data(), v.data(), x.size());
}

void lyapunov_rate(const LyapunovCoeffs& k, std::span<const double> x,
                   std::span<const double> y, std::span<double> rate, Backend backend) {
    require_equal(x.size(), y.size());
    require_equal(x.size(), rate.size());
    require_supported(backend);
#if defined(HETBOUND_HAVE_AVX2)
    if (backend == Backend::Avx2) {
        avx2::lyapunov_rate(k, x.data(), y.data(), rate.data(), x.size());
        return;
    }
#endif
    (void)backend;
    scalar::lyapunov_rate(k, x.data(), y.data(), rate.data(), x.size());
}

}  // namespace hetbound::kernels
