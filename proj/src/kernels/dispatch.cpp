// dispatch.cpp — runtime kernel selection

#include "tfd/kernels.hpp"

#include "tfd/errors.hpp"

#include <cstdlib>
#include <string>
#include <string_view>

namespace tfd::kernels {

std::string_view backend_name(Backend backend)
{
    switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    }
    return "unknown";
}

bool backend_available(Backend backend)
{
    switch (backend) {
    case Backend::scalar: return true;
    case Backend::avx2:
#if defined(TFD_HAVE_AVX2_KERNEL) && (defined(__GNUC__) || defined(__clang__))
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    }
    return false;
}

Backend default_backend()
{
    static const Backend selected = [] {
        const char* forced = std::getenv("TFD_KERNEL");
        if (forced != nullptr && std::string_view(forced) == "scalar") return Backend::scalar;
        return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
    }();
    return selected;
}

void evaluate_series(const SeriesCoefficients& coeffs, std::span<const double> times,
                     std::span<double> c, std::span<double> cdot, Backend backend)
{
    if (c.size() != times.size() || cdot.size() != times.size()) {
        throw ParameterError("evaluate_series: output spans must match the number of times");
    }
    if (!backend_available(backend)) {
        throw ParameterError("kernel backend '" + std::string(backend_name(backend)) +
                             "' is not available on this machine");
    }
#if defined(TFD_HAVE_AVX2_KERNEL)
    if (backend == Backend::avx2) {
        detail::series_avx2(coeffs, times, c, cdot);
        return;
    }
#endif
    detail::series_scalar(coeffs, times, c, cdot);
}

void evaluate_series(const SeriesCoefficients& coeffs, std::span<const double> times,
                     std::span<double> c, std::span<double> cdot)
{
    evaluate_series(coeffs, times, c, cdot, default_backend());
}

} // namespace tfd::kernels
