#include <atomic>
#include <cstdlib>
#include <cstring>

#include "singable/kernels/kernels.hpp"

namespace singable::kernels {

namespace {

Isa initial_isa() noexcept {
    const char* env = std::getenv("SINGABLE_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::scalar;
    return detected_isa();
}

std::atomic<Isa>& current() noexcept {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa detected_isa() noexcept {
#if defined(SINGABLE_HAVE_AVX2)
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok ? Isa::avx2 : Isa::scalar;
#else
    return Isa::scalar;
#endif
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

bool set_active_isa(Isa isa) noexcept {
    const bool supported = isa == Isa::scalar || detected_isa() == Isa::avx2;
    current().store(supported ? isa : Isa::scalar, std::memory_order_relaxed);
    return supported;
}

DotNorms dot_norms(const double* a, const double* b, std::size_t n) noexcept {
#if defined(SINGABLE_HAVE_AVX2)
    if (active_isa() == Isa::avx2) return avx2::dot_norms(a, b, n);
#endif
    return scalar::dot_norms(a, b, n);
}

void syllable_error(const std::int32_t* ref, const std::int32_t* pred, std::size_t n, double beta,
                    double* out) noexcept {
#if defined(SINGABLE_HAVE_AVX2)
    if (active_isa() == Isa::avx2) return avx2::syllable_error(ref, pred, n, beta, out);
#endif
    scalar::syllable_error(ref, pred, n, beta, out);
}

void syllable_count_distance(const std::int32_t* ref, const std::int32_t* pred, std::size_t n,
                             double* out) noexcept {
#if defined(SINGABLE_HAVE_AVX2)
    if (active_isa() == Isa::avx2) return avx2::syllable_count_distance(ref, pred, n, out);
#endif
    scalar::syllable_count_distance(ref, pred, n, out);
}

std::size_t levenshtein(const std::int32_t* a, std::size_t n, const std::int32_t* b, std::size_t m) {
#if defined(SINGABLE_HAVE_AVX2)
    if (active_isa() == Isa::avx2) return avx2::levenshtein(a, n, b, m);
#endif
    return scalar::levenshtein(a, n, b, m);
}

}  // namespace singable::kernels
