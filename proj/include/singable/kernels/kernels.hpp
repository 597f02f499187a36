#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace singable::kernels {

// Numeric inner loops behind the metrics. Each kernel has a scalar reference
// implementation and an AVX2 variant; the public entry points dispatch on the
// ISA chosen at startup. Setting SINGABLE_SIMD=scalar in the environment pins
// the scalar path.

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;

/// Best ISA this CPU and build support.
Isa detected_isa() noexcept;

Isa active_isa() noexcept;

/// Overrides dispatch (tests, benchmarks). Requesting an unsupported ISA falls
/// back to scalar and returns false.
bool set_active_isa(Isa isa) noexcept;

struct DotNorms {
    double dot = 0.0;
    double norm_a_sq = 0.0;
    double norm_b_sq = 0.0;
};

/// dot(a,b), |a|^2 and |b|^2 in one pass. All three use the same accumulation
/// order, so dot_norms(a, a) yields dot == norm_a_sq == norm_b_sq exactly.
DotNorms dot_norms(const double* a, const double* b, std::size_t n) noexcept;

/// out[i] = ref[i] - pred[i] when ref[i] >= pred[i], else beta * (pred[i] - ref[i]).
void syllable_error(const std::int32_t* ref, const std::int32_t* pred, std::size_t n, double beta,
                    double* out) noexcept;

/// out[i] = 0.5 * (|d| / ref[i] + |d| / pred[i]) with d = ref[i] - pred[i].
/// Callers guarantee strictly positive counts.
void syllable_count_distance(const std::int32_t* ref, const std::int32_t* pred, std::size_t n,
                             double* out) noexcept;

/// Unit-cost Levenshtein distance over symbol ids.
std::size_t levenshtein(const std::int32_t* a, std::size_t n, const std::int32_t* b, std::size_t m);

namespace scalar {
DotNorms dot_norms(const double* a, const double* b, std::size_t n) noexcept;
void syllable_error(const std::int32_t* ref, const std::int32_t* pred, std::size_t n, double beta,
                    double* out) noexcept;
void syllable_count_distance(const std::int32_t* ref, const std::int32_t* pred, std::size_t n,
                             double* out) noexcept;
std::size_t levenshtein(const std::int32_t* a, std::size_t n, const std::int32_t* b, std::size_t m);
}  // namespace scalar

#if defined(SINGABLE_HAVE_AVX2)
namespace avx2 {
DotNorms dot_norms(const double* a, const double* b, std::size_t n) noexcept;
void syllable_error(const std::int32_t* ref, const std::int32_t* pred, std::size_t n, double beta,
                    double* out) noexcept;
void syllable_count_distance(const std::int32_t* ref, const std::int32_t* pred, std::size_t n,
                             double* out) noexcept;
/// Anti-diagonal wavefront, eight cells per step.
std::size_t levenshtein(const std::int32_t* a, std::size_t n, const std::int32_t* b, std::size_t m);
}  // namespace avx2
#endif

}  // namespace singable::kernels
