#include <algorithm>
#include <vector>

#include "singable/kernels/kernels.hpp"

namespace singable::kernels::scalar {

DotNorms dot_norms(const double* a, const double* b, std::size_t n) noexcept {
    DotNorms r;
    for (std::size_t i = 0; i < n; ++i) {
        r.dot += a[i] * b[i];
        r.norm_a_sq += a[i] * a[i];
        r.norm_b_sq += b[i] * b[i];
    }
    return r;
}

void syllable_error(const std::int32_t* ref, const std::int32_t* pred, std::size_t n, double beta,
                    double* out) noexcept {
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ref[i];
        const double p = pred[i];
        out[i] = r >= p ? r - p : beta * (p - r);
    }
}

void syllable_count_distance(const std::int32_t* ref, const std::int32_t* pred, std::size_t n,
                             double* out) noexcept {
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ref[i];
        const double p = pred[i];
        const double d = r >= p ? r - p : p - r;
        out[i] = 0.5 * (d / r + d / p);
    }
}

std::size_t levenshtein(const std::int32_t* a, std::size_t n, const std::int32_t* b, std::size_t m) {
    if (n == 0) return m;
    if (m == 0) return n;
    std::vector<std::size_t> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] != b[j - 1] ? 1 : 0);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

}  // namespace singable::kernels::scalar
