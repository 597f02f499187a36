#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "singable/kernels/kernels.hpp"

namespace singable::kernels::avx2 {

namespace {

double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

DotNorms dot_norms(const double* a, const double* b, std::size_t n) noexcept {
    __m256d dot = _mm256_setzero_pd();
    __m256d na = _mm256_setzero_pd();
    __m256d nb = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        dot = _mm256_fmadd_pd(va, vb, dot);
        na = _mm256_fmadd_pd(va, va, na);
        nb = _mm256_fmadd_pd(vb, vb, nb);
    }
    DotNorms r{hsum(dot), hsum(na), hsum(nb)};
    for (; i < n; ++i) {
        r.dot = std::fma(a[i], b[i], r.dot);
        r.norm_a_sq = std::fma(a[i], a[i], r.norm_a_sq);
        r.norm_b_sq = std::fma(b[i], b[i], r.norm_b_sq);
    }
    return r;
}

void syllable_error(const std::int32_t* ref, const std::int32_t* pred, std::size_t n, double beta,
                    double* out) noexcept {
    const __m256d vbeta = _mm256_set1_pd(beta);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(ref + i)));
        const __m256d p = _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(pred + i)));
        const __m256d under = _mm256_sub_pd(r, p);
        const __m256d over = _mm256_mul_pd(vbeta, _mm256_sub_pd(p, r));
        const __m256d ge = _mm256_cmp_pd(r, p, _CMP_GE_OQ);
        _mm256_storeu_pd(out + i, _mm256_blendv_pd(over, under, ge));
    }
    scalar::syllable_error(ref + i, pred + i, n - i, beta, out + i);
}

void syllable_count_distance(const std::int32_t* ref, const std::int32_t* pred, std::size_t n,
                             double* out) noexcept {
    const __m256d half = _mm256_set1_pd(0.5);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(ref + i)));
        const __m256d p = _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(pred + i)));
        const __m256d d = _mm256_max_pd(_mm256_sub_pd(r, p), _mm256_sub_pd(p, r));
        const __m256d sum = _mm256_add_pd(_mm256_div_pd(d, r), _mm256_div_pd(d, p));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(half, sum));
    }
    scalar::syllable_count_distance(ref + i, pred + i, n - i, out + i);
}

// Cells on anti-diagonal k = i + j are independent of each other, so eight
// consecutive rows are filled at once. Diagonal buffers are indexed by row i;
// b is reversed so that b[j - 1] for consecutive i is a contiguous load.
std::size_t levenshtein(const std::int32_t* a, std::size_t n, const std::int32_t* b, std::size_t m) {
    if (n == 0) return m;
    if (m == 0) return n;
    std::vector<std::int32_t> rb(b, b + m);
    std::reverse(rb.begin(), rb.end());
    std::vector<std::int32_t> d2(n + 1), d1(n + 1), d0(n + 1);
    const __m256i one = _mm256_set1_epi32(1);

    d1[0] = 0;  // diagonal 0
    for (std::size_t k = 1; k <= n + m; ++k) {
        const std::size_t lo = k > m ? k - m : 0;
        const std::size_t hi = std::min(n, k);
        if (lo == 0) d0[0] = static_cast<std::int32_t>(k);
        if (hi == k) d0[k] = static_cast<std::int32_t>(k);
        const std::size_t first = std::max<std::size_t>(1, lo);
        const std::size_t last = std::min(hi, k - 1);  // inclusive
        std::size_t i = first;
        if (first <= last) {
            for (; i + 8 <= last + 1; i += 8) {
                const std::int32_t* bp = rb.data() + (m + i - k);
                const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i - 1));
                const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bp));
                const __m256i del = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(d1.data() + i - 1));
                const __m256i ins = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(d1.data() + i));
                const __m256i diag = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(d2.data() + i - 1));
                const __m256i eq = _mm256_cmpeq_epi32(va, vb);
                const __m256i sub = _mm256_add_epi32(diag, _mm256_andnot_si256(eq, one));
                const __m256i best = _mm256_min_epi32(_mm256_add_epi32(_mm256_min_epi32(del, ins), one), sub);
                _mm256_storeu_si256(reinterpret_cast<__m256i*>(d0.data() + i), best);
            }
            for (; i <= last; ++i) {
                const std::int32_t cost = a[i - 1] != rb[m + i - k] ? 1 : 0;
                d0[i] = std::min({d1[i - 1] + 1, d1[i] + 1, d2[i - 1] + cost});
            }
        }
        std::swap(d2, d1);
        std::swap(d1, d0);
    }
    return static_cast<std::size_t>(d1[n]);
}

}  // namespace singable::kernels::avx2
