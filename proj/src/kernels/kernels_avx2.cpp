// Compiled with -mavx2; only called after a runtime CPU check.
#include <immintrin.h>

#include "uavcov/kernels/kernels.hpp"

namespace uavcov::kernels::avx2 {

void laplace_integrand(std::span<const double> path_arg, std::span<const double> weight,
                       double s, int m, int k, std::span<double> out) {
    const std::size_t n = path_arg.size();
    const __m256d vm = _mm256_set1_pd(static_cast<double>(m));
    const __m256d vs = _mm256_set1_pd(s);
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d y = _mm256_loadu_pd(path_arg.data() + i);
        const __m256d my = _mm256_mul_pd(vm, y);
        const __m256d inv = _mm256_div_pd(one, _mm256_add_pd(my, vs));
        const __m256d q = _mm256_mul_pd(my, inv);
        const __m256d g = _mm256_mul_pd(vm, inv);
        __m256d v = _mm256_loadu_pd(weight.data() + i);
        for (int j = 0; j < m; ++j) v = _mm256_mul_pd(v, q);
        for (int j = 0; j < k; ++j) v = _mm256_mul_pd(v, g);
        _mm256_storeu_pd(out.data() + i, v);
    }
    if (i < n) {
        scalar::laplace_integrand(path_arg.subspan(i), weight.subspan(i), s, m, k,
                                  out.subspan(i));
    }
}

double interference_alpha2(std::span<const double> gain, std::span<const double> dist_sq) {
    const std::size_t n = gain.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d g = _mm256_loadu_pd(gain.data() + i);
        const __m256d d = _mm256_loadu_pd(dist_sq.data() + i);
        acc = _mm256_add_pd(acc, _mm256_div_pd(g, d));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) sum += gain[i] / dist_sq[i];
    return sum;
}

}  // namespace uavcov::kernels::avx2
