// kernels_avx2.cpp: AVX2/FMA kernels, four doubles per lane group.
//
// Compiled with -mavx2 -mfma; only reached through dispatch after a CPUID
// check. Summation order differs from scalar:: (lane-wise partial sums and
// fused multiply-adds), so results agree to rounding, not bit-for-bit.

#include "kernels_impl.hpp"

#include <immintrin.h>

namespace qwire::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void phase_advance(std::span<double> re, std::span<double> im,
                   std::span<const double> rot_re, std::span<const double> rot_im) {
    const std::size_t n = re.size();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d zr = _mm256_loadu_pd(re.data() + k);
        const __m256d zi = _mm256_loadu_pd(im.data() + k);
        const __m256d rr = _mm256_loadu_pd(rot_re.data() + k);
        const __m256d ri = _mm256_loadu_pd(rot_im.data() + k);
        // (zr + i zi)(rr + i ri)
        const __m256d out_r = _mm256_fmsub_pd(zr, rr, _mm256_mul_pd(zi, ri));
        const __m256d out_i = _mm256_fmadd_pd(zr, ri, _mm256_mul_pd(zi, rr));
        _mm256_storeu_pd(re.data() + k, out_r);
        _mm256_storeu_pd(im.data() + k, out_i);
    }
    for (; k < n; ++k) {
        const double r = re[k] * rot_re[k] - im[k] * rot_im[k];
        const double i = re[k] * rot_im[k] + im[k] * rot_re[k];
        re[k] = r;
        im[k] = i;
    }
}

ComplexSum project(std::span<const double> row, std::span<const double> re,
                   std::span<const double> im) {
    const std::size_t n = row.size();
    __m256d acc_r0 = _mm256_setzero_pd();
    __m256d acc_i0 = _mm256_setzero_pd();
    __m256d acc_r1 = _mm256_setzero_pd();
    __m256d acc_i1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        const __m256d w0 = _mm256_loadu_pd(row.data() + k);
        const __m256d w1 = _mm256_loadu_pd(row.data() + k + 4);
        acc_r0 = _mm256_fmadd_pd(w0, _mm256_loadu_pd(re.data() + k), acc_r0);
        acc_i0 = _mm256_fmadd_pd(w0, _mm256_loadu_pd(im.data() + k), acc_i0);
        acc_r1 = _mm256_fmadd_pd(w1, _mm256_loadu_pd(re.data() + k + 4), acc_r1);
        acc_i1 = _mm256_fmadd_pd(w1, _mm256_loadu_pd(im.data() + k + 4), acc_i1);
    }
    for (; k + 4 <= n; k += 4) {
        const __m256d w = _mm256_loadu_pd(row.data() + k);
        acc_r0 = _mm256_fmadd_pd(w, _mm256_loadu_pd(re.data() + k), acc_r0);
        acc_i0 = _mm256_fmadd_pd(w, _mm256_loadu_pd(im.data() + k), acc_i0);
    }
    ComplexSum s{hsum(_mm256_add_pd(acc_r0, acc_r1)), hsum(_mm256_add_pd(acc_i0, acc_i1))};
    for (; k < n; ++k) {
        s.re += row[k] * re[k];
        s.im += row[k] * im[k];
    }
    return s;
}

void synthesize(std::span<const double> matrix, std::size_t cols,
                std::span<const double> re, std::span<const double> im,
                std::span<double> out_re, std::span<double> out_im) {
    const std::size_t rows = out_re.size();
    for (std::size_t j = 0; j < rows; ++j) {
        const ComplexSum s = project(matrix.subspan(j * cols, cols), re, im);
        out_re[j] = s.re;
        out_im[j] = s.im;
    }
}

}  // namespace qwire::kernels::avx2
