// kernels_neon.cpp: AArch64 NEON kernels, two doubles per register.

#include "kernels_impl.hpp"

#include <arm_neon.h>

namespace qwire::kernels::neon {

void phase_advance(std::span<double> re, std::span<double> im,
                   std::span<const double> rot_re, std::span<const double> rot_im) {
    const std::size_t n = re.size();
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const float64x2_t zr = vld1q_f64(re.data() + k);
        const float64x2_t zi = vld1q_f64(im.data() + k);
        const float64x2_t rr = vld1q_f64(rot_re.data() + k);
        const float64x2_t ri = vld1q_f64(rot_im.data() + k);
        vst1q_f64(re.data() + k, vfmsq_f64(vmulq_f64(zr, rr), zi, ri));
        vst1q_f64(im.data() + k, vfmaq_f64(vmulq_f64(zi, rr), zr, ri));
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
    float64x2_t acc_r = vdupq_n_f64(0.0);
    float64x2_t acc_i = vdupq_n_f64(0.0);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const float64x2_t w = vld1q_f64(row.data() + k);
        acc_r = vfmaq_f64(acc_r, w, vld1q_f64(re.data() + k));
        acc_i = vfmaq_f64(acc_i, w, vld1q_f64(im.data() + k));
    }
    ComplexSum s{vaddvq_f64(acc_r), vaddvq_f64(acc_i)};
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

}  // namespace qwire::kernels::neon
