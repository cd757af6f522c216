// kernels_scalar.cpp: portable reference kernels.

#include "qwire/kernels/kernels.hpp"

namespace qwire::kernels::scalar {

void phase_advance(std::span<double> re, std::span<double> im,
                   std::span<const double> rot_re, std::span<const double> rot_im) {
    const std::size_t n = re.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double r = re[k] * rot_re[k] - im[k] * rot_im[k];
        const double i = re[k] * rot_im[k] + im[k] * rot_re[k];
        re[k] = r;
        im[k] = i;
    }
}

ComplexSum project(std::span<const double> row, std::span<const double> re,
                   std::span<const double> im) {
    ComplexSum s;
    const std::size_t n = row.size();
    for (std::size_t k = 0; k < n; ++k) {
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

}  // namespace qwire::kernels::scalar
