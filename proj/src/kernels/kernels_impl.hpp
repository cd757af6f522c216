// kernels_impl.hpp: declarations of the ISA-specific kernel sets.

#pragma once

#include "qwire/kernels/kernels.hpp"

namespace qwire::kernels {

#if defined(QWIRE_BUILD_AVX2)
namespace avx2 {
void phase_advance(std::span<double> re, std::span<double> im,
                   std::span<const double> rot_re, std::span<const double> rot_im);
ComplexSum project(std::span<const double> row, std::span<const double> re,
                   std::span<const double> im);
void synthesize(std::span<const double> matrix, std::size_t cols,
                std::span<const double> re, std::span<const double> im,
                std::span<double> out_re, std::span<double> out_im);
}  // namespace avx2
#endif

#if defined(QWIRE_BUILD_NEON)
namespace neon {
void phase_advance(std::span<double> re, std::span<double> im,
                   std::span<const double> rot_re, std::span<const double> rot_im);
ComplexSum project(std::span<const double> row, std::span<const double> re,
                   std::span<const double> im);
void synthesize(std::span<const double> matrix, std::size_t cols,
                std::span<const double> re, std::span<const double> im,
                std::span<double> out_re, std::span<double> out_im);
}  // namespace neon
#endif

}  // namespace qwire::kernels
