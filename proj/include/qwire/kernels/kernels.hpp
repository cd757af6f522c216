// kernels.hpp: data-parallel inner loops of spectral time propagation.
//
// Complex vectors are stored split (separate real and imaginary arrays) so
// every kernel is a straight streaming loop. Each instruction set provides
// the same three entry points; scalar:: is the reference the others are
// tested against.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace qwire::kernels {

struct ComplexSum {
    double re = 0.0;
    double im = 0.0;
};

// z[k] *= rot[k] (complex, elementwise).
using PhaseAdvanceFn = void (*)(std::span<double> re, std::span<double> im,
                                std::span<const double> rot_re,
                                std::span<const double> rot_im);

// sum_k row[k] * z[k] for a real row and a complex z.
using ProjectFn = ComplexSum (*)(std::span<const double> row,
                                 std::span<const double> re,
                                 std::span<const double> im);

// out[j] = sum_k matrix[j * cols + k] * z[k]; matrix is row-major rows x cols.
using SynthesizeFn = void (*)(std::span<const double> matrix, std::size_t cols,
                              std::span<const double> re, std::span<const double> im,
                              std::span<double> out_re, std::span<double> out_im);

enum class Level { scalar, avx2, neon };

std::string_view to_string(Level level) noexcept;

struct KernelTable {
    Level level = Level::scalar;
    PhaseAdvanceFn phase_advance = nullptr;
    ProjectFn project = nullptr;
    SynthesizeFn synthesize = nullptr;
};

namespace scalar {
void phase_advance(std::span<double> re, std::span<double> im,
                   std::span<const double> rot_re, std::span<const double> rot_im);
ComplexSum project(std::span<const double> row, std::span<const double> re,
                   std::span<const double> im);
void synthesize(std::span<const double> matrix, std::size_t cols,
                std::span<const double> re, std::span<const double> im,
                std::span<double> out_re, std::span<double> out_im);
}  // namespace scalar

// Levels that are both compiled in and supported by the running CPU.
std::vector<Level> available_levels();

// Throws std::invalid_argument if the level is not available.
const KernelTable& kernels_for(Level level);

// Best available level, chosen once at first use.
const KernelTable& active();

// Pin the active level (tests, benchmarking). Not thread-safe against
// concurrent kernel use.
void set_active(Level level);

}  // namespace qwire::kernels
