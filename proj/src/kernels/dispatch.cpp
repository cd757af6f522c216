// dispatch.cpp: runtime selection of the kernel set.

#include "kernels_impl.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

namespace qwire::kernels {

namespace {

constexpr KernelTable kScalar{Level::scalar, &scalar::phase_advance, &scalar::project,
                              &scalar::synthesize};

#if defined(QWIRE_BUILD_AVX2)
constexpr KernelTable kAvx2{Level::avx2, &avx2::phase_advance, &avx2::project,
                            &avx2::synthesize};
#endif

#if defined(QWIRE_BUILD_NEON)
constexpr KernelTable kNeon{Level::neon, &neon::phase_advance, &neon::project,
                            &neon::synthesize};
#endif

bool cpu_supports(Level level) {
    switch (level) {
    case Level::scalar:
        return true;
    case Level::avx2:
#if defined(QWIRE_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    case Level::neon:
#if defined(QWIRE_BUILD_NEON)
        return true;  // mandatory on AArch64
#else
        return false;
#endif
    }
    return false;
}

const KernelTable* best_table() {
    for (Level level : {Level::avx2, Level::neon}) {
        if (cpu_supports(level)) return &kernels_for(level);
    }
    return &kScalar;
}

std::atomic<const KernelTable*>& active_slot() {
    static std::atomic<const KernelTable*> slot{best_table()};
    return slot;
}

}  // namespace

std::string_view to_string(Level level) noexcept {
    switch (level) {
    case Level::scalar: return "scalar";
    case Level::avx2: return "avx2";
    case Level::neon: return "neon";
    }
    return "unknown";
}

std::vector<Level> available_levels() {
    std::vector<Level> out;
    for (Level level : {Level::scalar, Level::avx2, Level::neon}) {
        if (cpu_supports(level)) out.push_back(level);
    }
    return out;
}

const KernelTable& kernels_for(Level level) {
    if (!cpu_supports(level)) {
        throw std::invalid_argument("kernel level not available: " + std::string(to_string(level)));
    }
    switch (level) {
    case Level::scalar:
        return kScalar;
#if defined(QWIRE_BUILD_AVX2)
    case Level::avx2:
        return kAvx2;
#endif
#if defined(QWIRE_BUILD_NEON)
    case Level::neon:
        return kNeon;
#endif
    default:
        break;
    }
    throw std::invalid_argument("kernel level not compiled in");
}

const KernelTable& active() { return *active_slot().load(std::memory_order_acquire); }

void set_active(Level level) { active_slot().store(&kernels_for(level), std::memory_order_release); }

}  // namespace qwire::kernels
