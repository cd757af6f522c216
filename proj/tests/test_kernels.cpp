#include <doctest.h>

#include "qwire/kernels/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

using namespace qwire::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

std::vector<double> unit_phases(std::mt19937_64& rng, std::size_t n, std::vector<double>& im) {
    std::uniform_real_distribution<double> u(-3.2, 3.2);
    std::vector<double> re(n);
    im.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double th = u(rng);
        re[k] = std::cos(th);
        im[k] = std::sin(th);
    }
    return re;
}

}  // namespace

TEST_CASE("scalar kernels on a hand-worked example") {
    std::vector<double> re{1.0, 0.0}, im{0.0, 2.0};
    const std::vector<double> rr{0.0, 1.0}, ri{1.0, 0.0};
    scalar::phase_advance(re, im, rr, ri);
    CHECK(re == std::vector<double>{0.0, 0.0});
    CHECK(im == std::vector<double>{1.0, 2.0});

    const std::vector<double> row{2.0, -1.0};
    const auto s = scalar::project(row, std::vector<double>{1.0, 3.0}, std::vector<double>{0.5, 0.25});
    CHECK(s.re == -1.0);
    CHECK(s.im == 0.75);
}

TEST_CASE("every available kernel set matches the scalar reference") {
    std::mt19937_64 rng(20050511);
    for (Level level : available_levels()) {
        CAPTURE(to_string(level));
        const KernelTable& k = kernels_for(level);
        CHECK(k.level == level);
        for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 32u, 33u, 67u, 200u, 201u}) {
            CAPTURE(n);
            // phase_advance
            std::vector<double> zi;
            auto zr = unit_phases(rng, n, zi);
            std::vector<double> ri;
            const auto rr = unit_phases(rng, n, ri);
            auto ref_r = zr, ref_i = zi;
            scalar::phase_advance(ref_r, ref_i, rr, ri);
            k.phase_advance(zr, zi, rr, ri);
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(std::abs(zr[j] - ref_r[j]) < 4e-16);
                CHECK(std::abs(zi[j] - ref_i[j]) < 4e-16);
            }

            // project: error bounded by n ulps of the absolute term sum
            const auto row = random_vector(rng, n);
            const auto vr = random_vector(rng, n);
            const auto vi = random_vector(rng, n);
            const auto want = scalar::project(row, vr, vi);
            const auto got = k.project(row, vr, vi);
            double scale = 0.0;
            for (std::size_t j = 0; j < n; ++j) scale += std::abs(row[j]) * (std::abs(vr[j]) + std::abs(vi[j]));
            const double tol = 2.0 * static_cast<double>(n + 1) * 2.2e-16 * std::max(scale, 1.0);
            CHECK(std::abs(got.re - want.re) <= tol);
            CHECK(std::abs(got.im - want.im) <= tol);

            // synthesize on an n x n matrix
            const auto m = random_vector(rng, n * n);
            std::vector<double> a_r(n), a_i(n), b_r(n), b_i(n);
            scalar::synthesize(m, n, vr, vi, a_r, a_i);
            k.synthesize(m, n, vr, vi, b_r, b_i);
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(std::abs(a_r[j] - b_r[j]) <= tol * 2.0);
                CHECK(std::abs(a_i[j] - b_i[j]) <= tol * 2.0);
            }
        }
    }
}

TEST_CASE("repeated phase advance stays on the unit circle") {
    std::mt19937_64 rng(7);
    for (Level level : available_levels()) {
        const KernelTable& k = kernels_for(level);
        std::vector<double> zi, ri;
        auto zr = unit_phases(rng, 37, zi);
        const auto rr = unit_phases(rng, 37, ri);
        for (int step = 0; step < 512; ++step) k.phase_advance(zr, zi, rr, ri);
        for (std::size_t j = 0; j < zr.size(); ++j) CHECK(std::abs(std::hypot(zr[j], zi[j]) - 1.0) < 1e-12);
    }
}

TEST_CASE("dispatch") {
    const auto levels = available_levels();
    REQUIRE(!levels.empty());
    CHECK(levels.front() == Level::scalar);
    const Level best = active().level;
    CHECK(std::find(levels.begin(), levels.end(), best) != levels.end());
    set_active(Level::scalar);
    CHECK(active().level == Level::scalar);
    set_active(best);
    CHECK(active().level == best);
    for (Level level : {Level::avx2, Level::neon}) {
        if (std::find(levels.begin(), levels.end(), level) == levels.end()) {
            CHECK_THROWS_AS(kernels_for(level), std::invalid_argument);
        }
    }
}
