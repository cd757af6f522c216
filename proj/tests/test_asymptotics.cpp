#include <doctest.h>

#include "qwire/asymptotics.hpp"
#include "qwire/error.hpp"

#include <cmath>
#include <numbers>

using namespace qwire;
using std::numbers::pi;

TEST_CASE("smallest_positive_eigenvalue") {
    CHECK(std::abs(smallest_positive_eigenvalue(eigendecomposition({199, 0.01})) / 1.41e-3 - 1.0) < 0.02);
    CHECK(std::abs(smallest_positive_eigenvalue(eigendecomposition({198, 0.01})) / 1e-4 - 1.0) < 0.1);
    CHECK(smallest_positive_eigenvalue(eigendecomposition({2, 1.0})) ==
          doctest::Approx(2.0 * std::cos(2.0 * pi / 5.0)).epsilon(1e-13));
    EigenDecomposition empty;
    empty.pairs.push_back({0.0, {1.0}, 1, pi / 2});
    CHECK_THROWS_AS(smallest_positive_eigenvalue(empty), Error);
}

TEST_CASE("predict") {
    SUBCASE("odd n") {
        const auto pr = predict({199, 0.01});
        CHECK(pr.parity == Parity::odd);
        CHECK(pr.lambda_hat == doctest::Approx(0.02 / std::sqrt(199.0)));
        CHECK(pr.lambda_hat == doctest::Approx(1.4177e-3).epsilon(1e-4));
        CHECK(pr.tau == doctest::Approx(2216.0).epsilon(1e-3));
        CHECK(pr.speed == doctest::Approx(199.0 / pr.tau));
        CHECK(pr.speed == doctest::Approx(2.0 * pr.delta / pi));
    }
    SUBCASE("even n") {
        const auto pr = predict({198, 0.01});
        CHECK(pr.parity == Parity::even);
        CHECK(pr.lambda_hat == doctest::Approx(1e-4));
        CHECK(pr.tau == doctest::Approx(15708.0).epsilon(1e-4));
        CHECK(pr.speed == doctest::Approx(198.0 / pr.tau));
        // n / tau with tau = pi / (2 a^2) is 2 delta^2 / pi.
        CHECK(pr.speed == doctest::Approx(2.0 * pr.delta * pr.delta / pi));
    }
    SUBCASE("definitions") {
        const auto pr = predict({100, 0.05});
        CHECK(pr.delta == doctest::Approx(0.5));
        CHECK(pr.fidelity_loss_scale == doctest::Approx(0.25));
    }
    CHECK_THROWS_AS(predict({10, 0.0}), Error);
    CHECK_THROWS_AS(predict({0, 0.1}), Error);
}

TEST_CASE("dominant populations") {
    SUBCASE("even n: two eigenvectors at +-lambda_hat") {
        const WireParams p{198, 0.01};
        const auto d = eigendecomposition(p);
        const double gap = smallest_positive_eigenvalue(d);
        const auto top = dominant_populations(d, initial_excitation_state(p), 2);
        REQUIRE(top.size() == 2);
        CHECK(top[0].population + top[1].population >= 0.99);
        for (const auto& t : top) {
            CHECK(std::abs(t.population - 0.5) < 0.01);
            CHECK(std::abs(std::abs(t.lambda) - gap) < 1e-12);
        }
    }
    SUBCASE("odd n: zero mode plus +-lambda_hat") {
        const WireParams p{199, 0.01};
        const auto d = eigendecomposition(p);
        const auto top = dominant_populations(d, initial_excitation_state(p), 3);
        REQUIRE(top.size() == 3);
        CHECK(top[0].population + top[1].population + top[2].population >= 0.99);
        CHECK(std::abs(top[0].lambda) < 1e-12);
        CHECK(std::abs(top[0].population - 0.5) < 0.02);
        CHECK(std::abs(top[1].population - 0.25) < 0.02);
        CHECK(std::abs(top[2].population - 0.25) < 0.02);
        CHECK(std::abs(top[1].lambda + top[2].lambda) < 1e-12);
    }
    SUBCASE("completeness") {
        for (auto [n, a] : {std::pair{5, 0.3}, {30, 1.0}, {17, 2.2}}) {
            const WireParams p{n, a};
            const auto all = dominant_populations(eigendecomposition(p), initial_excitation_state(p), p.dim());
            double sum = 0.0;
            for (std::size_t i = 0; i < all.size(); ++i) {
                sum += all[i].population;
                if (i) CHECK(all[i - 1].population >= all[i].population);
            }
            CHECK(std::abs(sum - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("three-level sign pattern for odd n") {
    for (auto [n, a] : {std::pair{199, 0.01}, {9, 0.05}}) {
        const auto s = three_level_signs(eigendecomposition({n, a}));
        CHECK(s.x_end == s.y_end);
        CHECK(s.z_end == -s.x_end);
        CHECK(s.z_opposite());
    }
    try {
        three_level_signs(eigendecomposition({198, 0.01}));
        FAIL("expected not-applicable");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::not_applicable);
    }
}

TEST_CASE("gap scaling exponents") {
    auto slope = [](int n) {
        double xs = 0, ys = 0, xx = 0, xy = 0;
        const double as[] = {0.002, 0.005, 0.01, 0.02};
        for (double a : as) {
            const double x = std::log(a);
            const double y = std::log(smallest_positive_eigenvalue(eigendecomposition({n, a})));
            xs += x; ys += y; xx += x * x; xy += x * y;
        }
        return (4 * xy - xs * ys) / (4 * xx - xs * xs);
    };
    CHECK(std::abs(slope(40) - 2.0) < 0.05);
    CHECK(std::abs(slope(41) - 1.0) < 0.05);
}

TEST_CASE("end amplitudes approach 1/sqrt 2 as a shrinks") {
    const int n = 60;
    double previous = 1.0;
    for (double a : {0.04, 0.02, 0.01, 0.005}) {
        const auto d = eigendecomposition({n, a});
        const double gap = smallest_positive_eigenvalue(d);
        double dev = 0.0;
        for (const auto& pair : d.pairs) {
            if (std::abs(std::abs(pair.lambda) - gap) < 1e-12) {
                dev = std::max(dev, std::abs(pair.vector.front() * pair.vector.front() - 0.5));
            }
        }
        CHECK(dev < previous);
        CHECK(dev <= 2.0 * a * a * n);
        previous = dev;
    }
}

TEST_CASE("prediction tracks the exact gap when a sqrt(n) <= 0.2") {
    for (int n : {20, 21, 100, 101, 198, 199}) {
        for (double delta : {0.05, 0.1, 0.2}) {
            const double a = delta / std::sqrt(static_cast<double>(n));
            const double exact = smallest_positive_eigenvalue(eigendecomposition({n, a}));
            CHECK(std::abs(exact - predict({n, a}).lambda_hat) / exact <= 0.1);
        }
    }
}
