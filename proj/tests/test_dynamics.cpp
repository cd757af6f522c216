#include <doctest.h>

#include "oracles.hpp"
#include "qwire/dynamics.hpp"
#include "qwire/error.hpp"
#include "qwire/experiments.hpp"
#include "qwire/kernels/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace qwire;

namespace {

double max_diff(const WaveFunction& x, const WaveFunction& y) {
    double m = 0.0;
    for (std::size_t j = 0; j < x.dim(); ++j) m = std::max(m, std::abs(x.amps[j] - y.amps[j]));
    return m;
}

}  // namespace

TEST_CASE("evolve at t = 0 is the identity") {
    const WireParams p{7, 0.4};
    const auto psi0 = initial_excitation_state(p);
    const auto psi = evolve(eigendecomposition(p), psi0, 0.0);
    CHECK(max_diff(psi, psi0) < 1e-15);
}

TEST_CASE("3-site chain transfers perfectly at t = pi / sqrt 2") {
    const WireParams p{1, 1.0};
    const auto psi = evolve(eigendecomposition(p), initial_excitation_state(p), std::numbers::pi / std::numbers::sqrt2);
    CHECK(std::abs(std::norm(psi.amps[2]) - 1.0) < 1e-10);
}

TEST_CASE("evolve matches the Taylor-series propagator") {
    for (auto [n, a, t] : {std::tuple{1, 1.0, 2.0}, {6, 0.7, 3.7}, {11, 0.2, 12.5}, {9, 2.5, 4.0}}) {
        const WireParams p{n, a};
        const auto psi0 = initial_excitation_state(p);
        const auto got = evolve(eigendecomposition(p), psi0, t);
        const auto want = oracle::taylor_evolve(oracle::chain_matrix(n, a), psi0.amps, t);
        for (std::size_t j = 0; j < p.dim(); ++j) CHECK(std::abs(got.amps[j] - want[j]) < 1e-10);
    }
}

TEST_CASE("time reversal, composition and unitarity") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-500.0, 500.0);
    for (auto [n, a] : {std::pair{4, 0.3}, {13, 1.0}, {50, 0.05}, {21, 1.8}}) {
        const WireParams p{n, a};
        const auto d = eigendecomposition(p);
        const auto psi0 = initial_excitation_state(p);
        for (int rep = 0; rep < 20; ++rep) {
            const double t1 = u(rng), t2 = u(rng);
            const auto forward = evolve(d, psi0, t1);
            CHECK(std::abs(forward.norm_squared() - 1.0) < 1e-12);
            CHECK(max_diff(evolve(d, forward, -t1), psi0) < 1e-10);
            CHECK(max_diff(evolve(d, psi0, t1 + t2), evolve(d, forward, t2)) < 1e-10);
        }
    }
}

TEST_CASE("evolve rejects mismatched dimensions") {
    const auto d = eigendecomposition({4, 0.5});
    try {
        evolve(d, initial_excitation_state({5, 0.5}), 1.0);
        FAIL("expected dimension mismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::dimension_mismatch);
    }
}

TEST_CASE("site_probabilities") {
    const WireParams p{5, 0.5};
    const auto snap0 = site_probabilities(initial_excitation_state(p), 0.0);
    CHECK(snap0.p_site[0] == 1.0);
    CHECK(snap0.p_net == 0.0);

    const auto d = eigendecomposition(p);
    for (double t : {0.7, 13.0, 250.0}) {
        const auto s = site_probabilities(evolve(d, initial_excitation_state(p), t), t);
        double sum = 0.0;
        for (double x : s.p_site) {
            CHECK(x >= 0.0);
            CHECK(x <= 1.0 + 1e-12);
            sum += x;
        }
        CHECK(std::abs(sum - 1.0) < 1e-10);
        CHECK(std::abs(s.p_net - (1.0 - s.p_source() - s.p_destination())) < 1e-10);
    }
}

TEST_CASE("mirror symmetry: source and destination excitations are reflections") {
    const WireParams p{12, 0.45};
    const auto d = eigendecomposition(p);
    const Propagator from_source(d, site_excitation_state(p, 0));
    const Propagator from_dest(d, site_excitation_state(p, p.destination()));
    for (double t = 0.0; t < 60.0; t += 1.7) {
        const auto s = site_probabilities(from_source.state_at(t), t);
        const auto r = site_probabilities(from_dest.state_at(t), t);
        for (std::size_t j = 0; j < p.dim(); ++j) CHECK(std::abs(s.p_site[j] - r.p_site[p.dim() - 1 - j]) < 1e-12);
    }
}

TEST_CASE("analytic and oracle routes give the same dynamics") {
    for (auto [n, a] : {std::pair{10, 0.3}, {31, 1.0}, {64, 0.05}}) {
        const WireParams p{n, a};
        const Propagator pa(eigendecomposition(p, SpectralMethod::analytic), initial_excitation_state(p));
        const Propagator po(eigendecomposition(p, SpectralMethod::oracle), initial_excitation_state(p));
        for (double t = 0.0; t < 3000.0; t += 37.3) {
            CHECK(std::abs(pa.probability_at(p.destination(), t) - po.probability_at(p.destination(), t)) < 1e-7);
        }
    }
}

TEST_CASE("stepper tracks exact phases over long runs") {
    const WireParams p{40, 0.2};
    const Propagator prop(eigendecomposition(p), initial_excitation_state(p));
    auto step = prop.stepper(0.0, 0.37);
    for (int i = 1; i <= 5000; ++i) {
        step.advance();
        if (i % 97 == 0 || i == 511 || i == 512 || i == 513) {
            const auto exact = prop.amplitude_at(p.destination(), step.time());
            CHECK(std::abs(step.amplitude(p.destination()) - exact) < 1e-12);
        }
    }
}

TEST_CASE("dynamics agree across kernel levels") {
    const WireParams p{60, 0.3};
    const kernels::Level best = kernels::active().level;
    auto run = [&] {
        std::vector<double> out;
        scan_probabilities(p, 400.0, 0.5, SpectralMethod::analytic,
                           [&](const ProbabilitySnapshot& s) { out.push_back(s.p_destination()); });
        return out;
    };
    kernels::set_active(kernels::Level::scalar);
    const auto reference = run();
    for (auto level : kernels::available_levels()) {
        kernels::set_active(level);
        const auto got = run();
        REQUIRE(got.size() == reference.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - reference[i]) < 1e-12);
    }
    kernels::set_active(best);
}

TEST_CASE("transfer_series") {
    SUBCASE("layout") {
        const auto s = transfer_series({3, 0.5}, 1.0, 0.25);
        REQUIRE(s.times.size() == 5);
        CHECK(s.times.back() == doctest::Approx(1.0));
        CHECK(std::is_sorted(s.times.begin(), s.times.end()));
        CHECK(s.snapshots.size() == s.times.size());
        CHECK_THROWS_AS(transfer_series({3, 0.5}, 1.0, 0.0), Error);
        CHECK_THROWS_AS(transfer_series({3, 0.5}, -1.0, 0.1), Error);
    }
    SUBCASE("n = 30, a = 1 loses fidelity") {
        const auto s = transfer_series({30, 1.0}, 150.0, 0.1);
        double best = 0.0;
        for (const auto& snap : s.snapshots) best = std::max(best, snap.p_destination());
        CHECK(best < 0.9);
        CHECK(best > 0.1);
    }
    SUBCASE("n = 198 peaks near t = 16000") {
        const auto s = transfer_series({198, 0.01}, 20000.0, 10.0);
        std::size_t arg = 0;
        double wire_max = 0.0;
        for (std::size_t i = 0; i < s.snapshots.size(); ++i) {
            if (s.snapshots[i].p_destination() > s.snapshots[arg].p_destination()) arg = i;
            wire_max = std::max(wire_max, s.snapshots[i].p_net);
        }
        CHECK(std::abs(s.times[arg] / 16000.0 - 1.0) < 0.1);
        CHECK(wire_max < 0.05);
    }
    SUBCASE("n = 199 peaks near t = 2200") {
        const auto s = transfer_series({199, 0.01}, 4000.0, 2.0);
        std::size_t arg = 0;
        for (std::size_t i = 0; i < s.snapshots.size(); ++i) {
            if (s.snapshots[i].p_destination() > s.snapshots[arg].p_destination()) arg = i;
        }
        CHECK(std::abs(s.times[arg] / 2200.0 - 1.0) < 0.1);
    }
}

TEST_CASE("average_fidelity") {
    CHECK(average_fidelity(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(average_fidelity(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(average_fidelity(0.5) == doctest::Approx(0.7083333333333333).epsilon(1e-15));
    CHECK(average_fidelity(1.0 + 1e-13) == doctest::Approx(1.0));
    CHECK_THROWS_AS(average_fidelity(1.1), Error);
    CHECK_THROWS_AS(average_fidelity(-0.01), Error);
}

TEST_CASE("bell measures") {
    const WireParams p{3, 0.2};
    const auto psi0 = initial_excitation_state(p);
    CHECK(bell_fidelity(psi0) == doctest::Approx(0.5));
    CHECK(bell_overlap(psi0) == doctest::Approx(0.5));

    WaveFunction bell;
    bell.amps.assign(p.dim(), 0.0);
    bell.amps.front() = bell.amps.back() = 1.0 / std::numbers::sqrt2;
    CHECK(bell_fidelity(bell) == doctest::Approx(1.0));
    CHECK(bell_overlap(bell) == doctest::Approx(1.0));

    // A local phase on the destination qubit leaves the entanglement intact
    // but rotates away from the phi = 0 target.
    bell.amps.back() = Amplitude{0.0, -1.0 / std::numbers::sqrt2};
    CHECK(bell_fidelity(bell) == doctest::Approx(1.0));
    CHECK(bell_overlap(bell) == doctest::Approx(0.5));
}

TEST_CASE("even chain is close to a Bell pair at half the transfer time") {
    const WireParams p{198, 0.01};
    const double tau = transfer_time(p, 20000.0);
    const auto psi = evolve(eigendecomposition(p), initial_excitation_state(p), 0.5 * tau);
    CHECK(bell_fidelity(psi) >= 0.95);
    CHECK(site_probabilities(psi, 0.5 * tau).p_net < 0.05);
}
