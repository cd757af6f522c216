#include "qwire/asymptotics.hpp"

#include "qwire/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qwire {

namespace {

constexpr double kZeroModeTolerance = 1e-12;

int end_sign(const Eigenpair& p) {
    const double v0 = p.vector.front();
    const double vn = p.vector.back();
    const double oriented = v0 < 0.0 ? -vn : vn;
    return oriented > 0.0 ? 1 : (oriented < 0.0 ? -1 : 0);
}

}  // namespace

double smallest_positive_eigenvalue(const EigenDecomposition& decomp) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : decomp.pairs) {
        if (p.lambda > kZeroModeTolerance) best = std::min(best, p.lambda);
    }
    if (!std::isfinite(best)) {
        throw Error(ErrorCode::no_positive_eigenvalue, "spectrum has no eigenvalue above 1e-12");
    }
    return best;
}

AsymptoticPrediction predict(const WireParams& params) {
    validate(params);
    if (!(params.a > 0.0)) {
        throw Error(ErrorCode::invalid_params, "predictions need a > 0");
    }
    const double n = params.n;
    const double a = params.a;
    AsymptoticPrediction p;
    p.parity = params.even() ? Parity::even : Parity::odd;
    if (p.parity == Parity::even) {
        p.lambda_hat = a * a;
        p.tau = std::numbers::pi / (2.0 * p.lambda_hat);
    } else {
        p.lambda_hat = 2.0 * a / std::sqrt(n);
        p.tau = std::numbers::pi / p.lambda_hat;
    }
    p.speed = n / p.tau;
    p.delta = a * std::sqrt(n);
    p.fidelity_loss_scale = a * a * n;
    return p;
}

std::vector<Population> eigen_populations(const EigenDecomposition& decomp, const WaveFunction& psi0) {
    if (decomp.dim() != psi0.dim()) {
        throw Error(ErrorCode::dimension_mismatch, "state does not match decomposition");
    }
    std::vector<Population> out;
    out.reserve(decomp.dim());
    for (const auto& p : decomp.pairs) {
        Amplitude overlap{0.0, 0.0};
        for (std::size_t j = 0; j < psi0.dim(); ++j) overlap += p.vector[j] * psi0.amps[j];
        out.push_back({p.lambda, std::norm(overlap)});
    }
    return out;
}

std::vector<Population> dominant_populations(const EigenDecomposition& decomp, const WaveFunction& psi0,
                                             std::size_t k) {
    auto pops = eigen_populations(decomp, psi0);
    std::stable_sort(pops.begin(), pops.end(),
                     [](const Population& x, const Population& y) { return x.population > y.population; });
    pops.resize(std::min(k, pops.size()));
    return pops;
}

ThreeLevelSigns three_level_signs(const EigenDecomposition& decomp) {
    if (decomp.dim() < 3 || decomp.dim() % 2 == 0) {
        throw Error(ErrorCode::not_applicable, "three-level structure needs odd n");
    }
    const Eigenpair* x = nullptr;
    const Eigenpair* y = nullptr;
    const Eigenpair* z = nullptr;
    for (const auto& p : decomp.pairs) {
        if (!z || std::abs(p.lambda) < std::abs(z->lambda)) z = &p;
        if (p.lambda > kZeroModeTolerance && (!x || p.lambda < x->lambda)) x = &p;
        if (p.lambda < -kZeroModeTolerance && (!y || p.lambda > y->lambda)) y = &p;
    }
    if (!x || !y || !z) throw Error(ErrorCode::not_applicable, "spectrum lacks the three central modes");
    return {end_sign(*x), end_sign(*y), end_sign(*z)};
}

}  // namespace qwire
