#include "qwire/spectral.hpp"

#include "qwire/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qwire {

namespace {

constexpr double kPoleTolerance = 1e-12;

double half_length(const WireParams& params) { return 0.5 * (params.n + 1); }

// Flip the vector so its first entry above 1e-12 in magnitude is positive.
void fix_sign(std::vector<double>& v) {
    for (double x : v) {
        if (std::abs(x) > 1e-12) {
            if (x < 0.0) {
                for (double& y : v) y = -y;
            }
            return;
        }
    }
}

int reflection_parity(const std::vector<double>& v) {
    double s = 0.0;
    const std::size_t d = v.size();
    for (std::size_t j = 0; j < d; ++j) s += v[j] * v[d - 1 - j];
    return s >= 0.0 ? 1 : -1;
}

std::vector<double> scan_points(std::size_t cells) {
    const double pi = std::numbers::pi;
    const double h = pi / static_cast<double>(cells);
    std::vector<double> pts;
    pts.reserve(cells + 64);
    // Geometric refinement toward both ends so roots hugging 0 or pi are
    // still bracketed without ever evaluating at the endpoints themselves.
    for (int k = 30; k >= 1; --k) pts.push_back(h * std::ldexp(1.0, -k));
    for (std::size_t i = 1; i < cells; ++i) pts.push_back(h * static_cast<double>(i));
    for (int k = 1; k <= 30; ++k) pts.push_back(pi - h * std::ldexp(1.0, -k));
    return pts;
}

double bisect(double lo, double hi, double g_lo, int mu, const WireParams& params) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double g_mid = characteristic_numerator(mid, mu, params);
        if (g_mid == 0.0) return mid;
        if ((g_mid < 0.0) == (g_lo < 0.0)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> EigenDecomposition::eigenvalues() const {
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.push_back(p.lambda);
    return out;
}

double rhs_constant(double a) {
    const double a2 = a * a;
    if (std::abs(a2 - 2.0) < 1e-12) {
        throw Error(ErrorCode::singular_coupling, "a^2 = 2 has no characteristic equation");
    }
    return a2 / (2.0 - a2);
}

double characteristic_function(double gamma, int mu, const WireParams& params) {
    validate(params);
    if (mu != 1 && mu != -1) throw Error(ErrorCode::invalid_params, "mu must be +1 or -1");
    const double r = rhs_constant(params.a);
    const double s = std::sin(gamma);
    if (!(gamma > 0.0 && gamma < std::numbers::pi) || std::abs(s) < kPoleTolerance) {
        throw Error(ErrorCode::pole_evaluation, "gamma at a pole of cot(gamma)");
    }
    const double m = half_length(params);
    const double cot_g = std::cos(gamma) / s;
    const double sm = std::sin(m * gamma);
    const double cm = std::cos(m * gamma);
    const double denom = mu == 1 ? sm : cm;
    if (std::abs(denom) < kPoleTolerance) {
        // cot(gamma) vanishes at pi/2 too; the product tends to -1/m there.
        if (std::abs(gamma - 0.5 * std::numbers::pi) < kPoleTolerance) return -1.0 / m - r;
        throw Error(ErrorCode::pole_evaluation, "gamma at a pole of cot^mu((n+1) gamma / 2)");
    }
    const double second = mu == 1 ? cm / sm : sm / cm;
    return mu * cot_g * second - r;
}

double characteristic_numerator(double gamma, int mu, const WireParams& params) {
    // Also scaled by (2 - a^2) > 0 so nothing blows up as a^2 -> 2.
    const double a2 = params.a * params.a;
    const double m = half_length(params);
    const double cg = std::cos(gamma);
    const double sg = std::sin(gamma);
    const double cm = std::cos(m * gamma);
    const double sm = std::sin(m * gamma);
    if (mu == 1) return (2.0 - a2) * cg * cm - a2 * sg * sm;
    return -(2.0 - a2) * cg * sm - a2 * sg * cm;
}

bool analytic_regime(double a) noexcept {
    const double a2 = a * a;
    return a > 0.0 && a2 < 2.0 && std::abs(a2 - 2.0) >= 1e-12;
}

std::vector<SpectralRoot> solve_gammas(const WireParams& params) {
    validate(params);
    rhs_constant(params.a);
    if (!analytic_regime(params.a)) {
        throw Error(ErrorCode::regime, "analytic spectrum needs 0 < a^2 < 2, got a = " + std::to_string(params.a));
    }
    const auto pts = scan_points(20 * params.dim());

    std::vector<SpectralRoot> roots;
    roots.reserve(params.dim());
    for (int mu : {1, -1}) {
        double g_prev = characteristic_numerator(pts.front(), mu, params);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            const double g = characteristic_numerator(pts[i], mu, params);
            double gamma = std::numeric_limits<double>::quiet_NaN();
            if (g == 0.0) {
                gamma = pts[i];
            } else if (g_prev != 0.0 && (g < 0.0) != (g_prev < 0.0)) {
                gamma = bisect(pts[i - 1], pts[i], g_prev, mu, params);
            }
            if (!std::isnan(gamma)) roots.push_back({gamma, mu, 2.0 * std::cos(gamma)});
            g_prev = g;
        }
    }

    std::sort(roots.begin(), roots.end(),
              [](const SpectralRoot& x, const SpectralRoot& y) { return x.gamma < y.gamma; });
    for (std::size_t i = 1; i < roots.size(); ++i) {
        if (roots[i].gamma - roots[i - 1].gamma <= 1e-10) {
            throw Error(ErrorCode::root_count_mismatch, "duplicate eigen-angle at gamma = " +
                                                            std::to_string(roots[i].gamma));
        }
    }
    if (roots.size() != params.dim()) {
        throw Error(ErrorCode::root_count_mismatch,
                    "found " + std::to_string(roots.size()) + " eigen-angles, expected " +
                        std::to_string(params.dim()));
    }
    return roots;
}

Eigenpair eigenvector_from_root(const SpectralRoot& root, const WireParams& params) {
    validate(params);
    const double a = params.a;
    const double a2 = a * a;
    const double g = root.gamma;
    const double cg = std::cos(g);
    const int n = params.n;
    const double c2 = (n + 1) * (2.0 * (1.0 - a2) * cg * cg + 0.5 * a2 * a2) + 2.0 * a2 - a2 * a2;
    if (!(c2 > 0.0)) {
        throw Error(ErrorCode::normalization_failure, "c^2 <= 0 for gamma = " + std::to_string(g));
    }
    const double c = std::sqrt(c2);

    Eigenpair pair;
    pair.lambda = root.lambda;
    pair.gamma = g;
    pair.parity = root.mu;
    pair.vector.resize(params.dim());
    auto& v = pair.vector;
    v[0] = a * std::sin(g) / c;
    for (int k = 1; k <= n; ++k) {
        v[k] = (std::sin((k + 1) * g) + (1.0 - a2) * std::sin((k - 1) * g)) / c;
    }
    v[n + 1] = root.mu * v[0];

    double norm2 = 0.0;
    for (double x : v) norm2 += x * x;
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-6) {
        throw Error(ErrorCode::normalization_failure,
                    "eigenvector norm " + std::to_string(std::sqrt(norm2)) + " at gamma = " +
                        std::to_string(g) + ", mu = " + std::to_string(root.mu));
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& x : v) x *= inv;
    fix_sign(v);
    return pair;
}

EigenDecomposition analytic_eigendecomposition(const WireParams& params) {
    const auto roots = solve_gammas(params);
    EigenDecomposition d;
    d.method = SpectralMethod::analytic;
    d.pairs.reserve(roots.size());
    // Roots are ascending in gamma, hence descending in lambda.
    for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
        d.pairs.push_back(eigenvector_from_root(*it, params));
    }
    return d;
}

EigenDecomposition oracle_eigendecomposition(const TridiagonalHamiltonian& h) {
    const auto dim = static_cast<Eigen::Index>(h.dim());
    if (dim == 0 || h.offdiag.size() + 1 != h.diag.size()) {
        throw Error(ErrorCode::dimension_mismatch, "malformed tridiagonal matrix");
    }
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(h.diag.data(), dim);
    Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(h.offdiag.data(), dim - 1);

    // Implicit symmetric QR with Wilkinson shifts; Eigen caps the sweep
    // count at 30 * dim and reports NoConvergence past that.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::convergence_failure, "tridiagonal QR did not converge");
    }

    EigenDecomposition d;
    d.method = SpectralMethod::oracle;
    d.pairs.resize(h.dim());
    for (Eigen::Index k = 0; k < dim; ++k) {
        auto& p = d.pairs[k];
        p.lambda = solver.eigenvalues()[k];
        p.vector.resize(h.dim());
        for (Eigen::Index j = 0; j < dim; ++j) p.vector[j] = solver.eigenvectors()(j, k);
        fix_sign(p.vector);
        p.parity = reflection_parity(p.vector);
        p.gamma = std::abs(p.lambda) <= 2.0 ? std::acos(0.5 * p.lambda)
                                             : std::numeric_limits<double>::quiet_NaN();
    }
    return d;
}

EigenDecomposition eigendecomposition(const WireParams& params) {
    return analytic_regime(params.a) ? analytic_eigendecomposition(params)
                                     : oracle_eigendecomposition(build_hamiltonian(params));
}

EigenDecomposition eigendecomposition(const WireParams& params, SpectralMethod method) {
    return method == SpectralMethod::analytic ? analytic_eigendecomposition(params)
                                              : oracle_eigendecomposition(build_hamiltonian(params));
}

CrossValidation compare_decompositions(const EigenDecomposition& lhs, const EigenDecomposition& rhs) {
    CrossValidation cv;
    cv.analytic_count = lhs.pairs.size();
    cv.oracle_count = rhs.pairs.size();
    const std::size_t count = std::min(lhs.pairs.size(), rhs.pairs.size());
    for (std::size_t k = 0; k < count; ++k) {
        const auto& x = lhs.pairs[k];
        const auto& y = rhs.pairs[k];
        cv.max_eigenvalue_diff = std::max(cv.max_eigenvalue_diff, std::abs(x.lambda - y.lambda));
        if (x.vector.size() != y.vector.size()) {
            throw Error(ErrorCode::dimension_mismatch, "eigenvector lengths differ");
        }
        double same = 0.0, flipped = 0.0;
        for (std::size_t j = 0; j < x.vector.size(); ++j) {
            same = std::max(same, std::abs(x.vector[j] - y.vector[j]));
            flipped = std::max(flipped, std::abs(x.vector[j] + y.vector[j]));
        }
        cv.max_vector_diff = std::max(cv.max_vector_diff, std::min(same, flipped));
    }
    return cv;
}

double max_orthonormality_error(const EigenDecomposition& d) {
    double worst = 0.0;
    for (std::size_t i = 0; i < d.pairs.size(); ++i) {
        for (std::size_t j = i; j < d.pairs.size(); ++j) {
            double dot = 0.0;
            const auto& u = d.pairs[i].vector;
            const auto& v = d.pairs[j].vector;
            for (std::size_t k = 0; k < u.size(); ++k) dot += u[k] * v[k];
            worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

double max_reconstruction_error(const EigenDecomposition& d, const TridiagonalHamiltonian& h) {
    const std::size_t dim = h.dim();
    if (d.dim() != dim) throw Error(ErrorCode::dimension_mismatch, "decomposition does not match H");
    const auto dense = h.dense();
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            double s = 0.0;
            for (const auto& p : d.pairs) s += p.lambda * p.vector[i] * p.vector[j];
            worst = std::max(worst, std::abs(s - dense[i * dim + j]));
        }
    }
    return worst;
}

double max_residual(const Eigenpair& pair, const TridiagonalHamiltonian& h) {
    const std::size_t dim = h.dim();
    const auto& v = pair.vector;
    if (v.size() != dim) throw Error(ErrorCode::dimension_mismatch, "eigenvector does not match H");
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        double hv = h.diag[i] * v[i];
        if (i > 0) hv += h.offdiag[i - 1] * v[i - 1];
        if (i + 1 < dim) hv += h.offdiag[i] * v[i + 1];
        worst = std::max(worst, std::abs(hv - pair.lambda * v[i]));
    }
    return worst;
}

}  // namespace qwire
