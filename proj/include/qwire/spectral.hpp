// spectral.hpp: eigendecomposition of H(a), two independent ways.
//
// The analytic route parametrizes every eigenvalue as lambda = 2 cos(gamma)
// where gamma solves one of the two parity branches
//
//     mu * cot(gamma) * cot^mu((n+1) gamma / 2) = a^2 / (2 - a^2),  mu = +-1,
//
// and builds the eigenvector from gamma in closed form. It is valid for
// 0 < a^2 < 2, where all eigenvalues lie inside (-2, 2).
//
// The oracle route diagonalizes the tridiagonal matrix numerically and works
// for every a >= 0. The two are compared by compare_decompositions().

#pragma once

#include "qwire/wire_model.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace qwire {

enum class SpectralMethod { analytic, oracle };

constexpr std::string_view to_string(SpectralMethod m) noexcept {
    return m == SpectralMethod::analytic ? "analytic" : "oracle";
}

struct SpectralRoot {
    double gamma = 0.0;   // in (0, pi)
    int mu = 1;           // parity branch, +1 or -1
    double lambda = 0.0;  // 2 cos(gamma)
};

struct Eigenpair {
    double lambda = 0.0;
    std::vector<double> vector;  // unit norm, vector[0] > 0 when nonzero
    int parity = 1;              // vector[n+1] = parity * vector[0]
    double gamma = 0.0;          // analytic angle; NaN for oracle pairs with |lambda| > 2
};

struct EigenDecomposition {
    std::vector<Eigenpair> pairs;  // ascending lambda
    SpectralMethod method = SpectralMethod::oracle;

    std::size_t dim() const noexcept { return pairs.size(); }
    std::vector<double> eigenvalues() const;
};

// a^2 / (2 - a^2). Throws singular_coupling when |a^2 - 2| < 1e-12.
double rhs_constant(double a);

// f_mu(gamma) = mu cot(gamma) cot^mu((n+1) gamma / 2) - a^2/(2 - a^2).
// At gamma = pi/2 with (n+1)/2 integer the product is 0 * inf; the removable
// limit is returned there. Any other pole throws pole_evaluation.
double characteristic_function(double gamma, int mu, const WireParams& params);

// Pole-free form of f_mu: f_mu multiplied by sin(gamma) sin(m gamma) for
// mu = +1, or by sin(gamma) cos(m gamma) for mu = -1, with m = (n+1)/2.
// Its zeros in (0, pi) are exactly the eigen-angles, including gamma = pi/2
// for odd n, where the multiplier vanishes as well as f's numerator.
double characteristic_numerator(double gamma, int mu, const WireParams& params);

// All n+2 eigen-angles. Requires 0 < a and a^2 < 2.
std::vector<SpectralRoot> solve_gammas(const WireParams& params);

Eigenpair eigenvector_from_root(const SpectralRoot& root, const WireParams& params);

EigenDecomposition analytic_eigendecomposition(const WireParams& params);

// Implicit symmetric QR on the tridiagonal matrix. Works for every a >= 0.
EigenDecomposition oracle_eigendecomposition(const TridiagonalHamiltonian& h);

// True when the analytic route applies: 0 < a^2 < 2.
bool analytic_regime(double a) noexcept;

// Analytic inside the regime, oracle otherwise.
EigenDecomposition eigendecomposition(const WireParams& params);
EigenDecomposition eigendecomposition(const WireParams& params, SpectralMethod method);

struct CrossValidation {
    double max_eigenvalue_diff = 0.0;
    double max_vector_diff = 0.0;  // entrywise, after sign fixing
    std::size_t analytic_count = 0;
    std::size_t oracle_count = 0;
};

CrossValidation compare_decompositions(const EigenDecomposition& lhs,
                                       const EigenDecomposition& rhs);

// Diagnostics used by tests and the CLI.
double max_orthonormality_error(const EigenDecomposition& d);
double max_reconstruction_error(const EigenDecomposition& d, const TridiagonalHamiltonian& h);
double max_residual(const Eigenpair& pair, const TridiagonalHamiltonian& h);

}  // namespace qwire
