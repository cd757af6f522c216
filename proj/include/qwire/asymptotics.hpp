// asymptotics.hpp: leading-order small-a predictions and the quantities
// they are compared against.

#pragma once

#include "qwire/spectral.hpp"
#include "qwire/wire_model.hpp"

#include <cstddef>
#include <vector>

namespace qwire {

enum class Parity { even, odd };

struct AsymptoticPrediction {
    Parity parity = Parity::even;
    double lambda_hat = 0.0;           // a^2 (even n) or 2a/sqrt(n) (odd n)
    double tau = 0.0;                  // pi/(2 lambda_hat) or pi/lambda_hat
    double speed = 0.0;                // n / tau
    double delta = 0.0;                // a sqrt(n)
    double fidelity_loss_scale = 0.0;  // a^2 n
};

// Smallest eigenvalue above 1e-12 (skips the odd-n zero mode).
double smallest_positive_eigenvalue(const EigenDecomposition& decomp);

AsymptoticPrediction predict(const WireParams& params);

struct Population {
    double lambda = 0.0;
    double population = 0.0;
};

// |<v|psi0>|^2 for every eigenvector, ascending lambda.
std::vector<Population> eigen_populations(const EigenDecomposition& decomp,
                                          const WaveFunction& psi0);

// Top k by population, descending.
std::vector<Population> dominant_populations(const EigenDecomposition& decomp,
                                             const WaveFunction& psi0, std::size_t k);

struct ThreeLevelSigns {
    int x_end = 0;  // sign of v_{n+1} at +lambda_hat
    int y_end = 0;  // at -lambda_hat
    int z_end = 0;  // at lambda = 0
    bool z_opposite() const noexcept { return z_end != 0 && x_end == -z_end && y_end == -z_end; }
};

// Odd n only; throws not_applicable for even n.
ThreeLevelSigns three_level_signs(const EigenDecomposition& decomp);

}  // namespace qwire
