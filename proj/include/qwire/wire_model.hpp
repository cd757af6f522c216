// wire_model.hpp: problem parameters, single-excitation basis and H(a).
//
// Sites are indexed 0..n+1: site 0 is the source qubit, sites 1..n the wire,
// site n+1 the destination. Internal couplings are 1 (this sets the energy
// unit); the two end bonds carry the tunable coupling a.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qwire {

struct WireParams {
    int n = 1;        // number of internal wire spins
    double a = 1.0;   // end coupling

    std::size_t dim() const noexcept { return static_cast<std::size_t>(n) + 2; }
    std::size_t destination() const noexcept { return static_cast<std::size_t>(n) + 1; }
    bool even() const noexcept { return n % 2 == 0; }
};

// Throws Error{invalid_params} if n < 1, a < 0 or a is not finite.
void validate(const WireParams& params);

struct TridiagonalHamiltonian {
    std::vector<double> diag;     // length dim, zero for H(a)
    std::vector<double> offdiag;  // length dim-1, bond (k, k+1)

    std::size_t dim() const noexcept { return diag.size(); }

    // Dense row-major copy, mostly for tests and residual checks.
    std::vector<double> dense() const;
};

using Amplitude = std::complex<double>;

struct WaveFunction {
    std::vector<Amplitude> amps;

    std::size_t dim() const noexcept { return amps.size(); }
    double norm_squared() const noexcept;
};

TridiagonalHamiltonian build_hamiltonian(const WireParams& params);

// Excitation localized on the source qubit.
WaveFunction initial_excitation_state(const WireParams& params);

// Excitation localized on an arbitrary site; used for mirror-symmetry checks.
WaveFunction site_excitation_state(const WireParams& params, std::size_t site);

}  // namespace qwire
