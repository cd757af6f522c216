#include "qwire/wire_model.hpp"

#include "qwire/error.hpp"

#include <cmath>
#include <string>

namespace qwire {

void validate(const WireParams& params) {
    if (params.n < 1) {
        throw Error(ErrorCode::invalid_params, "wire length n must be >= 1, got " + std::to_string(params.n));
    }
    if (!std::isfinite(params.a) || params.a < 0.0) {
        throw Error(ErrorCode::invalid_params, "end coupling a must be finite and >= 0");
    }
}

std::vector<double> TridiagonalHamiltonian::dense() const {
    const std::size_t d = dim();
    std::vector<double> m(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) m[i * d + i] = diag[i];
    for (std::size_t i = 0; i + 1 < d; ++i) {
        m[i * d + i + 1] = offdiag[i];
        m[(i + 1) * d + i] = offdiag[i];
    }
    return m;
}

double WaveFunction::norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& z : amps) s += std::norm(z);
    return s;
}

TridiagonalHamiltonian build_hamiltonian(const WireParams& params) {
    validate(params);
    TridiagonalHamiltonian h;
    h.diag.assign(params.dim(), 0.0);
    h.offdiag.assign(params.dim() - 1, 1.0);
    h.offdiag.front() = params.a;
    h.offdiag.back() = params.a;
    return h;
}

WaveFunction initial_excitation_state(const WireParams& params) {
    return site_excitation_state(params, 0);
}

WaveFunction site_excitation_state(const WireParams& params, std::size_t site) {
    validate(params);
    if (site >= params.dim()) {
        throw Error(ErrorCode::invalid_params, "site index out of range");
    }
    WaveFunction psi;
    psi.amps.assign(params.dim(), Amplitude{0.0, 0.0});
    psi.amps[site] = 1.0;
    return psi;
}

}  // namespace qwire
