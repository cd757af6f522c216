#include "qwire/dynamics.hpp"

#include "qwire/error.hpp"
#include "qwire/kernels/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qwire {

namespace {

// Phase rotation by repeated multiplication drifts by ~1 ulp per step;
// exact phases are recomputed this often.
constexpr std::size_t kReseedInterval = 512;

}  // namespace

Propagator::Propagator(const EigenDecomposition& decomp, const WaveFunction& psi0)
    : dim_(decomp.dim()) {
    if (dim_ == 0 || psi0.dim() != dim_) {
        throw Error(ErrorCode::dimension_mismatch,
                    "decomposition has dimension " + std::to_string(dim_) + ", state has " +
                        std::to_string(psi0.dim()));
    }
    lambda_.resize(dim_);
    basis_.resize(dim_ * dim_);
    coef_re_.assign(dim_, 0.0);
    coef_im_.assign(dim_, 0.0);
    for (std::size_t k = 0; k < dim_; ++k) {
        const auto& pair = decomp.pairs[k];
        if (pair.vector.size() != dim_) {
            throw Error(ErrorCode::dimension_mismatch, "eigenvector length differs from dimension");
        }
        lambda_[k] = pair.lambda;
        for (std::size_t j = 0; j < dim_; ++j) {
            basis_[j * dim_ + k] = pair.vector[j];
            coef_re_[k] += pair.vector[j] * psi0.amps[j].real();
            coef_im_[k] += pair.vector[j] * psi0.amps[j].imag();
        }
    }
}

void Propagator::phases_at(double t, std::vector<double>& re, std::vector<double>& im) const {
    re.resize(dim_);
    im.resize(dim_);
    for (std::size_t k = 0; k < dim_; ++k) {
        const double theta = lambda_[k] * t;
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        re[k] = coef_re_[k] * c + coef_im_[k] * s;
        im[k] = coef_im_[k] * c - coef_re_[k] * s;
    }
}

WaveFunction Propagator::state_at(double t) const {
    std::vector<double> z_re, z_im;
    phases_at(t, z_re, z_im);
    std::vector<double> out_re(dim_), out_im(dim_);
    kernels::active().synthesize(basis_, dim_, z_re, z_im, out_re, out_im);
    WaveFunction psi;
    psi.amps.resize(dim_);
    for (std::size_t j = 0; j < dim_; ++j) psi.amps[j] = {out_re[j], out_im[j]};
    return psi;
}

Amplitude Propagator::amplitude_at(std::size_t site, double t) const {
    std::vector<double> z_re, z_im;
    phases_at(t, z_re, z_im);
    const auto s = kernels::active().project(
        std::span<const double>(basis_).subspan(site * dim_, dim_), z_re, z_im);
    return {s.re, s.im};
}

double Propagator::probability_at(std::size_t site, double t) const {
    return std::norm(amplitude_at(site, t));
}

std::vector<double> Propagator::populations() const {
    std::vector<double> out(dim_);
    for (std::size_t k = 0; k < dim_; ++k) {
        out[k] = coef_re_[k] * coef_re_[k] + coef_im_[k] * coef_im_[k];
    }
    return out;
}

Propagator::Stepper::Stepper(const Propagator& owner, double t0, double dt)
    : owner_(&owner), t0_(t0), dt_(dt), t_(t0) {
    const std::size_t d = owner.dim_;
    rot_re_.resize(d);
    rot_im_.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
        rot_re_[k] = std::cos(owner.lambda_[k] * dt);
        rot_im_[k] = -std::sin(owner.lambda_[k] * dt);
    }
    reseed();
}

void Propagator::Stepper::reseed() { owner_->phases_at(t_, z_re_, z_im_); }

void Propagator::Stepper::advance() {
    ++steps_;
    t_ = t0_ + static_cast<double>(steps_) * dt_;
    if (steps_ % kReseedInterval == 0) {
        reseed();
    } else {
        kernels::active().phase_advance(z_re_, z_im_, rot_re_, rot_im_);
    }
}

Amplitude Propagator::Stepper::amplitude(std::size_t site) const {
    const std::size_t d = owner_->dim_;
    const auto s = kernels::active().project(
        std::span<const double>(owner_->basis_).subspan(site * d, d), z_re_, z_im_);
    return {s.re, s.im};
}

void Propagator::Stepper::amplitudes(std::vector<double>& re, std::vector<double>& im) const {
    const std::size_t d = owner_->dim_;
    re.resize(d);
    im.resize(d);
    kernels::active().synthesize(owner_->basis_, d, z_re_, z_im_, re, im);
}

WaveFunction evolve(const EigenDecomposition& decomp, const WaveFunction& psi0, double t) {
    return Propagator(decomp, psi0).state_at(t);
}

ProbabilitySnapshot site_probabilities(const WaveFunction& psi, double t) {
    ProbabilitySnapshot snap;
    snap.t = t;
    snap.p_site.resize(psi.dim());
    for (std::size_t j = 0; j < psi.dim(); ++j) snap.p_site[j] = std::norm(psi.amps[j]);
    for (std::size_t j = 1; j + 1 < psi.dim(); ++j) snap.p_net += snap.p_site[j];
    return snap;
}

std::size_t sample_count(double t_max, double dt) {
    if (!(t_max > 0.0) || !(dt > 0.0) || !std::isfinite(t_max) || !std::isfinite(dt)) {
        throw Error(ErrorCode::invalid_params, "t_max and dt must be positive");
    }
    return static_cast<std::size_t>(std::floor(t_max / dt + 1e-9)) + 1;
}

void scan_probabilities(const WireParams& params, double t_max, double dt, SpectralMethod method,
                        const std::function<void(const ProbabilitySnapshot&)>& sink) {
    const std::size_t samples = sample_count(t_max, dt);
    const auto decomp = eigendecomposition(params, method);
    const Propagator prop(decomp, initial_excitation_state(params));
    auto step = prop.stepper(0.0, dt);
    std::vector<double> re, im;
    ProbabilitySnapshot snap;
    snap.p_site.resize(prop.dim());
    for (std::size_t i = 0; i < samples; ++i) {
        if (i > 0) step.advance();
        step.amplitudes(re, im);
        snap.t = step.time();
        snap.p_net = 0.0;
        for (std::size_t j = 0; j < prop.dim(); ++j) snap.p_site[j] = re[j] * re[j] + im[j] * im[j];
        for (std::size_t j = 1; j + 1 < prop.dim(); ++j) snap.p_net += snap.p_site[j];
        sink(snap);
    }
}

TimeSeries transfer_series(const WireParams& params, double t_max, double dt) {
    validate(params);
    return transfer_series(params, t_max, dt,
                           analytic_regime(params.a) ? SpectralMethod::analytic : SpectralMethod::oracle);
}

TimeSeries transfer_series(const WireParams& params, double t_max, double dt, SpectralMethod method) {
    TimeSeries series;
    scan_probabilities(params, t_max, dt, method, [&](const ProbabilitySnapshot& s) {
        series.times.push_back(s.t);
        series.snapshots.push_back(s);
    });
    return series;
}

double average_fidelity(double fidelity) {
    if (!(fidelity >= -1e-12 && fidelity <= 1.0 + 1e-12)) {
        throw Error(ErrorCode::domain_error, "fidelity must lie in [0, 1]");
    }
    const double f = std::clamp(fidelity, 0.0, 1.0);
    return 1.0 / 3.0 + (1.0 + f) * (1.0 + f) / 6.0;
}

double bell_fidelity(const WaveFunction& psi) {
    if (psi.dim() < 2) throw Error(ErrorCode::dimension_mismatch, "state too short");
    const double s = std::abs(psi.amps.front()) + std::abs(psi.amps.back());
    return 0.5 * s * s;
}

double bell_overlap(const WaveFunction& psi) {
    if (psi.dim() < 2) throw Error(ErrorCode::dimension_mismatch, "state too short");
    return 0.5 * std::norm(psi.amps.front() + psi.amps.back());
}

}  // namespace qwire
