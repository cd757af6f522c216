// dynamics.hpp: spectral time propagation and transfer observables.
//
// |Psi(t)> = sum_v exp(-i lambda_v t) |v><v|Psi(0)>. The eigenbasis is real,
// so a Propagator keeps the site-major eigenvector matrix and the complex
// coefficients <v|Psi(0)>; each query is one phase rotation followed by a
// real-matrix times complex-vector synthesis through the active kernels.

#pragma once

#include "qwire/spectral.hpp"
#include "qwire/wire_model.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace qwire {

struct ProbabilitySnapshot {
    double t = 0.0;
    std::vector<double> p_site;  // P_j(t), j = 0..n+1
    double p_net = 0.0;          // sum over the wire sites 1..n

    double p_source() const { return p_site.front(); }
    double p_destination() const { return p_site.back(); }
};

struct TimeSeries {
    std::vector<double> times;
    std::vector<ProbabilitySnapshot> snapshots;
};

class Propagator {
public:
    Propagator(const EigenDecomposition& decomp, const WaveFunction& psi0);

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<double>& eigenvalues() const noexcept { return lambda_; }

    WaveFunction state_at(double t) const;
    Amplitude amplitude_at(std::size_t site, double t) const;
    double probability_at(std::size_t site, double t) const;

    // |<v|Psi(0)>|^2 for every eigenvector, in decomposition order.
    std::vector<double> populations() const;

    // Walks a uniform time grid t0, t0+dt, ... by rotating phases in place,
    // re-seeding the exact phases periodically to bound drift.
    class Stepper {
    public:
        Stepper(const Propagator& owner, double t0, double dt);

        double time() const noexcept { return t_; }
        void advance();

        Amplitude amplitude(std::size_t site) const;
        // Fills all site amplitudes (split storage).
        void amplitudes(std::vector<double>& re, std::vector<double>& im) const;

    private:
        void reseed();

        const Propagator* owner_;
        double t0_;
        double dt_;
        double t_;
        std::size_t steps_ = 0;
        std::vector<double> z_re_, z_im_;
        std::vector<double> rot_re_, rot_im_;
    };

    Stepper stepper(double t0, double dt) const { return Stepper(*this, t0, dt); }

private:
    friend class Stepper;

    void phases_at(double t, std::vector<double>& re, std::vector<double>& im) const;

    std::size_t dim_;
    std::vector<double> lambda_;
    std::vector<double> basis_;  // site-major: basis_[j * dim + k] = v_k[j]
    std::vector<double> coef_re_, coef_im_;
};

// Throws dimension_mismatch when decomp and psi0 disagree.
WaveFunction evolve(const EigenDecomposition& decomp, const WaveFunction& psi0, double t);

ProbabilitySnapshot site_probabilities(const WaveFunction& psi, double t);

// Samples at t = 0, dt, ..., t_max from the source excitation with one
// decomposition. Keeps every site probability.
TimeSeries transfer_series(const WireParams& params, double t_max, double dt);
TimeSeries transfer_series(const WireParams& params, double t_max, double dt,
                           SpectralMethod method);

// Number of grid points 0, dt, ..., t_max. Throws invalid_params unless
// both are positive and finite.
std::size_t sample_count(double t_max, double dt);

// Streams the same samples as transfer_series without storing them.
void scan_probabilities(const WireParams& params, double t_max, double dt, SpectralMethod method,
                        const std::function<void(const ProbabilitySnapshot&)>& sink);

// <F_ab> = 1/3 + (1 + F)^2 / 6.
double average_fidelity(double fidelity);

// Squared overlap with (|0>_0|1>_{n+1} + e^{i phi}|1>_0|0>_{n+1})/sqrt(2),
// maximized over the local phase phi: (|amps[0]| + |amps[n+1]|)^2 / 2.
double bell_fidelity(const WaveFunction& psi);

// Squared overlap with the phi = 0 target: |(amps[0] + amps[n+1]) / sqrt(2)|^2.
double bell_overlap(const WaveFunction& psi);

}  // namespace qwire
