// experiments.hpp: peak search, transfer time, sweeps, scaling fits and
// figure data.

#pragma once

#include "qwire/asymptotics.hpp"
#include "qwire/spectral.hpp"
#include "qwire/table.hpp"
#include "qwire/wire_model.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qwire {

struct PmaxResult {
    int n = 0;
    double a = 0.0;
    double p_max = 0.0;
    double t_at_max = 0.0;
    double t_max = 0.0;       // window is [0, t_max]
    double best_coarse = 0.0; // largest coarse sample
    bool refined = false;
};

// Coarse scan step: min(0.5, pi / (20 lambda_hat_predicted)).
double coarse_step(const WireParams& params);

// Max of P_{n+1}(t) over [0, t_max]: coarse scan, then golden-section
// refinement around the best coarse sample.
PmaxResult max_transfer(const WireParams& params, double t_max);
PmaxResult max_transfer(const WireParams& params, double t_max, SpectralMethod method);

struct TransferTime {
    double tau = 0.0;
    double p_at_tau = 0.0;
    double p_max = 0.0;
};

// First arrival: peak of the first excursion of P_{n+1} above half its
// window maximum. Throws no_transfer if P_{n+1} never exceeds 0.1.
TransferTime first_arrival(const WireParams& params, double t_max);
TransferTime first_arrival(const WireParams& params, double t_max, SpectralMethod method);
double transfer_time(const WireParams& params, double t_max);

struct SweepPoint {
    int n = 0;
    double a = 0.0;
    double t_max = 0.0;
};

struct SweepRow {
    PmaxResult pmax;
    double lambda_hat = 0.0;
    double tau = 0.0;
    std::string error;  // empty on success
};

struct SweepResult {
    std::vector<SweepPoint> grid;
    std::vector<SweepRow> rows;  // same order as grid
};

// Grid is sorted by (n, a); rows come back in that order for any job count.
SweepResult sweep(const std::vector<int>& n_list, const std::vector<double>& a_list,
                  double t_max, unsigned jobs = 1);
SweepResult sweep_points(std::vector<SweepPoint> grid, unsigned jobs = 1);

Table sweep_table(const SweepResult& result);

enum class FitParity { even, odd, mixed };

struct ScalingFit {
    FitParity parity = FitParity::mixed;
    double slope = 0.0;
    double intercept = 0.0;  // natural log of the prefactor
    double r_squared = 0.0;
    int points_used = 0;

    double prefactor() const;
};

// Least squares of log(y) against log(x). Throws insufficient_points (< 4).
ScalingFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

// log(1 - p_max) against log(a^2 n) over rows with a sqrt(n) <= 0.3.
ScalingFit fit_fidelity_scaling(const SweepResult& sweep);

// log(lambda_hat) against log(a) at fixed n.
ScalingFit fit_gap_scaling(int n, const std::vector<double>& a_list);

enum class Figure { fig1, fig2, fig3, fig4, fig5 };

Figure parse_figure(std::string_view name);
std::string_view to_string(Figure f) noexcept;

struct FigureOptions {
    std::optional<int> n;
    std::optional<std::vector<int>> n_list;
    std::optional<double> a;
    std::optional<double> a_min, a_max;
    std::optional<int> a_steps;
    std::optional<double> t_max;
    std::optional<double> dt;
    unsigned jobs = 1;
};

// fig1/fig2: t,a,Pend   fig3: a,Pmax   fig4: a,k,lambda,population
// fig5: n,t,P0,Pend,Pnet. Unset options take the caption defaults.
Table figure_data(Figure figure, const FigureOptions& options);

}  // namespace qwire
