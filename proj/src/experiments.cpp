#include "qwire/experiments.hpp"

#include "qwire/dynamics.hpp"
#include "qwire/error.hpp"
#include "qwire/kernels/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

namespace qwire {

namespace {

constexpr double kGoldenBracket = 1e-7;
constexpr int kGoldenMaxIter = 100;
constexpr double kCandidateMargin = 0.05;
constexpr std::size_t kMaxCandidates = 16;
constexpr double kTieTolerance = 1e-12;

struct Peak {
    double t = 0.0;
    double p = 0.0;
};

// Golden-section search for a maximum of P_site on [lo, hi]; returns the
// best point evaluated.
Peak golden_max(const Propagator& prop, std::size_t site, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto f = [&](double t) { return prop.probability_at(site, t); };
    Peak best{lo, f(lo)};
    auto consider = [&](double t, double p) {
        if (p > best.p) best = {t, p};
    };
    consider(hi, f(hi));
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    consider(x1, f1);
    consider(x2, f2);
    for (int it = 0; it < kGoldenMaxIter && hi - lo > kGoldenBracket; ++it) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
            consider(x1, f1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
            consider(x2, f2);
        }
    }
    return best;
}

struct CoarseScan {
    double dt = 0.0;
    std::vector<double> p;  // P_{n+1}(i dt)
};

CoarseScan coarse_scan(const Propagator& prop, std::size_t site, double t_max, double dt) {
    CoarseScan scan;
    scan.dt = dt;
    const std::size_t samples = sample_count(t_max, dt);
    scan.p.resize(samples);
    auto step = prop.stepper(0.0, dt);
    for (std::size_t i = 0; i < samples; ++i) {
        if (i > 0) step.advance();
        scan.p[i] = std::norm(step.amplitude(site));
    }
    return scan;
}

Peak refine_around(const Propagator& prop, std::size_t site, const CoarseScan& scan, std::size_t i,
                   double t_max) {
    const double t = static_cast<double>(i) * scan.dt;
    const double lo = std::max(0.0, t - scan.dt);
    const double hi = std::min(t_max, t + scan.dt);
    Peak refined = golden_max(prop, site, lo, hi);
    if (refined.p < scan.p[i]) refined = {t, scan.p[i]};
    return refined;
}

struct PointAnalysis {
    PmaxResult pmax;
    CoarseScan scan;
};

PointAnalysis analyze_point(const WireParams& params, const Propagator& prop, double t_max) {
    validate(params);
    if (!(t_max > 0.0)) throw Error(ErrorCode::invalid_params, "t_max must be positive");
    const std::size_t dest = params.destination();
    PointAnalysis out;
    out.scan = coarse_scan(prop, dest, t_max, coarse_step(params));
    const auto& p = out.scan.p;
    const std::size_t best = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
    // Recurrent peaks of equal height land on the grid at different phases,
    // so every coarse local maximum close to the best is refined and the
    // earliest of the tallest wins.
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const bool left = i == 0 || p[i] >= p[i - 1];
        const bool right = i + 1 == p.size() || p[i] >= p[i + 1];
        if (left && right && p[i] >= p[best] - kCandidateMargin) candidates.push_back(i);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t x, std::size_t y) { return p[x] > p[y]; });
    if (candidates.size() > kMaxCandidates) candidates.resize(kMaxCandidates);
    Peak peak = refine_around(prop, dest, out.scan, best, t_max);
    for (std::size_t i : candidates) {
        const Peak c = refine_around(prop, dest, out.scan, i, t_max);
        if (c.p > peak.p + kTieTolerance || (c.p > peak.p - kTieTolerance && c.t < peak.t)) peak = c;
    }
    out.pmax = {params.n, params.a, peak.p, peak.t, t_max, p[best], true};
    return out;
}

TransferTime arrival_from(const WireParams& params, const Propagator& prop, const PointAnalysis& pa) {
    const double p_max = pa.pmax.p_max;
    if (p_max < 0.1) {
        throw Error(ErrorCode::no_transfer, "P_{n+1} stays below 0.1 in [0, " +
                                                format_number(pa.pmax.t_max) + "]");
    }
    const auto& p = pa.scan.p;
    const double threshold = 0.5 * p_max;
    std::size_t i = 0;
    while (i < p.size() && p[i] < threshold) ++i;
    if (i == p.size()) {
        // Only the refined point clears the threshold.
        return {pa.pmax.t_at_max, p_max, p_max};
    }
    std::size_t best = i;
    for (std::size_t j = i; j < p.size() && p[j] >= threshold; ++j) {
        if (p[j] > p[best]) best = j;
    }
    const Peak peak = refine_around(prop, params.destination(), pa.scan, best, pa.pmax.t_max);
    return {peak.t, peak.p, p_max};
}

SpectralMethod default_method(const WireParams& params) {
    return analytic_regime(params.a) ? SpectralMethod::analytic : SpectralMethod::oracle;
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
    if (steps < 1) throw Error(ErrorCode::invalid_params, "grid needs at least one step");
    if (steps == 1) return {lo};
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) out[i] = lo + (hi - lo) * i / (steps - 1);
    return out;
}

FitParity parity_of(const std::vector<int>& ns) {
    const bool all_even = std::all_of(ns.begin(), ns.end(), [](int n) { return n % 2 == 0; });
    const bool all_odd = std::all_of(ns.begin(), ns.end(), [](int n) { return n % 2 != 0; });
    return all_even ? FitParity::even : (all_odd ? FitParity::odd : FitParity::mixed);
}

}  // namespace

double coarse_step(const WireParams& params) {
    validate(params);
    if (!(params.a > 0.0)) return 0.5;
    return std::min(0.5, std::numbers::pi / (20.0 * predict(params).lambda_hat));
}

PmaxResult max_transfer(const WireParams& params, double t_max) {
    validate(params);
    return max_transfer(params, t_max, default_method(params));
}

PmaxResult max_transfer(const WireParams& params, double t_max, SpectralMethod method) {
    const Propagator prop(eigendecomposition(params, method), initial_excitation_state(params));
    return analyze_point(params, prop, t_max).pmax;
}

TransferTime first_arrival(const WireParams& params, double t_max) {
    validate(params);
    return first_arrival(params, t_max, default_method(params));
}

TransferTime first_arrival(const WireParams& params, double t_max, SpectralMethod method) {
    const Propagator prop(eigendecomposition(params, method), initial_excitation_state(params));
    return arrival_from(params, prop, analyze_point(params, prop, t_max));
}

double transfer_time(const WireParams& params, double t_max) { return first_arrival(params, t_max).tau; }

SweepResult sweep(const std::vector<int>& n_list, const std::vector<double>& a_list, double t_max,
                  unsigned jobs) {
    if (n_list.empty() || a_list.empty()) {
        throw Error(ErrorCode::invalid_params, "sweep needs nonempty n and a lists");
    }
    std::vector<SweepPoint> grid;
    for (int n : n_list) {
        for (double a : a_list) grid.push_back({n, a, t_max});
    }
    return sweep_points(std::move(grid), jobs);
}

SweepResult sweep_points(std::vector<SweepPoint> grid, unsigned jobs) {
    if (grid.empty()) throw Error(ErrorCode::invalid_params, "sweep needs at least one point");
    std::stable_sort(grid.begin(), grid.end(), [](const SweepPoint& x, const SweepPoint& y) {
        if (x.n != y.n) return x.n < y.n;
        if (x.a != y.a) return x.a < y.a;
        return x.t_max < y.t_max;
    });
    SweepResult result;
    result.grid = grid;
    result.rows.resize(grid.size());

    auto work = [&](std::size_t i) {
        const SweepPoint& pt = result.grid[i];
        SweepRow& row = result.rows[i];
        row.pmax.n = pt.n;
        row.pmax.a = pt.a;
        row.pmax.t_max = pt.t_max;
        try {
            const WireParams params{pt.n, pt.a};
            validate(params);
            const auto decomp = eigendecomposition(params);
            const Propagator prop(decomp, initial_excitation_state(params));
            const auto analysis = analyze_point(params, prop, pt.t_max);
            row.pmax = analysis.pmax;
            row.lambda_hat = smallest_positive_eigenvalue(decomp);
            row.tau = arrival_from(params, prop, analysis).tau;
        } catch (const Error& e) {
            row.error = std::string(to_string(e.code())) + ": " + e.what();
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(grid.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) work(i);
        return result;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < grid.size(); i = next++) work(i);
        });
    }
    for (auto& t : pool) t.join();
    return result;
}

Table sweep_table(const SweepResult& result) {
    Table t;
    t.columns = {"n", "a", "t_max", "p_max", "t_at_max", "lambda_hat", "tau", "error"};
    for (const auto& row : result.rows) {
        const auto& p = row.pmax;
        t.add_row({p.n, p.a, p.t_max, p.p_max, p.t_at_max, row.lambda_hat, row.tau,
                   row.error.empty() ? std::string{} : "\"" + row.error + "\""});
    }
    return t;
}

double ScalingFit::prefactor() const { return std::exp(intercept); }

ScalingFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw Error(ErrorCode::dimension_mismatch, "x and y differ in length");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    if (lx.size() < 4) {
        throw Error(ErrorCode::insufficient_points,
                    "power-law fit needs >= 4 positive points, got " + std::to_string(lx.size()));
    }
    const double m = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw Error(ErrorCode::degenerate_fit, "all x values coincide");
    ScalingFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    fit.points_used = static_cast<int>(lx.size());
    return fit;
}

ScalingFit fit_fidelity_scaling(const SweepResult& sweep) {
    std::vector<double> x, y;
    std::vector<int> ns;
    bool any_above = false;
    for (const auto& row : sweep.rows) {
        const auto& p = row.pmax;
        if (!row.error.empty() || p.a * std::sqrt(static_cast<double>(p.n)) > 0.3 + 1e-12) continue;
        const double loss = 1.0 - p.p_max;
        if (loss >= 1e-12) any_above = true;
        x.push_back(p.a * p.a * p.n);
        y.push_back(loss);
        ns.push_back(p.n);
    }
    if (x.size() < 4) {
        throw Error(ErrorCode::insufficient_points,
                    "fidelity scaling needs >= 4 small-a points, got " + std::to_string(x.size()));
    }
    if (!any_above) throw Error(ErrorCode::degenerate_fit, "all 1 - p_max below 1e-12");
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] < 1e-12) y[i] = 0.0;  // dropped by the fit
    }
    ScalingFit fit = fit_power_law(x, y);
    fit.parity = parity_of(ns);
    return fit;
}

ScalingFit fit_gap_scaling(int n, const std::vector<double>& a_list) {
    std::vector<double> gaps;
    gaps.reserve(a_list.size());
    for (double a : a_list) gaps.push_back(smallest_positive_eigenvalue(eigendecomposition({n, a})));
    ScalingFit fit = fit_power_law(a_list, gaps);
    fit.parity = n % 2 == 0 ? FitParity::even : FitParity::odd;
    return fit;
}

Figure parse_figure(std::string_view name) {
    if (name == "fig1" || name == "1") return Figure::fig1;
    if (name == "fig2" || name == "2") return Figure::fig2;
    if (name == "fig3" || name == "3") return Figure::fig3;
    if (name == "fig4" || name == "4") return Figure::fig4;
    if (name == "fig5" || name == "5") return Figure::fig5;
    throw Error(ErrorCode::unknown_figure, "unknown figure '" + std::string(name) + "'");
}

std::string_view to_string(Figure f) noexcept {
    switch (f) {
    case Figure::fig1: return "fig1";
    case Figure::fig2: return "fig2";
    case Figure::fig3: return "fig3";
    case Figure::fig4: return "fig4";
    case Figure::fig5: return "fig5";
    }
    return "unknown";
}

Table figure_data(Figure figure, const FigureOptions& o) {
    Table t;
    t.provenance.emplace_back("figure", std::string(to_string(figure)));
    t.provenance.emplace_back("kernels", std::string(kernels::to_string(kernels::active().level)));

    auto a_grid = [&](int default_steps) {
        const double lo = o.a_min.value_or(0.01);
        const double hi = o.a_max.value_or(1.5);
        const int steps = o.a_steps.value_or(default_steps);
        t.provenance.emplace_back("a_min", format_number(lo));
        t.provenance.emplace_back("a_max", format_number(hi));
        t.provenance.emplace_back("a_steps", std::to_string(steps));
        return linear_grid(lo, hi, steps);
    };
    auto wire_length = [&](int fallback) {
        const int n = o.n.value_or(fallback);
        t.provenance.emplace_back("n", std::to_string(n));
        return n;
    };

    switch (figure) {
    case Figure::fig1:
    case Figure::fig2: {
        const int n = wire_length(30);
        const auto as = a_grid(150);
        const double t_max = o.t_max.value_or(150.0);
        const double dt = o.dt.value_or(0.1);
        t.provenance.emplace_back("t_max", format_number(t_max));
        t.provenance.emplace_back("dt", format_number(dt));
        t.columns = {"t", "a", "Pend"};
        for (double a : as) {
            const WireParams params{n, a};
            scan_probabilities(params, t_max, dt, default_method(params),
                               [&](const ProbabilitySnapshot& s) { t.add_row({s.t, a, s.p_destination()}); });
        }
        break;
    }
    case Figure::fig3: {
        const int n = wire_length(30);
        const auto as = a_grid(150);
        const double t_max = o.t_max.value_or(20000.0);
        t.provenance.emplace_back("t_max", format_number(t_max));
        t.columns = {"a", "Pmax"};
        std::vector<SweepPoint> grid;
        for (double a : as) grid.push_back({n, a, t_max});
        const auto result = sweep_points(grid, o.jobs);
        for (const auto& row : result.rows) t.add_row({row.pmax.a, row.pmax.p_max});
        break;
    }
    case Figure::fig4: {
        const int n = wire_length(30);
        const auto as = a_grid(150);
        t.columns = {"a", "k", "lambda", "population"};
        for (double a : as) {
            const WireParams params{n, a};
            const auto decomp = eigendecomposition(params);
            const auto pops = eigen_populations(decomp, initial_excitation_state(params));
            for (std::size_t k = 0; k < pops.size(); ++k) {
                t.add_row({a, static_cast<int>(k), pops[k].lambda, pops[k].population});
            }
        }
        break;
    }
    case Figure::fig5: {
        const double a = o.a.value_or(0.01);
        const auto ns = o.n_list.value_or(std::vector<int>{198, 199});
        const double t_max = o.t_max.value_or(20000.0);
        const double dt = o.dt.value_or(0.1);
        std::string n_text;
        for (int n : ns) n_text += (n_text.empty() ? "" : ";") + std::to_string(n);
        t.provenance.emplace_back("n_list", n_text);
        t.provenance.emplace_back("a", format_number(a));
        t.provenance.emplace_back("t_max", format_number(t_max));
        t.provenance.emplace_back("dt", format_number(dt));
        t.columns = {"n", "t", "P0", "Pend", "Pnet"};
        for (int n : ns) {
            const WireParams params{n, a};
            scan_probabilities(params, t_max, dt, default_method(params), [&](const ProbabilitySnapshot& s) {
                t.add_row({n, s.t, s.p_source(), s.p_destination(), s.p_net});
            });
        }
        break;
    }
    }
    return t;
}

}  // namespace qwire
