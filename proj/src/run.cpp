#include "qwire/run.hpp"

#include "qwire/asymptotics.hpp"
#include "qwire/dynamics.hpp"
#include "qwire/error.hpp"
#include "qwire/experiments.hpp"
#include "qwire/kernels/kernels.hpp"
#include "qwire/spectral.hpp"
#include "qwire/table.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

namespace qwire::cli {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::config_parse, msg); }

WireParams wire(const RunConfig& c) { return {*c.n, *c.a}; }

SpectralMethod primary_method(const RunConfig& c, const WireParams& p) {
    switch (c.method) {
    case MethodSelector::analytic:
    case MethodSelector::both:
        return SpectralMethod::analytic;
    case MethodSelector::oracle:
        return SpectralMethod::oracle;
    case MethodSelector::automatic:
        break;
    }
    return analytic_regime(p.a) ? SpectralMethod::analytic : SpectralMethod::oracle;
}

json cross_validation_report(const WireParams& p) {
    const auto analytic = analytic_eigendecomposition(p);
    const auto h = build_hamiltonian(p);
    const auto oracle = oracle_eigendecomposition(h);
    const auto cv = compare_decompositions(analytic, oracle);
    return json{{"n", p.n},
                {"a", p.a},
                {"max_abs_dlambda", cv.max_eigenvalue_diff},
                {"max_vector_dev", cv.max_vector_diff},
                {"analytic_count", cv.analytic_count},
                {"oracle_count", cv.oracle_count},
                {"analytic_orthonormality", max_orthonormality_error(analytic)},
                {"analytic_reconstruction", max_reconstruction_error(analytic, h)}};
}

// Resolve every default so the provenance header records the full run.
RunConfig resolved(RunConfig c) {
    auto set_t_max = [&](double fallback) {
        if (!c.t_max) c.t_max = fallback;
    };
    switch (c.command) {
    case Command::evolve:
        set_t_max(150.0);
        if (!c.dt) c.dt = 0.1;
        break;
    case Command::pmax:
    case Command::sweep:
        set_t_max(20000.0);
        break;
    case Command::predict:
    case Command::bell:
        if (c.n && c.a && *c.a > 0.0) set_t_max(1.5 * predict(wire(c)).tau);
        break;
    case Command::spectrum:
    case Command::figure:
        break;
    }
    return c;
}

Table start_table(const RunConfig& c) {
    Table t;
    t.provenance.emplace_back("config", to_json(c).dump());
    t.provenance.emplace_back("kernels", std::string(kernels::to_string(kernels::active().level)));
    return t;
}

void emit_report(const RunConfig& c, std::ostream& data, const json& report) {
    if (c.out.empty()) {
        data << "# crossval=" << report.dump() << '\n';
        return;
    }
    std::ofstream f(c.out + ".report.json");
    if (!f) config_error("cannot open " + c.out + ".report.json");
    f << report.dump(2) << '\n';
}

void run_spectrum(const RunConfig& c, std::ostream& data) {
    const WireParams p = wire(c);
    const auto method = primary_method(c, p);
    const auto decomp = eigendecomposition(p, method);
    Table t = start_table(c);
    t.columns = {"lambda", "gamma", "mu", "v0", "vn1"};
    for (const auto& pair : decomp.pairs) {
        t.add_row({pair.lambda, pair.gamma, pair.parity, pair.vector.front(), pair.vector.back()});
    }
    write_csv(data, t);
    if (c.method == MethodSelector::both) emit_report(c, data, cross_validation_report(p));
    if (c.full) {
        json vectors = json::array();
        for (const auto& pair : decomp.pairs) {
            vectors.push_back({{"lambda", pair.lambda}, {"mu", pair.parity}, {"vector", pair.vector}});
        }
        std::ofstream f(c.out + ".vectors.json");
        if (!f) config_error("cannot open " + c.out + ".vectors.json");
        f << json{{"n", p.n}, {"a", p.a}, {"method", to_string(method)}, {"pairs", vectors}}.dump() << '\n';
    }
}

void run_evolve(const RunConfig& c, std::ostream& data) {
    const WireParams p = wire(c);
    Table header = start_table(c);
    if (c.full) {
        header.columns.push_back("t");
        for (std::size_t j = 0; j < p.dim(); ++j) header.columns.push_back("P" + std::to_string(j));
    } else {
        header.columns = {"t", "P0", "Pend", "Pnet"};
    }
    write_csv(data, header);
    scan_probabilities(p, *c.t_max, *c.dt, primary_method(c, p), [&](const ProbabilitySnapshot& s) {
        data << format_number(s.t);
        if (c.full) {
            for (double x : s.p_site) data << ',' << format_number(x);
        } else {
            data << ',' << format_number(s.p_source()) << ',' << format_number(s.p_destination()) << ','
                 << format_number(s.p_net);
        }
        data << '\n';
    });
    if (c.method == MethodSelector::both) emit_report(c, data, cross_validation_report(p));
}

void run_pmax(const RunConfig& c, std::ostream& data) {
    const WireParams p = wire(c);
    const auto r = max_transfer(p, *c.t_max, primary_method(c, p));
    Table t = start_table(c);
    t.columns = {"n", "a", "t_max", "p_max", "t_at_max", "best_coarse", "refined"};
    t.add_row({r.n, r.a, r.t_max, r.p_max, r.t_at_max, r.best_coarse, r.refined ? 1 : 0});
    write_csv(data, t);
    if (c.method == MethodSelector::both) emit_report(c, data, cross_validation_report(p));
}

std::vector<double> a_values(const RunConfig& c) {
    if (c.a_min || c.a_max || c.a_steps) {
        const double lo = c.a_min.value_or(0.01);
        const double hi = c.a_max.value_or(1.5);
        const int steps = c.a_steps.value_or(150);
        if (steps == 1) return {lo};
        std::vector<double> out;
        for (int i = 0; i < steps; ++i) out.push_back(lo + (hi - lo) * i / (steps - 1));
        return out;
    }
    return {*c.a};
}

void run_sweep(const RunConfig& c, std::ostream& data) {
    const std::vector<int> ns = c.n_list ? *c.n_list : std::vector<int>{*c.n};
    const auto result = sweep(ns, a_values(c), *c.t_max, c.jobs);
    Table t = sweep_table(result);
    const Table head = start_table(c);
    t.provenance = head.provenance;
    write_csv(data, t);
}

void run_predict(const RunConfig& c, std::ostream& data) {
    const WireParams p = wire(c);
    const auto pred = predict(p);
    const auto decomp = eigendecomposition(p, primary_method(c, p));
    const double exact_gap = smallest_positive_eigenvalue(decomp);
    Table t = start_table(c);
    t.columns = {"n", "a", "parity", "lambda_hat_pred", "lambda_hat_exact", "tau_pred", "tau_exact",
                 "p_max", "speed_pred", "delta", "loss_scale", "error"};
    double tau = std::nan("");
    double p_max = std::nan("");
    std::string error;
    try {
        const auto arrival = first_arrival(p, *c.t_max, primary_method(c, p));
        tau = arrival.tau;
        p_max = arrival.p_max;
    } catch (const Error& e) {
        error = std::string(to_string(e.code()));
    }
    t.add_row({p.n, p.a, pred.parity == Parity::even ? "even" : "odd", pred.lambda_hat, exact_gap, pred.tau, tau,
               p_max, pred.speed, pred.delta, pred.fidelity_loss_scale, error});
    write_csv(data, t);
}

void run_bell(const RunConfig& c, std::ostream& data) {
    const WireParams p = wire(c);
    const auto method = primary_method(c, p);
    const auto arrival = first_arrival(p, *c.t_max, method);
    const Propagator prop(eigendecomposition(p, method), initial_excitation_state(p));
    const auto psi = prop.state_at(0.5 * arrival.tau);
    Table t = start_table(c);
    t.columns = {"n", "a", "tau", "t_half", "bell_fidelity", "bell_overlap", "F", "average_fidelity"};
    t.add_row({p.n, p.a, arrival.tau, 0.5 * arrival.tau, bell_fidelity(psi), bell_overlap(psi), arrival.p_at_tau,
               average_fidelity(arrival.p_at_tau)});
    write_csv(data, t);
}

void run_figure(const RunConfig& c, std::ostream& data) {
    FigureOptions o;
    o.n = c.n;
    o.n_list = c.n_list;
    o.a = c.a;
    o.a_min = c.a_min;
    o.a_max = c.a_max;
    o.a_steps = c.a_steps;
    o.t_max = c.t_max;
    o.dt = c.dt;
    o.jobs = c.jobs;
    Table t = figure_data(parse_figure(c.figure), o);
    t.provenance.insert(t.provenance.begin(), {"config", to_json(c).dump()});
    write_csv(data, t);
}

json params_record(const RunConfig& c) {
    json p = json::object();
    p["command"] = to_string(c.command);
    if (c.n) p["n"] = *c.n;
    if (c.a) p["a"] = *c.a;
    return p;
}

}  // namespace

Command parse_command(const std::string& name) {
    if (name == "spectrum") return Command::spectrum;
    if (name == "evolve") return Command::evolve;
    if (name == "pmax") return Command::pmax;
    if (name == "sweep") return Command::sweep;
    if (name == "predict") return Command::predict;
    if (name == "bell") return Command::bell;
    if (name == "figure") return Command::figure;
    config_error("unknown command '" + name + "'");
}

MethodSelector parse_method(const std::string& name) {
    if (name == "auto") return MethodSelector::automatic;
    if (name == "analytic") return MethodSelector::analytic;
    if (name == "oracle") return MethodSelector::oracle;
    if (name == "both") return MethodSelector::both;
    config_error("unknown method '" + name + "'");
}

std::string to_string(Command c) {
    switch (c) {
    case Command::spectrum: return "spectrum";
    case Command::evolve: return "evolve";
    case Command::pmax: return "pmax";
    case Command::sweep: return "sweep";
    case Command::predict: return "predict";
    case Command::bell: return "bell";
    case Command::figure: return "figure";
    }
    return "unknown";
}

std::string to_string(MethodSelector m) {
    switch (m) {
    case MethodSelector::automatic: return "auto";
    case MethodSelector::analytic: return "analytic";
    case MethodSelector::oracle: return "oracle";
    case MethodSelector::both: return "both";
    }
    return "unknown";
}

json to_json(const RunConfig& c) {
    json j;
    j["command"] = to_string(c.command);
    if (c.n) j["n"] = *c.n;
    if (c.a) j["a"] = *c.a;
    if (c.t_max) j["t-max"] = *c.t_max;
    if (c.dt) j["dt"] = *c.dt;
    if (c.a_min) j["a-min"] = *c.a_min;
    if (c.a_max) j["a-max"] = *c.a_max;
    if (c.a_steps) j["a-steps"] = *c.a_steps;
    if (c.n_list) j["n-list"] = *c.n_list;
    j["method"] = to_string(c.method);
    if (!c.out.empty()) j["out"] = c.out;
    j["jobs"] = c.jobs;
    if (!c.figure.empty()) j["figure"] = c.figure;
    j["full"] = c.full;
    return j;
}

RunConfig merge_json(RunConfig c, const json& j) {
    if (!j.is_object()) config_error("config must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "command") c.command = parse_command(value.get<std::string>());
            else if (key == "n") c.n = value.get<int>();
            else if (key == "a") c.a = value.get<double>();
            else if (key == "t-max") c.t_max = value.get<double>();
            else if (key == "dt") c.dt = value.get<double>();
            else if (key == "a-min") c.a_min = value.get<double>();
            else if (key == "a-max") c.a_max = value.get<double>();
            else if (key == "a-steps") c.a_steps = value.get<int>();
            else if (key == "n-list") c.n_list = value.get<std::vector<int>>();
            else if (key == "method") c.method = parse_method(value.get<std::string>());
            else if (key == "out") c.out = value.get<std::string>();
            else if (key == "jobs") c.jobs = value.get<unsigned>();
            else if (key == "figure") c.figure = value.get<std::string>();
            else if (key == "full") c.full = value.get<bool>();
            else config_error("unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        config_error(std::string("bad config value: ") + e.what());
    }
    return c;
}

void validate(const RunConfig& c) {
    const bool needs_single = c.command == Command::spectrum || c.command == Command::evolve ||
                              c.command == Command::pmax || c.command == Command::predict ||
                              c.command == Command::bell;
    if (needs_single && (!c.n || !c.a)) config_error(to_string(c.command) + " needs --n and --a");
    if (c.command == Command::sweep) {
        if (!c.n && !c.n_list) config_error("sweep needs --n or --n-list");
        if (!c.a && !c.a_min && !c.a_max && !c.a_steps) config_error("sweep needs --a or an a grid");
    }
    if (c.command == Command::figure && c.figure.empty()) config_error("figure needs --figure");
    if (c.command == Command::spectrum && c.full && c.out.empty()) {
        config_error("--full for spectrum writes <out>.vectors.json and needs --out");
    }
    if (c.t_max && !(*c.t_max > 0.0)) config_error("--t-max must be positive");
    if (c.dt && !(*c.dt > 0.0)) config_error("--dt must be positive");
    if (c.a_steps && *c.a_steps < 1) config_error("--a-steps must be >= 1");
    if (c.n) validate(WireParams{*c.n, c.a.value_or(0.0)});
    if (c.a && (c.method == MethodSelector::analytic || c.method == MethodSelector::both) &&
        c.command != Command::figure && !analytic_regime(*c.a)) {
        throw Error(ErrorCode::regime, "analytic method needs 0 < a^2 < 2, got a = " + format_number(*c.a));
    }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        const RunConfig c = resolved(config);
        std::ofstream file;
        if (!c.out.empty()) {
            file.open(c.out);
            if (!file) config_error("cannot open output file " + c.out);
        }
        std::ostream& data = c.out.empty() ? out : file;
        switch (c.command) {
        case Command::spectrum: run_spectrum(c, data); break;
        case Command::evolve: run_evolve(c, data); break;
        case Command::pmax: run_pmax(c, data); break;
        case Command::sweep: run_sweep(c, data); break;
        case Command::predict: run_predict(c, data); break;
        case Command::bell: run_bell(c, data); break;
        case Command::figure: run_figure(c, data); break;
        }
        data.flush();
        return 0;
    } catch (const Error& e) {
        err << json{{"code", to_string(e.code())}, {"message", e.what()}, {"params", params_record(config)}}.dump()
            << '\n';
        return e.code() == ErrorCode::config_parse || e.code() == ErrorCode::regime ? 2 : 1;
    } catch (const std::exception& e) {
        err << json{{"code", "internal"}, {"message", e.what()}, {"params", params_record(config)}}.dump() << '\n';
        return 1;
    }
}

}  // namespace qwire::cli
