// qwire: command-line front end.
//
//   qwire spectrum --n 2 --a 1 --method both
//   qwire evolve --n 198 --a 0.01 --t-max 20000 --dt 10 --out fig5a.csv
//   qwire figure --figure fig3 --jobs 4 --out fig3.csv

#include "qwire/error.hpp"
#include "qwire/run.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    using namespace qwire::cli;

    CLI::App app{"Quantum-state transfer through an unmodulated spin chain"};
    std::string command;
    std::string config_path;
    int n = 0;
    double a = 0, t_max = 0, dt = 0, a_min = 0, a_max = 0;
    int a_steps = 0;
    std::vector<int> n_list;
    std::string method, out, figure;
    unsigned jobs = 1;
    bool full = false;

    app.add_option("command", command, "spectrum | evolve | pmax | sweep | predict | bell | figure")->required();
    app.add_option("--config", config_path, "flat JSON file with the same keys as the flags");
    auto* o_n = app.add_option("--n", n, "wire length (internal spins)");
    auto* o_a = app.add_option("--a", a, "end coupling");
    auto* o_tmax = app.add_option("--t-max", t_max, "end of the time window");
    auto* o_dt = app.add_option("--dt", dt, "sampling step");
    auto* o_amin = app.add_option("--a-min", a_min, "a grid start");
    auto* o_amax = app.add_option("--a-max", a_max, "a grid end");
    auto* o_asteps = app.add_option("--a-steps", a_steps, "a grid points");
    auto* o_nlist = app.add_option("--n-list", n_list, "wire lengths for sweeps")->delimiter(',');
    auto* o_method = app.add_option("--method", method, "auto | analytic | oracle | both");
    auto* o_out = app.add_option("--out", out, "output CSV path (default: stdout)");
    auto* o_jobs = app.add_option("--jobs", jobs, "sweep worker threads");
    auto* o_fig = app.add_option("--figure", figure, "fig1 .. fig5");
    auto* o_full = app.add_flag("--full", full, "all-site columns (evolve) or eigenvector JSON (spectrum)");

    CLI11_PARSE(app, argc, argv);

    RunConfig config;
    try {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw qwire::Error(qwire::ErrorCode::config_parse, "cannot read " + config_path);
            nlohmann::json j;
            try {
                f >> j;
            } catch (const nlohmann::json::exception& e) {
                throw qwire::Error(qwire::ErrorCode::config_parse, e.what());
            }
            config = merge_json(config, j);
        }
        config.command = parse_command(command);
        if (*o_n) config.n = n;
        if (*o_a) config.a = a;
        if (*o_tmax) config.t_max = t_max;
        if (*o_dt) config.dt = dt;
        if (*o_amin) config.a_min = a_min;
        if (*o_amax) config.a_max = a_max;
        if (*o_asteps) config.a_steps = a_steps;
        if (*o_nlist) config.n_list = n_list;
        if (*o_method) config.method = parse_method(method);
        if (*o_out) config.out = out;
        if (*o_jobs) config.jobs = jobs;
        if (*o_fig) config.figure = figure;
        if (*o_full) config.full = full;
    } catch (const qwire::Error& e) {
        std::cerr << nlohmann::json{{"code", qwire::to_string(e.code())},
                                    {"message", e.what()},
                                    {"params", nlohmann::json::object()}}
                         .dump()
                  << '\n';
        return 2;
    }
    return run(config, std::cout, std::cerr);
}
