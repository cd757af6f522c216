// run.hpp: command configuration and execution behind the qwire CLI.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qwire::cli {

enum class Command { spectrum, evolve, pmax, sweep, predict, bell, figure };
enum class MethodSelector { automatic, analytic, oracle, both };

struct RunConfig {
    Command command = Command::spectrum;
    std::optional<int> n;
    std::optional<double> a;
    std::optional<double> t_max;
    std::optional<double> dt;
    std::optional<double> a_min, a_max;
    std::optional<int> a_steps;
    std::optional<std::vector<int>> n_list;
    MethodSelector method = MethodSelector::automatic;
    std::string out;   // empty: standard output
    unsigned jobs = 1;
    std::string figure;
    bool full = false; // all-site columns (evolve) or eigenvector JSON (spectrum)
};

// Flat key-value JSON mirroring the command-line flags.
nlohmann::json to_json(const RunConfig& config);

// Keys absent from the object keep the values already in `base`.
// Throws Error{config_parse} on unknown keys or wrong types.
RunConfig merge_json(RunConfig base, const nlohmann::json& j);

Command parse_command(const std::string& name);
MethodSelector parse_method(const std::string& name);
std::string to_string(Command c);
std::string to_string(MethodSelector m);

// Throws Error{config_parse} or Error{regime}.
void validate(const RunConfig& config);

// Executes the command. Data goes to config.out (or `out` when empty); JSON
// error records go to `err`. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qwire::cli
