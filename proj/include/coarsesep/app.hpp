#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarsesep/graph.hpp"

namespace coarsesep::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUndecided = 2;

/// Parameters of one run. Everything is optional so that a manifest and
/// command-line flags can be layered (flags win).
struct Params {
    std::optional<std::string> command;
    std::optional<std::filesystem::path> graph;
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> mem_cap;
    std::optional<bool> timing;

    std::optional<int> n;           // distort
    std::optional<int> n_min;       // cut-spheres
    std::optional<int> n_max;       // grow, cut-spheres, sep-profile
    std::optional<int> n_min_fit;   // grow
    std::optional<int> t;
    std::optional<std::string> delta;

    std::optional<std::uint32_t> budget;     // heuristic seeds
    std::optional<std::uint32_t> max_pairs;  // far pairs
    std::optional<double> rho;
    std::optional<bool> deep_pairs;

    std::optional<int> r_min;  // persist
    std::optional<int> r_max;
    std::optional<int> t_min;
    std::optional<int> t_max;
    std::optional<std::size_t> pairs;    // persist: random neighbour pairs
    std::optional<std::size_t> max_len;  // persist: word length of the base points

    std::optional<double> delta_hat;  // distort
    std::optional<double> threshold;
    std::optional<std::size_t> sources;
    std::optional<std::size_t> targets;
    std::vector<std::pair<std::string, std::string>> word_pairs;

    std::optional<std::string> format;  // classify: text or json
};

/// Reads a JSON manifest. Relative paths are resolved against `base_dir`.
/// Unknown keys are rejected.
Params parse_manifest(const std::string& text, const std::filesystem::path& base_dir);
/// Fields set in `over` replace those in `base`.
Params merge(Params base, const Params& over);

/// One named output of a command (CSV, dat, JSON or text).
struct Output {
    std::string name;
    std::string content;
};

struct Result {
    int exit_code = kExitOk;
    std::vector<Output> outputs;  // outputs[0] goes to stdout without out_dir
    std::vector<std::string> messages;  // diagnostics for stderr
};

/// Pure command layer: no process-level I/O except reading the graph file.
Result run_command(const std::string& command, const Params& p);

/// JSON classification report (flat verdict keys plus "details").
std::string classify_json(const LabeledGraph& g, int* exit_code = nullptr);
std::string classify_text(const LabeledGraph& g);

/// Full CLI: argument parsing, COARSESEP_MEM_CAP, writing outputs.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coarsesep::app
