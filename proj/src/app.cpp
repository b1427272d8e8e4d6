#include "coarsesep/app.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "coarsesep/cayley.hpp"
#include "coarsesep/classify.hpp"
#include "coarsesep/cuts.hpp"
#include "coarsesep/error.hpp"
#include "coarsesep/graph_io.hpp"
#include "coarsesep/rational.hpp"
#include "coarsesep/word.hpp"

namespace coarsesep::app {

using ordered_json = nlohmann::ordered_json;

// ── manifest ────────────────────────────────────────────────────────────

namespace {

template <class T>
void take(const nlohmann::json& j, const char* key, std::optional<T>& dst) {
    if (!j.contains(key)) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw Error(std::string("malformed manifest: bad value for '") + key + "'");
    }
}

}  // namespace

Params parse_manifest(const std::string& text, const std::filesystem::path& base_dir) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(std::string("malformed manifest: ") + e.what());
    }
    if (!j.is_object()) throw Error("malformed manifest: expected an object");
    static const char* const kKeys[] = {
        "command", "graph", "out_dir", "seed", "mem_cap", "timing", "n", "n_min", "n_max", "n_min_fit", "t",
        "delta", "budget", "max_pairs", "rho", "deep_pairs", "r_min", "r_max", "t_min", "t_max", "pairs",
        "max_len", "delta_hat", "threshold", "sources", "targets", "word_pairs", "format", "comment"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
            throw Error("malformed manifest: unknown key '" + key + "'");
        }
    }
    Params p;
    take(j, "command", p.command);
    std::optional<std::string> graph;
    std::optional<std::string> out_dir;
    take(j, "graph", graph);
    take(j, "out_dir", out_dir);
    if (graph) p.graph = base_dir / *graph;
    if (out_dir) p.out_dir = base_dir / *out_dir;
    take(j, "seed", p.seed);
    take(j, "mem_cap", p.mem_cap);
    take(j, "timing", p.timing);
    take(j, "n", p.n);
    take(j, "n_min", p.n_min);
    take(j, "n_max", p.n_max);
    take(j, "n_min_fit", p.n_min_fit);
    take(j, "t", p.t);
    if (j.contains("delta")) {
        const auto& d = j.at("delta");
        if (d.is_string()) {
            p.delta = d.get<std::string>();
        } else if (d.is_number()) {
            std::ostringstream os;
            os << std::setprecision(6) << d.get<double>();
            p.delta = os.str();
        } else {
            throw Error("malformed manifest: bad value for 'delta'");
        }
    }
    take(j, "budget", p.budget);
    take(j, "max_pairs", p.max_pairs);
    take(j, "rho", p.rho);
    take(j, "deep_pairs", p.deep_pairs);
    take(j, "r_min", p.r_min);
    take(j, "r_max", p.r_max);
    take(j, "t_min", p.t_min);
    take(j, "t_max", p.t_max);
    take(j, "pairs", p.pairs);
    take(j, "max_len", p.max_len);
    take(j, "delta_hat", p.delta_hat);
    take(j, "threshold", p.threshold);
    take(j, "sources", p.sources);
    take(j, "targets", p.targets);
    take(j, "format", p.format);
    if (j.contains("word_pairs")) {
        try {
            for (const auto& pr : j.at("word_pairs")) {
                p.word_pairs.emplace_back(pr.at(0).get<std::string>(), pr.at(1).get<std::string>());
            }
        } catch (const nlohmann::json::exception&) {
            throw Error("malformed manifest: word_pairs must be a list of [word, word]");
        }
    }
    return p;
}

Params merge(Params base, const Params& over) {
    auto set = [](auto& dst, const auto& src) {
        if (src) dst = src;
    };
    set(base.command, over.command);
    set(base.graph, over.graph);
    set(base.out_dir, over.out_dir);
    set(base.seed, over.seed);
    set(base.mem_cap, over.mem_cap);
    set(base.timing, over.timing);
    set(base.n, over.n);
    set(base.n_min, over.n_min);
    set(base.n_max, over.n_max);
    set(base.n_min_fit, over.n_min_fit);
    set(base.t, over.t);
    set(base.delta, over.delta);
    set(base.budget, over.budget);
    set(base.max_pairs, over.max_pairs);
    set(base.rho, over.rho);
    set(base.deep_pairs, over.deep_pairs);
    set(base.r_min, over.r_min);
    set(base.r_max, over.r_max);
    set(base.t_min, over.t_min);
    set(base.t_max, over.t_max);
    set(base.pairs, over.pairs);
    set(base.max_len, over.max_len);
    set(base.delta_hat, over.delta_hat);
    set(base.threshold, over.threshold);
    set(base.sources, over.sources);
    set(base.targets, over.targets);
    set(base.format, over.format);
    if (!over.word_pairs.empty()) base.word_pairs = over.word_pairs;
    return base;
}

// ── classify ────────────────────────────────────────────────────────────

namespace {

struct Entry {
    const char* key;
    std::string value;  // yes / no / undecided / not_applicable
    std::optional<Verdict> verdict;
    std::string error;
};

Entry evaluate(const char* key, const std::function<Verdict()>& fn) {
    Entry e{key, {}, std::nullopt, {}};
    try {
        e.verdict = fn();
        e.value = verdict_word(e.verdict->value);
    } catch (const Error& ex) {
        e.value = "not_applicable";
        e.error = ex.what();
    }
    return e;
}

std::vector<Entry> classify_all(const LabeledGraph& g) {
    return {
        evaluate("hyperbolic", [&] { return is_hyperbolic(g); }),
        evaluate("finite", [&] { return is_finite_group(g); }),
        evaluate("virtually_cyclic", [&] { return is_virtually_cyclic(g); }),
        evaluate("virtual_surface", [&] { return is_virtual_surface(g); }),
        evaluate("one_ended", [&] { return is_one_ended(g); }),
        evaluate("splits_over_finite", [&] { return splits_over_finite(g); }),
        evaluate("splits_over_virtually_cyclic", [&] { return splits_over_virtually_cyclic(g); }),
        evaluate("coarsely_separable_subexp", [&] { return is_coarsely_separable_subexp(g); }),
    };
}

int exit_for(const std::vector<Entry>& entries) {
    for (const auto& e : entries) {
        if (e.value == "undecided") return kExitUndecided;
    }
    return kExitOk;
}

}  // namespace

std::string classify_json(const LabeledGraph& g, int* exit_code) {
    const auto entries = classify_all(g);
    ordered_json j;
    j["vertices"] = g.size();
    j["edges"] = g.edges().size();
    for (const auto& e : entries) j[e.key] = e.value;
    ordered_json details = ordered_json::object();
    for (const auto& e : entries) {
        ordered_json d;
        d["value"] = e.value;
        if (e.verdict) {
            d["witness"] = e.verdict->witness ? ordered_json(e.verdict->witness->to_vector()) : ordered_json(nullptr);
            d["reason"] = e.verdict->reason;
            d["rules"] = e.verdict->rules;
            if (!e.verdict->context.empty()) d["context"] = e.verdict->context;
        } else {
            d["witness"] = nullptr;
            d["reason"] = e.error;
            d["rules"] = ordered_json::array();
        }
        details[e.key] = d;
    }
    j["details"] = details;
    if (exit_code) *exit_code = exit_for(entries);
    return j.dump(2) + "\n";
}

std::string classify_text(const LabeledGraph& g) {
    std::ostringstream os;
    os << "graph: " << g.size() << " vertices, " << g.edges().size() << " edges; labels";
    for (int v = 0; v < g.size(); ++v) os << ' ' << g.label(v).describe();
    os << '\n';
    for (const auto& e : classify_all(g)) {
        os << std::left << std::setw(30) << e.key << std::setw(15) << e.value;
        if (e.verdict) {
            if (e.verdict->witness) os << "witness " << e.verdict->witness->str() << "  ";
            os << e.verdict->reason;
            if (!e.verdict->context.empty()) os << " [" << e.verdict->context << "]";
        } else {
            os << e.error;
        }
        os << '\n';
    }
    return os.str();
}

// ── commands ────────────────────────────────────────────────────────────

namespace {

template <class T>
T need(const std::optional<T>& v, const char* what) {
    if (!v) throw Error(std::string("missing parameter: ") + what);
    return *v;
}

std::uint64_t need_seed(const Params& p) {
    if (!p.seed) throw Error("seed required");
    return *p.seed;
}

CayleyOptions cayley_options(const Params& p) {
    CayleyOptions o;
    if (p.mem_cap) o.mem_cap = *p.mem_cap;
    return o;
}

ExperimentOptions experiment_options(const Params& p, std::uint64_t seed) {
    ExperimentOptions o;
    o.cayley = cayley_options(p);
    o.heuristic.seed = seed;
    o.pairs.seed = seed;
    if (p.budget) o.heuristic.budget = *p.budget;
    if (p.max_pairs) o.pairs.max_pairs = *p.max_pairs;
    if (p.rho) o.pairs.rho = *p.rho;
    if (p.deep_pairs) o.deep_pairs = *p.deep_pairs;
    o.timing = p.timing.value_or(false);
    return o;
}

std::string fmt_double(double x, int precision = 6) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << x;
    return os.str();
}

std::string describe_fit(const LinearFit& f) {
    return "slope " + fmt_double(f.slope) + " r2 " + fmt_double(f.r2) + " stderr " + fmt_double(f.slope_stderr) +
           " points " + std::to_string(f.points);
}

Result cmd_classify(const Params& p) {
    const auto g = load_graph(need(p.graph, "graph"));
    Result r;
    const std::string format = p.format.value_or("json");
    if (format != "json" && format != "text") throw Error("format must be json or text");
    const auto json = classify_json(g, &r.exit_code);
    const auto text = classify_text(g);
    if (format == "json") {
        r.outputs = {{"classify.json", json}, {"classify.txt", text}};
    } else {
        r.outputs = {{"classify.txt", text}, {"classify.json", json}};
    }
    return r;
}

Result cmd_grow(const Params& p) {
    const GraphProduct gp(load_graph(need(p.graph, "graph")));
    const auto table = growth_table(gp, p.n_max.value_or(10), p.n_min_fit.value_or(-1), cayley_options(p));
    Result r;
    r.outputs = {{"growth.csv", growth_csv(table)}};
    r.messages.push_back("fit window [" + std::to_string(table.fit_from) + "," + std::to_string(table.fit_to) +
                         "] alpha_hat " + fmt_double(table.alpha_hat) + " flag " + table.flag);
    if (table.flag != kFlagStabilized) {
        r.messages.push_back("log-linear " + describe_fit(table.exp_fit));
        r.messages.push_back("log-log    " + describe_fit(table.poly_fit));
    }
    return r;
}

std::vector<std::string> classification_notes(const LabeledGraph& g) {
    std::vector<std::string> notes;
    for (const auto& e : classify_all(g)) {
        if (std::string(e.key) == "one_ended" || std::string(e.key) == "coarsely_separable_subexp" ||
            std::string(e.key) == "virtual_surface") {
            notes.push_back(std::string(e.key) + "=" + e.value);
        }
    }
    return notes;
}

Result cmd_cut_spheres(const Params& p) {
    const auto seed = need_seed(p);
    const auto g = load_graph(need(p.graph, "graph"));
    const GraphProduct gp(g);
    const Delta delta = Delta::parse(p.delta.value_or("1/2"));
    auto table = cut_growth_experiment(gp, p.t.value_or(2), delta, p.n_min.value_or(3), p.n_max.value_or(8),
                                       experiment_options(p, seed));
    auto notes = classification_notes(g);
    table.notes.insert(table.notes.begin(), notes.begin(), notes.end());
    Result r;
    r.outputs = {{"cut_spheres.csv", experiment_csv(table)}, {"cut_spheres.dat", experiment_dat(table)}};
    r.messages.push_back("lambda_upper " + describe_fit(table.upper.fit) + " flag " + table.upper.flag);
    r.messages.push_back("lambda_lower " + describe_fit(table.lower.fit) + " flag " + table.lower.flag);
    for (const auto& row : table.rows) {
        if (!row.partition_lemma_ok) r.messages.push_back("partition check failed at n=" + std::to_string(row.n));
    }
    for (const auto& n : table.notes) r.messages.push_back("note: " + n);
    return r;
}

Result cmd_distort(const Params& p) {
    const auto seed = need_seed(p);
    const GraphProduct gp(load_graph(need(p.graph, "graph")));
    DistortionOptions d;
    d.seed = seed;
    if (p.delta_hat) d.delta_hat = *p.delta_hat;
    if (p.threshold) d.threshold = *p.threshold;
    if (p.sources) d.sources = *p.sources;
    if (p.targets) d.targets_per_source = *p.targets;
    for (const auto& [a, b] : p.word_pairs) d.extra_pairs.emplace_back(gp.reduce(parse_word(a)), gp.reduce(parse_word(b)));
    const int t = p.t.value_or(2);
    const auto rep = distortion_report(gp, p.n.value_or(8), t, d, cayley_options(p));
    std::ostringstream os;
    os << "x,y,extrinsic,intrinsic,in_fit\n";
    for (const auto& row : rep.rows) {
        const bool in_fit = row.intrinsic && *row.intrinsic > 0 && row.extrinsic >= rep.threshold;
        os << format_word(row.x) << ',' << format_word(row.y) << ',' << row.extrinsic << ','
           << (row.intrinsic ? std::to_string(*row.intrinsic) : std::string("inf")) << ',' << (in_fit ? 1 : 0)
           << '\n';
    }
    Result r;
    r.outputs = {{"distort.csv", os.str()}};
    r.messages.push_back("threshold " + fmt_double(rep.threshold, 2) + "; mu_hat " + describe_fit(rep.fit));
    r.messages.push_back(std::string("thickened sphere ") + (rep.subgraph_connected ? "connected" : "disconnected"));
    return r;
}

Result cmd_persist(const Params& p) {
    const auto seed = need_seed(p);
    const GraphProduct gp(load_graph(need(p.graph, "graph")));
    const auto pairs = random_neighbor_pairs(gp, p.pairs.value_or(50), seed, p.max_len.value_or(12));
    std::ostringstream os;
    os << "x,y,r,t,size_x,size_y,intersection,ball_t,ratio,contained,ok\n";
    std::size_t violations = 0;
    for (int t = p.t_min.value_or(1); t <= p.t_max.value_or(2); ++t) {
        for (int rr = std::max(p.r_min.value_or(3), t); rr <= p.r_max.value_or(7); ++rr) {
            for (const auto& row : persistence_check(gp, rr, t, pairs, cayley_options(p))) {
                os << format_word(row.x) << ',' << format_word(row.y) << ',' << row.r << ',' << row.t << ','
                   << row.size_x << ',' << row.size_y << ',' << row.intersection << ',' << row.ball_t << ','
                   << fmt_double(row.ratio()) << ',' << (row.contained_in_ball ? 1 : 0) << ',' << (row.ok() ? 1 : 0)
                   << '\n';
                violations += row.ok() ? 0 : 1;
            }
        }
    }
    Result r;
    r.outputs = {{"persist.csv", os.str()}};
    r.messages.push_back("violations " + std::to_string(violations));
    return r;
}

Result cmd_sep_profile(const Params& p) {
    const auto seed = need_seed(p);
    const GraphProduct gp(load_graph(need(p.graph, "graph")));
    const auto opts = experiment_options(p, seed);
    const auto prof = sep_profile_estimate(gp, p.n_max.value_or(6), p.t.value_or(2), opts);
    Result r;
    r.outputs = {{"sep_profile.csv", sep_profile_csv(prof, opts.timing)}};
    r.messages.push_back("epsilon_hat " + fmt_double(prof.epsilon_hat) + " (" + describe_fit(prof.lower_fit) + ")");
    r.messages.push_back("upper series " + describe_fit(prof.upper_fit));
    for (const auto& n : prof.notes) r.messages.push_back("warning: " + n);
    return r;
}

}  // namespace

Result run_command(const std::string& command, const Params& p) {
    if (p.command && *p.command != command) {
        throw Error("manifest is for '" + *p.command + "', not '" + command + "'");
    }
    if (command == "classify") return cmd_classify(p);
    if (command == "grow") return cmd_grow(p);
    if (command == "cut-spheres") return cmd_cut_spheres(p);
    if (command == "distort") return cmd_distort(p);
    if (command == "persist") return cmd_persist(p);
    if (command == "sep-profile") return cmd_sep_profile(p);
    throw Error("unknown command '" + command + "'");
}

// ── process entry ───────────────────────────────────────────────────────

namespace {

std::optional<std::size_t> env_mem_cap() {
    const char* raw = std::getenv("COARSESEP_MEM_CAP");
    if (!raw || !*raw) return std::nullopt;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (*end != '\0' || v == 0) throw Error(std::string("COARSESEP_MEM_CAP must be a positive integer, got '") + raw + "'");
    return static_cast<std::size_t>(v);
}

void write_outputs(const Result& r, const Params& p, std::ostream& out) {
    if (!p.out_dir) {
        if (!r.outputs.empty()) out << r.outputs.front().content;
        return;
    }
    std::filesystem::create_directories(*p.out_dir);
    for (const auto& o : r.outputs) {
        const auto path = *p.out_dir / o.name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error("cannot write " + path.string());
        f << o.content;
    }
}

struct Flags {
    Params p;
    std::string manifest;
    std::string graph;
    std::string out_dir;
    std::vector<std::string> word_pairs;
};

void add_options(CLI::App* sub, Flags& f, const std::string& command) {
    sub->add_option("--manifest", f.manifest, "JSON manifest; flags override its fields");
    sub->add_option("--graph", f.graph, "graph file (JSON)");
    sub->add_option("--out-dir", f.out_dir, "write outputs here instead of stdout");
    sub->add_option("--mem-cap", f.p.mem_cap, "element cap (default: COARSESEP_MEM_CAP or 5000000)");
    if (command == "classify") {
        sub->add_option("--format", f.p.format, "json (default) or text");
        return;
    }
    if (command == "grow") {
        sub->add_option("--n-max", f.p.n_max, "largest radius");
        sub->add_option("--n-min-fit", f.p.n_min_fit, "first radius of the fit window");
        return;
    }
    sub->add_option("--seed", f.p.seed, "random seed (required)");
    sub->add_option("--t", f.p.t, "thickening");
    if (command == "cut-spheres" || command == "sep-profile") {
        sub->add_option("--n-max", f.p.n_max, "largest radius");
        sub->add_option("--budget", f.p.budget, "heuristic sweep seeds");
        sub->add_option("--max-pairs", f.p.max_pairs, "far pairs per flow bound");
        sub->add_option("--rho", f.p.rho, "far-pair distance as a fraction of the diameter");
        sub->add_option("--deep-pairs", f.p.deep_pairs, "terminal balls of radius floor(n/2)");
        sub->add_flag("--timing", f.p.timing, "record runtimes (breaks byte-identical reruns)");
    }
    if (command == "cut-spheres") {
        sub->add_option("--n-min", f.p.n_min, "smallest radius");
        sub->add_option("--delta", f.p.delta, "balance, p/q or decimal");
    }
    if (command == "distort") {
        sub->add_option("--n", f.p.n, "sphere radius");
        sub->add_option("--delta-hat", f.p.delta_hat, "hyperbolicity proxy for the default threshold");
        sub->add_option("--threshold", f.p.threshold, "minimum extrinsic distance entering the fit");
        sub->add_option("--sources", f.p.sources, "random base points");
        sub->add_option("--targets", f.p.targets, "random partners per base point");
        sub->add_option("--pair", f.word_pairs, "extra pair 'WORD|WORD', repeatable");
    }
    if (command == "persist") {
        sub->add_option("--r-min", f.p.r_min, "smallest radius");
        sub->add_option("--r-max", f.p.r_max, "largest radius");
        sub->add_option("--t-min", f.p.t_min, "smallest thickening");
        sub->add_option("--t-max", f.p.t_max, "largest thickening");
        sub->add_option("--pairs", f.p.pairs, "random neighbour pairs");
        sub->add_option("--max-len", f.p.max_len, "syllable budget of the base points");
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App cli{"coarsesep: graph products of finite groups, classification and Cayley-graph cut experiments"};
    cli.require_subcommand(1);
    static const char* const kCommands[] = {"classify", "grow", "cut-spheres", "distort", "persist", "sep-profile"};
    Flags flags;
    for (const char* c : kCommands) add_options(cli.add_subcommand(c, std::string(c) + " command"), flags, c);
    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o;
        std::ostringstream e2;
        const int code = cli.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kExitOk : kExitError;
    }
    try {
        const std::string command = cli.get_subcommands().front()->get_name();
        Params p;
        if (!flags.manifest.empty()) {
            const std::filesystem::path m(flags.manifest);
            p = parse_manifest(read_text_file(m), m.parent_path());
        }
        if (const auto cap = env_mem_cap(); cap && !p.mem_cap) p.mem_cap = cap;
        Params over = flags.p;
        if (!flags.graph.empty()) over.graph = flags.graph;
        if (!flags.out_dir.empty()) over.out_dir = flags.out_dir;
        for (const auto& wp : flags.word_pairs) {
            const auto bar = wp.find('|');
            if (bar == std::string::npos) throw Error("--pair expects 'WORD|WORD'");
            over.word_pairs.emplace_back(wp.substr(0, bar), wp.substr(bar + 1));
        }
        p = merge(std::move(p), over);
        const Result r = run_command(command, p);
        write_outputs(r, p, out);
        for (const auto& m : r.messages) err << m << '\n';
        return r.exit_code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

}  // namespace coarsesep::app
