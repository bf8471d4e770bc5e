// Command line front end: solve / verify / analyze / recognize / gen.
// Exit codes: 0 = yes / ok, 1 = no / gate failed / invalid, 2 = input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cograph/analyzer.hpp"
#include "cograph/decomposition.hpp"
#include "cograph/graph_io.hpp"
#include "cograph/oracle.hpp"
#include "cograph/p4.hpp"
#include "cograph/rules.hpp"
#include "cograph/solver.hpp"

namespace {

using namespace cograph;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

Mode parse_mode(const std::string& mode) {
    if (mode == "deletion") return Mode::deletion;
    if (mode == "editing") return Mode::editing;
    throw CLI::ValidationError("--mode", "expected 'deletion' or 'editing'");
}

ExceptionCatalog load_exceptions(const std::string& path) {
    if (path.empty()) return ExceptionCatalog::builtin();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open exception catalog: " + path);
    return ExceptionCatalog::parse(in);
}

nlohmann::ordered_json stats_json(const SearchStats& stats) {
    nlohmann::ordered_json j;
    j["nodes"] = stats.nodes;
    j["max_depth"] = stats.max_depth;
    j["rule_fires"] = nlohmann::ordered_json::object();
    for (const auto& [rule, count] : stats.rule_fires) j["rule_fires"][rule] = count;
    return j;
}

nlohmann::ordered_json certificate_json(const Graph& g, const PairSet& f, Mode mode) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : f) {
        nlohmann::ordered_json e;
        e["u"] = p.u;
        e["v"] = p.v;
        if (mode == Mode::editing) e["op"] = g.has_edge(p.u, p.v) ? "delete" : "add";
        arr.push_back(std::move(e));
    }
    return arr;
}

int cmd_solve(const std::string& path, const std::string& mode_name, std::optional<int> k,
              bool json, const std::string& exceptions_path, int threads) {
    const Mode mode = parse_mode(mode_name);
    const Graph g = read_graph_file(path);
    const ExceptionCatalog exc = load_exceptions(exceptions_path);
    SolveOptions options;
    options.threads = threads;
    options.exceptions = &exc;

    const SolveResult result = k ? solve(g, *k, mode, options) : solve_min(g, mode, options);

    if (json) {
        nlohmann::ordered_json j;
        j["command"] = "solve";
        j["file"] = path;
        j["mode"] = mode_name;
        if (k) j["k"] = *k;
        j["decision"] = result.feasible ? "yes" : "no";
        if (result.feasible) {
            j["k_used"] = result.k_used;
            j["certificate"] = certificate_json(g, result.certificate, mode);
        }
        j["stats"] = stats_json(result.stats);
        std::cout << j.dump(2) << '\n';
    } else {
        if (!result.feasible) {
            std::cout << "no: no " << mode_name << " set of size at most " << (k ? *k : 0)
                      << '\n';
        } else {
            std::cout << "yes: " << mode_name << " set of size " << result.k_used << '\n';
            write_certificate(std::cout, g, result.certificate, mode);
        }
        std::cout << "stats: nodes=" << result.stats.nodes
                  << " max_depth=" << result.stats.max_depth;
        for (const auto& [rule, count] : result.stats.rule_fires)
            std::cout << ' ' << rule << "=" << count;
        std::cout << '\n';
    }
    return result.feasible ? kExitYes : kExitNo;
}

int cmd_verify(const std::string& graph_path, const std::string& cert_path,
               const std::string& mode_name) {
    const Mode mode = parse_mode(mode_name);
    const Graph g = read_graph_file(graph_path);
    const PairSet f = read_pairs_file(cert_path);
    bool valid = false;
    try {
        valid = verify_certificate(g, f, mode);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    std::cout << (valid ? "valid" : "invalid") << ": applying the " << f.size()
              << "-pair set yields " << (valid ? "a cograph" : "a graph with an induced P4")
              << '\n';
    return valid ? kExitYes : kExitNo;
}

int cmd_analyze(const std::string& rule, const std::string& mode_name, bool json,
                const std::string& exceptions_path, int threads) {
    const Mode mode = parse_mode(mode_name);
    const ExceptionCatalog exc = load_exceptions(exceptions_path);
    AnalyzerOptions options;
    options.threads = threads;
    options.exceptions = &exc;

    AnalysisReport report;
    if (rule == "all")
        report = full_report(mode, options);
    else if (rule == "b2")
        report = analyze_b2(mode, options);
    else if (rule == "b3" || rule == "b4")
        report = analyze_b3_b4(mode, options);
    else if (rule == "b5")
        report = analyze_b5(mode, options);
    else
        throw CLI::ValidationError("--rule", "expected one of: all, b2, b3, b4, b5");

    std::cout << (json ? render_json(report) : render_text(report));
    if (!json) std::cout.flush();
    return report.within_bounds ? kExitYes : kExitNo;
}

int cmd_recognize(const std::string& path, bool json) {
    const Graph g = read_graph_file(path);
    const bool cograph = is_cograph(g);
    const bool sparse = is_p4_sparse(g);
    const auto spider = recognize_spider(g);
    const auto deletion_class = classify_rule_free(g, Mode::deletion);
    const auto editing_class = classify_rule_free(g, Mode::editing);

    if (json) {
        nlohmann::ordered_json j;
        j["command"] = "recognize";
        j["file"] = path;
        j["n"] = g.vertex_count();
        j["m"] = g.edge_count();
        j["cograph"] = cograph;
        j["p4_sparse"] = sparse;
        if (spider) {
            j["spider"] = {{"kind", to_string(spider->kind)},
                           {"s", spider->s},
                           {"k", spider->k},
                           {"r", spider->r}};
        } else {
            j["spider"] = nullptr;
        }
        j["rule_free_class"] = {{"deletion", to_string(deletion_class.tag)},
                                {"editing", to_string(editing_class.tag)}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "cograph: " << (cograph ? "yes" : "no") << '\n';
        std::cout << "P4-sparse: " << (sparse ? "yes" : "no") << '\n';
        if (spider) {
            std::cout << "spider: " << to_string(spider->kind) << "  S = {";
            for (std::size_t i = 0; i < spider->s.size(); ++i)
                std::cout << (i ? "," : "") << spider->s[i];
            std::cout << "}  K = {";
            for (std::size_t i = 0; i < spider->k.size(); ++i)
                std::cout << (i ? "," : "") << spider->k[i];
            std::cout << "}  R = {";
            for (std::size_t i = 0; i < spider->r.size(); ++i)
                std::cout << (i ? "," : "") << spider->r[i];
            std::cout << "}\n";
        } else {
            std::cout << "spider: no\n";
        }
        std::cout << "rule-free class (deletion): " << to_string(deletion_class.tag) << '\n';
        std::cout << "rule-free class (editing): " << to_string(editing_class.tag) << '\n';
    }
    return kExitYes;
}

int cmd_gen(int n, double p, std::uint64_t seed, const std::string& out_path) {
    if (n < 0 || p < 0.0 || p > 1.0) throw std::runtime_error("need n >= 0 and p in [0,1]");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    PairSet edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) edges.add(u, v);
    const Graph g = Graph::from_edges(n, edges);
    if (out_path.empty()) {
        write_graph(std::cout, g);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open output file: " + out_path);
        write_graph(out, g);
    }
    return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solver toolkit for cograph edge deletion and editing"};
    app.require_subcommand(1);

    std::string path, cert_path, mode_name = "deletion", exceptions_path, rule = "all",
                out_path;
    std::optional<int> k;
    bool json = false;
    int threads = 1, gen_n = 10;
    double gen_p = 0.5;
    std::uint64_t seed = 1;

    auto* solve_cmd = app.add_subcommand("solve", "decide or minimize a modification set");
    solve_cmd->add_option("file", path, "graph file")->required();
    solve_cmd->add_option("--mode", mode_name, "deletion or editing (default deletion)");
    solve_cmd->add_option("--k", k, "budget; omit for minimum mode");
    solve_cmd->add_flag("--json", json, "JSON output");
    solve_cmd->add_option("--exceptions", exceptions_path, "exception catalog override");
    solve_cmd->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* verify_cmd = app.add_subcommand("verify", "check a certificate file");
    verify_cmd->add_option("file", path, "graph file")->required();
    verify_cmd->add_option("certificate", cert_path, "certificate file")->required();
    verify_cmd->add_option("--mode", mode_name, "deletion or editing (default deletion)");

    auto* analyze_cmd = app.add_subcommand("analyze", "branching-number analysis per rule");
    analyze_cmd->add_option("--rule", rule, "all, b2, b3, b4 or b5 (default all)");
    analyze_cmd->add_option("--mode", mode_name, "deletion or editing (default deletion)");
    analyze_cmd->add_flag("--json", json, "JSON output");
    analyze_cmd->add_option("--exceptions", exceptions_path, "exception catalog override");
    analyze_cmd->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* recognize_cmd = app.add_subcommand("recognize", "structural classification");
    recognize_cmd->add_option("file", path, "graph file")->required();
    recognize_cmd->add_flag("--json", json, "JSON output");

    auto* gen_cmd = app.add_subcommand("gen", "write a random G(n,p) graph file");
    gen_cmd->add_option("--n", gen_n, "vertex count (default 10)");
    gen_cmd->add_option("--p", gen_p, "edge probability (default 0.5)");
    gen_cmd->add_option("--seed", seed, "random seed (default 1)");
    gen_cmd->add_option("--out", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(path, mode_name, k, json, exceptions_path, threads);
        if (verify_cmd->parsed()) return cmd_verify(path, cert_path, mode_name);
        if (analyze_cmd->parsed()) return cmd_analyze(rule, mode_name, json, exceptions_path, threads);
        if (recognize_cmd->parsed()) return cmd_recognize(path, json);
        if (gen_cmd->parsed()) return cmd_gen(gen_n, gen_p, seed, out_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
