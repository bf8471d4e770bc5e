#include "cograph/analyzer.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "cograph/p4.hpp"
#include "cograph/small_graph.hpp"

namespace cograph {
namespace {

constexpr double kGateTolerance = 1e-3;

std::string mask_label(unsigned mask) {
    static const char* names = "abcd";
    std::string out = "{";
    for (int b = 0; b < 4; ++b)
        if (mask >> b & 1) {
            if (out.size() > 1) out += ',';
            out += names[b];
        }
    return out + "}";
}

unsigned reverse_mask(unsigned mask) {
    // path reversal a<->d, b<->c
    unsigned out = 0;
    if (mask & 1) out |= 8;
    if (mask & 2) out |= 4;
    if (mask & 4) out |= 2;
    if (mask & 8) out |= 1;
    return out;
}

std::vector<unsigned> class_masks(VertexClass c) {
    std::vector<unsigned> out;
    for (unsigned m = 0; m < 16; ++m) {
        const int pop = __builtin_popcount(m);
        const bool in_p = pop >= 1 && pop <= 3;
        const bool keep = (c == VertexClass::p && in_p) || (c == VertexClass::t && pop == 4) ||
                          (c == VertexClass::i && pop == 0) ||
                          (c == VertexClass::i_or_p && (pop == 0 || in_p)) ||
                          (c == VertexClass::t_or_p && (pop == 4 || in_p));
        if (keep) out.push_back(m);
    }
    return out;
}

// Configuration graph: a..d = 0..3 with the path, extras start at 4;
// a_masks[i] gives the A-adjacency of extra i, internal_edges the pairs
// among the extras.
Graph build_config(const std::vector<unsigned>& a_masks,
                   const std::vector<std::pair<int, int>>& internal_edges) {
    const int extras = static_cast<int>(a_masks.size());
    PairSet es{{0, 1}, {1, 2}, {2, 3}};
    for (int i = 0; i < extras; ++i)
        for (int b = 0; b < 4; ++b)
            if (a_masks[i] >> b & 1) es.add(b, 4 + i);
    for (const auto& [i, j] : internal_edges) es.add(4 + i, 4 + j);
    return Graph::from_edges(4 + extras, es);
}

struct PendingConfig {
    Graph graph;
    std::string description;
};

// Would a rule that outranks `family` fire inside the configuration at the
// fixed path 0-1-2-3? Such configurations never reach the analyzed rule.
bool higher_priority_rule_fires(const std::string& family, const Graph& g, Mode mode,
                                const ExceptionCatalog& exc, CatalogCache* cache) {
    if (family == "B2") return false;
    const auto ctx = p4_context(g, P4Witness{0, 1, 2, 3});
    if (match_b2(g, ctx, mode, exc, cache)) return true;
    if (family == "B3") return false;
    if (match_b3(g, ctx, mode, cache)) return true;
    if (family == "B4") return false;
    if (match_b4(g, ctx, mode, exc, cache)) return true;
    return false;  // B5
}

RuleReport evaluate_rule(const std::string& family, Mode mode,
                         const std::vector<PendingConfig>& pending,
                         const AnalyzerOptions& options) {
    RuleReport report;
    report.rule = family;
    report.bound = rule_bound(family, mode);
    report.configs.resize(pending.size());

    const ExceptionCatalog& exc =
        options.exceptions ? *options.exceptions : ExceptionCatalog::builtin();
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int workers = std::min<int>(static_cast<int>(pending.size()),
                                      options.threads == 0 ? static_cast<int>(hw)
                                                           : std::max(1, options.threads));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < pending.size(); i = next.fetch_add(1)) {
            const Graph& g = pending[i].graph;
            ConfigReport& cfg = report.configs[i];
            cfg.description = pending[i].description;
            cfg.x_size = g.vertex_count();
            const BranchCatalog minimized = fmin(g, mode, options.cache);
            const BranchCatalog whole = whole_graph_catalog(g, mode, options.cache);
            const BranchCatalog& engine_catalog = mode == Mode::deletion ? minimized : whole;
            cfg.chosen_size = static_cast<int>(engine_catalog.chosen_subgraph.size());
            cfg.branch_vector = engine_catalog.branch_vector;
            cfg.number = engine_catalog.number;
            cfg.minimized_number = minimized.number;
            cfg.whole_number = whole.number;
            cfg.reachable = !higher_priority_rule_fires(family, g, mode, exc, options.cache);
        }
    };
    if (workers > 1) {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    } else {
        work();
    }

    for (const auto& cfg : report.configs) {
        if (cfg.number > report.worst_number) {
            report.worst_number = cfg.number;
            report.worst_vector = cfg.branch_vector;
            report.worst_description = cfg.description;
        }
        if (cfg.reachable && cfg.number > report.worst_number_reachable) {
            report.worst_number_reachable = cfg.number;
            report.worst_vector_reachable = cfg.branch_vector;
            report.worst_description_reachable = cfg.description;
        }
        report.worst_minimized_number = std::max(report.worst_minimized_number, cfg.minimized_number);
        report.worst_whole_number = std::max(report.worst_whole_number, cfg.whole_number);
    }
    return report;
}

std::vector<PendingConfig> b2_configs(Mode mode, const ExceptionCatalog& exc) {
    std::vector<PendingConfig> out;
    std::set<std::uint64_t> seen;
    const bool apply_exceptions = mode == Mode::deletion || exc.exceptions_apply_in_editing;
    const auto exception_codes = exc.b2_codes();
    for (unsigned p_mask : p_other_classes()) {
        for (unsigned q_mask = 0; q_mask < 16; ++q_mask) {
            const int pop = __builtin_popcount(q_mask);
            if (pop == 0 || pop == 4) continue;  // p' must lie in P(A)
            for (int pq = 0; pq <= 1; ++pq) {
                std::vector<std::pair<int, int>> internal;
                if (pq) internal.emplace_back(0, 1);
                Graph g = build_config({p_mask, q_mask}, internal);
                if (apply_exceptions) {
                    const auto code = canonical_code(g);
                    if (std::find(exception_codes.begin(), exception_codes.end(), code) !=
                        exception_codes.end())
                        continue;
                }
                if (!seen.insert(canonical_code(g).value).second) continue;
                std::ostringstream desc;
                desc << "Np=" << mask_label(p_mask) << " Np'=" << mask_label(q_mask)
                     << " pp'=" << (pq ? "edge" : "none");
                out.push_back({std::move(g), desc.str()});
            }
        }
    }
    return out;
}

std::vector<PendingConfig> b3_configs() {
    std::vector<PendingConfig> out;
    std::set<std::uint64_t> seen;
    for (unsigned p_mask : p_other_classes()) {
        Graph g = build_config({p_mask, 15u}, {});  // t complete to A, p-t absent
        if (!seen.insert(canonical_code(g).value).second) continue;
        out.push_back({std::move(g), "Np=" + mask_label(p_mask) + " t complete, p!~t"});
    }
    return out;
}

std::vector<PendingConfig> b4_configs(Mode mode, const ExceptionCatalog& exc) {
    std::vector<PendingConfig> out;
    std::set<std::uint64_t> seen;
    const bool apply_exceptions = mode == Mode::deletion || exc.exceptions_apply_in_editing;
    const auto exception_code = exc.b4_code();
    for (unsigned p_mask : p_other_classes()) {
        Graph g = build_config({p_mask, 0u}, {{0, 1}});  // i isolated from A, p~i
        if (apply_exceptions && canonical_code(g) == exception_code) continue;
        if (!seen.insert(canonical_code(g).value).second) continue;
        out.push_back({std::move(g), "Np=" + mask_label(p_mask) + " i isolated, p~i"});
    }
    return out;
}

std::vector<PendingConfig> b5_configs() {
    std::vector<PendingConfig> out;
    std::set<std::uint64_t> seen;
    static constexpr int pair_idx[6][2] = {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};
    for (int case_no = 1; case_no <= 14; ++case_no) {
        const auto& spec = b5_cases()[case_no - 1];
        const int b = spec.b_size;
        const int pair_count = b == 3 ? 3 : 6;
        std::vector<int> free_pairs;
        for (int k = 0; k < pair_count; ++k)
            if (spec.pattern[k] == 0) free_pairs.push_back(k);

        std::vector<std::vector<unsigned>> role_masks;
        for (int i = 0; i < b; ++i) role_masks.push_back(class_masks(spec.roles[i]));

        std::vector<std::size_t> idx(b, 0);
        while (true) {
            std::vector<unsigned> a_masks(b);
            for (int i = 0; i < b; ++i) a_masks[i] = role_masks[i][idx[i]];
            for (unsigned free = 0; free < (1u << free_pairs.size()); ++free) {
                std::vector<std::pair<int, int>> internal;
                for (int k = 0; k < pair_count; ++k) {
                    bool present = spec.pattern[k] == 1;
                    const auto it = std::find(free_pairs.begin(), free_pairs.end(), k);
                    if (it != free_pairs.end())
                        present = free >> (it - free_pairs.begin()) & 1;
                    if (present) internal.emplace_back(pair_idx[k][0], pair_idx[k][1]);
                }
                Graph g = build_config(a_masks, internal);
                if (!seen.insert(canonical_code(g).value).second) continue;
                std::ostringstream desc;
                desc << "case " << case_no;
                for (int i = 0; i < b; ++i) desc << " N" << i << "=" << mask_label(a_masks[i]);
                desc << " E=";
                for (const auto& [x, y] : internal) desc << "(" << x << y << ")";
                if (internal.empty()) desc << "none";
                out.push_back({std::move(g), desc.str()});
            }
            int pos = b - 1;
            while (pos >= 0 && ++idx[pos] == role_masks[pos].size()) idx[pos--] = 0;
            if (pos < 0) break;
        }
    }
    return out;
}

RuleReport b1_baseline(Mode mode, const AnalyzerOptions& options) {
    RuleReport report;
    report.rule = "B1";
    report.bound = rule_bound("B1", mode);
    for (const auto& [name, g] : p4_sparse_obstructions()) {
        ConfigReport cfg;
        cfg.description = name;
        cfg.x_size = g.vertex_count();
        // the classic rule branches on the whole five-vertex family
        const BranchCatalog whole = whole_graph_catalog(g, mode, options.cache);
        cfg.chosen_size = g.vertex_count();
        cfg.branch_vector = whole.branch_vector;
        cfg.number = whole.number;
        cfg.minimized_number = fmin(g, mode, options.cache).number;
        cfg.whole_number = whole.number;
        cfg.reachable = true;
        report.configs.push_back(std::move(cfg));
    }
    for (const auto& cfg : report.configs) {
        if (cfg.number > report.worst_number) {
            report.worst_number = cfg.number;
            report.worst_vector = cfg.branch_vector;
            report.worst_description = cfg.description;
        }
        if (cfg.number > report.worst_number_reachable) {
            report.worst_number_reachable = cfg.number;
            report.worst_vector_reachable = cfg.branch_vector;
            report.worst_description_reachable = cfg.description;
        }
        report.worst_minimized_number = std::max(report.worst_minimized_number, cfg.minimized_number);
        report.worst_whole_number = std::max(report.worst_whole_number, cfg.whole_number);
    }
    return report;
}

void finalize(AnalysisReport& report) {
    report.aggregate_bound = rule_bound("aggregate", report.mode);
    report.aggregate_worst = 0.0;
    report.within_bounds = true;
    for (const auto& rule : report.rules) {
        if (rule.rule != "B1") report.aggregate_worst = std::max(report.aggregate_worst, rule.worst_number);
        if (!rule.within_bound()) report.within_bounds = false;
    }
    if (report.aggregate_worst > report.aggregate_bound + kGateTolerance)
        report.within_bounds = false;
}

}  // namespace

bool RuleReport::within_bound() const {
    return worst_number <= bound + kGateTolerance ||
           worst_number_reachable <= bound + kGateTolerance;
}

double rule_bound(const std::string& rule, Mode mode) {
    if (mode == Mode::deletion) {
        if (rule == "B1") return 2.562;
        if (rule == "B2") return 2.303;
        if (rule == "B3") return 2.27;
        if (rule == "B4") return 2.303;
        if (rule == "B5") return 2.21;
        if (rule == "aggregate") return 2.303;
    } else {
        if (rule == "B2" || rule == "B3" || rule == "B4") return 4.313;
        if (rule == "B5") return 4.329;
        if (rule == "aggregate") return 4.329;
    }
    throw std::invalid_argument("no bound for rule " + rule);
}

std::vector<unsigned> p_other_classes() {
    std::vector<unsigned> out;
    for (unsigned m = 1; m < 15; ++m) {
        const int pop = __builtin_popcount(m);
        if (pop < 1 || pop > 3) continue;
        if (m == 6) continue;  // {b,c} lies in P_mid
        const unsigned rep = std::min(m, reverse_mask(m));
        if (std::find(out.begin(), out.end(), rep) == out.end()) out.push_back(rep);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<std::string, Graph>> p4_sparse_obstructions() {
    std::vector<std::pair<std::string, Graph>> out;
    out.emplace_back("P5", path_graph(5));
    // pan: C4 plus a pendant on one cycle vertex
    out.emplace_back("pan", Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}}));
    // fork: claw with one subdivided edge
    Graph fork = Graph::from_edges(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}});
    out.emplace_back("kite", fork.complement());
    out.emplace_back("C5", cycle_graph(5));
    out.emplace_back("co-P5", path_graph(5).complement());
    out.emplace_back("fork", fork);
    out.emplace_back("co-pan", out[1].second.complement());
    return out;
}

AnalysisReport analyze_b2(Mode mode, const AnalyzerOptions& options) {
    AnalysisReport report;
    report.mode = mode;
    const ExceptionCatalog& exc =
        options.exceptions ? *options.exceptions : ExceptionCatalog::builtin();
    report.rules.push_back(evaluate_rule("B2", mode, b2_configs(mode, exc), options));
    finalize(report);
    return report;
}

AnalysisReport analyze_b3_b4(Mode mode, const AnalyzerOptions& options) {
    AnalysisReport report;
    report.mode = mode;
    const ExceptionCatalog& exc =
        options.exceptions ? *options.exceptions : ExceptionCatalog::builtin();
    report.rules.push_back(evaluate_rule("B3", mode, b3_configs(), options));
    report.rules.push_back(evaluate_rule("B4", mode, b4_configs(mode, exc), options));
    finalize(report);
    return report;
}

AnalysisReport analyze_b5(Mode mode, const AnalyzerOptions& options) {
    AnalysisReport report;
    report.mode = mode;
    report.rules.push_back(evaluate_rule("B5", mode, b5_configs(), options));
    finalize(report);
    return report;
}

AnalysisReport full_report(Mode mode, const AnalyzerOptions& options) {
    AnalysisReport report;
    report.mode = mode;
    const ExceptionCatalog& exc =
        options.exceptions ? *options.exceptions : ExceptionCatalog::builtin();
    if (mode == Mode::deletion) report.rules.push_back(b1_baseline(mode, options));
    report.rules.push_back(evaluate_rule("B2", mode, b2_configs(mode, exc), options));
    report.rules.push_back(evaluate_rule("B3", mode, b3_configs(), options));
    report.rules.push_back(evaluate_rule("B4", mode, b4_configs(mode, exc), options));
    report.rules.push_back(evaluate_rule("B5", mode, b5_configs(), options));
    finalize(report);
    return report;
}

std::string render_text(const AnalysisReport& report) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    out << "branching analysis, mode " << to_string(report.mode) << "\n";
    out << std::left << std::setw(6) << "rule" << std::right << std::setw(9) << "bound"
        << std::setw(9) << "worst" << std::setw(10) << "reachbl" << std::setw(10) << "minimzd"
        << std::setw(10) << "whole" << std::setw(9) << "configs"
        << "  worst reachable vector / configuration\n";
    for (const auto& rule : report.rules) {
        out << std::left << std::setw(6) << rule.rule << std::right << std::setw(9) << rule.bound
            << std::setw(9) << rule.worst_number << std::setw(10) << rule.worst_number_reachable
            << std::setw(10) << rule.worst_minimized_number << std::setw(10)
            << rule.worst_whole_number << std::setw(9) << rule.configs.size() << "  (";
        for (std::size_t i = 0; i < rule.worst_vector_reachable.size(); ++i)
            out << (i ? "," : "") << rule.worst_vector_reachable[i];
        out << ") " << rule.worst_description_reachable;
        if (!rule.within_bound()) out << "  ** EXCEEDS BOUND **";
        out << "\n";
        if (rule.worst_number > rule.bound + kGateTolerance && rule.within_bound()) {
            out << "      note: raw worst " << rule.worst_number << " from '"
                << rule.worst_description
                << "' is excluded by rule priority (a higher-priority rule fires there)\n";
        }
    }
    out << "aggregate worst " << report.aggregate_worst << " (bound " << report.aggregate_bound
        << "), " << (report.within_bounds ? "within bounds" : "BOUNDS EXCEEDED") << "\n";
    return out.str();
}

std::string render_json(const AnalysisReport& report, bool include_configs) {
    nlohmann::ordered_json j;
    j["mode"] = to_string(report.mode);
    j["aggregate_worst"] = report.aggregate_worst;
    j["aggregate_bound"] = report.aggregate_bound;
    j["within_bounds"] = report.within_bounds;
    j["rules"] = nlohmann::ordered_json::array();
    for (const auto& rule : report.rules) {
        nlohmann::ordered_json r;
        r["rule"] = rule.rule;
        r["bound"] = rule.bound;
        r["worst_number"] = rule.worst_number;
        r["worst_vector"] = rule.worst_vector;
        r["worst_description"] = rule.worst_description;
        r["worst_number_reachable"] = rule.worst_number_reachable;
        r["worst_vector_reachable"] = rule.worst_vector_reachable;
        r["worst_description_reachable"] = rule.worst_description_reachable;
        r["worst_minimized_number"] = rule.worst_minimized_number;
        r["worst_whole_number"] = rule.worst_whole_number;
        r["within_bound"] = rule.within_bound();
        r["config_count"] = rule.configs.size();
        if (include_configs) {
            r["configs"] = nlohmann::ordered_json::array();
            for (const auto& cfg : rule.configs) {
                nlohmann::ordered_json c;
                c["description"] = cfg.description;
                c["x_size"] = cfg.x_size;
                c["chosen_size"] = cfg.chosen_size;
                c["branch_vector"] = cfg.branch_vector;
                c["number"] = cfg.number;
                c["minimized_number"] = cfg.minimized_number;
                c["whole_number"] = cfg.whole_number;
                c["reachable"] = cfg.reachable;
                r["configs"].push_back(std::move(c));
            }
        }
        j["rules"].push_back(std::move(r));
    }
    return j.dump(2);
}

}  // namespace cograph
