#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cograph/branch_catalog.hpp"
#include "cograph/graph.hpp"
#include "cograph/rules.hpp"

namespace cograph {

struct AnalyzerOptions {
    int threads = 1;  // 0 = hardware concurrency
    const ExceptionCatalog* exceptions = nullptr;  // builtin when null
    CatalogCache* cache = &global_catalog_cache();
};

/// One local configuration of a rule: the graph on A plus the rule's extra
/// vertices, with the branching data of the catalog the rule would use
/// (best induced subgraph in deletion mode, whole-graph family in editing
/// mode), plus both interpretations for comparison.
struct ConfigReport {
    std::string description;
    int x_size = 0;
    int chosen_size = 0;
    std::vector<int> branch_vector;
    double number = 0.0;            // catalog the engine branches on
    double minimized_number = 0.0;  // best induced subgraph
    double whole_number = 0.0;      // whole-graph family
    /// No higher-priority rule fires inside the configuration at the fixed
    /// path, so the rule can actually branch here.
    bool reachable = false;
};

struct RuleReport {
    std::string rule;
    double bound = 0.0;  // regression gate for this rule and mode
    std::vector<ConfigReport> configs;
    double worst_number = 0.0;  // over all configurations
    std::vector<int> worst_vector;
    std::string worst_description;
    double worst_number_reachable = 0.0;  // over reachable configurations
    std::vector<int> worst_vector_reachable;
    std::string worst_description_reachable;
    double worst_minimized_number = 0.0;
    double worst_whole_number = 0.0;

    /// Raw or priority-pruned worst within the gate (+1e-3).
    bool within_bound() const;
};

struct AnalysisReport {
    Mode mode = Mode::deletion;
    std::vector<RuleReport> rules;
    double aggregate_worst = 0.0;  // max raw worst over B2..B5
    double aggregate_bound = 0.0;
    bool within_bounds = true;
};

/// Gate thresholds per rule. Deletion: B1 2.562, B2 2.303, B3 2.27,
/// B4 2.303, B5 2.21; editing: 4.313 for B2-B4 and 4.329 for B5.
double rule_bound(const std::string& rule, Mode mode);

/// The path-reversal classes of N(p) on A for p in P_other: exactly seven,
/// represented by the lexicographically smaller mask of each class
/// (bit 0 = a, .., bit 3 = d).
std::vector<unsigned> p_other_classes();

/// The seven 5-vertex graphs whose presence breaks P4-sparseness, by name.
std::vector<std::pair<std::string, Graph>> p4_sparse_obstructions();

AnalysisReport analyze_b2(Mode mode, const AnalyzerOptions& options = {});
AnalysisReport analyze_b3_b4(Mode mode, const AnalyzerOptions& options = {});
AnalysisReport analyze_b5(Mode mode, const AnalyzerOptions& options = {});

/// All rules, plus the five-vertex baseline row in deletion mode.
AnalysisReport full_report(Mode mode, const AnalyzerOptions& options = {});

std::string render_text(const AnalysisReport& report);
std::string render_json(const AnalysisReport& report, bool include_configs = true);

}  // namespace cograph
