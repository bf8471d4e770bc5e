#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cograph/graph.hpp"

namespace cograph {

enum class SpiderKind { thin, thick };
const char* to_string(SpiderKind kind);

/// Partition witnessing the spider structure: legs[i] pairs s[i] with its
/// clique partner k[i]; every vertex of r is adjacent to all of k and none
/// of s. Thin legs form a matching, thick legs the complement of one.
struct SpiderPartition {
    std::vector<Vertex> s;  // independent set, ascending
    std::vector<Vertex> k;  // clique, aligned with s: k[i] = phi(s[i])
    std::vector<Vertex> r;  // rest, ascending
    SpiderKind kind = SpiderKind::thin;

    int q() const { return static_cast<int>(s.size()); }
};

/// Checks the full spider definition: sizes, independence/clique, the
/// r-adjacencies and the leg pattern of the claimed kind.
bool is_valid_spider_partition(const Graph& g, const SpiderPartition& sp);

/// Finds a spider partition when one exists. Thin spiders are recovered
/// from the degree-1 vertices, thick ones through the complement; every
/// candidate is validated against the definition before being returned.
std::optional<SpiderPartition> recognize_spider(const Graph& g);

/// Head with S = {0..q-1}, K = {q..2q-1} and phi(i) = q + i.
Graph spider_head_graph(int q, SpiderKind kind);

/// Optimal modification cost of the 2q-vertex head G[S u K]. Values for
/// q <= 5 come from the brute-force calibration run; larger q use the
/// closed form fitted to the calibrated values.
int spider_head_cost(int q, SpiderKind kind, Mode mode);

/// A head modification set of size spider_head_cost that stays optimal in
/// the presence of r (keeps the clique, the k-r completeness and the s-r
/// emptiness intact). Verified before being returned.
PairSet spider_head_certificate(const Graph& g, const SpiderPartition& sp, Mode mode);

struct HeadCostCalibration {
    struct Entry {
        int q;
        SpiderKind kind;
        Mode mode;
        int cost;
    };
    std::vector<Entry> entries;  // q = 2..5, both kinds, both modes

    int cost(int q, SpiderKind kind, Mode mode) const;
    std::string to_text() const;
};

/// Calibration computed once per process with the independent branching
/// oracle and checked against the shipped table; a mismatch throws.
const HeadCostCalibration& head_cost_calibration();

enum class RuleFreeTag {
    disconnected,
    co_disconnected,
    spider,
    bipartite_special,
    tiny,
    not_rule_free,
};
const char* to_string(RuleFreeTag tag);

struct RuleFreeClass {
    RuleFreeTag tag = RuleFreeTag::not_rule_free;
    std::vector<std::vector<Vertex>> parts;  // components or co-components
    std::optional<SpiderPartition> spider;
    std::array<Vertex, 2> bipartite_x{-1, -1};
    Vertex bipartite_y = -1;
};

/// Structural classification used on graphs where no branching rule fires:
/// disconnected, co-disconnected, spider, the special bipartite shape
/// (deletion only), or tiny (<= 6 vertices deletion, <= 5 editing).
/// Returns not_rule_free when nothing matches.
RuleFreeClass classify_rule_free(const Graph& g, Mode mode);

/// Minimum deletion set of a rule-free graph with certificate. Throws
/// std::invalid_argument when classification fails anywhere in the
/// recursion (rule-free precondition violated).
std::pair<int, PairSet> alpha_rule_free(const Graph& g);

/// Editing analogue of alpha_rule_free.
std::pair<int, PairSet> editing_cost_rule_free(const Graph& g);

/// Decomposition recursion with caller-controlled handling of parts that do
/// not classify and a cost cap; returns nullopt when the cap is exceeded.
/// The handler receives (part, remaining cap) and returns the exact optimum
/// of the part when it is within the cap.
using PartHandler =
    std::function<std::optional<std::pair<int, PairSet>>(const Graph&, int cap)>;
std::optional<std::pair<int, PairSet>> solve_by_decomposition(const Graph& g, Mode mode, int cap,
                                                              const PartHandler& handler);

}  // namespace cograph
