#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "cograph/graph.hpp"
#include "cograph/small_graph.hpp"

namespace cograph {

/// Unique root t >= 1 of sum_i t^(-b_i) = 1, within 1e-9. The singleton
/// vector has root exactly 1. Throws on an empty vector or non-positive
/// entries.
double branching_number(const std::vector<int>& branch_vector);

/// Exactly the inclusion-minimal F subseteq E(H) with H-F a cograph.
/// When H is already a cograph the family is { {} }. Host must have <= 8
/// vertices. Options sorted by size, then lexicographically.
std::vector<PairSet> minimal_deletion_sets(const Graph& h);

/// Exactly the inclusion-minimal pair sets F with H ^ F a cograph.
std::vector<PairSet> minimal_editing_sets(const Graph& h);

/// Branching data for a small host graph: the selected induced subgraph,
/// the complete family of inclusion-minimal modification sets of that
/// subgraph (lifted to host vertex ids), and its branching vector/number.
struct BranchCatalog {
    Graph host;
    Mode mode = Mode::deletion;
    std::vector<Vertex> chosen_subgraph;  // host ids, sorted
    std::vector<PairSet> options;         // host ids, sorted by size then lex
    std::vector<int> branch_vector;       // option sizes, ascending
    double number = 0.0;
};

/// Concurrent memo for minimal-set families keyed by isomorphism class.
/// Families are stored on the canonical graph; ties are never cached, so
/// results are identical with and without a cache.
class CatalogCache {
public:
    using Family = std::vector<std::uint64_t>;  // pair masks on the canonical graph

    std::shared_ptr<const Family> find(CanonicalCode code, Mode mode) const;
    std::shared_ptr<const Family> insert(CanonicalCode code, Mode mode, Family family);
    void clear();
    std::size_t size() const;

private:
    mutable std::mutex mu_;
    std::unordered_map<std::uint64_t, std::shared_ptr<const Family>> map_;
};

/// Process-wide cache shared by the solver, rules engine and analyzer.
CatalogCache& global_catalog_cache();

/// Scans all induced subgraphs of h that contain an induced P4 and returns
/// the catalog of the subgraph whose family has the smallest branching
/// number. Ties prefer the larger subgraph, then the lexicographically
/// smallest vertex set. Throws when h is a cograph or has > 8 vertices.
/// Pass cache = nullptr to disable memoization.
BranchCatalog fmin(const Graph& h, Mode mode, CatalogCache* cache = &global_catalog_cache());

/// Catalog of the whole host graph (no subgraph minimization).
BranchCatalog whole_graph_catalog(const Graph& h, Mode mode,
                                  CatalogCache* cache = &global_catalog_cache());

}  // namespace cograph
