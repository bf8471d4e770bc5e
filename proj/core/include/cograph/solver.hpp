#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "cograph/branch_catalog.hpp"
#include "cograph/decomposition.hpp"
#include "cograph/graph.hpp"
#include "cograph/oracle.hpp"
#include "cograph/rules.hpp"

namespace cograph {

struct SearchStats {
    std::uint64_t nodes = 0;      // search nodes expanded
    std::uint64_t max_depth = 0;  // deepest branching level
    std::map<std::string, std::uint64_t> rule_fires;

    void merge(const SearchStats& other);
};

struct SolveResult {
    bool feasible = false;
    int k_used = -1;       // optimum within budget when feasible
    PairSet certificate;   // applying it to the input yields a cograph
    SearchStats stats;
};

struct SolveOptions {
    /// Worker threads for branch evaluation at the top level; 0 = hardware
    /// concurrency, 1 = sequential. Results are identical for every value.
    int threads = 1;
    const ExceptionCatalog* exceptions = nullptr;  // builtin when null
    CatalogCache* cache = &global_catalog_cache();
};

/// Bounded search tree: split components, branch on the catalog options of
/// the first matching rule with budget k - |F|, solve rule-free graphs by
/// decomposition. Returns the exact optimum when it is <= k. Certificates
/// are validated before returning; a failed validation throws.
SolveResult solve(const Graph& g, int k, Mode mode, const SolveOptions& options = {});

/// Minimum-size mode: increments k until solve accepts.
SolveResult solve_min(const Graph& g, Mode mode, const SolveOptions& options = {});

}  // namespace cograph
