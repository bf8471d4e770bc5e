#pragma once

#include <utility>

#include "cograph/graph.hpp"

namespace cograph {

/// Exact minimum by size-ordered subset enumeration with early exit.
/// Budgets: deletion needs |E| <= 20, editing needs n <= 7; beyond that a
/// std::invalid_argument is thrown. Certificate is the first subset found
/// in the deterministic enumeration order.
std::pair<int, PairSet> brute_force_min(const Graph& g, Mode mode);

/// Exact minimum via the plain bounded search tree that branches on the
/// three edges (deletion) or six pairs (editing) of some induced P4, with
/// iterative deepening. Independent of the rules/decomposition machinery;
/// used for calibration and as a scalable cross-check.
std::pair<int, PairSet> simple_branch_min(const Graph& g, Mode mode);

/// True iff applying f to g yields a cograph. Deletion mode requires every
/// pair of f to be an edge of g.
bool verify_certificate(const Graph& g, const PairSet& f, Mode mode);

}  // namespace cograph
