#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cograph/branch_catalog.hpp"
#include "cograph/graph.hpp"
#include "cograph/p4.hpp"

namespace cograph {

enum class RuleId {
    b1,
    b2,
    b3,
    b4,
    b5_case_1,
    b5_case_2,
    b5_case_3,
    b5_case_4,
    b5_case_5,
    b5_case_6,
    b5_case_7,
    b5_case_8,
    b5_case_9,
    b5_case_10,
    b5_case_11,
    b5_case_12,
    b5_case_13,
    b5_case_14,
};

std::string to_string(RuleId id);
bool is_b5(RuleId id);

/// Vertex classes referenced by the B5 patterns.
enum class VertexClass { p, t, i, i_or_p, t_or_p };

/// One of the fourteen B5 patterns: b_size extra vertices with fixed
/// membership classes and an adjacency pattern among them (-1 absent,
/// 1 present, 0 unconstrained; pair order (01,02,12,03,13,23)).
struct B5CaseSpec {
    int b_size;
    std::array<VertexClass, 4> roles;
    std::array<int, 6> pattern;
};

const std::array<B5CaseSpec, 14>& b5_cases();

/// The six-vertex shapes on which rules B2 / B4 must not branch in deletion
/// mode. Graphs are over fixed vertex ids a=0, b=1, c=2, d=3 (the path) and
/// p=4, q=5 (the two extra vertices). In editing mode the shapes are
/// branched on anyway unless exceptions_apply_in_editing is set.
struct ExceptionCatalog {
    std::vector<Graph> b2_exceptions;
    Graph b4_exception;
    bool exceptions_apply_in_editing = false;

    std::vector<CanonicalCode> b2_codes() const;
    CanonicalCode b4_code() const;

    /// The built-in catalog (same content as the shipped data file).
    static const ExceptionCatalog& builtin();

    /// Parses the plain-text format: lines "b2-exception <name>: ab bc ..."
    /// / "b4-exception <name>: ..." with two-letter edge tokens over
    /// {a,b,c,d,p,q}, plus optional "exceptions-apply-in-editing: true".
    /// '#' starts a comment. Every graph must contain the path a-b-c-d as an
    /// induced P4; violations throw std::invalid_argument.
    static ExceptionCatalog parse(std::istream& in);
    static ExceptionCatalog parse_text(const std::string& text);

    std::string to_text() const;
};

struct RuleMatch {
    RuleId rule;
    std::vector<Vertex> x;  // 5 to 8 vertices, sorted
    BranchCatalog catalog;  // over G[x], options in G's vertex ids
};

/// Rule B1: some 5-subset induces one of the seven graphs that break
/// P4-sparseness (equivalently, induces more than one P4).
std::optional<RuleMatch> match_b1(const Graph& g, Mode mode,
                                  CatalogCache* cache = &global_catalog_cache());

/// Rule B2: p in P_other(A), p' in P(A), with G[A+{p,p'}] not an exception
/// shape (deletion mode only).
std::optional<RuleMatch> match_b2(const Graph& g, const P4Context& ctx, Mode mode,
                                  const ExceptionCatalog& exc = ExceptionCatalog::builtin(),
                                  CatalogCache* cache = &global_catalog_cache());

/// Rule B3: non-adjacent p in P_other(A), t in T(A).
std::optional<RuleMatch> match_b3(const Graph& g, const P4Context& ctx, Mode mode,
                                  CatalogCache* cache = &global_catalog_cache());

/// Rule B4: adjacent p in P_other(A), i in I(A), with G[A+{p,i}] not the
/// exception shape (deletion mode only).
std::optional<RuleMatch> match_b4(const Graph& g, const P4Context& ctx, Mode mode,
                                  const ExceptionCatalog& exc = ExceptionCatalog::builtin(),
                                  CatalogCache* cache = &global_catalog_cache());

/// Rule B5: the fourteen three/four-vertex patterns over I(A), T(A), P(A),
/// scanned in case order.
std::optional<RuleMatch> match_b5(const Graph& g, const P4Context& ctx, Mode mode,
                                  CatalogCache* cache = &global_catalog_cache());

/// Tries B2, B3, B4, B5 on the context of the P-maximizing P4; in deletion
/// mode falls back to B1. Returns nullopt exactly when no rule applies
/// (in particular for cographs).
std::optional<RuleMatch> find_rule_application(const Graph& g, Mode mode,
                                               const ExceptionCatalog& exc = ExceptionCatalog::builtin(),
                                               CatalogCache* cache = &global_catalog_cache());

}  // namespace cograph
