#include "cograph/rules.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace cograph {
namespace {

const char* kDefaultCatalogText =
    "# Six-vertex shapes excluded from branching in deletion mode.\n"
    "# Vertices: a-b-c-d is the fixed induced path, p and q the two extras.\n"
    "# b2 shape 1: p and q both see exactly {a,c}, p and q non-adjacent.\n"
    "b2-exception wing-pair: ab bc cd pa pc qa qc\n"
    "# b2 shape 2: p sees {b}, q sees {a}, p and q non-adjacent.\n"
    "b2-exception split-pendants: ab bc cd pb qa\n"
    "# b4 shape: p sees {b} and carries the A-isolated vertex q.\n"
    "b4-exception tail: ab bc cd pb pq\n"
    "exceptions-apply-in-editing: false\n";

int label_to_id(char c) {
    switch (c) {
        case 'a': return 0;
        case 'b': return 1;
        case 'c': return 2;
        case 'd': return 3;
        case 'p': return 4;
        case 'q': return 5;
        default: throw std::invalid_argument(std::string("unknown vertex label '") + c + "'");
    }
}

char id_to_label(int v) { return "abcdpq"[v]; }

Graph parse_exception_graph(const std::string& edge_text, const std::string& name) {
    PairSet edges;
    std::istringstream in(edge_text);
    std::string token;
    while (in >> token) {
        if (token.size() != 2)
            throw std::invalid_argument("bad edge token '" + token + "' in exception " + name);
        edges.add(label_to_id(token[0]), label_to_id(token[1]));
    }
    Graph g = Graph::from_edges(6, edges);
    const P4Witness path{0, 1, 2, 3};
    if (!is_valid_p4(g, path))
        throw std::invalid_argument("exception graph " + name +
                                    " does not contain a-b-c-d as an induced P4");
    return g;
}

bool matches_any(const Graph& g, const std::vector<Vertex>& x,
                 const std::vector<CanonicalCode>& codes) {
    const auto [sub, map] = g.induced(x);
    const auto code = canonical_code(sub);
    return std::find(codes.begin(), codes.end(), code) != codes.end();
}

RuleMatch make_match(RuleId id, const Graph& g, std::vector<Vertex> x, Mode mode,
                     CatalogCache* cache) {
    std::sort(x.begin(), x.end());
    const auto [sub, map] = g.induced(x);
    // deletion branches on the best induced subgraph of G[X]; editing on the
    // whole-graph family of G[X]
    BranchCatalog local =
        mode == Mode::deletion ? fmin(sub, mode, cache) : whole_graph_catalog(sub, mode, cache);

    // lift the catalog from subgraph ids back to g's ids
    BranchCatalog lifted;
    lifted.host = sub;
    lifted.mode = mode;
    for (Vertex v : local.chosen_subgraph) lifted.chosen_subgraph.push_back(map[v]);
    std::sort(lifted.chosen_subgraph.begin(), lifted.chosen_subgraph.end());
    for (const auto& f : local.options) {
        PairSet lifted_f;
        for (const auto& p : f) lifted_f.add(map[p.u], map[p.v]);
        lifted.options.push_back(std::move(lifted_f));
    }
    std::sort(lifted.options.begin(), lifted.options.end(),
              [](const PairSet& a, const PairSet& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    lifted.branch_vector = local.branch_vector;
    lifted.number = local.number;
    return RuleMatch{id, std::move(x), std::move(lifted)};
}

const std::vector<Vertex>& cls_list(const P4Context& ctx, VertexClass c,
                                    std::vector<Vertex>& scratch_p,
                                    std::vector<Vertex>& scratch_ip,
                                    std::vector<Vertex>& scratch_tp) {
    switch (c) {
        case VertexClass::t: return ctx.t_set;
        case VertexClass::i: return ctx.i_set;
        case VertexClass::p:
            if (scratch_p.empty()) scratch_p = ctx.p_all();
            return scratch_p;
        case VertexClass::i_or_p:
            if (scratch_ip.empty()) {
                scratch_ip = ctx.p_all();
                scratch_ip.insert(scratch_ip.end(), ctx.i_set.begin(), ctx.i_set.end());
                std::sort(scratch_ip.begin(), scratch_ip.end());
            }
            return scratch_ip;
        case VertexClass::t_or_p:
            if (scratch_tp.empty()) {
                scratch_tp = ctx.p_all();
                scratch_tp.insert(scratch_tp.end(), ctx.t_set.begin(), ctx.t_set.end());
                std::sort(scratch_tp.begin(), scratch_tp.end());
            }
            return scratch_tp;
    }
    return ctx.t_set;  // unreachable
}

bool pattern_ok(const Graph& g, const Vertex* b, int size, const std::array<int, 6>& pattern) {
    static constexpr int idx[6][2] = {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};
    const int pairs = size == 3 ? 3 : 6;
    for (int k = 0; k < pairs; ++k) {
        if (pattern[k] == 0) continue;
        const bool edge = g.has_edge(b[idx[k][0]], b[idx[k][1]]);
        if (edge != (pattern[k] > 0)) return false;
    }
    return true;
}

}  // namespace

std::string to_string(RuleId id) {
    switch (id) {
        case RuleId::b1: return "B1";
        case RuleId::b2: return "B2";
        case RuleId::b3: return "B3";
        case RuleId::b4: return "B4";
        default:
            return "B5-case-" + std::to_string(static_cast<int>(id) - static_cast<int>(RuleId::b5_case_1) + 1);
    }
}

bool is_b5(RuleId id) { return static_cast<int>(id) >= static_cast<int>(RuleId::b5_case_1); }

// Roles are listed in scan order: u,v,x for the three-vertex cases 1/2/7/8,
// v,x,y for 3-6 and 9-12, v,x,y,z for 13/14.
const std::array<B5CaseSpec, 14>& b5_cases() {
    using VC = VertexClass;
    static const std::array<B5CaseSpec, 14> cases = {{
        // 1: u,v in I+P, x in T, edges {uv, ux}
        {3, {VC::i_or_p, VC::i_or_p, VC::t, VC::p}, {1, 1, -1, 0, 0, 0}},
        // 2: u,v in T+P, x in I, edges {vx}
        {3, {VC::t_or_p, VC::t_or_p, VC::i, VC::p}, {-1, -1, 1, 0, 0, 0}},
        // 3: v in I+P, x,y in T, edges {vx}
        {3, {VC::i_or_p, VC::t, VC::t, VC::p}, {1, -1, -1, 0, 0, 0}},
        // 4: v in T+P, x,y in I, edges {vy, xy}
        {3, {VC::t_or_p, VC::i, VC::i, VC::p}, {-1, 1, 1, 0, 0, 0}},
        // 5: v in P, x,y in T, v adjacent to neither; x-y free
        {3, {VC::p, VC::t, VC::t, VC::p}, {-1, -1, 0, 0, 0, 0}},
        // 6: v in P, x,y in I, v adjacent to both; x-y free
        {3, {VC::p, VC::i, VC::i, VC::p}, {1, 1, 0, 0, 0, 0}},
        // 7: u,v in P, x in T, x adjacent to neither; u-v free
        {3, {VC::p, VC::p, VC::t, VC::p}, {0, -1, -1, 0, 0, 0}},
        // 8: u,v in P, x in I, x adjacent to both; u-v free
        {3, {VC::p, VC::p, VC::i, VC::p}, {0, 1, 1, 0, 0, 0}},
        // 9: v in P, x in T, y in I, edges {xy}
        {3, {VC::p, VC::t, VC::i, VC::p}, {-1, -1, 1, 0, 0, 0}},
        // 10: v in P, x in I, y in T, edges {vx, vy}
        {3, {VC::p, VC::i, VC::t, VC::p}, {1, 1, -1, 0, 0, 0}},
        // 11: v in P, x in T, y in I, edges {vy}
        {3, {VC::p, VC::t, VC::i, VC::p}, {-1, 1, -1, 0, 0, 0}},
        // 12: v in P, x in I, y in T, edges {vx, xy}
        {3, {VC::p, VC::i, VC::t, VC::p}, {1, -1, 1, 0, 0, 0}},
        // 13: v in P, x,y in T, z in I, edges {vx, xy, yz}
        {4, {VC::p, VC::t, VC::t, VC::i}, {1, -1, 1, -1, -1, 1}},
        // 14: v in P, x,y in I, z in T, edges {vy, vz, xz}
        {4, {VC::p, VC::i, VC::i, VC::t}, {-1, 1, -1, 1, 1, -1}},
    }};
    return cases;
}

std::vector<CanonicalCode> ExceptionCatalog::b2_codes() const {
    std::vector<CanonicalCode> codes;
    for (const auto& g : b2_exceptions) codes.push_back(canonical_code(g));
    return codes;
}

CanonicalCode ExceptionCatalog::b4_code() const { return canonical_code(b4_exception); }

const ExceptionCatalog& ExceptionCatalog::builtin() {
    static const ExceptionCatalog catalog = parse_text(kDefaultCatalogText);
    return catalog;
}

ExceptionCatalog ExceptionCatalog::parse(std::istream& in) {
    ExceptionCatalog catalog;
    bool have_b4 = false;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "exceptions-apply-in-editing:") {
            std::string value;
            ls >> value;
            catalog.exceptions_apply_in_editing = (value == "true" || value == "1");
            continue;
        }
        std::string name;
        if (!(ls >> name)) throw std::invalid_argument("exception entry without a name");
        if (!name.empty() && name.back() == ':') name.pop_back();
        std::string rest;
        std::getline(ls, rest);
        if (kind == "b2-exception") {
            catalog.b2_exceptions.push_back(parse_exception_graph(rest, name));
        } else if (kind == "b4-exception") {
            catalog.b4_exception = parse_exception_graph(rest, name);
            have_b4 = true;
        } else {
            throw std::invalid_argument("unknown exception catalog entry '" + kind + "'");
        }
    }
    if (catalog.b2_exceptions.empty() || !have_b4)
        throw std::invalid_argument("exception catalog needs b2 and b4 entries");
    return catalog;
}

ExceptionCatalog ExceptionCatalog::parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

std::string ExceptionCatalog::to_text() const {
    std::ostringstream out;
    int index = 0;
    for (const auto& g : b2_exceptions) {
        out << "b2-exception shape" << ++index << ":";
        for (const auto& p : g.edges()) out << ' ' << id_to_label(p.u) << id_to_label(p.v);
        out << '\n';
    }
    out << "b4-exception shape:";
    for (const auto& p : b4_exception.edges()) out << ' ' << id_to_label(p.u) << id_to_label(p.v);
    out << '\n';
    out << "exceptions-apply-in-editing: " << (exceptions_apply_in_editing ? "true" : "false")
        << '\n';
    return out.str();
}

std::optional<RuleMatch> match_b1(const Graph& g, Mode mode, CatalogCache* cache) {
    const int n = g.vertex_count();
    if (n < 5) return std::nullopt;
    std::array<Vertex, 5> x{};
    for (x[0] = 0; x[0] < n; ++x[0])
        for (x[1] = x[0] + 1; x[1] < n; ++x[1])
            for (x[2] = x[1] + 1; x[2] < n; ++x[2])
                for (x[3] = x[2] + 1; x[3] < n; ++x[3])
                    for (x[4] = x[3] + 1; x[4] < n; ++x[4]) {
                        const auto [sub, map] = g.induced(std::span<const Vertex>(x));
                        if (small_p4_count(to_small(sub)) >= 2)
                            return make_match(RuleId::b1, g,
                                              std::vector<Vertex>(x.begin(), x.end()), mode, cache);
                    }
    return std::nullopt;
}

std::optional<RuleMatch> match_b2(const Graph& g, const P4Context& ctx, Mode mode,
                                  const ExceptionCatalog& exc, CatalogCache* cache) {
    const auto p_all = ctx.p_all();
    if (ctx.p_other.empty() || p_all.size() < 2) return std::nullopt;
    const bool check_exceptions = mode == Mode::deletion || exc.exceptions_apply_in_editing;
    const auto codes = check_exceptions ? exc.b2_codes() : std::vector<CanonicalCode>{};
    const auto a = ctx.witness.vertex_set();
    for (Vertex p : ctx.p_other) {
        for (Vertex q : p_all) {
            if (q == p) continue;
            std::vector<Vertex> x = a;
            x.push_back(p);
            x.push_back(q);
            std::sort(x.begin(), x.end());
            if (check_exceptions && matches_any(g, x, codes)) continue;
            return make_match(RuleId::b2, g, std::move(x), mode, cache);
        }
    }
    return std::nullopt;
}

std::optional<RuleMatch> match_b3(const Graph& g, const P4Context& ctx, Mode mode,
                                  CatalogCache* cache) {
    const auto a = ctx.witness.vertex_set();
    for (Vertex p : ctx.p_other) {
        for (Vertex t : ctx.t_set) {
            if (g.has_edge(p, t)) continue;
            std::vector<Vertex> x = a;
            x.push_back(p);
            x.push_back(t);
            std::sort(x.begin(), x.end());
            return make_match(RuleId::b3, g, std::move(x), mode, cache);
        }
    }
    return std::nullopt;
}

std::optional<RuleMatch> match_b4(const Graph& g, const P4Context& ctx, Mode mode,
                                  const ExceptionCatalog& exc, CatalogCache* cache) {
    const bool check_exceptions = mode == Mode::deletion || exc.exceptions_apply_in_editing;
    const std::vector<CanonicalCode> codes =
        check_exceptions ? std::vector<CanonicalCode>{exc.b4_code()} : std::vector<CanonicalCode>{};
    const auto a = ctx.witness.vertex_set();
    for (Vertex p : ctx.p_other) {
        for (Vertex i : ctx.i_set) {
            if (!g.has_edge(p, i)) continue;
            std::vector<Vertex> x = a;
            x.push_back(p);
            x.push_back(i);
            std::sort(x.begin(), x.end());
            if (check_exceptions && matches_any(g, x, codes)) continue;
            return make_match(RuleId::b4, g, std::move(x), mode, cache);
        }
    }
    return std::nullopt;
}

std::optional<RuleMatch> match_b5(const Graph& g, const P4Context& ctx, Mode mode,
                                  CatalogCache* cache) {
    std::vector<Vertex> scratch_p, scratch_ip, scratch_tp;
    const auto a = ctx.witness.vertex_set();
    for (int case_idx = 0; case_idx < 14; ++case_idx) {
        const auto& spec = b5_cases()[case_idx];
        const auto& l0 = cls_list(ctx, spec.roles[0], scratch_p, scratch_ip, scratch_tp);
        const auto& l1 = cls_list(ctx, spec.roles[1], scratch_p, scratch_ip, scratch_tp);
        const auto& l2 = cls_list(ctx, spec.roles[2], scratch_p, scratch_ip, scratch_tp);
        Vertex b[4];
        for (Vertex v0 : l0) {
            b[0] = v0;
            for (Vertex v1 : l1) {
                if (v1 == v0) continue;
                b[1] = v1;
                for (Vertex v2 : l2) {
                    if (v2 == v0 || v2 == v1) continue;
                    b[2] = v2;
                    if (spec.b_size == 3) {
                        if (!pattern_ok(g, b, 3, spec.pattern)) continue;
                        std::vector<Vertex> x = a;
                        x.insert(x.end(), {v0, v1, v2});
                        std::sort(x.begin(), x.end());
                        return make_match(static_cast<RuleId>(static_cast<int>(RuleId::b5_case_1) + case_idx),
                                          g, std::move(x), mode, cache);
                    }
                    const auto& l3 = cls_list(ctx, spec.roles[3], scratch_p, scratch_ip, scratch_tp);
                    for (Vertex v3 : l3) {
                        if (v3 == v0 || v3 == v1 || v3 == v2) continue;
                        b[3] = v3;
                        if (!pattern_ok(g, b, 4, spec.pattern)) continue;
                        std::vector<Vertex> x = a;
                        x.insert(x.end(), {v0, v1, v2, v3});
                        std::sort(x.begin(), x.end());
                        return make_match(static_cast<RuleId>(static_cast<int>(RuleId::b5_case_1) + case_idx),
                                          g, std::move(x), mode, cache);
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<RuleMatch> find_rule_application(const Graph& g, Mode mode,
                                               const ExceptionCatalog& exc, CatalogCache* cache) {
    if (!find_induced_p4(g)) return std::nullopt;
    const auto witness = choose_p4_max_p(g);
    const auto ctx = p4_context(g, witness);
    if (auto m = match_b2(g, ctx, mode, exc, cache)) return m;
    if (auto m = match_b3(g, ctx, mode, cache)) return m;
    if (auto m = match_b4(g, ctx, mode, exc, cache)) return m;
    if (auto m = match_b5(g, ctx, mode, cache)) return m;
    if (mode == Mode::deletion)
        if (auto m = match_b1(g, mode, cache)) return m;
    return std::nullopt;
}

}  // namespace cograph
