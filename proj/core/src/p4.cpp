#include "cograph/p4.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cograph {
namespace {

// Scratch row for word-level candidate filtering.
void fill_candidates(const Graph& g, Vertex base, std::initializer_list<Vertex> exclude_rows,
                     std::initializer_list<Vertex> exclude_bits, std::vector<std::uint64_t>& out) {
    auto r = g.row(base);
    out.assign(r.begin(), r.end());
    for (Vertex e : exclude_rows) {
        auto re = g.row(e);
        for (std::size_t w = 0; w < out.size(); ++w) out[w] &= ~re[w];
    }
    for (Vertex e : exclude_bits) out[e / 64] &= ~(std::uint64_t{1} << (e % 64));
}

template <typename Fn>
void for_each_bit(const std::vector<std::uint64_t>& words, Vertex from, Fn&& fn) {
    for (std::size_t w = static_cast<std::size_t>(from) / 64; w < words.size(); ++w) {
        std::uint64_t bits = words[w];
        if (w == static_cast<std::size_t>(from) / 64 && from % 64 != 0)
            bits &= ~std::uint64_t{0} << (from % 64);
        while (bits) {
            int b = std::countr_zero(bits);
            if (!fn(static_cast<Vertex>(w * 64 + b))) return;
            bits &= bits - 1;
        }
    }
}

template <typename Fn>
void scan_p4s(const Graph& g, Fn&& emit) {
    const int n = g.vertex_count();
    if (n < 4) return;
    std::vector<std::uint64_t> c_cand, d_cand;
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b : g.neighbors(a)) {
            // c adjacent to b, not to a, c != a
            fill_candidates(g, b, {a}, {a}, c_cand);
            bool go = true;
            for_each_bit(c_cand, 0, [&](Vertex c) {
                // d adjacent to c, not to a or b, d != b, d > a
                fill_candidates(g, c, {a, b}, {b}, d_cand);
                for_each_bit(d_cand, a + 1, [&](Vertex d) {
                    go = emit(P4Witness{a, b, c, d});
                    return go;
                });
                return go;
            });
            if (!go) return;
        }
    }
}

}  // namespace

std::vector<Vertex> P4Witness::vertex_set() const {
    std::vector<Vertex> v{a, b, c, d};
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<Vertex> P4Context::p_all() const {
    std::vector<Vertex> out = p_mid;
    out.insert(out.end(), p_other.begin(), p_other.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<P4Witness> find_induced_p4(const Graph& g) {
    std::optional<P4Witness> found;
    scan_p4s(g, [&](const P4Witness& w) {
        found = w;
        return false;
    });
    return found;
}

bool is_cograph(const Graph& g) { return !find_induced_p4(g).has_value(); }

bool is_valid_p4(const Graph& g, const P4Witness& w) {
    const Vertex vs[4] = {w.a, w.b, w.c, w.d};
    const int n = g.vertex_count();
    for (Vertex v : vs)
        if (v < 0 || v >= n) return false;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (vs[i] == vs[j]) return false;
    return g.has_edge(w.a, w.b) && g.has_edge(w.b, w.c) && g.has_edge(w.c, w.d) &&
           !g.has_edge(w.a, w.c) && !g.has_edge(w.a, w.d) && !g.has_edge(w.b, w.d);
}

P4Context p4_context(const Graph& g, const P4Witness& w) {
    if (!is_valid_p4(g, w)) throw std::invalid_argument("not an induced P4 of the graph");
    P4Context ctx;
    ctx.witness = w;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (v == w.a || v == w.b || v == w.c || v == w.d) continue;
        const bool na = g.has_edge(v, w.a), nb = g.has_edge(v, w.b), nc = g.has_edge(v, w.c),
                   nd = g.has_edge(v, w.d);
        const int count = int(na) + int(nb) + int(nc) + int(nd);
        if (count == 0)
            ctx.i_set.push_back(v);
        else if (count == 4)
            ctx.t_set.push_back(v);
        else if (count == 2 && nb && nc)
            ctx.p_mid.push_back(v);
        else
            ctx.p_other.push_back(v);
    }
    return ctx;
}

std::vector<P4Witness> all_induced_p4s(const Graph& g) {
    std::vector<P4Witness> out;
    scan_p4s(g, [&](const P4Witness& w) {
        out.push_back(w);
        return true;
    });
    return out;
}

P4Witness choose_p4_max_p(const Graph& g) {
    std::optional<P4Witness> best;
    int best_p = -1;
    scan_p4s(g, [&](const P4Witness& w) {
        int p = 0;
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            if (v == w.a || v == w.b || v == w.c || v == w.d) continue;
            const int count = int(g.has_edge(v, w.a)) + int(g.has_edge(v, w.b)) +
                              int(g.has_edge(v, w.c)) + int(g.has_edge(v, w.d));
            if (count >= 1 && count <= 3) ++p;
        }
        if (p > best_p) {  // scan order is lexicographic, so first max wins
            best_p = p;
            best = w;
        }
        return true;
    });
    if (!best) throw std::invalid_argument("choose_p4_max_p called on a cograph");
    return *best;
}

bool is_p4_sparse(const Graph& g) {
    const int n = g.vertex_count();
    bool sparse = true;
    scan_p4s(g, [&](const P4Witness& w) {
        const auto set = w.vertex_set();
        for (Vertex v = 0; v < n && sparse; ++v) {
            if (std::binary_search(set.begin(), set.end(), v)) continue;
            // a second P4 inside set+{v} must use v and three of the four
            for (int skip = 0; skip < 4 && sparse; ++skip) {
                Vertex q[4];
                int k = 0;
                for (int i = 0; i < 4; ++i)
                    if (i != skip) q[k++] = set[i];
                q[3] = v;
                auto [sub, map] = g.induced(std::span<const Vertex>(q, 4));
                if (find_induced_p4(sub)) sparse = false;
            }
        }
        return sparse;
    });
    return sparse;
}

}  // namespace cograph
