#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "cograph/branch_catalog.hpp"
#include "cograph/p4.hpp"
#include "cograph/small_graph.hpp"
#include "test_helpers.hpp"

using namespace cograph;

namespace {

// Independent oracle: full subset enumeration over the candidate pair
// universe, filtered to modification sets, filtered to inclusion-minimal.
std::vector<PairSet> minimal_sets_oracle(const Graph& h, Mode mode) {
    const auto s = to_small(h);
    std::vector<int> slots;
    if (mode == Mode::deletion) {
        std::uint64_t m = s.mask;
        while (m) {
            slots.push_back(__builtin_ctzll(m));
            m &= m - 1;
        }
    } else {
        for (int i = 0; i < SmallGraph::pair_count(s.n); ++i) slots.push_back(i);
    }
    std::vector<std::uint64_t> fixing;
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << slots.size()); ++pick) {
        std::uint64_t f = 0;
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (pick >> i & 1) f |= std::uint64_t{1} << slots[i];
        if (small_is_cograph({s.n, s.mask ^ f})) fixing.push_back(f);
    }
    std::vector<PairSet> minimal;
    for (std::uint64_t f : fixing) {
        bool is_minimal = true;
        for (std::uint64_t other : fixing)
            if (other != f && (other & f) == other) {
                is_minimal = false;
                break;
            }
        if (!is_minimal) continue;
        PairSet p;
        std::uint64_t rest = f;
        while (rest) {
            const int slot = __builtin_ctzll(rest);
            const auto vp = slot_to_pair(s.n, slot);
            p.add(vp.u, vp.v);
            rest &= rest - 1;
        }
        minimal.push_back(std::move(p));
    }
    std::sort(minimal.begin(), minimal.end(), [](const PairSet& a, const PairSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return minimal;
}

const Graph& pan() {
    static const Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}});
    return g;
}

}  // namespace

TEST_CASE("branching_number reproduces the reference roots") {
    CHECK(branching_number({1, 2, 2, 2, 2}) == doctest::Approx(2.5616).epsilon(1e-3));
    CHECK(branching_number({1, 2, 2, 2}) == doctest::Approx(2.3028).epsilon(1e-3));
    CHECK(branching_number({1, 1, 1}) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(branching_number({5}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(branching_number({}), std::invalid_argument);
    CHECK_THROWS_AS(branching_number({0, 1}), std::invalid_argument);
}

TEST_CASE("branching_number root satisfies its defining equation") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> len(2, 7), entry(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> vec(len(rng));
        for (int& b : vec) b = entry(rng);
        const double tau = branching_number(vec);
        double sum = 0;
        for (int b : vec) sum += std::pow(tau, -b);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("branching_number grows when the vector gains an entry") {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> len(2, 6), entry(1, 6);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> vec(len(rng));
        for (int& b : vec) b = entry(rng);
        const double before = branching_number(vec);
        vec.push_back(entry(rng));
        CHECK(branching_number(vec) > before);
    }
}

TEST_CASE("minimal deletion sets of reference graphs") {
    const auto p4_sets = minimal_deletion_sets(path_graph(4));
    REQUIRE(p4_sets.size() == 3);
    for (const auto& f : p4_sets) CHECK(f.size() == 1);

    const auto pan_sets = minimal_deletion_sets(pan());
    std::multiset<std::size_t> sizes;
    for (const auto& f : pan_sets) sizes.insert(f.size());
    CHECK(sizes == std::multiset<std::size_t>{1, 2, 2, 2, 2});

    const auto triangle_sets = minimal_deletion_sets(complete_graph(3));
    REQUIRE(triangle_sets.size() == 1);
    CHECK(triangle_sets[0].empty());
}

TEST_CASE("minimal editing sets of reference graphs") {
    const auto p4_sets = minimal_editing_sets(path_graph(4));
    REQUIRE(p4_sets.size() == 6);
    for (const auto& f : p4_sets) CHECK(f.size() == 1);

    const auto cograph_sets = minimal_editing_sets(complete_graph(4));
    REQUIRE(cograph_sets.size() == 1);
    CHECK(cograph_sets[0].empty());

    for (const auto& f : minimal_editing_sets(cycle_graph(5))) CHECK(f.size() >= 2);
}

TEST_CASE("minimal set families match the subset-enumeration oracle exhaustively to n=5") {
    for (int n = 1; n <= 5; ++n) {
        for (std::uint64_t mask = 0; mask < testutil::graph_mask_count(n); ++mask) {
            const Graph h = testutil::graph_from_mask(n, mask);
            CHECK(minimal_deletion_sets(h) == minimal_sets_oracle(h, Mode::deletion));
            CHECK(minimal_editing_sets(h) == minimal_sets_oracle(h, Mode::editing));
        }
    }
}

TEST_CASE("minimal set families match the oracle on random graphs with 6 to 8 vertices") {
    // full subset enumeration is kept within 2^18 steps; beyond that the
    // families are checked for soundness and inclusion-minimality directly
    const auto check_sound_and_minimal = [](const Graph& h, Mode mode) {
        const auto family =
            mode == Mode::deletion ? minimal_deletion_sets(h) : minimal_editing_sets(h);
        REQUIRE(!family.empty());
        for (const auto& f : family) {
            CHECK(is_cograph(h.apply(f, mode)));
            for (const auto& drop : f) {
                PairSet smaller;
                for (const auto& p : f)
                    if (!(p == drop)) smaller.add(p.u, p.v);
                CHECK(!is_cograph(h.apply(smaller, mode)));
            }
        }
        for (std::size_t i = 0; i < family.size(); ++i)
            for (std::size_t j = 0; j < family.size(); ++j)
                if (i != j) CHECK(!family[i].subset_of(family[j]));
    };

    std::mt19937_64 rng(404);
    std::uniform_int_distribution<int> size(6, 8);
    std::uniform_real_distribution<double> prob(0.2, 0.8);
    int deletion_enumerated = 0, editing_enumerated = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = size(rng);
        const Graph h = testutil::random_graph(n, prob(rng), rng);
        if (h.edge_count() <= 18) {
            CHECK(minimal_deletion_sets(h) == minimal_sets_oracle(h, Mode::deletion));
            ++deletion_enumerated;
        } else {
            check_sound_and_minimal(h, Mode::deletion);
        }
        if (SmallGraph::pair_count(n) <= 21) {
            CHECK(minimal_editing_sets(h) == minimal_sets_oracle(h, Mode::editing));
            ++editing_enumerated;
        } else {
            check_sound_and_minimal(h, Mode::editing);
        }
    }
    CHECK(deletion_enumerated > 60);
    CHECK(editing_enumerated > 30);
}

TEST_CASE("fmin picks the best induced subgraph of P7") {
    const auto cat = fmin(path_graph(7), Mode::deletion);
    CHECK(cat.number == doctest::Approx(2.3028).epsilon(1e-3));
    CHECK(cat.chosen_subgraph.size() == 6);

    const auto whole = whole_graph_catalog(path_graph(7), Mode::deletion);
    CHECK(whole.number == doctest::Approx(2.45).epsilon(1e-2));
}

TEST_CASE("fmin of P4 is the whole path, number 3") {
    const auto cat = fmin(path_graph(4), Mode::deletion);
    CHECK(cat.chosen_subgraph == std::vector<Vertex>{0, 1, 2, 3});
    CHECK(cat.number == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(cat.branch_vector == std::vector<int>{1, 1, 1});
}

TEST_CASE("fmin of the pan keeps the whole pan") {
    const auto cat = fmin(pan(), Mode::deletion);
    CHECK(cat.number == doctest::Approx(2.5616).epsilon(1e-3));
    CHECK(cat.chosen_subgraph.size() == 5);
    CHECK(cat.branch_vector == std::vector<int>{1, 2, 2, 2, 2});
    CHECK_THROWS_AS(fmin(complete_graph(4), Mode::deletion), std::invalid_argument);
}

TEST_CASE("catalog options clear every P4 inside the chosen subgraph") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 60; ++trial) {
        const Graph h = testutil::random_graph(7, 0.5, rng);
        if (is_cograph(h)) continue;
        for (Mode mode : {Mode::deletion, Mode::editing}) {
            const auto cat = fmin(h, mode);
            REQUIRE(!cat.options.empty());
            for (const auto& f : cat.options) {
                CHECK(f.size() >= 1);
                const Graph after = h.apply(f, mode);
                const auto [sub, map] = after.induced(cat.chosen_subgraph);
                CHECK(is_cograph(sub));
            }
        }
    }
}

TEST_CASE("fmin results are identical with and without the cache") {
    std::mt19937_64 rng(888);
    CatalogCache fresh;
    for (int trial = 0; trial < 40; ++trial) {
        const Graph h = testutil::random_graph(7, 0.5, rng);
        if (is_cograph(h)) continue;
        for (Mode mode : {Mode::deletion, Mode::editing}) {
            const auto with_cache = fmin(h, mode, &fresh);
            const auto second_hit = fmin(h, mode, &fresh);
            const auto without = fmin(h, mode, nullptr);
            CHECK(with_cache.options == without.options);
            CHECK(with_cache.chosen_subgraph == without.chosen_subgraph);
            CHECK(with_cache.number == doctest::Approx(without.number).epsilon(1e-12));
            CHECK(second_hit.options == with_cache.options);
        }
    }
    CHECK(fresh.size() > 0);
}

TEST_CASE("host graphs above 8 vertices are rejected") {
    CHECK_THROWS_AS(minimal_deletion_sets(path_graph(9)), std::invalid_argument);
    CHECK_THROWS_AS(fmin(path_graph(9), Mode::deletion), std::invalid_argument);
}
