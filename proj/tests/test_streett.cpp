#include <doctest.h>

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fixtures.hpp"
#include "winset/arena.hpp"
#include "winset/checked.hpp"
#include "winset/gen.hpp"
#include "winset/oracles.hpp"
#include "winset/streett.hpp"

using namespace winset;

namespace {

std::vector<StreettPair> random_pairs(int n, int k, gen::Rng& rng) {
    std::vector<StreettPair> pairs;
    for (int j = 0; j < k; ++j)
        pairs.push_back({gen::random_subset(n, rng(), 0.3), gen::random_subset(n, rng(), 0.3)});
    return pairs;
}

// The definition, checked directly: x induces a strongly connected subgraph
// with at least one edge and every pair requesting inside x grants inside x.
bool is_good(const Arena& g, const VertexSet& x, const std::vector<StreettPair>& pairs) {
    if (x.empty() || !has_internal_edge(g, x)) return false;
    if (scc_decomposition(g, x).size() != 1) return false;
    for (const StreettPair& p : pairs)
        if (x.intersects(p.request) && !x.intersects(p.grant)) return false;
    return true;
}

// Strongly connected graph: a Hamiltonian cycle plus random chords.
Arena cycle_with_chords(int n, int extra, gen::Rng& rng) {
    Arena a = Arena::make(ModelKind::Graph, n);
    std::set<std::pair<int, int>> used;
    for (int v = 0; v < n; ++v) used.emplace(v, (v + 1) % n);
    for (int tries = 0; tries < extra; ++tries) {
        int u = gen::draw(rng, n);
        int v = gen::draw(rng, n);
        if (u != v) used.emplace(u, v);
    }
    for (const auto& [u, v] : used) a.add_edge(u, v);
    a.finalize();
    return a;
}

}  // namespace

TEST_CASE("the pair tracker maintains counts and the bad set") {
    std::vector<StreettPair> pairs = fixtures::hub_and_spoke_pairs();
    PairIndex index(8, pairs);

    PairTracker tr(index, VertexSet::full(8));
    CHECK(tr.bad() == VertexSet::of(8, {0}));  // the hub's pair grants nothing
    tr.remove(VertexSet::of(8, {0}));
    CHECK(tr.tracked() == VertexSet::full(8) - VertexSet::of(8, {0}));
    CHECK(tr.bad() == VertexSet::of(8, {1}));  // vertex 1 lost its only grant
    tr.remove(VertexSet::of(8, {0, 1}));       // 0 is already gone, tolerated
    CHECK(tr.bad().empty());
    CHECK(tr.tracked() == VertexSet::of(8, {2, 3, 4, 5, 6, 7}));

    PairTracker cyc(index, VertexSet::of(8, {4, 5, 6, 7}));
    CHECK(cyc.bad().empty());
    cyc.remove(VertexSet::of(8, {6}));
    CHECK(cyc.bad() == VertexSet::of(8, {4}));  // request 4 lost grant 6
    cyc.remove(VertexSet::of(8, {7}));
    CHECK(cyc.bad() == VertexSet::of(8, {4, 5}));
}

TEST_CASE("the hub and spoke cascade ends at the four cycle") {
    set_checked_mode(true);
    Arena g = fixtures::hub_and_spoke_graph();
    std::vector<StreettPair> pairs = fixtures::hub_and_spoke_pairs();
    std::optional<VertexSet> x = good_component(g, VertexSet::full(8), pairs);
    REQUIRE(x.has_value());
    CHECK(*x == VertexSet::of(8, {4, 5, 6, 7}));
    // The graph is one component, so once it satisfies, everybody wins.
    CHECK(streett_winning_graph(g, pairs) == VertexSet::full(8));
    set_checked_mode(false);
}

TEST_CASE("requests outside the component never constrain it") {
    Arena g = fixtures::three_block_chain_graph();
    std::vector<StreettPair> pairs = {{VertexSet::of(8, {5}), VertexSet(8)}};
    CHECK(good_component(g, VertexSet::of(8, {0, 1, 2}), pairs) ==
          std::optional<VertexSet>(VertexSet::of(8, {0, 1, 2})));
    CHECK_FALSE(good_component(g, VertexSet::of(8, {3}), pairs).has_value());
}

TEST_CASE("a single vertex needs its own grant") {
    Arena g = fixtures::build(ModelKind::Graph, 1, {{0, 0}});
    CHECK_FALSE(
        good_component(g, VertexSet::full(1), {{VertexSet::full(1), VertexSet(1)}}).has_value());
    CHECK(good_component(g, VertexSet::full(1), {{VertexSet::full(1), VertexSet::full(1)}}) ==
          std::optional<VertexSet>(VertexSet::full(1)));
    CHECK(streett_winning_graph(g, {{VertexSet::full(1), VertexSet(1)}}).empty());
}

TEST_CASE("winners are the vertices reaching a satisfying component") {
    Arena g = fixtures::three_block_chain_graph();
    // A request inside the 4-cycle granted only in the 3-cycle dissolves the
    // 4-cycle; the untouched 3-cycle satisfies, and nothing downstream of it
    // can come back.
    CHECK(streett_winning_graph(g, {{VertexSet::of(8, {6}), VertexSet::of(8, {2})}}) ==
          VertexSet::of(8, {0, 1, 2}));
    // An empty request set constrains nothing: every vertex that can reach a
    // non-trivial component wins.
    CHECK(streett_winning_graph(g, {{VertexSet(8), VertexSet(8)}}) == VertexSet::full(8));
    Arena path = fixtures::build(ModelKind::Graph, 3, {{0, 1}, {1, 2}});
    CHECK(streett_winning_graph(path, {{VertexSet(3), VertexSet(3)}}).empty());
}

TEST_CASE("random graphs match the enumeration oracle") {
    gen::Rng rng(0x57e1ull);
    for (int round = 0; round < 120; ++round) {
        int n = 2 + gen::draw(rng, 7);
        Arena g = gen::random_digraph(n, 1 + gen::draw(rng, 3 * n), rng(), round % 2 == 0);
        std::vector<StreettPair> pairs = random_pairs(n, 1 + gen::draw(rng, 3), rng);
        set_checked_mode(round % 4 == 0);
        CHECK(streett_winning_graph(g, pairs) == oracles::brute_streett(g, pairs));
        for (const VertexSet& scc : scc_decomposition(g)) {
            std::optional<VertexSet> x = good_component(g, scc, pairs);
            CHECK(x.has_value() == oracles::good_component_in(g, scc, pairs));
            if (x) {
                CHECK(x->subset_of(scc));
                CHECK(is_good(g, *x, pairs));
                CHECK(good_component(g, scc, pairs) == x);  // deterministic
            }
        }
        set_checked_mode(false);
    }
}

TEST_CASE("strongly connected instances match the subset oracle") {
    gen::Rng rng(0x57e2ull);
    for (int round = 0; round < 60; ++round) {
        int n = 2 + gen::draw(rng, 9);
        Arena g = cycle_with_chords(n, gen::draw(rng, 2 * n), rng);
        std::vector<StreettPair> pairs = random_pairs(n, 1 + gen::draw(rng, 3), rng);
        set_checked_mode(round % 4 == 0);
        std::optional<VertexSet> x = good_component(g, VertexSet::full(n), pairs);
        CHECK(x.has_value() == oracles::good_component_in(g, VertexSet::full(n), pairs));
        if (x) CHECK(is_good(g, *x, pairs));
        set_checked_mode(false);
    }
}

TEST_CASE("the split transform doubles a self-loop into a cycle") {
    Arena m = fixtures::build(ModelKind::Mdp, 1, {{0, 0}});
    SplitInstance split = split_transform(m, {{VertexSet::full(1), VertexSet::full(1)}});
    CHECK(split.mdp.n == 2);
    CHECK(split.mdp.m == 2);
    CHECK(split.mdp.has_edge(0, 1));
    CHECK(split.mdp.has_edge(1, 0));
    CHECK(split.mdp.owner[0] == Owner::P1);
    CHECK(split.mdp.owner[1] == Owner::P1);
    REQUIRE(split.pairs.size() == 1);
    CHECK(split.pairs[0].request == VertexSet::of(2, {0}));
    CHECK(split.pairs[0].grant == VertexSet::of(2, {1}));
}

TEST_CASE("the split transform preserves owners and components") {
    gen::Rng rng(0x57e3ull);
    for (int round = 0; round < 40; ++round) {
        int n = 1 + gen::draw(rng, 9);
        Arena m = gen::random_mdp(n, 1 + gen::draw(rng, 3 * n), rng(),
                                  n == 1 || round % 3 == 0);
        SplitInstance split = split_transform(m, random_pairs(n, 1, rng));
        CHECK(split.mdp.m == m.m + n);
        CHECK_FALSE(has_errors(validate(split.mdp, ModelKind::Mdp)));
        for (int v = 0; v < n; ++v) {
            CHECK(split.mdp.owner[2 * v] == Owner::P1);
            CHECK(split.mdp.owner[2 * v + 1] == m.owner[v]);
        }
        // Maximal end-components correspond copy for copy.
        std::vector<VertexSet> doubled = oracles::brute_mec(split.mdp);
        std::vector<VertexSet> plain = oracles::brute_mec(m);
        REQUIRE(doubled.size() == plain.size());
        for (size_t i = 0; i < plain.size(); ++i) {
            VertexSet expanded(2 * n);
            plain[i].for_each([&](int v) {
                expanded.set(2 * v);
                expanded.set(2 * v + 1);
            });
            CHECK(doubled[i] == expanded);
        }
    }
}

TEST_CASE("one fully satisfying component wins everywhere") {
    Arena m = fixtures::splitting_mec_mdp();
    std::vector<StreettPair> pairs = {{VertexSet::of(6, {2}), VertexSet::of(6, {4})}};
    CHECK(streett_winning_mdp(m, pairs) == VertexSet::full(6));
}

TEST_CASE("an ungrantable component confines its losses") {
    set_checked_mode(true);
    Arena m = fixtures::two_mec_chain_mdp();
    // The 4-cycle requests vertex 5 whose grant sits in the 3-cycle, and no
    // end-component inside {4, 6, 7} survives without 5. The 3-cycle carries
    // no request, so exactly its members win; the random bridge 3 may fall
    // into the doomed side and wins nothing.
    std::vector<StreettPair> pairs = {{VertexSet::of(8, {5}), VertexSet::of(8, {1})}};
    CHECK(streett_winning_mdp(m, pairs) == VertexSet::of(8, {0, 1, 2}));
    set_checked_mode(false);
}

TEST_CASE("random mdps match the strategy oracle") {
    gen::Rng rng(0x57e4ull);
    for (int round = 0; round < 100; ++round) {
        int n = 1 + gen::draw(rng, 9);
        Arena m = gen::random_mdp(n, 1 + gen::draw(rng, 3 * n), rng(),
                                  n == 1 || round % 3 == 0);
        std::vector<StreettPair> pairs = random_pairs(n, 1 + gen::draw(rng, 3), rng);
        set_checked_mode(round % 4 == 0);
        CHECK(streett_winning_mdp(m, pairs) == oracles::brute_streett_mdp(m, pairs));
        set_checked_mode(false);
    }
}

TEST_CASE("validation rejects malformed inputs") {
    Arena g = fixtures::three_block_chain_graph();
    std::vector<StreettPair> ok = {{VertexSet(8), VertexSet(8)}};
    CHECK_THROWS_WITH(good_component(g, VertexSet::of(8, {0, 3}), ok),
                      "strongly connected set required");
    CHECK_THROWS_WITH(streett_winning_graph(g, {}), "at least one pair required");
    CHECK_THROWS_WITH(streett_winning_graph(g, {{VertexSet(4), VertexSet(8)}}),
                      "vertex set size mismatch");
    Arena game = fixtures::build(ModelKind::Game, 2, {{0, 1}, {1, 0}}, {}, {1});
    CHECK_THROWS_WITH(streett_winning_mdp(game, {{VertexSet(2), VertexSet(2)}}),
                      "mdp arena required");
    CHECK_THROWS_WITH(split_transform(game, {{VertexSet(2), VertexSet(2)}}),
                      "mdp arena required");
}
