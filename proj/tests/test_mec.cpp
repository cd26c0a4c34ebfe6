#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fixtures.hpp"
#include "winset/arena.hpp"
#include "winset/checked.hpp"
#include "winset/gen.hpp"
#include "winset/mec.hpp"
#include "winset/oracles.hpp"

using namespace winset;

namespace {

Arena rebuild_mdp(const Arena& original, const std::vector<std::vector<int>>& out) {
    Arena a = Arena::make(ModelKind::Mdp, original.n);
    a.total_required = false;  // deletions may have stranded a vertex
    a.owner = original.owner;
    for (int u = 0; u < original.n; ++u)
        for (int v : out[u]) a.add_edge(u, v);
    a.finalize();
    return a;
}

// Strongly connected total MDP: a Hamiltonian cycle plus random chords.
Arena random_connected_mdp(int n, int extra, gen::Rng& rng) {
    Arena a = Arena::make(ModelKind::Mdp, n);
    for (int v = 0; v < n; ++v)
        if (gen::draw(rng, 2) == 0) a.owner[v] = Owner::Random;
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

std::vector<VertexSet> nontrivial_sccs(const Arena& a) {
    std::vector<VertexSet> out;
    for (VertexSet& c : scc_decomposition(a))
        if (has_internal_edge(a, c)) out.push_back(std::move(c));
    std::sort(out.begin(), out.end(),
              [](const VertexSet& x, const VertexSet& y) { return x.first() < y.first(); });
    return out;
}

}  // namespace

TEST_CASE("a strongly connected MDP is one component") {
    gen::Rng rng(0x3ec1ull);
    for (int round = 0; round < 20; ++round) {
        int n = 2 + gen::draw(rng, 9);
        Arena m = random_connected_mdp(n, gen::draw(rng, 2 * n), rng);
        MecDecomposition dec = mec_decomposition(m);
        REQUIRE(dec.mecs.size() == 1);
        CHECK(dec.mecs[0] == VertexSet::full(n));
        CHECK(dec.residual.empty());
    }
}

TEST_CASE("the bridged chain splits into its two loops") {
    MecDecomposition dec = mec_decomposition(fixtures::two_mec_chain_mdp());
    REQUIRE(dec.mecs.size() == 2);
    CHECK(dec.mecs[0] == VertexSet::of(8, {0, 1, 2}));
    CHECK(dec.mecs[1] == VertexSet::of(8, {4, 5, 6, 7}));
    CHECK(dec.residual == VertexSet::of(8, {3}));
}

TEST_CASE("random instances match the enumeration oracle") {
    gen::Rng rng(0x3ec2ull);
    for (int round = 0; round < 150; ++round) {
        int n = 1 + gen::draw(rng, 12);
        Arena m = gen::random_mdp(n, 1 + gen::draw(rng, 3 * n), rng(),
                                  n == 1 || round % 3 == 0);
        MecDecomposition dec = mec_decomposition(m);
        CHECK(dec.mecs == oracles::brute_mec(m));
        VertexSet covered(n);
        for (const VertexSet& mec : dec.mecs) covered |= mec;
        CHECK(dec.residual == VertexSet::full(n) - covered);
    }
}

TEST_CASE("the pure graph keeps exactly the component edges") {
    Arena m = fixtures::two_mec_chain_mdp();
    Arena pure = pure_mdp(m, mec_decomposition(m));
    CHECK(pure.m == 7);  // the 3-cycle and the 4-cycle, nothing else
    CHECK(pure.out[3].empty());
    CHECK(pure.in[3].empty());
    CHECK(pure.has_edge(0, 1));
    CHECK(pure.has_edge(7, 4));
    CHECK_FALSE(pure.has_edge(2, 3));
    CHECK_FALSE(pure.has_edge(3, 0));

    gen::Rng rng(0x3ec3ull);
    for (int round = 0; round < 60; ++round) {
        int n = 1 + gen::draw(rng, 11);
        Arena mdp = gen::random_mdp(n, 1 + gen::draw(rng, 3 * n), rng(),
                                    n == 1 || round % 3 == 0);
        MecDecomposition dec = mec_decomposition(mdp);
        CHECK(nontrivial_sccs(pure_mdp(mdp, dec)) == dec.mecs);
    }
}

TEST_CASE("almost-sure reachability handles the trivial targets") {
    gen::Rng rng(0x3ec4ull);
    for (int round = 0; round < 15; ++round) {
        int n = 1 + gen::draw(rng, 10);
        Arena m = gen::random_mdp(n, 1 + gen::draw(rng, 3 * n), rng(), n == 1);
        CHECK(almost_sure_reach(m, VertexSet::full(n)) == VertexSet::full(n));
        CHECK(almost_sure_reach(m, VertexSet(n)).empty());
    }
}

TEST_CASE("a random fan-out loses almost-sure reach of an orthogonal column") {
    Arena m = fixtures::ov_coverage_mdp();
    VertexSet win = almost_sure_reach(m, VertexSet::of(10, {9}));
    CHECK(win == VertexSet::of(10, {1, 3, 5, 9}));
    CHECK_FALSE(win.test(0));  // the random start may land on the orthogonal row

    // Columns 7 and 8 are reached from everywhere except the absorbing
    // column 9: every row hits a coordinate that reaches one of them.
    CHECK(almost_sure_reach(m, VertexSet::of(10, {7, 8})) ==
          VertexSet::full(10) - VertexSet::of(10, {9}));
}

TEST_CASE("almost-sure reachability matches the strategy oracle") {
    gen::Rng rng(0x3ec5ull);
    for (int round = 0; round < 80; ++round) {
        int n = 1 + gen::draw(rng, 8);
        Arena m = gen::random_mdp(n, 1 + gen::draw(rng, 2 * n), rng(),
                                  n == 1 || round % 3 == 0);
        VertexSet t = gen::random_subset(n, rng(), 0.3);
        CHECK(almost_sure_reach(m, t) == oracles::brute_as_reach(m, t));
    }
    for (int round = 0; round < 60; ++round) {
        int n = 1 + gen::draw(rng, 12);
        Arena m = gen::random_mdp(n, 1 + gen::draw(rng, 3 * n), rng(), n == 1);
        VertexSet t = gen::random_subset(n, rng(), 0.3);
        CHECK(almost_sure_reach(m, t) == oracles::as_reach_fixpoint(m, t));
    }
}

TEST_CASE("collapsing every component leaves only absorbing singletons") {
    gen::Rng rng(0x3ec6ull);
    for (int round = 0; round < 40; ++round) {
        int n = 1 + gen::draw(rng, 10);
        Arena m = gen::random_mdp(n, 1 + gen::draw(rng, 3 * n), rng(), n == 1);
        MecDecomposition dec = mec_decomposition(m);

        // Quotient over a compacted vertex set: one absorbing player-1
        // vertex per component (slots first, in component order), then the
        // residual vertices.
        std::vector<int> rep_of(n);
        for (int v = 0; v < n; ++v) rep_of[v] = v;
        for (const VertexSet& mec : dec.mecs)
            mec.for_each([&](int v) { rep_of[v] = mec.first(); });
        std::vector<int> slot(n, -1);
        int nq = 0;
        for (const VertexSet& mec : dec.mecs) slot[mec.first()] = nq++;
        int k = nq;
        dec.residual.for_each([&](int v) { slot[v] = nq++; });

        Arena quotient = Arena::make(ModelKind::Mdp, nq);
        dec.residual.for_each([&](int v) { quotient.owner[slot[v]] = m.owner[v]; });
        std::vector<std::pair<int, int>> edges;
        for (int r = 0; r < k; ++r) edges.emplace_back(r, r);  // absorb to stay total
        for (int u = 0; u < n; ++u)
            for (int v : m.out[u])
                if (rep_of[u] != rep_of[v])
                    edges.emplace_back(slot[rep_of[u]], slot[rep_of[v]]);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        for (const auto& [u, v] : edges) quotient.add_edge(u, v);
        quotient.finalize();

        // The only components left are the absorbing singletons; every old
        // residual vertex stays residual.
        MecDecomposition again = mec_decomposition(quotient);
        REQUIRE(again.mecs.size() == dec.mecs.size());
        for (int r = 0; r < k; ++r) CHECK(again.mecs[r] == VertexSet::of(nq, {r}));
        CHECK(again.residual == VertexSet::full(nq) - [&] {
            VertexSet reps(nq);
            for (int r = 0; r < k; ++r) reps.set(r);
            return reps;
        }());
    }
}

TEST_CASE("decremental state starts at the static decomposition") {
    Arena one = fixtures::splitting_mec_mdp();
    DecMec dec(one);
    CHECK(dec.mecs() == std::vector<VertexSet>{VertexSet::full(6)});
    CHECK(dec.residual().empty());
    CHECK(dec.query(0, 5));
    CHECK(dec.query(3, 3));

    Arena chain = fixtures::two_mec_chain_mdp();
    DecMec dc(chain);
    REQUIRE(dc.mecs().size() == 2);
    CHECK(dc.query(0, 1));
    CHECK(dc.query(0, 0));
    CHECK(dc.query(4, 7));
    CHECK_FALSE(dc.query(0, 4));
    CHECK_FALSE(dc.query(3, 3));  // residual vertices match nothing
    CHECK_FALSE(dc.query(3, 0));
    for (int u = 0; u < 8; ++u)
        for (int v : dc.scc().out()[u]) CHECK(dc.scc().rep(u) == dc.scc().rep(v));
}

TEST_CASE("deleting an edge outside every component changes nothing") {
    Arena chain = fixtures::two_mec_chain_mdp();
    DecMec dec(chain);
    std::vector<VertexSet> before = dec.mecs();
    CHECK(dec.delete_announce(2, 3).empty());
    CHECK(dec.mecs() == before);
    CHECK(dec.query(0, 2));
    CHECK_FALSE(std::binary_search(dec.remaining_out()[2].begin(),
                                   dec.remaining_out()[2].end(), 3));
}

TEST_CASE("a split component sheds its leaking part") {
    set_checked_mode(true);
    Arena m = fixtures::splitting_mec_mdp();
    DecMec dec(m);
    std::vector<int> fresh = dec.delete_announce(2, 3);
    REQUIRE(fresh.size() == 2);
    CHECK(dec.scc().members(fresh[0]) == VertexSet::of(6, {0, 1, 2}));
    CHECK(dec.scc().members(fresh[1]) == VertexSet::of(6, {4, 5}));
    CHECK(dec.mecs() == std::vector<VertexSet>{VertexSet::of(6, {0, 1, 2}),
                                               VertexSet::of(6, {4, 5})});
    CHECK(dec.residual() == VertexSet::of(6, {3}));
    CHECK(dec.query(4, 5));
    CHECK_FALSE(dec.query(3, 3));
    CHECK_FALSE(dec.query(0, 4));
    set_checked_mode(false);
}

TEST_CASE("deletions are validated before anything mutates") {
    Arena m = fixtures::two_mec_chain_mdp();
    DecMec dec(m);
    CHECK_THROWS_WITH_AS(dec.delete_announce(3, 0), "player-1 edge required",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(dec.delete_announce(4, 6), "edge not present",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(dec.delete_announce(0, 8), "vertex out of range",
                         std::invalid_argument);

    Arena p2 = fixtures::build(ModelKind::Game, 2, {{0, 1}, {1, 0}}, {}, {1});
    CHECK_THROWS_WITH_AS(mec_decomposition(p2), "mdp arena required",
                         std::invalid_argument);
    Arena partial = fixtures::build(ModelKind::Graph, 2, {{0, 1}});
    CHECK_THROWS_WITH_AS(mec_decomposition(partial), "total arena required",
                         std::invalid_argument);
}

TEST_CASE("removing a vertex's last edge strands it outside every component") {
    set_checked_mode(true);
    Arena chain = fixtures::two_mec_chain_mdp();
    DecMec dec(chain);
    CHECK(dec.delete_announce(2, 3).empty());  // cross edge, then the last one
    CHECK(dec.delete_announce(2, 0).empty());  // breaks the 3-cycle for good
    CHECK(dec.remaining_out()[2].empty());
    CHECK(dec.mecs() == std::vector<VertexSet>{VertexSet::of(8, {4, 5, 6, 7})});
    CHECK(dec.residual() == VertexSet::of(8, {0, 1, 2, 3}));
    CHECK_FALSE(dec.query(2, 2));
    CHECK_FALSE(dec.query(0, 1));
    set_checked_mode(false);
}

TEST_CASE("random deletion sequences track the static decomposition") {
    set_checked_mode(true);
    gen::Rng rng(0x3ec7ull);
    for (int round = 0; round < 40; ++round) {
        int n = 2 + gen::draw(rng, 8);
        Arena m = gen::random_mdp(n, 2 + gen::draw(rng, 3 * n), rng(), round % 4 == 0);
        DecMec dec(m);
        std::vector<VertexSet> previous = dec.mecs();

        for (int step = 0; step < 25; ++step) {
            // Pick a deletable player-1 edge: the owner moves and keeps at
            // least one alternative.
            std::vector<std::pair<int, int>> candidates;
            for (int u = 0; u < n; ++u) {
                if (m.owner[u] != Owner::P1 || dec.remaining_out()[u].size() < 2) continue;
                for (int v : dec.remaining_out()[u]) candidates.emplace_back(u, v);
            }
            if (candidates.empty()) break;
            auto [u, v] = candidates[gen::draw(rng, static_cast<int>(candidates.size()))];

            std::vector<int> fresh = dec.delete_announce(u, v);
            Arena now = rebuild_mdp(m, dec.remaining_out());
            MecDecomposition truth = mec_decomposition(now);
            CHECK(dec.mecs() == truth.mecs);
            CHECK(dec.residual() == truth.residual);

            // The announcement is exactly the set of components that exist
            // now but did not before the deletion.
            std::vector<VertexSet> created;
            for (const VertexSet& mec : truth.mecs)
                if (std::find(previous.begin(), previous.end(), mec) == previous.end())
                    created.push_back(mec);
            std::vector<VertexSet> announced;
            for (int h : fresh) announced.push_back(dec.scc().members(h));
            CHECK(announced == created);
            previous = truth.mecs;

            for (int q = 0; q < 10; ++q) {
                int a = gen::draw(rng, n);
                int b = gen::draw(rng, n);
                bool same = false;
                for (const VertexSet& mec : truth.mecs)
                    if (mec.test(a) && mec.test(b)) same = true;
                CHECK(dec.query(a, b) == same);
            }
        }
    }
    set_checked_mode(false);
}

TEST_CASE("unrestricted deletions match the enumeration oracle") {
    set_checked_mode(true);
    gen::Rng rng(0x3ec8ull);
    for (int round = 0; round < 30; ++round) {
        int n = 2 + gen::draw(rng, 7);
        Arena m = gen::random_mdp(n, 2 + gen::draw(rng, 3 * n), rng(), round % 4 == 0);
        DecMec dec(m);
        std::vector<VertexSet> previous = dec.mecs();

        for (int step = 0; step < 20; ++step) {
            // Any player-1 edge goes, including a vertex's last one.
            std::vector<std::pair<int, int>> candidates;
            for (int u = 0; u < n; ++u) {
                if (m.owner[u] != Owner::P1) continue;
                for (int v : dec.remaining_out()[u]) candidates.emplace_back(u, v);
            }
            if (candidates.empty()) break;
            auto [u, v] = candidates[gen::draw(rng, static_cast<int>(candidates.size()))];

            std::vector<int> fresh = dec.delete_announce(u, v);
            Arena now = rebuild_mdp(m, dec.remaining_out());
            std::vector<VertexSet> truth = oracles::brute_mec(now);
            CHECK(dec.mecs() == truth);
            std::vector<VertexSet> created;
            for (const VertexSet& mec : truth)
                if (std::find(previous.begin(), previous.end(), mec) == previous.end())
                    created.push_back(mec);
            std::vector<VertexSet> announced;
            for (int h : fresh) announced.push_back(dec.scc().members(h));
            CHECK(announced == created);
            previous = truth;
        }
    }
    set_checked_mode(false);
}
