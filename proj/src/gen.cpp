#include "winset/gen.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <utility>
#include <vector>

namespace winset::gen {

int draw(Rng& rng, int bound) {
    detail::require(bound >= 1, "draw bound must be positive");
    auto b = static_cast<std::uint64_t>(bound);
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % b;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<int>(x % b);
}

VertexSet random_subset(int n, std::uint64_t seed, double density) {
    Rng rng(seed);
    VertexSet s(n);
    // Compare against a fixed-point threshold so the result only depends on
    // the raw generator stream.
    auto threshold = static_cast<std::uint64_t>(density * 4294967296.0);
    for (int v = 0; v < n; ++v)
        if (rng() % 4294967296ull < threshold) s.set(v);
    return s;
}

VertexSet random_nonempty_subset(int n, std::uint64_t seed, double density) {
    detail::require(n >= 1, "need at least one vertex");
    for (std::uint64_t round = 0;; ++round) {
        VertexSet s = random_subset(n, seed + 0x9e3779b97f4a7c15ull * (round + 1), density);
        if (!s.empty()) return s;
    }
}

namespace {

// Adds m distinct directed edges to the builder, preferring one out-edge per
// vertex first when ensure_total is set.
void fill_edges(Arena& a, int n, int m, Rng& rng, bool ensure_total, bool allow_self_loops) {
    std::set<std::pair<int, int>> used;
    auto add = [&](int u, int v) {
        if (!used.insert({u, v}).second) return false;
        a.add_edge(u, v);
        return true;
    };
    int added = 0;
    if (ensure_total) {
        detail::require(n >= 2 || allow_self_loops, "cannot make a 1-vertex arena total without self-loops");
        for (int u = 0; u < n; ++u) {
            int v;
            do {
                v = draw(rng, n);
            } while (v == u && !allow_self_loops);
            add(u, v);
            ++added;
        }
    }
    long long pairs = static_cast<long long>(n) * (allow_self_loops ? n : n - 1);
    m = static_cast<int>(std::min<long long>(m, pairs));
    while (added < m) {
        int u = draw(rng, n);
        int v = draw(rng, n);
        if (u == v && !allow_self_loops) continue;
        if (add(u, v)) ++added;
    }
}

}  // namespace

Arena random_digraph(int n, int m, std::uint64_t seed, bool allow_self_loops) {
    Rng rng(seed);
    Arena a = Arena::make(ModelKind::Graph, n);
    fill_edges(a, n, m, rng, false, allow_self_loops);
    a.finalize();
    return a;
}

Arena random_graph_total(int n, int m, std::uint64_t seed) {
    Rng rng(seed);
    Arena a = Arena::make(ModelKind::Graph, n);
    a.total_required = true;
    fill_edges(a, n, std::max(m, n), rng, true, false);
    a.finalize();
    return a;
}

Arena random_game(int n, int m, std::uint64_t seed) {
    Rng rng(seed);
    Arena a = Arena::make(ModelKind::Game, n);
    for (int v = 0; v < n; ++v) a.owner[static_cast<size_t>(v)] = draw(rng, 2) == 0 ? Owner::P1 : Owner::P2;
    fill_edges(a, n, std::max(m, n), rng, true, false);
    a.finalize();
    return a;
}

Arena random_mdp(int n, int m, std::uint64_t seed, bool allow_self_loops) {
    Rng rng(seed);
    Arena a = Arena::make(ModelKind::Mdp, n);
    for (int v = 0; v < n; ++v) a.owner[static_cast<size_t>(v)] = draw(rng, 2) == 0 ? Owner::P1 : Owner::Random;
    fill_edges(a, n, std::max(m, n), rng, true, allow_self_loops);
    a.finalize();
    return a;
}

Arena random_weighted_game(int n, int m, int W, std::uint64_t seed) {
    Rng rng(seed);
    Arena a = Arena::make(ModelKind::Game, n);
    for (int v = 0; v < n; ++v) a.owner[static_cast<size_t>(v)] = draw(rng, 2) == 0 ? Owner::P1 : Owner::P2;
    fill_edges(a, n, std::max(m, n), rng, true, false);
    a.finalize();
    a.wout.resize(a.out.size());
    for (size_t v = 0; v < a.out.size(); ++v) {
        a.wout[v].resize(a.out[v].size());
        for (auto& w : a.wout[v]) w = draw(rng, 2 * W + 1) - W;
    }
    return a;
}

void assign_priorities(Arena& a, int d, std::uint64_t seed) {
    detail::require(d >= 1, "need at least one priority");
    Rng rng(seed);
    for (int v = 0; v < a.n; ++v) a.set_priority(v, draw(rng, d));
}

Arena random_parity_game(int n, int m, int d, std::uint64_t seed) {
    Arena a = random_game(n, m, seed);
    assign_priorities(a, d, seed ^ 0xda3e39cb94b95bdbull);
    return a;
}

Arena random_mpp_game(int n, int m, int W, int d, std::uint64_t seed) {
    Arena a = random_weighted_game(n, m, W, seed);
    assign_priorities(a, d, seed ^ 0xda3e39cb94b95bdbull);
    return a;
}

}  // namespace winset::gen
