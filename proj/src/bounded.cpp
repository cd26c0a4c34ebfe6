#include "winset/bounded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include "winset/checked.hpp"
#include "winset/gen.hpp"

namespace winset {

namespace {

constexpr int kMaxLayeredIds = 1 << 26;
constexpr int kUnreached = std::numeric_limits<int>::max() / 2;

void require_layer_input(const Arena& graph, const VertexSet& s, int d) {
    detail::require(graph.finalized(), "finalized arena required");
    detail::require(s.universe() == graph.n, "vertex set size mismatch");
    detail::require(d >= 1, "window length must be positive");
}

void require_scc(const Arena& graph, const VertexSet& scc) {
    detail::require(scc_decomposition(graph, scc).size() == 1, "strongly connected set required");
}

// Live copies of the vertices in `keep`.
VertexSet restrict_live(const LayeredAux& aux, const VertexSet& keep) {
    VertexSet mask(aux.graph.n);
    keep.for_each([&](int v) {
        for (int l = 0; l <= aux.d; ++l) {
            int x = aux.id(v, l);
            if (aux.live.test(x)) mask.set(x);
        }
    });
    return mask;
}

// Does the restriction of `g` to `mask` contain a cycle? Self-loops count.
bool has_cycle_within(const Arena& g, const VertexSet& mask) {
    for (const VertexSet& comp : scc_decomposition(g, mask))
        if (has_internal_edge(g, comp)) return true;
    return false;
}

// Breadth-first distances from `source` along out-edges, confined to
// `within`. Unreached vertices hold kUnreached.
std::vector<int> bfs_within(const Arena& graph, const VertexSet& within, int source,
                            bool reversed) {
    std::vector<int> dist(static_cast<size_t>(graph.n), kUnreached);
    std::vector<int> queue;
    dist[static_cast<size_t>(source)] = 0;
    queue.push_back(source);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        const auto& step = reversed ? graph.in[static_cast<size_t>(u)]
                                    : graph.out[static_cast<size_t>(u)];
        for (int v : step) {
            if (!within.test(v) || dist[static_cast<size_t>(v)] != kUnreached) continue;
            dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(u)] + 1;
            queue.push_back(v);
        }
    }
    return dist;
}

// Shortest cycle through `v` inside `within`, given forward distances from v.
int shortest_cycle(const Arena& graph, const VertexSet& within, int v,
                   const std::vector<int>& dist_from_v) {
    int best = kUnreached;
    for (int u : graph.in[static_cast<size_t>(v)]) {
        if (!within.test(u)) continue;
        int d = dist_from_v[static_cast<size_t>(u)];
        if (d < kUnreached) best = std::min(best, d + 1);
    }
    return best;
}

}  // namespace

LayeredAux build_aux(const Arena& graph, const VertexSet& b, int d, bool keep_last_layer) {
    require_layer_input(graph, b, d);
    detail::require(static_cast<long long>(graph.n) * (d + 1) <= kMaxLayeredIds,
                    "layered graph too large");
    LayeredAux aux;
    aux.d = d;
    aux.stride = d + 1;
    aux.has_last_layer = keep_last_layer;
    aux.live = VertexSet(graph.n * aux.stride);
    int top = keep_last_layer ? d : d - 1;
    for (int v = 0; v < graph.n; ++v) {
        if (b.test(v))
            aux.live.set(aux.id(v, 0));
        else
            for (int l = 1; l <= top; ++l) aux.live.set(aux.id(v, l));
    }
    Arena g = Arena::make(ModelKind::Graph, graph.n * aux.stride);
    for (int u = 0; u < graph.n; ++u) {
        for (int v : graph.out[static_cast<size_t>(u)]) {
            if (b.test(v)) {
                // arrival in b resets the counter
                if (b.test(u))
                    g.add_edge(aux.id(u, 0), aux.id(v, 0));
                else
                    for (int l = 1; l <= top; ++l) g.add_edge(aux.id(u, l), aux.id(v, 0));
            } else {
                // the counter ticks up, saturating at the top layer
                if (b.test(u)) {
                    if (top >= 1) g.add_edge(aux.id(u, 0), aux.id(v, 1));
                } else {
                    for (int l = 1; l < top; ++l) g.add_edge(aux.id(u, l), aux.id(v, l + 1));
                    if (keep_last_layer) g.add_edge(aux.id(u, d), aux.id(v, d));
                }
            }
        }
    }
    g.finalize();
    aux.graph = std::move(g);
    return aux;
}

bool bounded_buchi_scc(const Arena& graph, const VertexSet& scc, const VertexSet& b, int d) {
    require_layer_input(graph, scc, d);
    detail::require(b.universe() == graph.n, "vertex set size mismatch");
    require_scc(graph, scc);
    // A layered cycle closes the counter loop, so every gap stays within d.
    LayeredAux aux = build_aux(graph, b & scc, d, false);
    return has_cycle_within(aux.graph, restrict_live(aux, scc));
}

bool bounded_buchi_scc_pairs(const Arena& graph, const VertexSet& scc, const VertexSet& b,
                             int d) {
    require_layer_input(graph, scc, d);
    detail::require(b.universe() == graph.n, "vertex set size mismatch");
    require_scc(graph, scc);
    std::vector<int> anchors = (b & scc).to_vector();
    if (anchors.empty()) return false;
    // One search per anchor gives all pairwise gaps; an anchor's gap to
    // itself is its shortest cycle. A cycle in the gap graph stitches the
    // short hops into one closed walk.
    int k = static_cast<int>(anchors.size());
    Arena gaps = Arena::make(ModelKind::Graph, k);
    for (int i = 0; i < k; ++i) {
        std::vector<int> dist = bfs_within(graph, scc, anchors[i], false);
        for (int j = 0; j < k; ++j) {
            int gap = i == j ? shortest_cycle(graph, scc, anchors[i], dist)
                             : dist[static_cast<size_t>(anchors[j])];
            if (gap <= d) gaps.add_edge(i, j);
        }
    }
    gaps.finalize();
    return has_cycle_within(gaps, VertexSet::full(k));
}

bool bounded_buchi_scc_rand(const Arena& graph, const VertexSet& scc, const VertexSet& b, int d,
                            int n_param, std::uint64_t seed) {
    require_layer_input(graph, scc, d);
    detail::require(b.universe() == graph.n, "vertex set size mismatch");
    require_scc(graph, scc);
    detail::require(n_param >= scc.count(), "sampling parameter below the vertex count");
    if (static_cast<long long>(d) * d < n_param) return bounded_buchi_scc(graph, scc, b, d);
    int t = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_param))));
    while (static_cast<long long>(t) * t < n_param) ++t;
    while (t > 1 && static_cast<long long>(t - 1) * (t - 1) >= n_param) --t;
    if (t < 2) return bounded_buchi_scc(graph, scc, b, d);

    // Short gaps close inside a stack of t - 1 layers. Longer gaps pass
    // through at least t vertices, and enough samples hit one of them with
    // high probability; each sample advertises the gaps it can certify.
    int delta = t - 1;
    std::vector<int> members = scc.to_vector();
    int draws = static_cast<int>(
        std::ceil(4.0 * std::sqrt(static_cast<double>(n_param)) *
                  std::log(static_cast<double>(n_param))));
    gen::Rng rng(seed);
    VertexSet sampled(graph.n);
    for (int i = 0; i < draws; ++i)
        sampled.set(members[static_cast<size_t>(gen::draw(rng, static_cast<int>(members.size())))]);

    std::vector<int> anchors = (b & scc).to_vector();
    LayeredAux aux = build_aux(graph, (b & scc), delta, false);
    Arena patched = Arena::make(ModelKind::Graph, aux.graph.n);
    for (int x = 0; x < aux.graph.n; ++x)
        for (int y : aux.graph.out[static_cast<size_t>(x)]) patched.add_edge(x, y);

    std::vector<std::vector<int>> to_sample, from_sample;
    std::vector<int> sample_ids = sampled.to_vector();
    for (int s : sample_ids) {
        to_sample.push_back(bfs_within(graph, scc, s, true));
        from_sample.push_back(bfs_within(graph, scc, s, false));
    }
    std::set<std::pair<int, int>> added;
    for (size_t i = 0; i < anchors.size(); ++i) {
        for (size_t j = 0; j < anchors.size(); ++j) {
            int bi = anchors[i], bj = anchors[j];
            long long best = kUnreached;
            for (size_t si = 0; si < sample_ids.size(); ++si) {
                long long via;
                if (bi == bj && bi == sample_ids[si])
                    via = shortest_cycle(graph, scc, bi, from_sample[si]);
                else
                    via = static_cast<long long>(to_sample[si][static_cast<size_t>(bi)]) +
                          from_sample[si][static_cast<size_t>(bj)];
                best = std::min(best, via);
            }
            if (best > d) continue;
            int x = aux.id(bi, 0), y = aux.id(bj, 0);
            if (!aux.graph.has_edge(x, y) && added.insert({x, y}).second) patched.add_edge(x, y);
        }
    }
    patched.finalize();
    return has_cycle_within(patched, restrict_live(aux, scc));
}

bool bounded_cobuchi_scc(const Arena& graph, const VertexSet& scc, const VertexSet& c, int d) {
    require_layer_input(graph, scc, d);
    detail::require(c.universe() == graph.n, "vertex set size mismatch");
    require_scc(graph, scc);
    VertexSet stay = c & scc;
    if (stay.empty()) return false;
    // A cycle inside the persistence set hosts arbitrarily long stretches.
    std::vector<VertexSet> comps = scc_decomposition(graph, stay);
    for (const VertexSet& comp : comps)
        if (has_internal_edge(graph, comp)) return true;
    // Acyclic restriction: the longest path is the longest stretch. The
    // components arrive sinks first, so walk them backwards.
    std::vector<int> len(static_cast<size_t>(graph.n), 0);
    int best = 0;
    for (auto it = comps.rbegin(); it != comps.rend(); ++it) {
        int v = it->first();
        for (int u : graph.in[static_cast<size_t>(v)])
            if (stay.test(u)) len[static_cast<size_t>(v)] =
                std::max(len[static_cast<size_t>(v)], len[static_cast<size_t>(u)] + 1);
        best = std::max(best, len[static_cast<size_t>(v)]);
    }
    // len counts edges; a stretch of d vertices has d - 1 of them.
    return best >= d - 1;
}

VertexSet bounded_buchi_winning(const Arena& graph, const VertexSet& b, int d,
                                BoundedVariant variant, std::uint64_t seed) {
    require_layer_input(graph, b, d);
    gen::Rng rng(seed);
    VertexSet hosts(graph.n);
    for (const VertexSet& scc : scc_decomposition(graph)) {
        if (!has_internal_edge(graph, scc)) continue;  // hosts no infinite run
        bool good = false;
        switch (variant) {
            case BoundedVariant::Layers: good = bounded_buchi_scc(graph, scc, b, d); break;
            case BoundedVariant::Pairs: good = bounded_buchi_scc_pairs(graph, scc, b, d); break;
            case BoundedVariant::Sampled:
                good = bounded_buchi_scc_rand(graph, scc, b, d, graph.n, rng());
                break;
        }
        if (good) hosts |= scc;
    }
    return graph_reach(graph, hosts);
}

VertexSet bounded_cobuchi_winning(const Arena& graph, const VertexSet& c, int d) {
    require_layer_input(graph, c, d);
    VertexSet hosts(graph.n);
    for (const VertexSet& scc : scc_decomposition(graph)) {
        if (!has_internal_edge(graph, scc)) continue;
        if (bounded_cobuchi_scc(graph, scc, c, d)) hosts |= scc;
    }
    return graph_reach(graph, hosts);
}

namespace {

// In-edge schedule for the sparse approximations: edges leaving player-2
// vertices outside the target first, then the rest, source ascending within
// each class. The schedule is fixed once per solve.
std::vector<std::vector<int>> in_edge_order(const Arena& game, const VertexSet& b) {
    std::vector<std::vector<int>> order(static_cast<size_t>(game.n));
    for (int v = 0; v < game.n; ++v) {
        auto& lst = order[static_cast<size_t>(v)];
        lst.reserve(game.in[static_cast<size_t>(v)].size());
        for (int u : game.in[static_cast<size_t>(v)])
            if (game.owner[static_cast<size_t>(u)] == Owner::P2 && !b.test(u)) lst.push_back(u);
        for (int u : game.in[static_cast<size_t>(v)])
            if (game.owner[static_cast<size_t>(u)] != Owner::P2 || b.test(u)) lst.push_back(u);
    }
    return order;
}

// Player-1 attractor over an explicit edge subset. Player-2 vertices with no
// listed out-edge must already sit in the target.
VertexSet sparse_attractor(const Arena& game, const VertexSet& target, const VertexSet& alive,
                           const std::vector<std::vector<int>>& eout,
                           const std::vector<std::vector<int>>& ein) {
    VertexSet attr(game.n);
    std::vector<int> cnt(static_cast<size_t>(game.n), 0);
    std::vector<int> queue;
    alive.for_each([&](int v) {
        if (game.owner[static_cast<size_t>(v)] != Owner::P1)
            cnt[static_cast<size_t>(v)] = static_cast<int>(eout[static_cast<size_t>(v)].size());
    });
    target.for_each([&](int v) {
        attr.set(v);
        queue.push_back(v);
    });
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        for (int u : ein[static_cast<size_t>(queue[qi])]) {
            if (attr.test(u)) continue;
            bool joins = game.owner[static_cast<size_t>(u)] == Owner::P1 ||
                         --cnt[static_cast<size_t>(u)] == 0;
            if (joins) {
                attr.set(u);
                queue.push_back(u);
            }
        }
    }
    return attr;
}

// Search the subgame on `alive` for a player-1 closed set free of `b`,
// doubling the edge budget of the sparse approximation until one shows up or
// the approximation is exact. Vertices too wide for the budget count as
// target: blue player-1 vertices keep their full choice hidden, red player-2
// vertices lost every listed move.
VertexSet doubling_cut(const Arena& game, const VertexSet& b, const VertexSet& alive,
                       const std::vector<std::vector<int>>& order, int* level) {
    *level = 0;
    int count = alive.count();
    if (count == 0) return VertexSet(game.n);
    int cap = 1;
    while ((1LL << cap) < count) ++cap;
    for (int i = 1;; ++i) {
        long long budget = 1LL << i;
        std::set<std::pair<int, int>> picked;
        VertexSet flagged(game.n);
        alive.for_each([&](int u) {
            std::vector<int> succ;
            for (int v : game.out[static_cast<size_t>(u)])
                if (alive.test(v)) succ.push_back(v);
            if (static_cast<long long>(succ.size()) <= budget) {
                for (int v : succ) picked.insert({u, v});
            } else if (game.owner[static_cast<size_t>(u)] == Owner::P1) {
                flagged.set(u);
            }
        });
        alive.for_each([&](int v) {
            long long taken = 0;
            for (int u : order[static_cast<size_t>(v)]) {
                if (!alive.test(u)) continue;
                picked.insert({u, v});
                if (++taken == budget) break;
            }
        });
        std::vector<std::vector<int>> eout(static_cast<size_t>(game.n));
        std::vector<std::vector<int>> ein(static_cast<size_t>(game.n));
        for (const auto& [u, v] : picked) {
            eout[static_cast<size_t>(u)].push_back(v);
            ein[static_cast<size_t>(v)].push_back(u);
        }
        alive.for_each([&](int u) {
            if (game.owner[static_cast<size_t>(u)] == Owner::P2 &&
                eout[static_cast<size_t>(u)].empty())
                flagged.set(u);
        });
        VertexSet target = (b & alive) | flagged;
        VertexSet cut = alive - sparse_attractor(game, target, alive, eout, ein);
        if (!cut.empty() || i >= cap) {
            *level = i;
            return cut;
        }
    }
}

// The cut must be player-1 closed, free of targets, and disjoint from their
// player-1 attractor, all within the current subgame.
void verify_cut(const Arena& game, const VertexSet& b, const VertexSet& alive,
                const VertexSet& cut) {
    cut.for_each([&](int u) {
        detail::invariant(!b.test(u), "cut contains a target vertex");
        bool stays = false, leaves = false;
        for (int v : game.out[static_cast<size_t>(u)]) {
            if (!alive.test(v)) continue;
            (cut.test(v) ? stays : leaves) = true;
        }
        if (game.owner[static_cast<size_t>(u)] == Owner::P1)
            detail::invariant(!leaves, "player-1 vertex escapes the cut");
        else
            detail::invariant(stays, "player-2 vertex stranded in the cut");
    });
    detail::invariant(!cut.intersects(attractor(game, Owner::P1, b & alive, &alive)),
                      "cut touches the target attractor");
}

}  // namespace

VertexSet buchi_games_fast(const Arena& game, const VertexSet& b, const VertexSet* within,
                           std::vector<CutRound>* rounds) {
    detail::require(game.finalized(), "finalized arena required");
    detail::require(b.universe() == game.n, "vertex set size mismatch");
    if (rounds) rounds->clear();
    VertexSet alive = within ? *within : game.vertices();
    detail::require(alive.universe() == game.n, "vertex set size mismatch");
    alive.for_each([&](int v) {
        detail::require(game.owner[static_cast<size_t>(v)] != Owner::Random,
                        "game or graph arena required");
        detail::require(!game.has_edge(v, v), "self-loop free arena required");
        bool total = false;
        for (int w : game.out[static_cast<size_t>(v)]) total |= alive.test(w);
        detail::require(total, "total arena required");
    });
    std::vector<std::vector<int>> order = in_edge_order(game, b);

    // Peel player-2 traps until the target attractor covers what is left.
    // The opening round works on the full game, later rounds go through the
    // doubling search.
    VertexSet cut = alive - attractor(game, Owner::P1, b & alive, &alive);
    int level = 0;
    while (!cut.empty()) {
        if (checked_mode()) verify_cut(game, b, alive, cut);
        VertexSet removed = attractor(game, Owner::P2, cut, &alive);
        if (rounds) rounds->push_back({cut, removed, level});
        alive -= removed;
        cut = doubling_cut(game, b, alive, order, &level);
    }
    return alive;
}

VertexSet bounded_buchi_games(const Arena& game, const VertexSet& b, int d) {
    require_layer_input(game, b, d);
    for (int v = 0; v < game.n; ++v) {
        detail::require(game.owner[static_cast<size_t>(v)] != Owner::Random,
                        "game or graph arena required");
        detail::require(game.out_deg(v) > 0, "total arena required");
        detail::require(!game.has_edge(v, v), "self-loop free arena required");
    }

    // Guard every target behind a fresh opponent gate, so each visit costs
    // one extra step and every edge into a target leaves an opponent vertex.
    // The sparse rounds of the game solver rely on that shape; the bound
    // grows by one to pay for the gates.
    int base = game.n;
    std::vector<int> gate(static_cast<size_t>(base), -1);
    int extra = 0;
    b.for_each([&](int v) { gate[static_cast<size_t>(v)] = base + extra++; });
    Arena guarded = Arena::make(ModelKind::Game, base + extra);
    for (int v = 0; v < base; ++v) guarded.owner[static_cast<size_t>(v)] = game.owner[v];
    b.for_each([&](int v) {
        guarded.owner[static_cast<size_t>(gate[static_cast<size_t>(v)])] = Owner::P2;
        guarded.add_edge(gate[static_cast<size_t>(v)], v);
    });
    for (int u = 0; u < base; ++u)
        for (int v : game.out[static_cast<size_t>(u)])
            guarded.add_edge(u, b.test(v) ? gate[static_cast<size_t>(v)] : v);
    guarded.finalize();
    VertexSet targets(guarded.n);
    b.for_each([&](int v) { targets.set(v); });
    int bound = d + 1;

    // The opponent drives the layered game: reaching the top layer means a
    // window overflowed, and forcing that infinitely often defeats the
    // bound. Ownership is therefore flipped.
    LayeredAux aux = build_aux(guarded, targets, bound, true);
    Arena layered = Arena::make(ModelKind::Game, aux.graph.n);
    for (int v = 0; v < guarded.n; ++v) {
        Owner flipped =
            guarded.owner[static_cast<size_t>(v)] == Owner::P1 ? Owner::P2 : Owner::P1;
        for (int l = 0; l <= bound; ++l)
            layered.owner[static_cast<size_t>(aux.id(v, l))] = flipped;
    }
    for (int x = 0; x < aux.graph.n; ++x)
        for (int y : aux.graph.out[static_cast<size_t>(x)]) layered.add_edge(x, y);
    layered.finalize();
    VertexSet overflow(layered.n);
    for (int v = 0; v < guarded.n; ++v)
        if (!targets.test(v)) overflow.set(aux.id(v, bound));

    std::vector<CutRound> rounds;
    VertexSet forced = buchi_games_fast(layered, overflow, &aux.live,
                                        checked_mode() ? &rounds : nullptr);
    if (checked_mode()) {
        for (const CutRound& r : rounds) {
            // Deleted sets take every counter copy of a vertex with them.
            r.removed.for_each([&](int x) {
                if (aux.layer_of(x) == 0) return;
                int v = aux.vertex_of(x);
                for (int l = 1; l <= bound; ++l) {
                    int y = aux.id(v, l);
                    if (aux.live.test(y))
                        detail::invariant(r.removed.test(y), "deleted vertex left a copy behind");
                }
            });
            // A cut found after i doubling steps spans 2^(i-1) vertices.
            if (r.doubling_steps >= 1) {
                VertexSet spanned(guarded.n);
                r.cut.for_each([&](int x) { spanned.set(aux.vertex_of(x)); });
                detail::invariant(static_cast<long long>(spanned.count()) >=
                                      (1LL << (r.doubling_steps - 1)),
                                  "cut below the doubling size bound");
            }
        }
    }

    VertexSet winners(game.n);
    for (int v = 0; v < base; ++v)
        for (int l = 0; l <= bound && !winners.test(v); ++l) {
            int x = aux.id(v, l);
            if (aux.live.test(x) && !forced.test(x)) winners.set(v);
        }
    return winners;
}

}  // namespace winset
