#pragma once

#include <cstdint>
#include <vector>

#include "winset/arena.hpp"
#include "winset/vertex_set.hpp"

namespace winset {

// Counter-layered copy of a graph. Vertex v at counter value l is the
// encoded id v * stride + l; `live` marks the ids that exist. Vertices in
// the distinguished set live on layer 0 only, the others on layers 1..d
// (1..d-1 when the last layer is dropped). Edges tick the counter up by one,
// saturating at the top layer, and reset it to 0 on arrival in the
// distinguished set.
struct LayeredAux {
    int d = 0;
    int stride = 0;
    bool has_last_layer = false;
    Arena graph;
    VertexSet live;

    int id(int v, int layer) const { return v * stride + layer; }
    int vertex_of(int x) const { return x / stride; }
    int layer_of(int x) const { return x % stride; }
};

// Build the layered copy of `graph` with counter range d and distinguished
// set `b`. With keep_last_layer the top layer d is present (saturating), so
// walks reaching it witness d consecutive steps outside `b`; without it any
// layered walk certifies gaps of at most d between visits to `b`.
LayeredAux build_aux(const Arena& graph, const VertexSet& b, int d, bool keep_last_layer);

// The next three decide whether the strongly connected set `scc` contains a
// closed walk whose gaps between consecutive visits to `b` are all at most d
// edges; walks are confined to the set. They differ only in method: a cycle
// search on the layered copy, one breadth-first search per b-vertex feeding
// a small gap graph, or sampled distance estimates that replace most of the
// per-vertex searches. The sampled variant never answers true on a bad set
// and misses a good one with probability at most 1/n_param^2; it delegates
// to the layered search when d * d < n_param.
bool bounded_buchi_scc(const Arena& graph, const VertexSet& scc, const VertexSet& b, int d);
bool bounded_buchi_scc_pairs(const Arena& graph, const VertexSet& scc, const VertexSet& b, int d);
bool bounded_buchi_scc_rand(const Arena& graph, const VertexSet& scc, const VertexSet& b, int d,
                            int n_param, std::uint64_t seed);

// Does the strongly connected set contain a walk of at least d consecutive
// vertices inside `c`? Either the restriction to c keeps a cycle, or it is
// acyclic and its longest path decides.
bool bounded_cobuchi_scc(const Arena& graph, const VertexSet& scc, const VertexSet& c, int d);

enum class BoundedVariant { Layers, Pairs, Sampled };

// Vertices with an infinite path that from some point on visits `b` at least
// every d steps. Decided per strongly connected component and closed under
// reachability. The seed feeds the sampled variant only; its per-component
// sampling parameter is the vertex count of the whole graph.
VertexSet bounded_buchi_winning(const Arena& graph, const VertexSet& b, int d,
                                BoundedVariant variant = BoundedVariant::Layers,
                                std::uint64_t seed = 0);

// Vertices with an infinite path along which some stretch of d consecutive
// vertices inside `c` recurs forever.
VertexSet bounded_cobuchi_winning(const Arena& graph, const VertexSet& c, int d);

// One deletion round of the game solver: the player-1 closed, target-free
// set it found, the player-2 attractor removed with it, and the number of
// edge-doubling steps the sparse search took (0 for the opening round, which
// works on the full game).
struct CutRound {
    VertexSet cut;
    VertexSet removed;
    int doubling_steps = 0;
};

// Player-1 winning set of the game with objective "visit `b` infinitely
// often", restricted to `within` when given. Each round sparsifies the
// remaining subgame with doubling edge budgets until a player-1 closed set
// free of `b` appears, then removes its player-2 attractor. The subgame must
// be total, self-loop free, and owned by the two players only. Pass `rounds`
// to record the deletion history.
VertexSet buchi_games_fast(const Arena& game, const VertexSet& b,
                           const VertexSet* within = nullptr,
                           std::vector<CutRound>* rounds = nullptr);

// Player-1 winning set of the game with objective "from some point on, at
// most d steps pass between consecutive visits to `b`". Solved on a layered
// copy of the game where the opponent tries to overflow the step counter
// infinitely often. The game must be total and self-loop free.
VertexSet bounded_buchi_games(const Arena& game, const VertexSet& b, int d);

}  // namespace winset
