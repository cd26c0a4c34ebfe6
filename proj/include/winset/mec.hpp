#pragma once

#include <vector>

#include "winset/arena.hpp"
#include "winset/dec_scc.hpp"
#include "winset/vertex_set.hpp"

namespace winset {

// Maximal end-components of an MDP. An end-component is a vertex set that
// induces a strongly connected subgraph with at least one edge and that no
// random member can leave; the components listed here are the maximal ones.
// Vertices covered by no such component form the residual: random vertices
// doomed to leave every candidate, and player-1 vertices whose only option
// is to move on.
struct MecDecomposition {
    std::vector<VertexSet> mecs;  // disjoint, ascending smallest member
    VertexSet residual;           // vertices in no listed component
};

// Exact decomposition by repeatedly peeling bottom components: a bottom SCC
// is always a maximal end-component, and the random attractor of the peeled
// layer can never intersect another one.
MecDecomposition mec_decomposition(const Arena& mdp);

// Copy of the MDP that keeps only edges with both endpoints in the same
// listed component. Its non-trivial SCCs are exactly the components of the
// decomposition; everything else degenerates to isolated vertices.
Arena pure_mdp(const Arena& mdp, const MecDecomposition& dec);

// Vertices from which player 1 reaches T with probability one. Computed on
// the quotient where each maximal end-component collapses into one
// player-1 vertex (inside a component, every member is reachable almost
// surely): take the vertices that can reach T at all, then discard the
// random attractor of those that cannot, and map back.
VertexSet almost_sure_reach(const Arena& mdp, const VertexSet& t);

// Maximal end-components under player-1 edge deletions.
//
// The structure tracks the pure graph of the evolving MDP inside a DecScc
// instance, so same-component queries are rep comparisons. Deleting an edge
// whose endpoints share a component re-splits that component: cross-part
// edges are removed, parts that a random vertex can leave lose the random
// attractor of their leaks, and the survivors are split again until every
// part is either a maximal end-component or has dissolved.
class DecMec {
public:
    // The arena must stay alive for the lifetime of this object.
    explicit DecMec(const Arena& mdp);

    const DecScc& scc() const { return scc_; }

    // Whether u and v currently share a maximal end-component. False for
    // residual vertices, even against themselves.
    bool query(int u, int v) const;

    // Deletes the player-1 edge (u, v) from the tracked MDP and returns the
    // handles of the non-trivial components created by the update, ascending
    // by smallest member. Edges outside every component leave the component
    // structure unchanged and announce nothing.
    std::vector<int> delete_announce(int u, int v);

    // Current components and residual, for cross-checks against the static
    // decomposition.
    std::vector<VertexSet> mecs() const;
    VertexSet residual() const;

    // Out-adjacency of the tracked MDP after all deletions so far.
    const std::vector<std::vector<int>>& remaining_out() const { return remaining_; }

private:
    bool non_trivial(int handle) const;
    void process_parts(const std::vector<int>& parts, std::vector<std::vector<int>>& queue);

    const Arena* mdp_;
    std::vector<std::vector<int>> remaining_;
    DecScc scc_;
};

}  // namespace winset
