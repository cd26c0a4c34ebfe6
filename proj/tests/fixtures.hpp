#pragma once

#include <utility>
#include <vector>

#include "winset/arena.hpp"
#include "winset/objectives.hpp"

// Small hand-built instances shared across test files. Each builder returns a
// finalized arena whose structure the tests rely on, so changes here must be
// mirrored in every expectation that names these vertices.

namespace fixtures {

inline winset::Arena build(winset::ModelKind kind, int n,
                           const std::vector<std::pair<int, int>>& edges,
                           const std::vector<int>& random_vertices = {},
                           const std::vector<int>& p2_vertices = {}) {
    winset::Arena a = winset::Arena::make(kind, n);
    for (int v : random_vertices) a.owner[static_cast<size_t>(v)] = winset::Owner::Random;
    for (int v : p2_vertices) a.owner[static_cast<size_t>(v)] = winset::Owner::P2;
    for (const auto& [u, v] : edges) a.add_edge(u, v);
    a.finalize();
    return a;
}

// Three-block chain: a 3-cycle {0,1,2}, a bridge vertex 3, and a 4-cycle
// {4,5,6,7}. Its condensation is the path {0,1,2} -> {3} -> {4,5,6,7}, so
// the graph has exactly three strongly connected components.
inline winset::Arena three_block_chain_graph() {
    return build(winset::ModelKind::Graph, 8,
                 {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 4}});
}

// The chain above turned into an MDP: vertices 0, 1, 3, 6 become random and
// the extra edge 3 -> 0 closes a cycle through the bridge. The maximal
// end-components are {0,1,2} and {4,5,6,7}; vertex 3 is random with the edge
// 3 -> 4 leaving every candidate component, so it belongs to no MEC even
// though it lies on a cycle. Contracting the MECs therefore leaves a cyclic
// quotient, unlike the acyclic condensation of the plain chain.
inline winset::Arena two_mec_chain_mdp() {
    return build(winset::ModelKind::Mdp, 8,
                 {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 0}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 4}},
                 {0, 1, 3, 6});
}

// Hub-and-spoke fairness instance: vertex 0 is a hub joining the 2-cycle
// {1,2}, the leaf 3, and the 4-cycle {4,5,6,7} into one strongly connected
// graph. The pair set below drives a fixed cascade: pair 3 makes the hub bad
// outright (empty grant set), deleting the hub's edges splits the graph into
// four parts, losing the hub makes vertex 1 bad (its grant was the hub), and
// the surviving 4-cycle satisfies every pair that touches it.
inline winset::Arena hub_and_spoke_graph() {
    return build(winset::ModelKind::Graph, 8,
                 {{0, 1}, {0, 3}, {0, 4}, {1, 2}, {2, 0}, {2, 1}, {3, 0},
                  {4, 5}, {5, 6}, {6, 7}, {7, 0}, {7, 4}});
}

inline std::vector<winset::StreettPair> hub_and_spoke_pairs() {
    using winset::VertexSet;
    std::vector<winset::StreettPair> pairs;
    pairs.push_back({VertexSet::of(8, {4}), VertexSet::of(8, {6})});
    pairs.push_back({VertexSet::of(8, {5}), VertexSet::of(8, {7})});
    pairs.push_back({VertexSet::of(8, {1}), VertexSet::of(8, {0})});
    pairs.push_back({VertexSet::of(8, {0}), VertexSet(8)});
    return pairs;
}

// One maximal end-component {0..5} held together by the player-1 edge
// (2, 3). Deleting it splits the component into the 3-cycle {0,1,2} and
// {3,4,5}. The second part is no component: random vertex 3 keeps the leak
// 3 -> 0, so {3} plus everything forced into it must go, and the 2-cycle
// {4,5} left behind is a maximal end-component again.
inline winset::Arena splitting_mec_mdp() {
    return build(winset::ModelKind::Mdp, 6,
                 {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 0}, {3, 4}, {4, 5}, {5, 0}, {5, 3},
                  {5, 4}},
                 {1, 3});
}

// Random start vertex 0 fans out to three row vertices 1..3; rows reach the
// coordinate vertices 4..6 they set, coordinates reach the column vertices
// 7..9 that set them, and columns absorb through self-loops. Row 2 and
// column 9 are orthogonal (they share no coordinate), so nothing reaches 9
// from 2 and the random start cannot reach 9 almost surely.
inline winset::Arena ov_coverage_mdp() {
    return build(winset::ModelKind::Mdp, 10,
                 {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 4}, {2, 6}, {3, 5}, {3, 6},
                  {4, 7}, {4, 8}, {5, 8}, {5, 9}, {6, 7}, {7, 7}, {8, 8}, {9, 9}},
                 {0});
}

}  // namespace fixtures
