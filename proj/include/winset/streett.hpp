#pragma once

#include <optional>
#include <set>
#include <vector>

#include "winset/arena.hpp"
#include "winset/objectives.hpp"
#include "winset/vertex_set.hpp"

namespace winset {

// Winning sets for strong-fairness objectives given as request/grant pairs.
// A play satisfies a pair when visiting the request set infinitely often
// implies visiting the grant set infinitely often, and wins when every pair
// is satisfied. On graphs the winners are the vertices that can reach a
// strongly connected component containing a good component; on MDPs the
// vertices that almost surely reach a maximal end-component containing a
// good end-component.

// Pair-membership index built once per solver run and shared by all its
// trackers: for every vertex the pairs requesting and granting it, and for
// every pair its request members, each list ascending.
struct PairIndex {
    PairIndex(int n, const std::vector<StreettPair>& pairs);

    int k = 0;
    std::vector<std::vector<int>> requested_by;  // vertex -> pair ids requesting it
    std::vector<std::vector<int>> granted_by;    // vertex -> pair ids granting it
    std::vector<std::vector<int>> requesters;    // pair id -> its request members
};

// One tracked vertex set of the search. Per pair only the sizes of the
// intersections with the request and grant sets are kept, and the bad set
// is maintained eagerly, so reading it is free and removals cost time
// proportional to the removed vertices' pair memberships.
class PairTracker {
public:
    PairTracker(const PairIndex& index, VertexSet tracked);

    const VertexSet& tracked() const { return tracked_; }

    // Members requested by some pair whose grant set has left the tracked
    // set. Such a vertex cannot lie on any fair cycle inside the set.
    const VertexSet& bad() const { return bad_; }

    // Removes `gone` from the tracked set, ignoring vertices already
    // outside. Pairs losing their last grant mark their remaining
    // requesters bad.
    void remove(const VertexSet& gone);

    // Handles of the current components inside the tracked set; the search
    // drivers keep this in step with their decremental structure.
    std::set<int> parts;

private:
    const PairIndex* index_;
    VertexSet tracked_;
    VertexSet bad_;
    std::vector<int> request_count_;
    std::vector<int> grant_count_;
};

// A good component of the subgraph induced on `scc`: a vertex set inducing
// a strongly connected subgraph with at least one edge in which every
// requested pair is also granted. Returns the component found by the
// deterministic search (peel bad vertices, hand split parts of at most half
// the size to fresh trackers in ascending order of smallest member, keep
// the rest together), or nothing when no good component exists. The induced
// subgraph on `scc` must be strongly connected.
std::optional<VertexSet> good_component(const Arena& graph, const VertexSet& scc,
                                        const std::vector<StreettPair>& pairs);

// Vertices with some path along which every pair is satisfied: everything
// that can reach a strongly connected component containing a good
// component.
VertexSet streett_winning_graph(const Arena& graph, const std::vector<StreettPair>& pairs);

// MDP with every vertex v doubled into an in-copy 2v owned by player 1 and
// an out-copy 2v+1 keeping v's owner. The in-copy's only edge leads to the
// out-copy and every original edge (u, v) becomes (2u+1, 2v), so deleting
// the bridge (2v, 2v+1) removes v from every end-component while the arena
// itself stays intact. That is what lets a decremental component structure
// drive the search over MDPs. Requests move to in-copies and grants to
// out-copies; good end-components then correspond copy-for-copy.
struct SplitInstance {
    Arena mdp;
    std::vector<StreettPair> pairs;
};
SplitInstance split_transform(const Arena& mdp, const std::vector<StreettPair>& pairs);

// Vertices from which player 1 satisfies every pair almost surely: those
// that almost surely reach a maximal end-component containing a good
// end-component.
VertexSet streett_winning_mdp(const Arena& mdp, const std::vector<StreettPair>& pairs);

}  // namespace winset
