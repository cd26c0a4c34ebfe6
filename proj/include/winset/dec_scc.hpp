#pragma once

#include <utility>
#include <vector>

#include "winset/arena.hpp"
#include "winset/vertex_set.hpp"

namespace winset {

// Strongly connected components of a digraph under edge deletions.
//
// Components carry stable integer handles. A handle, once issued, is never
// reused; it stays valid until its component splits. A deletion batch removes
// every listed edge, recomputes the components that lost an internal edge,
// and issues fresh handles for all parts of every component that split.
// Components untouched by the batch keep their handles.
//
// The implementation recomputes affected components from scratch on every
// batch. That keeps the interface semantics exact and deterministic; it makes
// no attempt at the sublinear update bounds known for this problem.
class DecScc {
public:
    // The arena is read once as a plain digraph; owners and weights are
    // ignored. Handles are numbered by ascending smallest member.
    explicit DecScc(const Arena& graph);

    int n() const { return n_; }

    // Handle of the component currently containing u.
    int rep(int u) const;

    // Vertices behind a handle, frozen when the handle was issued.
    const VertexSet& members(int handle) const;

    // Number of condensation edges leaving a live component, deduplicated by
    // target component.
    int outgoing(int handle) const;

    bool live(int handle) const;

    // Total number of handles ever issued; valid handles are smaller.
    int handle_count() const { return static_cast<int>(members_.size()); }

    // Handles of the current partition, in ascending handle order.
    std::vector<int> live_handles() const;

    bool has_edge(int u, int v) const;

    // Adjacency after all deletions so far, ascending targets per source.
    const std::vector<std::vector<int>>& out() const { return out_; }

    // Deletes every edge in the batch, then announces the handles of all
    // parts of every component that split, in ascending order of smallest
    // member. Deleting an edge that is not present is a precondition error.
    std::vector<int> delete_announce(const std::vector<std::pair<int, int>>& edges);

    // As delete_announce, but announces only parts with no outgoing
    // condensation edge once the whole batch is applied.
    std::vector<int> delete_announce_no_outgoing(
        const std::vector<std::pair<int, int>>& edges);

private:
    int fresh_component(VertexSet members);
    void recount_outgoing();
    std::vector<VertexSet> strong_components(const VertexSet& within) const;

    int n_ = 0;
    std::vector<std::vector<int>> out_;
    std::vector<int> comp_of_;
    std::vector<VertexSet> members_;
    std::vector<char> live_;
    std::vector<int> outgoing_;
};

}  // namespace winset
