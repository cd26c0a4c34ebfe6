#include "winset/streett.hpp"

#include <algorithm>
#include <deque>
#include <utility>

#include "winset/checked.hpp"
#include "winset/dec_scc.hpp"
#include "winset/mec.hpp"

namespace winset {

namespace {

void require_pairs(int n, const std::vector<StreettPair>& pairs) {
    detail::require(!pairs.empty(), "at least one pair required");
    for (const StreettPair& p : pairs)
        detail::require(p.request.universe() == n && p.grant.universe() == n,
                        "vertex set size mismatch");
}

void require_mdp(const Arena& a) {
    detail::require(a.finalized(), "finalized arena required");
    for (int v = 0; v < a.n; ++v)
        detail::require(a.owner[v] != Owner::P2, "mdp arena required");
    for (int v = 0; v < a.n; ++v)
        detail::require(!a.out[v].empty(), "total arena required");
}

// Whether the adjacency keeps an edge with both endpoints in s.
bool internal_edge_in(const std::vector<std::vector<int>>& out, const VertexSet& s) {
    for (int u = s.first(); u != -1; u = s.next(u))
        for (int w : out[u])
            if (s.test(w)) return true;
    return false;
}

// Every remaining edge with an endpoint in s.
std::vector<std::pair<int, int>> incident(const std::vector<std::vector<int>>& out,
                                          const VertexSet& s) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < static_cast<int>(out.size()); ++u)
        for (int v : out[u])
            if (s.test(u) || s.test(v)) edges.emplace_back(u, v);
    return edges;
}

}  // namespace

PairIndex::PairIndex(int n, const std::vector<StreettPair>& pairs)
    : k(static_cast<int>(pairs.size())),
      requested_by(static_cast<size_t>(n)),
      granted_by(static_cast<size_t>(n)),
      requesters(pairs.size()) {
    for (int j = 0; j < k; ++j) {
        pairs[j].request.for_each([&](int v) {
            requested_by[v].push_back(j);
            requesters[j].push_back(v);
        });
        pairs[j].grant.for_each([&](int v) { granted_by[v].push_back(j); });
    }
}

PairTracker::PairTracker(const PairIndex& index, VertexSet tracked)
    : index_(&index),
      tracked_(std::move(tracked)),
      bad_(tracked_.universe()),
      request_count_(index.k, 0),
      grant_count_(index.k, 0) {
    tracked_.for_each([&](int v) {
        for (int j : index_->requested_by[v]) ++request_count_[j];
        for (int j : index_->granted_by[v]) ++grant_count_[j];
    });
    for (int j = 0; j < index_->k; ++j)
        if (grant_count_[j] == 0 && request_count_[j] > 0)
            for (int v : index_->requesters[j])
                if (tracked_.test(v)) bad_.set(v);
}

void PairTracker::remove(const VertexSet& gone) {
    VertexSet dropped = gone & tracked_;
    dropped.for_each([&](int v) {
        tracked_.reset(v);
        bad_.reset(v);
    });
    // A pair whose last grant just left marks its surviving requesters;
    // countdowns make that scan happen at most once per pair.
    dropped.for_each([&](int v) {
        for (int j : index_->granted_by[v])
            if (--grant_count_[j] == 0 && request_count_[j] > 0)
                for (int u : index_->requesters[j])
                    if (tracked_.test(u)) bad_.set(u);
        for (int j : index_->requested_by[v]) --request_count_[j];
    });
}

std::optional<VertexSet> good_component(const Arena& graph, const VertexSet& scc,
                                        const std::vector<StreettPair>& pairs) {
    detail::require(graph.finalized(), "finalized arena required");
    detail::require(scc.universe() == graph.n, "vertex set size mismatch");
    require_pairs(graph.n, pairs);
    detail::require(scc_decomposition(graph, scc).size() == 1,
                    "strongly connected set required");

    // The component structure works on a copy holding only the induced
    // edges; vertices outside `scc` stay as isolated singletons so vertex
    // ids can be shared with the caller's universe.
    Arena induced = Arena::make(ModelKind::Graph, graph.n);
    for (int u = scc.first(); u != -1; u = scc.next(u))
        for (int v : graph.out[u])
            if (scc.test(v)) induced.add_edge(u, v);
    induced.finalize();

    DecScc dec(induced);
    PairIndex index(graph.n, pairs);
    std::vector<std::pair<int, int>> deleted;  // checked-mode log

    std::deque<PairTracker> queue;
    queue.emplace_back(index, scc);
    queue.back().parts.insert(dec.rep(scc.first()));

    while (!queue.empty()) {
        PairTracker tr = std::move(queue.front());
        queue.pop_front();

        // Peel bad vertices until none are left. Deleting their incident
        // edges isolates them; retired handles leave the part list and the
        // announced split parts join it.
        while (!tr.bad().empty()) {
            VertexSet b = tr.bad();
            tr.remove(b);
            std::vector<std::pair<int, int>> batch = incident(dec.out(), b);
            for (int x = b.first(); x != -1; x = b.next(x)) tr.parts.erase(dec.rep(x));
            for (int h : dec.delete_announce(batch)) tr.parts.insert(h);
            if (checked_mode()) deleted.insert(deleted.end(), batch.begin(), batch.end());
        }

        // A set whose subgraph keeps no edge can only carry trivial
        // components; it leaves the search for good.
        if (!internal_edge_in(dec.out(), tr.tracked())) continue;

        // A component spanning the whole set is the answer: nobody in it is
        // bad and it is strongly connected with at least one edge.
        bool spans = false;
        for (int h : tr.parts)
            if (dec.members(h) == tr.tracked()) {
                spans = true;
                break;
            }
        if (spans) {
            // The reported set kept every edge it started with: each deleted
            // edge touches a removed vertex, and removed vertices never
            // return. Edges arriving from outside are allowed to be gone.
            if (checked_mode())
                for (const auto& [u, v] : deleted)
                    detail::invariant(!tr.tracked().test(u) || !tr.tracked().test(v),
                                      "reported component lost an edge");
            return tr.tracked();
        }

        // Parts of at most half the set's size restart as their own
        // trackers, smallest member first; whatever remains stays here.
        // Charging each vertex per handoff keeps the total work bounded,
        // since its set at least halves every time it moves.
        std::vector<int> small;
        for (int h : tr.parts)
            if (2 * dec.members(h).count() <= tr.tracked().count()) small.push_back(h);
        std::sort(small.begin(), small.end(), [&dec](int a, int b) {
            return dec.members(a).first() < dec.members(b).first();
        });
        for (int h : small) {
            tr.parts.erase(h);
            PairTracker child(index, dec.members(h));
            child.parts.insert(h);
            queue.push_back(std::move(child));
        }
        if (!tr.parts.empty()) {
            VertexSet keep(graph.n);
            for (int h : tr.parts) keep |= dec.members(h);
            tr.remove(tr.tracked() - keep);
            queue.push_back(std::move(tr));
        }

        if (checked_mode()) {
            // Every live non-trivial component must sit inside exactly one
            // queued tracker that lists its handle.
            for (int h : dec.live_handles()) {
                if (!internal_edge_in(dec.out(), dec.members(h))) continue;
                int owners = 0;
                for (const PairTracker& t : queue)
                    if (t.parts.count(h)) {
                        ++owners;
                        detail::invariant(dec.members(h).subset_of(t.tracked()),
                                          "tracker lost part of a component");
                    }
                detail::invariant(owners == 1, "component not tracked exactly once");
            }
        }
    }
    return std::nullopt;
}

VertexSet streett_winning_graph(const Arena& graph, const std::vector<StreettPair>& pairs) {
    detail::require(graph.finalized(), "finalized arena required");
    require_pairs(graph.n, pairs);
    VertexSet hosts(graph.n);
    for (const VertexSet& scc : scc_decomposition(graph)) {
        if (!has_internal_edge(graph, scc)) continue;  // trivial, nothing to find
        if (good_component(graph, scc, pairs)) hosts |= scc;
    }
    return graph_reach(graph, hosts);
}

SplitInstance split_transform(const Arena& mdp, const std::vector<StreettPair>& pairs) {
    require_mdp(mdp);
    require_pairs(mdp.n, pairs);

    SplitInstance split{Arena::make(ModelKind::Mdp, 2 * mdp.n), {}};
    for (int v = 0; v < mdp.n; ++v) {
        split.mdp.owner[2 * v + 1] = mdp.owner[v];  // in-copies keep player 1
        split.mdp.add_edge(2 * v, 2 * v + 1);
    }
    for (int u = 0; u < mdp.n; ++u)
        for (int v : mdp.out[u]) split.mdp.add_edge(2 * u + 1, 2 * v);
    split.mdp.finalize();

    split.pairs.reserve(pairs.size());
    for (const StreettPair& p : pairs) {
        StreettPair q{VertexSet(2 * mdp.n), VertexSet(2 * mdp.n)};
        p.request.for_each([&](int v) { q.request.set(2 * v); });
        p.grant.for_each([&](int v) { q.grant.set(2 * v + 1); });
        split.pairs.push_back(std::move(q));
    }
    return split;
}

VertexSet streett_winning_mdp(const Arena& mdp, const std::vector<StreettPair>& pairs) {
    require_mdp(mdp);
    require_pairs(mdp.n, pairs);

    MecDecomposition base = mec_decomposition(mdp);
    SplitInstance split = split_transform(mdp, pairs);
    DecMec dec(split.mdp);
    PairIndex index(split.mdp.n, split.pairs);

    // One tracker per maximal end-component, through its copy in the split
    // instance. The two component lists align position by position: both
    // ascend by smallest member and doubling ids preserves that order.
    struct Job {
        PairTracker tracker;
        int root;  // index into base.mecs
    };
    std::deque<Job> queue;
    {
        std::vector<VertexSet> copies = dec.mecs();
        detail::invariant(copies.size() == base.mecs.size(),
                          "splitting changed the component count");
        for (size_t i = 0; i < copies.size(); ++i) {
            if (checked_mode()) {
                VertexSet back(mdp.n);
                copies[i].for_each([&](int u) { back.set(u / 2); });
                detail::invariant(back == base.mecs[i], "split component left its source");
            }
            Job job{PairTracker(index, copies[i]), static_cast<int>(i)};
            job.tracker.parts.insert(dec.scc().rep(copies[i].first()));
            queue.push_back(std::move(job));
        }
    }

    std::vector<int> root_of;  // original vertex -> component index, checked mode
    if (checked_mode()) {
        root_of.assign(static_cast<size_t>(mdp.n), -1);
        for (size_t i = 0; i < base.mecs.size(); ++i)
            base.mecs[i].for_each([&](int v) { root_of[v] = static_cast<int>(i); });
    }

    std::vector<char> satisfied(base.mecs.size(), 0);
    std::vector<std::vector<int>> removed_log(checked_mode() ? base.mecs.size() : 0);

    while (!queue.empty()) {
        Job job = std::move(queue.front());
        queue.pop_front();
        if (satisfied[job.root]) continue;  // verdict already reached
        PairTracker& tr = job.tracker;

        // Peel bad vertices. A bad vertex is an in-copy, and cutting its
        // bridge to the out-copy removes it from every end-component; the
        // announced handles are the non-trivial components that emerge.
        while (!tr.bad().empty()) {
            VertexSet b = tr.bad();
            tr.remove(b);
            for (int x = b.first(); x != -1; x = b.next(x)) {
                int old = dec.scc().rep(x);
                std::vector<int> fresh = dec.delete_announce(x, x + 1);
                tr.parts.erase(old);
                for (int h : fresh) tr.parts.insert(h);
                if (checked_mode()) {
                    detail::invariant(x % 2 == 0, "bad vertex is not an in-copy");
                    removed_log[job.root].push_back(x);
                }
            }
        }

        // No surviving end-component means no good one either.
        if (tr.parts.empty()) continue;

        bool spans = false;
        for (int h : tr.parts)
            if (dec.scc().members(h) == tr.tracked()) {
                spans = true;
                break;
            }
        if (spans) {
            satisfied[job.root] = 1;
            if (checked_mode())
                for (int x : removed_log[job.root])
                    detail::invariant(!tr.tracked().test(x) && !tr.tracked().test(x + 1),
                                      "reported component lost an edge");
            continue;
        }

        // As on graphs: small components restart on their own, and the
        // tracker keeps the union of the remaining ones. Residual vertices
        // fall out here; once outside every end-component they can never
        // rejoin one, so nothing needs to keep tracking them.
        std::vector<int> small;
        for (int h : tr.parts)
            if (2 * dec.scc().members(h).count() <= tr.tracked().count()) small.push_back(h);
        std::sort(small.begin(), small.end(), [&dec](int a, int b) {
            return dec.scc().members(a).first() < dec.scc().members(b).first();
        });
        for (int h : small) {
            tr.parts.erase(h);
            Job child{PairTracker(index, dec.scc().members(h)), job.root};
            child.tracker.parts.insert(h);
            queue.push_back(std::move(child));
        }
        if (!tr.parts.empty()) {
            VertexSet keep(split.mdp.n);
            for (int h : tr.parts) keep |= dec.scc().members(h);
            tr.remove(tr.tracked() - keep);
            queue.push_back(std::move(job));
        }

        if (checked_mode()) {
            // Every live non-trivial component of an undecided source must
            // sit inside exactly one queued tracker that lists its handle.
            for (int h : dec.scc().live_handles()) {
                const VertexSet& m = dec.scc().members(h);
                if (!internal_edge_in(dec.scc().out(), m)) continue;
                int r = root_of[m.first() / 2];
                detail::invariant(r >= 0, "component outside every end-component");
                if (satisfied[r]) continue;
                int owners = 0;
                for (const Job& q : queue)
                    if (q.tracker.parts.count(h)) {
                        ++owners;
                        detail::invariant(m.subset_of(q.tracker.tracked()),
                                          "tracker lost part of a component");
                    }
                detail::invariant(owners == 1, "component not tracked exactly once");
            }
        }
    }

    VertexSet target(mdp.n);
    for (size_t i = 0; i < base.mecs.size(); ++i)
        if (satisfied[i]) target |= base.mecs[i];
    return almost_sure_reach(mdp, target);
}

}  // namespace winset
