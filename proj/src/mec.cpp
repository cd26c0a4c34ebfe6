#include "winset/mec.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "winset/checked.hpp"

namespace winset {

namespace {

void require_mdp(const Arena& a) {
    detail::require(a.finalized(), "finalized arena required");
    for (int v = 0; v < a.n; ++v)
        detail::require(a.owner[v] != Owner::P2, "mdp arena required");
    for (int v = 0; v < a.n; ++v)
        detail::require(!a.out[v].empty(), "total arena required");
}

// Every current edge with an endpoint in `s`.
std::vector<std::pair<int, int>> incident(const std::vector<std::vector<int>>& out,
                                          const VertexSet& s) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < static_cast<int>(out.size()); ++u)
        for (int v : out[u])
            if (s.test(u) || s.test(v)) edges.emplace_back(u, v);
    return edges;
}

bool by_smallest_member(const VertexSet& a, const VertexSet& b) {
    return a.first() < b.first();
}

// Random attractor of `target` on a raw adjacency restricted to `within`,
// via the usual counting scheme: random vertices join once one successor is
// absorbed, player-1 vertices once their last one is.
VertexSet raw_random_attractor(const std::vector<std::vector<int>>& out,
                               const std::vector<Owner>& owner, const VertexSet& target,
                               const VertexSet& within) {
    int n = target.universe();
    std::vector<std::vector<int>> rev(n);
    std::vector<int> live_deg(n, 0);
    for (int u = within.first(); u != -1; u = within.next(u))
        for (int w : out[u])
            if (within.test(w)) {
                rev[w].push_back(u);
                ++live_deg[u];
            }
    VertexSet a = target & within;
    std::vector<int> stack = a.to_vector();
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int p : rev[x]) {
            if (a.test(p)) continue;
            if (owner[p] == Owner::Random) {
                a.set(p);
                stack.push_back(p);
            } else if (--live_deg[p] == 0) {
                a.set(p);
                stack.push_back(p);
            }
        }
    }
    return a;
}

}  // namespace

MecDecomposition mec_decomposition(const Arena& mdp) {
    require_mdp(mdp);
    MecDecomposition result;
    DecScc dec(mdp);
    VertexSet alive = VertexSet::full(mdp.n);

    // Bottom components are always maximal end-components: nothing leaves
    // them, so the closure condition holds for free. Peeling one (plus the
    // random attractor of everything it absorbs) exposes the next layer.
    // Surviving vertices always keep an out-edge, so a component whose
    // outgoing counter reaches zero is a non-trivial bottom; a rescan per
    // round catches the ones that got there without splitting.
    while (true) {
        VertexSet peeled(mdp.n);
        for (int h : dec.live_handles())
            if (dec.outgoing(h) == 0 && dec.members(h).subset_of(alive)) {
                result.mecs.push_back(dec.members(h));
                peeled |= dec.members(h);
            }
        if (peeled.empty()) break;
        VertexSet absorbed = random_attractor(mdp, peeled, &alive);
        // The announcement (fresh bottoms among the split parts) is not
        // enough to drive the loop: a component can lose its last outgoing
        // edge without splitting. The rescan above is what finds the queue.
        dec.delete_announce_no_outgoing(incident(dec.out(), absorbed));
        alive -= absorbed;
    }

    std::sort(result.mecs.begin(), result.mecs.end(), by_smallest_member);
    VertexSet covered(mdp.n);
    for (const VertexSet& m : result.mecs) covered |= m;
    result.residual = VertexSet::full(mdp.n) - covered;
    return result;
}

Arena pure_mdp(const Arena& mdp, const MecDecomposition& dec) {
    detail::require(mdp.finalized(), "finalized arena required");
    Arena pure = Arena::make(mdp.kind, mdp.n);
    pure.total_required = false;
    pure.owner = mdp.owner;
    std::vector<int> comp(mdp.n, -1);
    for (size_t i = 0; i < dec.mecs.size(); ++i)
        dec.mecs[i].for_each([&](int v) { comp[v] = static_cast<int>(i); });
    for (int u = 0; u < mdp.n; ++u)
        for (int v : mdp.out[u])
            if (comp[u] != -1 && comp[u] == comp[v]) pure.add_edge(u, v);
    pure.finalize();
    return pure;
}

VertexSet almost_sure_reach(const Arena& mdp, const VertexSet& t) {
    require_mdp(mdp);
    detail::require(t.universe() == mdp.n, "vertex set size mismatch");

    MecDecomposition dec = mec_decomposition(mdp);
    std::vector<int> rep_of(mdp.n);
    for (int v = 0; v < mdp.n; ++v) rep_of[v] = v;
    for (const VertexSet& m : dec.mecs)
        m.for_each([&](int v) { rep_of[v] = m.first(); });

    VertexSet targets(mdp.n);
    t.for_each([&](int v) { targets.set(rep_of[v]); });

    // Quotient MDP: one player-1 vertex per component (its smallest member),
    // residual vertices unchanged, component-internal edges dropped. Members
    // other than the representative keep their ids but become isolated.
    // Targets absorb: a play standing on one has already won, so their exits
    // are irrelevant and must not feed the attractor below.
    Arena quotient = Arena::make(ModelKind::Mdp, mdp.n);
    quotient.total_required = false;
    quotient.owner = mdp.owner;
    for (const VertexSet& m : dec.mecs) quotient.owner[m.first()] = Owner::P1;
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < mdp.n; ++u) {
        if (targets.test(rep_of[u])) continue;
        for (int v : mdp.out[u])
            if (rep_of[u] != rep_of[v]) edges.emplace_back(rep_of[u], rep_of[v]);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (const auto& [u, v] : edges) quotient.add_edge(u, v);
    quotient.finalize();

    VertexSet reaching = graph_reach(quotient, targets);
    VertexSet doomed = VertexSet::full(mdp.n) - reaching;
    VertexSet lost = random_attractor(quotient, doomed);

    VertexSet result(mdp.n);
    for (int v = 0; v < mdp.n; ++v)
        if (!lost.test(rep_of[v])) result.set(v);
    return result;
}

DecMec::DecMec(const Arena& mdp)
    : mdp_(&mdp), remaining_(mdp.out), scc_(pure_mdp(mdp, mec_decomposition(mdp))) {}

bool DecMec::non_trivial(int handle) const {
    const VertexSet& m = scc_.members(handle);
    for (int v = m.first(); v != -1; v = m.next(v))
        for (int w : scc_.out()[v])
            if (m.test(w)) return true;
    return false;
}

bool DecMec::query(int u, int v) const {
    detail::require(u >= 0 && u < scc_.n() && v >= 0 && v < scc_.n(),
                    "vertex out of range");
    int h = scc_.rep(u);
    return h == scc_.rep(v) && non_trivial(h);
}

std::vector<int> DecMec::delete_announce(int u, int v) {
    detail::require(u >= 0 && u < scc_.n() && v >= 0 && v < scc_.n(),
                    "vertex out of range");
    detail::require(mdp_->owner[u] == Owner::P1, "player-1 edge required");
    auto it = std::lower_bound(remaining_[u].begin(), remaining_[u].end(), v);
    detail::require(it != remaining_[u].end() && *it == v, "edge not present");

    // Removing a vertex's last edge is allowed: the vertex keeps its slot but
    // can no longer sit in any component, so it drifts into the residual set.
    bool inside = query(u, v);
    remaining_[u].erase(it);

    int watermark = scc_.handle_count();
    if (inside) {
        std::vector<std::vector<int>> queue;
        std::vector<int> first = scc_.delete_announce({{u, v}});
        if (!first.empty()) queue.push_back(std::move(first));
        while (!queue.empty()) {
            std::vector<int> parts = std::move(queue.front());
            queue.erase(queue.begin());
            process_parts(parts, queue);
        }
    }

    std::vector<int> fresh;
    for (int h = watermark; h < scc_.handle_count(); ++h)
        if (scc_.live(h) && non_trivial(h)) fresh.push_back(h);
    std::sort(fresh.begin(), fresh.end(), [this](int a, int b) {
        return scc_.members(a).first() < scc_.members(b).first();
    });

    if (checked_mode()) {
        for (int s = 0; s < scc_.n(); ++s)
            for (int w : scc_.out()[s])
                detail::invariant(scc_.rep(s) == scc_.rep(w),
                                  "pure graph kept a cross-component edge");
    }
    return fresh;
}

// One round of the split schedule: `parts` partitions a component that just
// fell apart. Every cross-part edge leaves the pure graph, random vertices
// owning one mark their part as leaking, and each leaking part loses the
// random attractor of its leaks, which may split it further.
void DecMec::process_parts(const std::vector<int>& parts,
                           std::vector<std::vector<int>>& queue) {
    // Small parts first by ascending smallest member; the largest part,
    // found by size with ties on smallest member, goes last. Its own leaks
    // surface while scanning the others, so the scan below stays symmetric.
    std::vector<int> order(parts);
    auto largest = std::max_element(order.begin(), order.end(), [this](int a, int b) {
        size_t ca = scc_.members(a).count();
        size_t cb = scc_.members(b).count();
        if (ca != cb) return ca < cb;
        return scc_.members(a).first() > scc_.members(b).first();
    });
    int big = *largest;
    order.erase(largest);
    std::sort(order.begin(), order.end(), [this](int a, int b) {
        return scc_.members(a).first() < scc_.members(b).first();
    });
    order.push_back(big);

    // One pass collects every cross-part edge and every random vertex that
    // owns one, so no leak is missed no matter which part gets cleaned up
    // first.
    std::map<int, VertexSet> leaks;
    std::vector<std::pair<int, int>> cross;
    for (int h : parts) {
        const VertexSet& m = scc_.members(h);
        for (int s = m.first(); s != -1; s = m.next(s))
            for (int w : scc_.out()[s]) {
                if (scc_.rep(w) == h) continue;
                cross.emplace_back(s, w);
                if (mdp_->owner[s] == Owner::Random)
                    leaks.try_emplace(h, VertexSet(scc_.n())).first->second.set(s);
            }
    }
    std::vector<int> none = scc_.delete_announce(cross);
    detail::invariant(none.empty(), "cross-part deletion split a component");

    for (int h : order) {
        auto leak = leaks.find(h);
        if (leak == leaks.end()) continue;
        VertexSet absorbed = raw_random_attractor(scc_.out(), mdp_->owner, leak->second,
                                                  scc_.members(h));
        std::vector<int> announced = scc_.delete_announce(incident(scc_.out(), absorbed));
        std::vector<int> next;
        for (int nh : announced)
            if (!scc_.members(nh).intersects(absorbed)) next.push_back(nh);
        if (!next.empty()) queue.push_back(std::move(next));
    }
}

std::vector<VertexSet> DecMec::mecs() const {
    std::vector<VertexSet> out;
    for (int h : scc_.live_handles())
        if (non_trivial(h)) out.push_back(scc_.members(h));
    std::sort(out.begin(), out.end(), by_smallest_member);
    return out;
}

VertexSet DecMec::residual() const {
    VertexSet covered(scc_.n());
    for (const VertexSet& m : mecs()) covered |= m;
    return VertexSet::full(scc_.n()) - covered;
}

}  // namespace winset
