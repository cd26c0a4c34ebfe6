#include "winset/oracles.hpp"

#include <algorithm>
#include <climits>
#include <vector>

namespace winset::oracles {
namespace {

constexpr long long kInf = LLONG_MAX / 4;

constexpr int kMaxClosureVertices = 2048;   // transitive-closure row tables
constexpr int kMaxParityVertices = 1024;    // recursive parity solving
constexpr int kMaxSubsetEcVertices = 14;    // 2^n end-component enumeration
constexpr int kMaxSubsetVertices = 20;      // 2^n good-component enumeration
constexpr int kMaxProductStates = 2048;     // bounded-liveness counter products
constexpr int kMaxSeqStates = 4096;         // sequence-automaton products
constexpr int kMaxMpVertices = 14;          // strategy enumeration with cycle analysis
constexpr int kMaxMpSubsetVertices = 10;    // 2^n trap enumeration
constexpr int kMaxFlowerVertices = 9;       // player-2 strategy sweep with subset scan
constexpr long long kMaxStrategies = 200000;

void cap(bool ok) { detail::require(ok, "oracle size cap exceeded"); }

// Priorities are stored lazily; an arena without any assignment behaves as
// all-zero (everything even).
int prio(const Arena& a, int v) {
    return a.priority.empty() ? 0 : a.priority[static_cast<size_t>(v)];
}

VertexSet full_or(const Arena& a, const VertexSet* within) {
    return within ? *within : VertexSet::full(a.n);
}

void require_total(const Arena& a) {
    for (int v = 0; v < a.n; ++v)
        detail::require(a.out_deg(v) > 0, "total arena required");
}

// Transitive-closure rows of the restriction: rows[u] holds every vertex
// reachable from u (u included) without leaving the mask.
std::vector<VertexSet> reach_rows(const Arena& a, const VertexSet& mask) {
    cap(a.n <= kMaxClosureVertices);
    std::vector<VertexSet> rows(static_cast<size_t>(a.n), VertexSet(a.n));
    for (int u = mask.first(); u != -1; u = mask.next(u)) {
        rows[u].set(u);
        for (int v : a.out[u])
            if (mask.test(v)) rows[u].set(v);
    }
    for (int k = mask.first(); k != -1; k = mask.next(k))
        for (int u = mask.first(); u != -1; u = mask.next(u))
            if (rows[u].test(k)) rows[u] |= rows[k];
    return rows;
}

// Strongly connected components from arbitrary closure rows, by ascending
// minimal vertex, members ascending.
std::vector<VertexSet> components_of_rows(const VertexSet& mask, const std::vector<VertexSet>& rows) {
    std::vector<VertexSet> comps;
    VertexSet seen(mask.universe());
    for (int u = mask.first(); u != -1; u = mask.next(u)) {
        if (seen.test(u)) continue;
        VertexSet comp(mask.universe());
        for (int v = rows[u].first(); v != -1; v = rows[u].next(v))
            if (rows[v].test(u)) comp.set(v);
        seen |= comp;
        comps.push_back(comp);
    }
    return comps;
}

// Absorbing copy: vertices of t lose their edges and keep a self-loop, so
// "reach t" questions become trap questions with t closed under play.
Arena make_absorbing(const Arena& a, const VertexSet& t) {
    Arena b = Arena::make(a.kind, a.n);
    b.owner = a.owner;
    for (int u = 0; u < a.n; ++u) {
        if (t.test(u)) {
            b.add_edge(u, u);
        } else {
            for (int v : a.out[u]) b.add_edge(u, v);
        }
    }
    b.finalize();
    return b;
}

// Odometer over all choices of one out-edge (index into a.out[v], filtered to
// the mask) per vertex of `who` inside the mask. Used to enumerate memoryless
// strategies.
struct ChoiceSpace {
    std::vector<int> vertex;
    std::vector<std::vector<int>> option;
    std::vector<int> pick;

    bool advance() {
        for (size_t i = 0; i < pick.size(); ++i) {
            if (++pick[i] < static_cast<int>(option[i].size())) return true;
            pick[i] = 0;
        }
        return false;
    }
};

ChoiceSpace choice_space(const Arena& a, Owner who, const VertexSet& mask) {
    ChoiceSpace cs;
    long long total = 1;
    for (int v = mask.first(); v != -1; v = mask.next(v)) {
        if (a.owner[v] != who) continue;
        std::vector<int> opts;
        for (size_t i = 0; i < a.out[v].size(); ++i)
            if (mask.test(a.out[v][i])) opts.push_back(static_cast<int>(i));
        detail::require(!opts.empty(), "total arena required");
        total *= static_cast<long long>(opts.size());
        cap(total <= kMaxStrategies);
        cs.vertex.push_back(v);
        cs.option.push_back(std::move(opts));
    }
    cs.pick.assign(cs.vertex.size(), 0);
    return cs;
}

// Weights rescaled so that "mean payoff >= nu" becomes "no reachable cycle
// has negative total weight": every edge weight w turns into w*den - num.
std::vector<std::vector<long long>> shifted_weights(const Arena& a, const Rational& nu) {
    detail::require(a.weighted(), "weighted arena required");
    std::vector<std::vector<long long>> w(static_cast<size_t>(a.n));
    for (int u = 0; u < a.n; ++u) {
        w[u].resize(a.wout[u].size());
        for (size_t i = 0; i < a.wout[u].size(); ++i)
            w[u][i] = a.wout[u][i] * nu.den - nu.num;
    }
    return w;
}

std::vector<std::vector<long long>> plain_weights(const Arena& a) {
    return shifted_weights(a, Rational::integer(0));
}

// Minimum cycle mean of a strongly connected component, over the edges the
// predicate admits, by the classic exactly-k-edge walk table: the answer is
// min over v of max over k of (D_N(v) - D_k(v)) / (N - k).
template <class EdgeOk>
Rational min_cycle_mean(const Arena& a, const VertexSet& comp,
                        const std::vector<std::vector<long long>>& w, EdgeOk edge_ok) {
    std::vector<int> mem = comp.to_vector();
    int n_comp = static_cast<int>(mem.size());
    std::vector<int> pos(static_cast<size_t>(a.n), -1);
    for (int i = 0; i < n_comp; ++i) pos[mem[i]] = i;

    std::vector<std::vector<long long>> d(static_cast<size_t>(n_comp) + 1,
                                          std::vector<long long>(static_cast<size_t>(n_comp), kInf));
    d[0][0] = 0;  // walks start at mem[0]; strong connectivity reaches the rest
    for (int k = 1; k <= n_comp; ++k) {
        for (int i = 0; i < n_comp; ++i) {
            if (d[k - 1][i] >= kInf) continue;
            int u = mem[i];
            for (size_t e = 0; e < a.out[u].size(); ++e) {
                int v = a.out[u][e];
                if (pos[v] < 0 || !edge_ok(u, static_cast<int>(e))) continue;
                long long cand = d[k - 1][i] + w[u][e];
                if (cand < d[k][pos[v]]) d[k][pos[v]] = cand;
            }
        }
    }
    std::optional<Rational> best;
    for (int i = 0; i < n_comp; ++i) {
        if (d[n_comp][i] >= kInf) continue;
        std::optional<Rational> worst;
        for (int k = 0; k < n_comp; ++k) {
            if (d[k][i] >= kInf) continue;
            Rational cand(d[n_comp][i] - d[k][i], n_comp - k);
            if (!worst || cand > *worst) worst = cand;
        }
        if (worst && (!best || *worst < *best)) best = worst;
    }
    detail::require(best.has_value(), "cycle expected in component");
    return *best;
}

}  // namespace

VertexSet closure_reach(const Arena& a, const VertexSet& s, const VertexSet* within) {
    VertexSet mask = full_or(a, within);
    VertexSet r = s & mask;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int u = mask.first(); u != -1; u = mask.next(u)) {
            if (r.test(u)) continue;
            for (int v : a.out[u]) {
                if (mask.test(v) && r.test(v)) {
                    r.set(u);
                    changed = true;
                    break;
                }
            }
        }
    }
    return r;
}

std::vector<VertexSet> closure_sccs(const Arena& a, const VertexSet* within) {
    VertexSet mask = full_or(a, within);
    return components_of_rows(mask, reach_rows(a, mask));
}

VertexSet naive_attractor(const Arena& a, Owner existential, const VertexSet& target,
                          const VertexSet* within) {
    VertexSet mask = full_or(a, within);
    VertexSet attr = target & mask;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = mask.first(); v != -1; v = mask.next(v)) {
            if (attr.test(v)) continue;
            bool any_in = false, all_in = true, any_succ = false;
            for (int w : a.out[v]) {
                if (!mask.test(w)) continue;
                any_succ = true;
                if (attr.test(w)) any_in = true;
                else all_in = false;
            }
            bool joins = (a.owner[v] == existential) ? any_in : (any_succ && all_in);
            if (joins) {
                attr.set(v);
                changed = true;
            }
        }
    }
    return attr;
}

namespace {

// One controlled-predecessor step for player 1 inside the mask.
VertexSet cpre1(const Arena& a, const VertexSet& mask, const VertexSet& s) {
    VertexSet r(a.n);
    for (int v = mask.first(); v != -1; v = mask.next(v)) {
        bool any_in = false, all_in = true, any_succ = false;
        for (int w : a.out[v]) {
            if (!mask.test(w)) continue;
            any_succ = true;
            if (s.test(w)) any_in = true;
            else all_in = false;
        }
        if (a.owner[v] == Owner::P1 ? any_in : (any_succ && all_in)) r.set(v);
    }
    return r;
}

std::pair<VertexSet, VertexSet> zielonka(const Arena& a, const VertexSet& mask) {
    if (mask.empty()) return {VertexSet(a.n), VertexSet(a.n)};
    int b = INT_MAX;
    for (int v = mask.first(); v != -1; v = mask.next(v)) b = std::min(b, prio(a, v));
    VertexSet base(a.n);
    for (int v = mask.first(); v != -1; v = mask.next(v))
        if (prio(a, v) == b) base.set(v);
    Owner me = (b % 2 == 0) ? Owner::P1 : Owner::P2;
    Owner them = (me == Owner::P1) ? Owner::P2 : Owner::P1;

    VertexSet head = naive_attractor(a, me, base, &mask);
    auto [w1, w2] = zielonka(a, mask - head);
    const VertexSet& opp = (me == Owner::P1) ? w2 : w1;
    if (opp.empty()) {
        if (me == Owner::P1) return {mask, VertexSet(a.n)};
        return {VertexSet(a.n), mask};
    }
    VertexSet ceded = naive_attractor(a, them, opp, &mask);
    auto [u1, u2] = zielonka(a, mask - ceded);
    if (them == Owner::P1) u1 |= ceded;
    else u2 |= ceded;
    return {u1, u2};
}

}  // namespace

std::pair<VertexSet, VertexSet> brute_parity(const Arena& game) {
    cap(game.n <= kMaxParityVertices);
    require_total(game);
    VertexSet all = VertexSet::full(game.n);
    return zielonka(game, all);
}

VertexSet buchi_fixpoint(const Arena& game, const VertexSet& b) {
    require_total(game);
    VertexSet mask = VertexSet::full(game.n);
    VertexSet y = mask;
    while (true) {
        VertexSet x(game.n);
        while (true) {
            VertexSet nx = (b & cpre1(game, mask, y)) | cpre1(game, mask, x);
            if (nx == x) break;
            x = nx;
        }
        if (x == y) return y;
        y = x;
    }
}

bool is_end_component(const Arena& mdp, const VertexSet& x) {
    if (x.empty()) return false;
    bool has_edge = false;
    for (int v = x.first(); v != -1; v = x.next(v)) {
        bool any_in = false;
        for (int w : mdp.out[v]) {
            if (x.test(w)) {
                any_in = true;
                has_edge = true;
            } else if (mdp.owner[v] == Owner::Random) {
                return false;  // random moves must stay inside
            }
        }
        if (!any_in) return false;
    }
    if (!has_edge) return false;
    // strong connectivity of the induced subgraph: forward and backward
    // reachability from one member must both cover x
    int root = x.first();
    VertexSet fwd = VertexSet::of(mdp.n, {root});
    bool grow = true;
    while (grow) {
        grow = false;
        for (int v = fwd.first(); v != -1; v = fwd.next(v))
            for (int w : mdp.out[v])
                if (x.test(w) && !fwd.test(w)) {
                    fwd.set(w);
                    grow = true;
                }
    }
    if (!x.subset_of(fwd)) return false;
    VertexSet bwd = closure_reach(mdp, VertexSet::of(mdp.n, {root}), &x);
    return x.subset_of(bwd);
}

std::vector<VertexSet> all_maximal_ecs_by_subsets(const Arena& mdp) {
    cap(mdp.n <= kMaxSubsetEcVertices);
    std::vector<VertexSet> ecs;
    for (unsigned bits = 1; bits < (1u << mdp.n); ++bits) {
        VertexSet x(mdp.n);
        for (int v = 0; v < mdp.n; ++v)
            if (bits & (1u << v)) x.set(v);
        if (is_end_component(mdp, x)) ecs.push_back(x);
    }
    std::sort(ecs.begin(), ecs.end(),
              [](const VertexSet& a, const VertexSet& b) { return a.count() > b.count(); });
    std::vector<VertexSet> maximal;
    for (const VertexSet& x : ecs) {
        bool covered = false;
        for (const VertexSet& m : maximal)
            if (x.subset_of(m)) {
                covered = true;
                break;
            }
        if (!covered) maximal.push_back(x);
    }
    std::sort(maximal.begin(), maximal.end(),
              [](const VertexSet& a, const VertexSet& b) { return a.first() < b.first(); });
    return maximal;
}

std::vector<VertexSet> brute_mec(const Arena& mdp, const VertexSet* within) {
    cap(mdp.n <= kMaxClosureVertices);
    std::vector<VertexSet> result;
    std::vector<VertexSet> work = closure_sccs(mdp, within);
    VertexSet mask = full_or(mdp, within);
    while (!work.empty()) {
        VertexSet c = work.back();
        work.pop_back();
        VertexSet leaking(mdp.n);
        for (int v = c.first(); v != -1; v = c.next(v)) {
            if (mdp.owner[v] != Owner::Random) continue;
            for (int w : mdp.out[v])
                if (mask.test(w) && !c.test(w)) {
                    leaking.set(v);
                    break;
                }
        }
        if (leaking.empty()) {
            bool internal = false;
            for (int v = c.first(); v != -1 && !internal; v = c.next(v))
                for (int w : mdp.out[v])
                    if (c.test(w)) {
                        internal = true;
                        break;
                    }
            if (internal) result.push_back(c);
            continue;
        }
        VertexSet shrunk = c - naive_attractor(mdp, Owner::Random, leaking, &c);
        for (VertexSet& s : closure_sccs(mdp, &shrunk)) work.push_back(std::move(s));
    }
    std::sort(result.begin(), result.end(),
              [](const VertexSet& a, const VertexSet& b) { return a.first() < b.first(); });
    return result;
}

VertexSet as_reach_fixpoint(const Arena& mdp, const VertexSet& t) {
    Arena absorbed = make_absorbing(mdp, t);
    VertexSet alive = VertexSet::full(mdp.n);
    while (true) {
        VertexSet can = closure_reach(absorbed, t, &alive);
        VertexSet doomed = alive - can;
        if (doomed.empty()) return alive;
        alive -= naive_attractor(absorbed, Owner::Random, doomed, &alive);
    }
}

VertexSet brute_as_reach(const Arena& mdp, const VertexSet& t) {
    cap(mdp.n <= kMaxMpVertices);
    Arena absorbed = make_absorbing(mdp, t);
    VertexSet controlled = absorbed.owned_by(Owner::P1) - t;
    VertexSet winners(mdp.n);

    ChoiceSpace cs;
    long long total = 1;
    for (int v = controlled.first(); v != -1; v = controlled.next(v)) {
        cs.vertex.push_back(v);
        std::vector<int> opts(absorbed.out[v].size());
        for (size_t i = 0; i < opts.size(); ++i) opts[i] = static_cast<int>(i);
        total *= static_cast<long long>(opts.size());
        cap(total <= kMaxStrategies);
        cs.option.push_back(std::move(opts));
    }
    cs.pick.assign(cs.vertex.size(), 0);

    do {
        // closure rows of the chain induced by this strategy
        std::vector<VertexSet> rows(static_cast<size_t>(mdp.n), VertexSet(mdp.n));
        std::vector<int> chosen(static_cast<size_t>(mdp.n), -1);
        for (size_t i = 0; i < cs.vertex.size(); ++i)
            chosen[cs.vertex[i]] = absorbed.out[cs.vertex[i]][cs.option[i][cs.pick[i]]];
        for (int u = 0; u < mdp.n; ++u) {
            rows[u].set(u);
            if (chosen[u] >= 0) rows[u].set(chosen[u]);
            else
                for (int v : absorbed.out[u]) rows[u].set(v);
        }
        for (int k = 0; k < mdp.n; ++k)
            for (int u = 0; u < mdp.n; ++u)
                if (rows[u].test(k)) rows[u] |= rows[k];

        VertexSet doomed(mdp.n);
        for (int v = 0; v < mdp.n; ++v)
            if (!rows[v].intersects(t)) doomed.set(v);
        for (int v = 0; v < mdp.n; ++v)
            if (!rows[v].intersects(doomed)) winners.set(v);
    } while (cs.advance());
    return winners;
}

VertexSet brute_we_union(const Arena& mdp) {
    std::vector<int> prios(static_cast<size_t>(mdp.n));
    for (int v = 0; v < mdp.n; ++v) prios[static_cast<size_t>(v)] = prio(mdp, v);
    std::sort(prios.begin(), prios.end());
    prios.erase(std::unique(prios.begin(), prios.end()), prios.end());
    VertexSet target(mdp.n);
    for (int p : prios) {
        if (p % 2 != 0) continue;
        VertexSet low(mdp.n);
        for (int v = 0; v < mdp.n; ++v)
            if (prio(mdp, v) < p) low.set(v);
        VertexSet surviving = VertexSet::full(mdp.n) - naive_attractor(mdp, Owner::Random, low);
        for (const VertexSet& m : brute_mec(mdp, &surviving)) {
            int minp = INT_MAX;
            for (int v = m.first(); v != -1; v = m.next(v)) minp = std::min(minp, prio(mdp, v));
            if (minp == p) target |= m;
        }
    }
    return target;
}

VertexSet brute_mdp_parity(const Arena& mdp) {
    return as_reach_fixpoint(mdp, brute_we_union(mdp));
}

namespace {

bool pairs_hold(const VertexSet& s, const std::vector<StreettPair>& pairs) {
    for (const StreettPair& p : pairs)
        if (s.intersects(p.request) && !s.intersects(p.grant)) return false;
    return true;
}

// Strong connectivity of the subgraph induced on s, via forward and backward
// scans from its first member. Requires every member to keep an edge in s.
bool strongly_connected_in(const Arena& a, const VertexSet& s) {
    int root = s.first();
    VertexSet fwd = VertexSet::of(a.n, {root});
    bool grow = true;
    while (grow) {
        grow = false;
        for (int v = fwd.first(); v != -1; v = fwd.next(v))
            for (int w : a.out[v])
                if (s.test(w) && !fwd.test(w)) {
                    fwd.set(w);
                    grow = true;
                }
    }
    if (!s.subset_of(fwd)) return false;
    return s.subset_of(closure_reach(a, VertexSet::of(a.n, {root}), &s));
}

}  // namespace

bool good_component_in(const Arena& graph, const VertexSet& candidate,
                       const std::vector<StreettPair>& pairs) {
    std::vector<int> mem = candidate.to_vector();
    cap(mem.size() <= kMaxSubsetVertices);
    for (unsigned bits = 1; bits < (1u << mem.size()); ++bits) {
        VertexSet s(graph.n);
        for (size_t i = 0; i < mem.size(); ++i)
            if (bits & (1u << i)) s.set(mem[i]);
        bool viable = true;
        for (int v = s.first(); v != -1 && viable; v = s.next(v)) {
            bool any = false;
            for (int w : graph.out[v])
                if (s.test(w)) {
                    any = true;
                    break;
                }
            viable = any;
        }
        if (!viable || !pairs_hold(s, pairs)) continue;
        if (strongly_connected_in(graph, s)) return true;
    }
    return false;
}

VertexSet brute_streett(const Arena& graph, const std::vector<StreettPair>& pairs) {
    VertexSet hosts(graph.n);
    for (const VertexSet& scc : closure_sccs(graph))
        if (good_component_in(graph, scc, pairs)) hosts |= scc;
    return closure_reach(graph, hosts);
}

VertexSet brute_streett_mdp(const Arena& mdp, const std::vector<StreettPair>& pairs) {
    VertexSet target(mdp.n);
    for (const VertexSet& m : brute_mec(mdp)) {
        std::vector<int> mem = m.to_vector();
        cap(mem.size() <= kMaxSubsetEcVertices);
        for (unsigned bits = 1; bits < (1u << mem.size()); ++bits) {
            VertexSet s(mdp.n);
            for (size_t i = 0; i < mem.size(); ++i)
                if (bits & (1u << i)) s.set(mem[i]);
            if (pairs_hold(s, pairs) && is_end_component(mdp, s)) {
                target |= m;
                break;
            }
        }
    }
    return as_reach_fixpoint(mdp, target);
}

namespace {

// Successor rows of a counter product: `states` many product states, edges
// supplied by the callback. Returns closure rows.
std::vector<VertexSet> product_rows(int states, const std::vector<std::vector<int>>& succ) {
    std::vector<VertexSet> rows(static_cast<size_t>(states), VertexSet(states));
    for (int u = 0; u < states; ++u) {
        rows[u].set(u);
        for (int v : succ[u]) rows[u].set(v);
    }
    for (int k = 0; k < states; ++k)
        for (int u = 0; u < states; ++u)
            if (rows[u].test(k)) rows[u] |= rows[k];
    return rows;
}

// A product state lies on a cycle iff one of its successors reaches it back.
VertexSet on_cycle_states(int states, const std::vector<std::vector<int>>& succ,
                          const std::vector<VertexSet>& rows) {
    VertexSet cyc(states);
    for (int u = 0; u < states; ++u)
        for (int v : succ[u])
            if (rows[v].test(u)) {
                cyc.set(u);
                break;
            }
    return cyc;
}

}  // namespace

VertexSet brute_bounded_buchi(const Arena& graph, const VertexSet& b, int d) {
    detail::require(d >= 1, "window length must be positive");
    int states = graph.n * d;
    cap(states <= kMaxProductStates);
    auto pid = [&](int v, int c) { return v * d + c; };
    // state (v, c): c steps have passed since the last visit to b. Every
    // window of d consecutive vertices touches b iff the gap between
    // consecutive b-visits stays at most d, i.e. c never reaches d.
    std::vector<std::vector<int>> succ(static_cast<size_t>(states));
    for (int v = 0; v < graph.n; ++v)
        for (int c = 0; c < d; ++c)
            for (int w : graph.out[v]) {
                if (b.test(w)) succ[pid(v, c)].push_back(pid(w, 0));
                else if (c + 1 < d) succ[pid(v, c)].push_back(pid(w, c + 1));
            }
    std::vector<VertexSet> rows = product_rows(states, succ);
    VertexSet cyc = on_cycle_states(states, succ, rows);
    VertexSet anchors(graph.n);
    for (int v = b.first(); v != -1; v = b.next(v))
        if (cyc.test(pid(v, 0))) anchors.set(v);
    return closure_reach(graph, anchors);
}

VertexSet brute_bounded_cobuchi(const Arena& graph, const VertexSet& c, int d) {
    detail::require(d >= 1, "window length must be positive");
    int states = graph.n * (d + 1);
    cap(states <= kMaxProductStates);
    auto pid = [&](int v, int s) { return v * (d + 1) + s; };
    // state (v, s): the current run of consecutive c-vertices has length s
    // (capped at d); reaching s = d completes one full window inside c
    std::vector<std::vector<int>> succ(static_cast<size_t>(states));
    for (int v = 0; v < graph.n; ++v)
        for (int s = 0; s <= d; ++s)
            for (int w : graph.out[v]) {
                int ns = c.test(w) ? std::min(s + 1, d) : 0;
                succ[pid(v, s)].push_back(pid(w, ns));
            }
    std::vector<VertexSet> rows = product_rows(states, succ);
    VertexSet cyc = on_cycle_states(states, succ, rows);
    VertexSet good(states);
    for (int v = 0; v < graph.n; ++v)
        if (cyc.test(pid(v, d))) good.set(pid(v, d));
    VertexSet winners(graph.n);
    for (int v = 0; v < graph.n; ++v) {
        int start = pid(v, c.test(v) ? std::min(1, d) : 0);
        if (rows[start].intersects(good)) winners.set(v);
    }
    return winners;
}

VertexSet brute_bounded_buchi_game(const Arena& game, const VertexSet& b, int d) {
    detail::require(d >= 1, "window length must be positive");
    require_total(game);
    int layers = d + 1;  // counter values 0..d-1 plus an overflow layer
    int states = game.n * layers;
    cap(states <= kMaxParityVertices);
    int ov = d;
    auto pid = [&](int v, int c) { return v * layers + c; };
    Arena prod = Arena::make(ModelKind::Game, states);
    for (int v = 0; v < game.n; ++v)
        for (int c = 0; c < layers; ++c) {
            prod.owner[pid(v, c)] = game.owner[v];
            prod.set_priority(pid(v, c), c == ov ? 1 : 2);
            for (int w : game.out[v]) {
                int nc = b.test(w) ? 0 : (c + 1 < d ? c + 1 : ov);
                prod.add_edge(pid(v, c), pid(w, nc));
            }
        }
    prod.finalize();
    // player 1 meets the bound from some point on iff the overflow layer is
    // visited only finitely often
    VertexSet w1 = brute_parity(prod).first;
    VertexSet winners(game.n);
    for (int v = 0; v < game.n; ++v)
        if (w1.test(pid(v, 0))) winners.set(v);
    return winners;
}

VertexSet brute_seq(const Arena& model, const std::vector<VertexSet>& targets) {
    int k = static_cast<int>(targets.size());
    if (k == 0) return VertexSet::full(model.n);
    int states = model.n * (k + 1);
    cap(states <= kMaxSeqStates);
    auto advance = [&](int v, int j) {
        while (j < k && targets[j].test(v)) ++j;
        return j;
    };
    auto pid = [&](int v, int j) { return v * (k + 1) + j; };
    Arena prod = Arena::make(model.kind, states);
    for (int v = 0; v < model.n; ++v)
        for (int j = 0; j <= k; ++j) {
            prod.owner[pid(v, j)] = model.owner[v];
            for (int w : model.out[v]) prod.add_edge(pid(v, j), pid(w, advance(w, j)));
        }
    prod.finalize();
    VertexSet done(states);
    for (int v = 0; v < model.n; ++v) done.set(pid(v, k));

    VertexSet won(states);
    switch (model.kind) {
        case ModelKind::Graph: won = closure_reach(prod, done); break;
        case ModelKind::Game: won = naive_attractor(prod, Owner::P1, done); break;
        case ModelKind::Mdp: won = as_reach_fixpoint(prod, done); break;
    }
    VertexSet winners(model.n);
    for (int v = 0; v < model.n; ++v)
        if (won.test(pid(v, advance(v, 0)))) winners.set(v);
    return winners;
}

namespace {

VertexSet single_target_winners(const Arena& model, const VertexSet& t) {
    switch (model.kind) {
        case ModelKind::Graph: return closure_reach(model, t);
        case ModelKind::Game: return naive_attractor(model, Owner::P1, t);
        case ModelKind::Mdp: return as_reach_fixpoint(model, t);
    }
    detail::fail_precondition("unknown model kind");
}

}  // namespace

bool brute_coverage(const Arena& model, int start, const std::vector<VertexSet>& targets) {
    detail::require(start >= 0 && start < model.n, "start vertex out of range");
    for (const VertexSet& t : targets)
        if (!single_target_winners(model, t).test(start)) return false;
    return true;
}

VertexSet brute_all_coverage(const Arena& model, const std::vector<VertexSet>& targets) {
    VertexSet r = VertexSet::full(model.n);
    for (const VertexSet& t : targets) r &= single_target_winners(model, t);
    return r;
}

namespace {

// Edge admission for a fixed assignment of one out-edge index per controlled
// vertex: controlled vertices keep only the picked edge, everyone else keeps
// every edge inside the mask.
struct StrategyGraph {
    const Arena* a = nullptr;
    const VertexSet* mask = nullptr;
    std::vector<int> picked;  // out-edge index per vertex, -1 when free

    bool admits(int u, int e) const {
        if (!mask->test(a->out[u][e])) return false;
        return picked[u] < 0 || picked[u] == e;
    }
    std::vector<VertexSet> closure() const {
        std::vector<VertexSet> rows(static_cast<size_t>(a->n), VertexSet(a->n));
        for (int u = mask->first(); u != -1; u = mask->next(u)) {
            rows[u].set(u);
            for (size_t e = 0; e < a->out[u].size(); ++e)
                if (admits(u, static_cast<int>(e))) rows[u].set(a->out[u][e]);
        }
        for (int k = mask->first(); k != -1; k = mask->next(k))
            for (int u = mask->first(); u != -1; u = mask->next(u))
                if (rows[u].test(k)) rows[u] |= rows[k];
        return rows;
    }
};

StrategyGraph strategy_graph(const Arena& a, const VertexSet& mask, const ChoiceSpace& cs) {
    StrategyGraph g;
    g.a = &a;
    g.mask = &mask;
    g.picked.assign(static_cast<size_t>(a.n), -1);
    for (size_t i = 0; i < cs.vertex.size(); ++i) g.picked[cs.vertex[i]] = cs.option[i][cs.pick[i]];
    return g;
}

// Does the component contain a cycle whose minimum priority is odd? Checked
// per odd priority value q: a cycle through a q-vertex inside the q-and-up
// slice of the component.
bool odd_cycle_in(const Arena& a, const VertexSet& comp, const StrategyGraph& g) {
    std::vector<int> qs;
    for (int v = comp.first(); v != -1; v = comp.next(v))
        if (prio(a, v) % 2 != 0) qs.push_back(prio(a, v));
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    for (int q : qs) {
        VertexSet slice(a.n);
        for (int v = comp.first(); v != -1; v = comp.next(v))
            if (prio(a, v) >= q) slice.set(v);
        std::vector<VertexSet> rows(static_cast<size_t>(a.n), VertexSet(a.n));
        for (int u = slice.first(); u != -1; u = slice.next(u)) {
            rows[u].set(u);
            for (size_t e = 0; e < a.out[u].size(); ++e)
                if (g.admits(u, static_cast<int>(e)) && slice.test(a.out[u][e]))
                    rows[u].set(a.out[u][e]);
        }
        for (int k = slice.first(); k != -1; k = slice.next(k))
            for (int u = slice.first(); u != -1; u = slice.next(u))
                if (rows[u].test(k)) rows[u] |= rows[k];
        for (int u = slice.first(); u != -1; u = slice.next(u)) {
            if (prio(a, u) != q) continue;
            for (size_t e = 0; e < a.out[u].size(); ++e) {
                int w = a.out[u][e];
                if (g.admits(u, static_cast<int>(e)) && slice.test(w) && rows[w].test(u))
                    return true;
            }
        }
    }
    return false;
}

}  // namespace

std::vector<MpValue> brute_mp_value(const Arena& game) {
    cap(game.n <= kMaxMpVertices);
    require_total(game);
    std::vector<std::vector<long long>> w = plain_weights(game);
    bool graded = game.has_priorities();
    VertexSet all = VertexSet::full(game.n);
    ChoiceSpace cs = choice_space(game, Owner::P1, all);
    std::vector<MpValue> value(static_cast<size_t>(game.n));
    bool any = false;

    do {
        StrategyGraph g = strategy_graph(game, all, cs);
        std::vector<VertexSet> rows = g.closure();
        // payoff statistics per strongly connected component of the
        // strategy-restricted graph
        std::vector<VertexSet> comps = components_of_rows(all, rows);
        std::vector<MpValue> stat;
        std::vector<VertexSet> cyclic;
        for (const VertexSet& comp : comps) {
            bool internal = false;
            for (int u = comp.first(); u != -1 && !internal; u = comp.next(u))
                for (size_t e = 0; e < game.out[u].size(); ++e)
                    if (g.admits(u, static_cast<int>(e)) && comp.test(game.out[u][e])) {
                        internal = true;
                        break;
                    }
            if (!internal) continue;
            cyclic.push_back(comp);
            if (graded && odd_cycle_in(game, comp, g)) {
                stat.push_back(std::nullopt);
            } else {
                stat.push_back(min_cycle_mean(game, comp, w,
                                              [&](int u, int e) { return g.admits(u, e); }));
            }
        }
        for (int v = 0; v < game.n; ++v) {
            std::optional<MpValue> worst;  // the adversary picks the weakest cycle
            for (size_t i = 0; i < cyclic.size(); ++i)
                if (rows[v].intersects(cyclic[i]))
                    if (!worst || stat[i] < *worst) worst = stat[i];
            detail::require(worst.has_value(), "cycle expected in total arena");
            if (!any || *worst > value[v]) value[v] = *worst;
        }
        any = true;
    } while (cs.advance());
    return value;
}

VertexSet positional_mp_winners(const Arena& game, const Rational& nu, const VertexSet* within) {
    VertexSet mask = full_or(game, within);
    cap(mask.count() <= kMaxMpVertices);
    std::vector<std::vector<long long>> w = shifted_weights(game, nu);
    std::vector<int> mem = mask.to_vector();
    int n_sub = static_cast<int>(mem.size());
    std::vector<int> pos(static_cast<size_t>(game.n), -1);
    for (int i = 0; i < n_sub; ++i) pos[mem[i]] = i;

    VertexSet winners(game.n);
    if (mem.empty()) return winners;
    ChoiceSpace cs = choice_space(game, Owner::P1, mask);
    do {
        StrategyGraph g = strategy_graph(game, mask, cs);
        // all-pairs walk weights; a negative diagonal marks a negative cycle
        std::vector<std::vector<long long>> dist(static_cast<size_t>(n_sub),
                                                 std::vector<long long>(static_cast<size_t>(n_sub), kInf));
        for (int i = 0; i < n_sub; ++i) {
            int u = mem[i];
            for (size_t e = 0; e < game.out[u].size(); ++e) {
                int v = game.out[u][e];
                if (!g.admits(u, static_cast<int>(e))) continue;
                dist[i][pos[v]] = std::min(dist[i][pos[v]], w[u][e]);
            }
        }
        for (int k = 0; k < n_sub; ++k)
            for (int i = 0; i < n_sub; ++i) {
                if (dist[i][k] >= kInf) continue;
                for (int j = 0; j < n_sub; ++j)
                    if (dist[k][j] < kInf)
                        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
            }
        for (int i = 0; i < n_sub; ++i) {
            bool tainted = false;
            for (int j = 0; j < n_sub && !tainted; ++j)
                if (dist[j][j] < 0 && (i == j || dist[i][j] < kInf)) tainted = true;
            if (!tainted) winners.set(mem[i]);
        }
    } while (cs.advance());
    return winners;
}

VertexSet brute_mp_buchi(const Arena& game, const Rational& nu, const VertexSet& b) {
    cap(game.n <= kMaxMpSubsetVertices);
    require_total(game);
    VertexSet winners(game.n);
    for (unsigned bits = 1; bits < (1u << game.n); ++bits) {
        VertexSet s(game.n);
        for (int v = 0; v < game.n; ++v)
            if (bits & (1u << v)) s.set(v);
        // player-2 trap: player 2 cannot leave, player 1 can stay
        bool trap = true;
        for (int v = s.first(); v != -1 && trap; v = s.next(v)) {
            bool any_in = false, all_in = true;
            for (int w : game.out[v]) {
                if (s.test(w)) any_in = true;
                else all_in = false;
            }
            trap = (game.owner[v] == Owner::P2) ? all_in : any_in;
        }
        if (!trap) continue;
        if (naive_attractor(game, Owner::P1, b & s, &s) != s) continue;
        if (positional_mp_winners(game, nu, &s) != s) continue;
        winners |= s;
    }
    return winners;
}

VertexSet brute_mp_cobuchi(const Arena& game, const Rational& nu, const VertexSet& bad) {
    require_total(game);
    VertexSet alive = VertexSet::full(game.n);
    VertexSet winners(game.n);
    while (true) {
        VertexSet interior = alive - naive_attractor(game, Owner::P2, bad & alive, &alive);
        if (interior.empty()) return winners;
        VertexSet z = positional_mp_winners(game, nu, &interior);
        if (z.empty()) return winners;
        VertexSet a = naive_attractor(game, Owner::P1, z, &alive);
        winners |= a;
        alive -= a;
        if (alive.empty()) return winners;
    }
}

namespace {

VertexSet mpp_rec(const Arena& a, const Rational& nu, VertexSet mask) {
    if (mask.empty()) return VertexSet(a.n);
    int b = INT_MAX;
    for (int v = mask.first(); v != -1; v = mask.next(v)) b = std::min(b, prio(a, v));

    if (b % 2 == 0) {
        while (true) {
            if (mask.empty()) return mask;
            VertexSet base(a.n);
            for (int v = mask.first(); v != -1; v = mask.next(v))
                if (prio(a, v) == b) base.set(v);
            VertexSet held = naive_attractor(a, Owner::P1, base, &mask);
            VertexSet rest = mask - held;
            if (!rest.empty()) {
                VertexSet w1 = mpp_rec(a, nu, rest);
                VertexSet w2 = rest - w1;
                if (!w2.empty()) {
                    mask -= naive_attractor(a, Owner::P2, w2, &mask);
                    continue;
                }
            }
            VertexSet u = positional_mp_winners(a, nu, &mask);
            if (u != mask) {
                mask -= naive_attractor(a, Owner::P2, mask - u, &mask);
                continue;
            }
            return mask;
        }
    }

    VertexSet won(a.n);
    while (true) {
        if (mask.empty()) return won;
        VertexSet base(a.n);
        for (int v = mask.first(); v != -1; v = mask.next(v))
            if (prio(a, v) == b) base.set(v);
        VertexSet held = naive_attractor(a, Owner::P2, base, &mask);
        VertexSet w1 = mpp_rec(a, nu, mask - held);
        if (w1.empty()) return won;
        VertexSet grab = naive_attractor(a, Owner::P1, w1, &mask);
        won |= grab;
        mask -= grab;
    }
}

}  // namespace

VertexSet brute_mpp(const Arena& game, const Rational& nu) {
    cap(game.n <= kMaxMpSubsetVertices);
    require_total(game);
    return mpp_rec(game, nu, VertexSet::full(game.n));
}

std::vector<MpValue> brute_mpp_values(const Arena& game) {
    cap(game.n <= kMaxFlowerVertices);
    require_total(game);
    std::vector<std::vector<long long>> w = plain_weights(game);
    std::vector<std::vector<long long>> neg(w);
    for (auto& row : neg)
        for (long long& x : row) x = -x;
    VertexSet all = VertexSet::full(game.n);

    std::vector<MpValue> value(static_cast<size_t>(game.n));
    bool any = false;
    ChoiceSpace cs = choice_space(game, Owner::P2, all);
    do {
        // player 2 fixed; player 1 keeps every edge and aims for the best
        // reachable strongly connected set with even minimum priority,
        // judged by its maximum cycle mean
        StrategyGraph g = strategy_graph(game, all, cs);
        std::vector<VertexSet> rows = g.closure();
        std::vector<MpValue> best(static_cast<size_t>(game.n));
        for (unsigned bits = 1; bits < (1u << game.n); ++bits) {
            VertexSet dset(game.n);
            int minp = INT_MAX;
            for (int v = 0; v < game.n; ++v)
                if (bits & (1u << v)) {
                    dset.set(v);
                    minp = std::min(minp, prio(game, v));
                }
            if (minp % 2 != 0) continue;
            bool viable = true;
            for (int v = dset.first(); v != -1 && viable; v = dset.next(v)) {
                bool any_in = false;
                for (size_t e = 0; e < game.out[v].size(); ++e)
                    if (g.admits(v, static_cast<int>(e)) && dset.test(game.out[v][e])) {
                        any_in = true;
                        break;
                    }
                viable = any_in;
            }
            if (!viable) continue;
            // strong connectivity inside the strategy graph
            int root = dset.first();
            VertexSet fwd = VertexSet::of(game.n, {root});
            bool grow = true;
            while (grow) {
                grow = false;
                for (int v = fwd.first(); v != -1; v = fwd.next(v))
                    for (size_t e = 0; e < game.out[v].size(); ++e) {
                        int t = game.out[v][e];
                        if (g.admits(v, static_cast<int>(e)) && dset.test(t) && !fwd.test(t)) {
                            fwd.set(t);
                            grow = true;
                        }
                    }
            }
            if (!dset.subset_of(fwd)) continue;
            VertexSet bwd = VertexSet::of(game.n, {root});
            grow = true;
            while (grow) {
                grow = false;
                for (int v = dset.first(); v != -1; v = dset.next(v)) {
                    if (bwd.test(v)) continue;
                    for (size_t e = 0; e < game.out[v].size(); ++e) {
                        int t = game.out[v][e];
                        if (g.admits(v, static_cast<int>(e)) && bwd.test(t)) {
                            bwd.set(v);
                            grow = true;
                            break;
                        }
                    }
                }
            }
            if (!dset.subset_of(bwd)) continue;

            Rational mu =
                min_cycle_mean(game, dset, neg, [&](int u, int e) { return g.admits(u, e); });
            Rational mx(-mu.num, mu.den);
            for (int v = 0; v < game.n; ++v)
                if (rows[v].intersects(dset))
                    if (!best[v] || mx > *best[v]) best[v] = mx;
        }
        for (int v = 0; v < game.n; ++v)
            if (!any || best[v] < value[v]) value[v] = best[v];
        any = true;
    } while (cs.advance());
    return value;
}

}  // namespace winset::oracles
