#include "winset/arena.hpp"

#include <algorithm>
#include <stdexcept>

namespace winset {

namespace detail {
void fail_precondition(const std::string& what) {
    throw std::invalid_argument(what);
}
}  // namespace detail

const char* owner_name(Owner o) {
    switch (o) {
        case Owner::P1: return "P1";
        case Owner::P2: return "P2";
        case Owner::Random: return "R";
    }
    return "?";
}

const char* kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::Graph: return "graph";
        case ModelKind::Game: return "game";
        case ModelKind::Mdp: return "mdp";
    }
    return "?";
}

Arena Arena::make(ModelKind kind, int n) {
    Arena a;
    a.kind = kind;
    a.n = n;
    a.total_required = kind != ModelKind::Graph;
    a.owner.assign(static_cast<size_t>(n), Owner::P1);
    return a;
}

void Arena::add_edge(int u, int v, long long w) {
    detail::require(!finalized_, "add_edge after finalize");
    detail::require(u >= 0 && u < n && v >= 0 && v < n, "edge endpoint out of range");
    pending_.push_back({{u, v}, w});
}

void Arena::set_priority(int v, int p) {
    detail::require(v >= 0 && v < n, "priority vertex out of range");
    detail::require(p >= 0, "negative priority");
    if (priority.empty()) priority.assign(static_cast<size_t>(n), 0);
    priority[static_cast<size_t>(v)] = p;
}

void Arena::finalize() {
    detail::require(!finalized_, "finalize called twice");
    std::sort(pending_.begin(), pending_.end());
    for (size_t i = 1; i < pending_.size(); ++i)
        detail::require(pending_[i].first != pending_[i - 1].first, "duplicate edge");
    out.assign(static_cast<size_t>(n), {});
    in.assign(static_cast<size_t>(n), {});
    bool any_weight = false;
    for (const auto& e : pending_) any_weight |= e.second != 0;
    if (any_weight) wout.assign(static_cast<size_t>(n), {});
    for (const auto& e : pending_) {
        out[static_cast<size_t>(e.first.first)].push_back(e.first.second);
        in[static_cast<size_t>(e.first.second)].push_back(e.first.first);
        if (any_weight) wout[static_cast<size_t>(e.first.first)].push_back(e.second);
    }
    for (auto& lst : in) std::sort(lst.begin(), lst.end());
    m = static_cast<long long>(pending_.size());
    pending_.clear();
    pending_.shrink_to_fit();
    finalized_ = true;
}

bool Arena::has_edge(int u, int v) const {
    const auto& lst = out[static_cast<size_t>(u)];
    return std::binary_search(lst.begin(), lst.end(), v);
}

long long Arena::edge_weight(int u, int v) const {
    const auto& lst = out[static_cast<size_t>(u)];
    auto it = std::lower_bound(lst.begin(), lst.end(), v);
    detail::require(it != lst.end() && *it == v, "edge_weight of absent edge");
    if (wout.empty()) return 0;
    return wout[static_cast<size_t>(u)][static_cast<size_t>(it - lst.begin())];
}

VertexSet Arena::owned_by(Owner o) const {
    VertexSet s(n);
    for (int v = 0; v < n; ++v)
        if (owner[static_cast<size_t>(v)] == o) s.set(v);
    return s;
}

int Arena::max_priority() const {
    int p = 0;
    for (int x : priority) p = std::max(p, x);
    return p;
}

bool has_errors(const std::vector<Diagnostic>& ds) {
    for (const auto& d : ds)
        if (d.level == Diagnostic::Error) return true;
    return false;
}

std::vector<Diagnostic> validate(const Arena& a, ModelKind kind) {
    std::vector<Diagnostic> ds;
    auto err = [&](std::string msg) { ds.push_back({Diagnostic::Error, std::move(msg)}); };
    auto warn = [&](std::string msg) { ds.push_back({Diagnostic::Warning, std::move(msg)}); };

    for (int v = 0; v < a.n; ++v) {
        Owner o = a.owner[static_cast<size_t>(v)];
        bool ok = kind == ModelKind::Graph  ? o == Owner::P1
                  : kind == ModelKind::Game ? o != Owner::Random
                                            : o != Owner::P2;
        if (!ok)
            err("v" + std::to_string(v) + " has owner " + owner_name(o) +
                " not allowed in a " + kind_name(kind));
    }
    bool need_total = kind != ModelKind::Graph || a.total_required;
    for (int v = 0; v < a.n; ++v) {
        if (need_total && a.out_deg(v) == 0)
            err("v" + std::to_string(v) + " has no outgoing edge");
        if (a.has_edge(v, v)) {
            std::string msg = "v" + std::to_string(v) + " has a self-loop";
            if (kind == ModelKind::Game)
                err(msg);
            else
                warn(msg);
        }
    }
    return ds;
}

namespace {

// Iterative Tarjan restricted to `within`; pushes each finished SCC through
// `emit` in reverse topological order, members ascending.
template <class Emit>
void tarjan(const Arena& a, const VertexSet& within, Emit emit) {
    const int n = a.n;
    std::vector<int> index(static_cast<size_t>(n), -1);
    std::vector<int> low(static_cast<size_t>(n), 0);
    std::vector<char> on_stack(static_cast<size_t>(n), 0);
    std::vector<int> stack;
    struct Frame {
        int v;
        size_t next_edge;
    };
    std::vector<Frame> call;
    int counter = 0;

    for (int root = within.first(); root >= 0; root = within.next(root)) {
        if (index[static_cast<size_t>(root)] != -1) continue;
        call.push_back({root, 0});
        index[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = counter++;
        stack.push_back(root);
        on_stack[static_cast<size_t>(root)] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& succ = a.out[static_cast<size_t>(f.v)];
            bool descended = false;
            while (f.next_edge < succ.size()) {
                int w = succ[f.next_edge++];
                if (!within.test(w)) continue;
                if (index[static_cast<size_t>(w)] == -1) {
                    index[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = counter++;
                    stack.push_back(w);
                    on_stack[static_cast<size_t>(w)] = 1;
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[static_cast<size_t>(w)])
                    low[static_cast<size_t>(f.v)] =
                        std::min(low[static_cast<size_t>(f.v)], index[static_cast<size_t>(w)]);
            }
            if (descended) continue;
            int v = f.v;
            call.pop_back();
            if (!call.empty())
                low[static_cast<size_t>(call.back().v)] =
                    std::min(low[static_cast<size_t>(call.back().v)], low[static_cast<size_t>(v)]);
            if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
                VertexSet comp(n);
                while (true) {
                    int w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<size_t>(w)] = 0;
                    comp.set(w);
                    if (w == v) break;
                }
                emit(std::move(comp));
            }
        }
    }
}

}  // namespace

std::vector<VertexSet> scc_decomposition(const Arena& a, const VertexSet& within) {
    std::vector<VertexSet> sccs;
    tarjan(a, within, [&](VertexSet c) { sccs.push_back(std::move(c)); });
    return sccs;
}

std::vector<VertexSet> scc_decomposition(const Arena& a) {
    return scc_decomposition(a, a.vertices());
}

bool has_internal_edge(const Arena& a, const VertexSet& s) {
    for (int v = s.first(); v >= 0; v = s.next(v))
        for (int w : a.out[static_cast<size_t>(v)])
            if (s.test(w)) return true;
    return false;
}

Condensation condense(const Arena& a) {
    Condensation c;
    c.members = scc_decomposition(a);
    c.node_of.assign(static_cast<size_t>(a.n), -1);
    for (size_t i = 0; i < c.members.size(); ++i)
        c.members[i].for_each([&](int v) { c.node_of[static_cast<size_t>(v)] = static_cast<int>(i); });
    c.out.assign(c.members.size(), {});
    for (int u = 0; u < a.n; ++u) {
        int cu = c.node_of[static_cast<size_t>(u)];
        for (int v : a.out[static_cast<size_t>(u)]) {
            int cv = c.node_of[static_cast<size_t>(v)];
            if (cu != cv) c.out[static_cast<size_t>(cu)].push_back(cv);
        }
    }
    for (auto& lst : c.out) {
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    }
    return c;
}

VertexSet graph_reach(const Arena& a, const VertexSet& s, const VertexSet* within) {
    VertexSet reach(a.n);
    std::vector<int> queue;
    for (int v = s.first(); v >= 0; v = s.next(v)) {
        if (within && !within->test(v)) continue;
        reach.set(v);
        queue.push_back(v);
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (int u : a.in[static_cast<size_t>(v)]) {
            if (reach.test(u)) continue;
            if (within && !within->test(u)) continue;
            reach.set(u);
            queue.push_back(u);
        }
    }
    return reach;
}

VertexSet attractor(const Arena& a, Owner existential, const VertexSet& target,
                    const VertexSet* within, std::vector<VertexSet>* levels) {
    VertexSet attr(a.n);
    std::vector<int> cnt(static_cast<size_t>(a.n), 0);
    std::vector<int> queue;
    auto alive = [&](int v) { return !within || within->test(v); };

    for (int v = 0; v < a.n; ++v) {
        if (!alive(v) || a.owner[static_cast<size_t>(v)] == existential) continue;
        int deg = 0;
        for (int w : a.out[static_cast<size_t>(v)])
            if (alive(w)) ++deg;
        cnt[static_cast<size_t>(v)] = deg;
    }
    for (int v = target.first(); v >= 0; v = target.next(v)) {
        if (!alive(v)) continue;
        attr.set(v);
        queue.push_back(v);
    }
    if (levels) {
        levels->clear();
        levels->push_back(attr);
    }
    size_t level_end = queue.size();
    VertexSet next_level(levels ? a.n : 0);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        if (levels && qi == level_end) {
            if (!next_level.empty()) levels->push_back(next_level);
            next_level.clear();
            level_end = queue.size();
        }
        int v = queue[qi];
        for (int u : a.in[static_cast<size_t>(v)]) {
            if (!alive(u) || attr.test(u)) continue;
            bool absorb;
            if (a.owner[static_cast<size_t>(u)] == existential) {
                absorb = true;
            } else {
                absorb = --cnt[static_cast<size_t>(u)] == 0;
            }
            if (absorb) {
                attr.set(u);
                queue.push_back(u);
                if (levels) next_level.set(u);
            }
        }
    }
    if (levels && !next_level.empty()) levels->push_back(next_level);
    return attr;
}

VertexSet random_attractor(const Arena& a, const VertexSet& target, const VertexSet* within,
                           std::vector<VertexSet>* levels) {
    return attractor(a, Owner::Random, target, within, levels);
}

}  // namespace winset
