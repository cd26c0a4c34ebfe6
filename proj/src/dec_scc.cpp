#include "winset/dec_scc.hpp"

#include <algorithm>

#include "winset/checked.hpp"

namespace winset {

DecScc::DecScc(const Arena& graph) : n_(graph.n), out_(graph.out) {
    detail::require(graph.finalized(), "finalized arena required");
    comp_of_.assign(n_, -1);
    std::vector<VertexSet> comps = strong_components(VertexSet::full(n_));
    std::sort(comps.begin(), comps.end(),
              [](const VertexSet& a, const VertexSet& b) { return a.first() < b.first(); });
    for (VertexSet& c : comps) fresh_component(std::move(c));
    recount_outgoing();
}

int DecScc::rep(int u) const {
    detail::require(u >= 0 && u < n_, "vertex out of range");
    return comp_of_[u];
}

const VertexSet& DecScc::members(int handle) const {
    detail::require(handle >= 0 && handle < static_cast<int>(members_.size()),
                    "unknown handle");
    return members_[handle];
}

int DecScc::outgoing(int handle) const {
    detail::require(handle >= 0 && handle < static_cast<int>(members_.size()),
                    "unknown handle");
    detail::require(live_[handle], "handle not live");
    return outgoing_[handle];
}

bool DecScc::live(int handle) const {
    detail::require(handle >= 0 && handle < static_cast<int>(members_.size()),
                    "unknown handle");
    return live_[handle] != 0;
}

std::vector<int> DecScc::live_handles() const {
    std::vector<int> out;
    for (int h = 0; h < static_cast<int>(live_.size()); ++h)
        if (live_[h]) out.push_back(h);
    return out;
}

bool DecScc::has_edge(int u, int v) const {
    detail::require(u >= 0 && u < n_ && v >= 0 && v < n_, "vertex out of range");
    return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

std::vector<int> DecScc::delete_announce(const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> touched;
    for (const auto& [u, v] : edges) {
        detail::require(u >= 0 && u < n_ && v >= 0 && v < n_, "vertex out of range");
        auto it = std::lower_bound(out_[u].begin(), out_[u].end(), v);
        detail::require(it != out_[u].end() && *it == v, "edge not present");
        out_[u].erase(it);
        if (comp_of_[u] == comp_of_[v]) touched.push_back(comp_of_[u]);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

    std::vector<VertexSet> fresh;
    for (int h : touched) {
        std::vector<VertexSet> parts = strong_components(members_[h]);
        if (parts.size() == 1) continue;  // still one component, handle survives
        live_[h] = 0;
        for (VertexSet& p : parts) fresh.push_back(std::move(p));
    }
    std::sort(fresh.begin(), fresh.end(),
              [](const VertexSet& a, const VertexSet& b) { return a.first() < b.first(); });

    std::vector<int> announced;
    announced.reserve(fresh.size());
    for (VertexSet& p : fresh) announced.push_back(fresh_component(std::move(p)));
    recount_outgoing();

    if (checked_mode()) {
        std::vector<VertexSet> truth = strong_components(VertexSet::full(n_));
        std::sort(truth.begin(), truth.end(),
                  [](const VertexSet& a, const VertexSet& b) { return a.first() < b.first(); });
        std::vector<int> handles = live_handles();
        detail::invariant(truth.size() == handles.size(),
                          "component count drifted from recomputation");
        std::sort(handles.begin(), handles.end(), [this](int a, int b) {
            return members_[a].first() < members_[b].first();
        });
        for (size_t i = 0; i < truth.size(); ++i)
            detail::invariant(truth[i] == members_[handles[i]],
                              "component members drifted from recomputation");
    }
    return announced;
}

std::vector<int> DecScc::delete_announce_no_outgoing(
    const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> announced = delete_announce(edges);
    std::vector<int> bottom;
    for (int h : announced)
        if (outgoing_[h] == 0) bottom.push_back(h);
    return bottom;
}

int DecScc::fresh_component(VertexSet members) {
    int handle = static_cast<int>(members_.size());
    for (int v = members.first(); v != -1; v = members.next(v)) comp_of_[v] = handle;
    members_.push_back(std::move(members));
    live_.push_back(1);
    outgoing_.push_back(0);
    return handle;
}

void DecScc::recount_outgoing() {
    for (int h = 0; h < static_cast<int>(live_.size()); ++h)
        if (live_[h]) outgoing_[h] = 0;
    std::vector<std::pair<int, int>> cross;
    for (int u = 0; u < n_; ++u)
        for (int w : out_[u])
            if (comp_of_[u] != comp_of_[w]) cross.emplace_back(comp_of_[u], comp_of_[w]);
    std::sort(cross.begin(), cross.end());
    cross.erase(std::unique(cross.begin(), cross.end()), cross.end());
    for (const auto& [from, to] : cross) ++outgoing_[from];
}

std::vector<VertexSet> DecScc::strong_components(const VertexSet& within) const {
    // Iterative Tarjan over the current adjacency, restricted to `within`.
    std::vector<int> index(n_, -1);
    std::vector<int> low(n_, 0);
    std::vector<char> on_stack(n_, 0);
    std::vector<int> stack;
    struct Frame {
        int v;
        size_t next;
    };
    std::vector<Frame> call;
    std::vector<VertexSet> comps;
    int counter = 0;
    for (int root = within.first(); root != -1; root = within.next(root)) {
        if (index[root] != -1) continue;
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        call.push_back({root, 0});
        while (!call.empty()) {
            Frame& f = call.back();
            const std::vector<int>& succ = out_[f.v];
            bool descended = false;
            while (f.next < succ.size()) {
                int w = succ[f.next++];
                if (!within.test(w)) continue;
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[f.v] = std::min(low[f.v], index[w]);
            }
            if (descended) continue;
            int v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                VertexSet comp(n_);
                while (true) {
                    int w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.set(w);
                    if (w == v) break;
                }
                comps.push_back(std::move(comp));
            }
        }
    }
    return comps;
}

}  // namespace winset
