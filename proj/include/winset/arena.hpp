#pragma once

#include <optional>
#include <string>
#include <vector>

#include "winset/vertex_set.hpp"

namespace winset {

enum class Owner : uint8_t { P1, P2, Random };
enum class ModelKind : uint8_t { Graph, Game, Mdp };

const char* owner_name(Owner o);
const char* kind_name(ModelKind k);

// Unified vertex/edge model for plain digraphs, two-player game graphs and
// MDPs. Vertex ids are dense integers 0..n-1. Random vertices move to a
// uniformly random successor; no probabilities are stored since the
// qualitative analyses never read them. Edge weights live alongside the
// out-adjacency, per-vertex priorities are optional.
struct Arena {
    ModelKind kind = ModelKind::Graph;
    int n = 0;
    long long m = 0;
    bool total_required = false;  // graphs may opt out of the out-degree rule
    std::vector<Owner> owner;
    std::vector<std::vector<int>> out;  // ascending target ids after finalize
    std::vector<std::vector<int>> in;   // exact transpose of out
    std::vector<std::vector<long long>> wout;  // aligned with out; empty if unweighted
    std::vector<int> priority;                 // empty if unused

    static Arena make(ModelKind kind, int n);

    // Pre-finalize mutation. Duplicate edges are rejected at finalize.
    void add_edge(int u, int v, long long w = 0);
    void set_priority(int v, int p);
    void finalize();

    bool finalized() const { return finalized_; }
    bool weighted() const { return !wout.empty(); }
    bool has_priorities() const { return !priority.empty(); }
    int out_deg(int v) const { return static_cast<int>(out[v].size()); }
    int in_deg(int v) const { return static_cast<int>(in[v].size()); }
    bool has_edge(int u, int v) const;
    long long edge_weight(int u, int v) const;  // requires the edge to exist
    VertexSet owned_by(Owner o) const;
    VertexSet vertices() const { return VertexSet::full(n); }
    int max_priority() const;

private:
    bool finalized_ = false;
    std::vector<std::pair<std::pair<int, int>, long long>> pending_;
};

struct Diagnostic {
    enum Level { Warning, Error } level;
    std::string message;
};

// Structural diagnostics for the given model kind. Errors mark invariant
// violations (missing out-edges, foreign owners, ...). Self-loops are
// warnings for graphs and MDPs, which legitimately use them, and errors
// for games: the fast Buechi game solver assumes their absence.
std::vector<Diagnostic> validate(const Arena& a, ModelKind kind);
bool has_errors(const std::vector<Diagnostic>& ds);

// SCCs of the subgraph induced by `within`, emitted in reverse topological
// order (every SCC before all SCCs with edges into it); members ascending.
std::vector<VertexSet> scc_decomposition(const Arena& a, const VertexSet& within);
std::vector<VertexSet> scc_decomposition(const Arena& a);

// Whether the induced subgraph on `s` contains at least one edge. A
// singleton with a self-loop counts; this is the non-triviality test for
// components.
bool has_internal_edge(const Arena& a, const VertexSet& s);

// Condensation DAG. Nodes are indexed in the emission order of
// scc_decomposition; node_of maps each vertex to its node.
struct Condensation {
    std::vector<VertexSet> members;
    std::vector<int> node_of;
    std::vector<std::vector<int>> out;  // deduplicated, ascending, no self-loops
    int size() const { return static_cast<int>(members.size()); }
};
Condensation condense(const Arena& a);

// Vertices that can reach S inside `within` (S included).
VertexSet graph_reach(const Arena& a, const VertexSet& s, const VertexSet* within = nullptr);

// Player-x attractor inside `within` via the counting method: existential
// vertices join when one successor is absorbed, all others when their last
// remaining successor is. Runs linear in the edges incident to the result.
// Vertices without outgoing edges are never forced anywhere.
VertexSet attractor(const Arena& a, Owner existential, const VertexSet& target,
                    const VertexSet* within = nullptr,
                    std::vector<VertexSet>* levels = nullptr);

// Random attractor for MDPs: Random is existential, player 1 universal.
VertexSet random_attractor(const Arena& a, const VertexSet& target,
                           const VertexSet* within = nullptr,
                           std::vector<VertexSet>* levels = nullptr);

namespace detail {
[[noreturn]] void fail_precondition(const std::string& what);
inline void require(bool ok, const char* what) {
    if (!ok) fail_precondition(what);
}
}  // namespace detail

}  // namespace winset
