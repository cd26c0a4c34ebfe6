#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "winset/arena.hpp"
#include "winset/objectives.hpp"

namespace winset::oracles {

// Brute-force reference solvers. Everything in this namespace favors
// directness over speed: reachability runs to a fixpoint over full scans,
// strategies are enumerated outright, and component structure comes from
// transitive closure. None of it reuses the production algorithms, so a
// disagreement in a test points at a real bug rather than a shared one.
// Entry points enforce hard size caps and throw std::invalid_argument with
// message "oracle size cap exceeded" beyond them.

// ---- closure-based primitives ----

// Vertices that can reach some vertex of `s` (s included), restricted to
// `within` when given. Edges leaving the restriction are ignored.
VertexSet closure_reach(const Arena& a, const VertexSet& s, const VertexSet* within = nullptr);

// Strongly connected components of the (restricted) graph, computed from the
// transitive closure. Emitted by ascending minimal vertex, members ascending.
std::vector<VertexSet> closure_sccs(const Arena& a, const VertexSet* within = nullptr);

// Attractor of `target` for the existential player, by repeated full scans of
// the definition. Vertices with no outgoing edge inside the restriction are
// never forced in.
VertexSet naive_attractor(const Arena& a, Owner existential, const VertexSet& target,
                          const VertexSet* within = nullptr);

// ---- omega-regular games ----

// Winning partition (player 1, player 2) of a parity game, by the classic
// recursive peeling over the minimum priority. Player 1 wins when the least
// priority seen infinitely often is even.
std::pair<VertexSet, VertexSet> brute_parity(const Arena& game);

// Player-1 winning set for "visit b infinitely often", straight from the
// two-level fixpoint nu Y. mu X. (b & cpre(Y)) | cpre(X).
VertexSet buchi_fixpoint(const Arena& game, const VertexSet& b);

// ---- end components ----

// Checks the definition: x nonempty, random members keep all successors in x,
// player-1 members keep at least one, and the induced subgraph is strongly
// connected with at least one edge.
bool is_end_component(const Arena& mdp, const VertexSet& x);

// All maximal end components by explicit subset enumeration (n <= 16).
std::vector<VertexSet> all_maximal_ecs_by_subsets(const Arena& mdp);

// Maximal end components by fixpoint refinement of the closure SCCs:
// peel random vertices with outside successors together with their random
// attractor, re-split, repeat. Ordered by ascending minimal vertex.
std::vector<VertexSet> brute_mec(const Arena& mdp, const VertexSet* within = nullptr);

// ---- almost-sure reachability and parity on MDPs ----

// Almost-sure winners for reaching t, by alternating "prune vertices that
// cannot reach t" with "remove their random attractor" until stable.
// The target is treated as absorbing: arriving anywhere in t counts.
VertexSet as_reach_fixpoint(const Arena& mdp, const VertexSet& t);

// Almost-sure winners for reaching t by enumerating memoryless player-1
// strategies on the target-absorbed MDP. A strategy wins from v when every
// bottom component reachable from v in the induced chain touches t.
VertexSet brute_as_reach(const Arena& mdp, const VertexSet& t);

// Union of winning end components of a priority-labeled MDP: for each even
// priority i, the maximal end components of the sub-MDP that survives
// removing the random attractor of priorities below i, kept when their
// minimum priority is exactly i.
VertexSet brute_we_union(const Arena& mdp);

// Almost-sure parity winners: almost-sure reachability of the union above.
VertexSet brute_mdp_parity(const Arena& mdp);

// ---- strong fairness ----

// Does `candidate` contain a nonempty vertex set that induces a strongly
// connected subgraph with an edge and satisfies every request/grant pair?
// Checked by subset enumeration (|candidate| <= 16).
bool good_component_in(const Arena& graph, const VertexSet& candidate,
                       const std::vector<StreettPair>& pairs);

// Vertices of a graph from which some fair lasso exists: everything that can
// reach an SCC containing a good component.
VertexSet brute_streett(const Arena& graph, const std::vector<StreettPair>& pairs);

// Almost-sure fair vertices of an MDP: almost-sure reachability of the union
// of maximal end components that contain a good end component.
VertexSet brute_streett_mdp(const Arena& mdp, const std::vector<StreettPair>& pairs);

// ---- bounded liveness on graphs and games ----

// Vertices with a path on which, from some point on, every window of d
// consecutive vertices contains a vertex of b. Explicit product over
// (vertex, steps since the last b-visit).
VertexSet brute_bounded_buchi(const Arena& graph, const VertexSet& b, int d);

// Vertices with a path on which infinitely often d consecutive vertices all
// lie in c. Explicit product over (vertex, current c-streak).
VertexSet brute_bounded_cobuchi(const Arena& graph, const VertexSet& c, int d);

// Player-1 winning set of the bounded recurrence condition on a game, by
// solving a parity game on the explicit counter product.
VertexSet brute_bounded_buchi_game(const Arena& game, const VertexSet& b, int d);

// ---- sequential reachability and coverage ----

// Winners for visiting t1, ..., tk in order (later targets may be satisfied
// by the same position when already inside them). Product with the obvious
// k+1-state sequence automaton; the surviving engine matches the model kind
// (path reachability, almost-sure reachability, or attractor).
VertexSet brute_seq(const Arena& model, const std::vector<VertexSet>& targets);

// Can each target be covered from `start` by its model-appropriate notion of
// reachability, choosing a fresh run per target?
bool brute_coverage(const Arena& model, int start, const std::vector<VertexSet>& targets);

// Vertices that cover every target: intersection of the per-target winning
// sets.
VertexSet brute_all_coverage(const Arena& model, const std::vector<VertexSet>& targets);

// ---- mean payoff, alone and with parity ----

// Values of the game where both players are restricted to positional
// strategies: max over player-1 choices of min over reachable cycles.
// Without priorities this equals the true mean-payoff value. With
// priorities a cycle whose minimum priority is odd counts as minus
// infinity; positional play only bounds the true value from below then.
std::vector<MpValue> brute_mp_value(const Arena& game);

// Vertices from which player 1 has a positional strategy that avoids every
// cycle of negative total weight (weights pre-shifted by the threshold),
// i.e. the threshold winners of the plain mean-payoff game.
VertexSet positional_mp_winners(const Arena& game, const Rational& nu,
                                const VertexSet* within = nullptr);

// Winners of "mean payoff >= nu and visit b infinitely often": union of all
// nonempty player-2 traps S with attractor(b & S) = S inside which player 1
// wins the plain threshold game everywhere.
VertexSet brute_mp_buchi(const Arena& game, const Rational& nu, const VertexSet& b);

// Winners of "mean payoff >= nu and eventually avoid `bad` forever":
// iterated peeling of player-1 attractors of threshold winners in the
// bad-free interior.
VertexSet brute_mp_cobuchi(const Arena& game, const Rational& nu, const VertexSet& bad);

// Winners of "mean payoff >= nu and parity", by recursion over the minimum
// priority with the two peeling loops above as the two cases.
VertexSet brute_mpp(const Arena& game, const Rational& nu);

// Exact values of the mean-payoff-parity game, exploiting that player 2 has
// optimal positional strategies: min over player-2 positional strategies of
// the best strongly connected "flower" (even minimum priority) player 1 can
// reach and cycle in, valued by its maximum cycle mean.
std::vector<MpValue> brute_mpp_values(const Arena& game);

}  // namespace winset::oracles
