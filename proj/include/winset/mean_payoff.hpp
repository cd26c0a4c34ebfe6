#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "winset/arena.hpp"
#include "winset/objectives.hpp"

namespace winset {

// Saturating rank domain {0, ..., top} plus one unbeatable value above it.
// Ranks measure the debt player 1 may still have to pay off; once a rank
// saturates past `top` the vertex is lost for the threshold objective.
struct EnergyDomain {
    long long top = 0;
    long long unbeatable() const { return top + 1; }
    bool saturated(long long r) const { return r > top; }
    // Rank a successor of rank r across an edge of (rescaled) weight w:
    // max(0, r - w), saturating once the difference exceeds `top`.
    long long pay(long long r, long long w) const;
};

// Least progress measure of the threshold mean-payoff game on the subgame
// induced by `mask`. Weights are rescaled so the threshold becomes zero: for
// nu = y/z every weight w turns into w*z - y, and player 1 wins exactly where
// the rank stays below saturation, provided `top` is at least
// |mask| * (largest rescaled magnitude), which is the default.
//
// The measure is decremental: remove_attractor deletes a player-2 attractor
// from the live subgame and re-settles. Ranks of surviving vertices never
// decrease across deletions, so the winners stay exact for the same `top`.
class MpProgressMeasure {
public:
    MpProgressMeasure(const Arena& game, const Rational& nu, const VertexSet& mask,
                      std::optional<long long> top = std::nullopt);

    const EnergyDomain& domain() const { return dom_; }
    const VertexSet& alive() const { return alive_; }
    long long rank(int v) const { return rank_[v]; }
    VertexSet winners() const;

    // Deletes `a` (intersected with the live subgame) and returns the new
    // winners. `a` must be closed under player-2 attraction: no surviving
    // player-2 vertex may have an edge into it and every surviving player-1
    // vertex must keep a live successor. Violations are precondition errors.
    VertexSet remove_attractor(const VertexSet& a);

private:
    long long required(int v) const;
    void push(int v);
    void settle();

    const Arena* a_;
    EnergyDomain dom_;
    VertexSet alive_;
    std::vector<long long> rank_;
    std::vector<std::vector<long long>> w_;  // rescaled, aligned with out
    std::deque<int> queue_;
    std::vector<char> queued_;
};

// Solved measure over the whole game. With the default `top` the winner set
// is exactly the player-1 winning set of mean-payoff >= nu; smaller tops
// under-approximate it.
MpProgressMeasure mp_progress_measure(const Arena& game, const Rational& nu,
                                      std::optional<long long> top = std::nullopt);

// Same start, named for its intended use: a sequence of remove_attractor
// calls interleaved with winner queries.
MpProgressMeasure mp_decremental(const Arena& game, const Rational& nu);

// Sound partial winner query on the subgame induced by `within`: runs the
// measure with doubling tops starting at the largest rescaled magnitude and
// returns the first non-empty winner set. Any returned set is a subset of
// the true player-1 winning set and an empty result is exact.
VertexSet mp_subset_winning(const Arena& game, const Rational& nu,
                            const VertexSet* within = nullptr);

// Winning set of mean-payoff >= nu intersected with Buechi(b): visit b
// infinitely often while keeping the long-run average at or above nu.
VertexSet mp_buchi(const Arena& game, const Rational& nu, const VertexSet& b);

// Winning set of mean-payoff >= nu intersected with coBuechi: visit `bad`
// only finitely often.
VertexSet mp_cobuchi(const Arena& game, const Rational& nu, const VertexSet& bad);

// Winning set of mean-payoff >= nu intersected with the parity condition of
// the game's priorities (missing priorities count as 0).
VertexSet mp_parity(const Arena& game, const Rational& nu);

// Exact optimal values of the mean-payoff parity game. nullopt stands for
// minus infinity: player 1 cannot satisfy the parity condition from there.
// Every finite value is a rational y/z with 1 <= z <= n and |y| <= z*W.
std::vector<MpValue> mp_parity_values(const Arena& game);

}  // namespace winset
