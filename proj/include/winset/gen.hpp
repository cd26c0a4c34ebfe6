#pragma once

#include <cstdint>
#include <random>

#include "winset/arena.hpp"

namespace winset::gen {

// Seeded random instance generators used by fuzz tests and the CLI.
// Every generator is deterministic given its arguments: all randomness
// comes from std::mt19937_64 through our own bounded-draw helper, so the
// produced instances do not depend on library internals.
using Rng = std::mt19937_64;

// Uniform draw from [0, bound), bound >= 1, via rejection sampling.
int draw(Rng& rng, int bound);

// Each vertex is in the result with the given density.
VertexSet random_subset(int n, std::uint64_t seed, double density = 0.5);

// Non-empty variant: re-rolls until at least one vertex is present.
VertexSet random_nonempty_subset(int n, std::uint64_t seed, double density = 0.5);

// Simple digraph with m distinct edges (capped at what fits), all vertices
// player 1. Self-loops appear only when allow_self_loops is set.
Arena random_digraph(int n, int m, std::uint64_t seed, bool allow_self_loops = false);

// Digraph where every vertex has at least one out-edge (so infinite walks
// exist from everywhere). m counts total edges and is raised to n if needed.
Arena random_graph_total(int n, int m, std::uint64_t seed);

// Total two-player game without self-loops; each owner is a fair coin.
Arena random_game(int n, int m, std::uint64_t seed);

// Total MDP; each vertex is player 1 or random with equal probability.
Arena random_mdp(int n, int m, std::uint64_t seed, bool allow_self_loops = false);

// Total game with integer edge weights drawn from [-W, W].
Arena random_weighted_game(int n, int m, int W, std::uint64_t seed);

// Attaches priorities in [0, d-1] to an existing arena.
void assign_priorities(Arena& a, int d, std::uint64_t seed);

// Total game with priorities in [0, d-1].
Arena random_parity_game(int n, int m, int d, std::uint64_t seed);

// Total game with both weights in [-W, W] and priorities in [0, d-1].
Arena random_mpp_game(int n, int m, int W, int d, std::uint64_t seed);

}  // namespace winset::gen
