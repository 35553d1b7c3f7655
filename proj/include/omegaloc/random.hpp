// Seeded generators for small random instances used by the property harnesses.
#pragma once

#include <cstdint>
#include <random>

#include "omegaloc/core.hpp"

namespace omegaloc {

using Rng = std::mt19937_64;

// Events e0..e{n-1}; each controllable with probability ctrl_fraction, at least
// one of each kind when n >= 2.
Alphabet random_alphabet(Rng& rng, int n_events, double ctrl_fraction = 0.5);

// Connected (every state reachable) deterministic automaton. Each remaining
// (state, event) slot is defined with probability `density`.
StarAutomaton random_star(Rng& rng, const Alphabet& a, int n_states, double density);

// As random_star, and every state has at least one outgoing transition.
StarAutomaton random_nonblocking(Rng& rng, const Alphabet& a, int n_states, double density);

StateSet random_subset(Rng& rng, int n, double p);

// Deadlock-free Buchi automaton: non-blocking core, non-empty accepting set,
// trimmed to states that can reach an accepting cycle.
BuchiAutomaton random_buchi(Rng& rng, const Alphabet& a, int n_states, double density);

// Single-pair Rabin-Buchi automaton over a non-blocking core.
RabinBuchiAutomaton random_rabin_buchi(Rng& rng, const Alphabet& a, int n_states, double density);

// A lasso obtained by walking `a` (stem up to max_stem, cycle 1..max_cycle).
// The walk stops early at dead ends, in which case the cycle is a random word.
LassoWord random_walk_lasso(Rng& rng, const StarAutomaton& a, int max_stem, int max_cycle);

// Uniform random lasso over the alphabet.
LassoWord random_lasso(Rng& rng, const Alphabet& a, int max_stem, int max_cycle);

// Buchi automaton accepting exactly the word stem.cycle^omega.
BuchiAutomaton lasso_automaton(const Alphabet& a, const LassoWord& w);

}  // namespace omegaloc
