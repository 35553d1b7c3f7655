// pre / lim / clo and language decision procedures.
//
// lim(K) for a prefix-closed K is never built as an automaton: a lasso lies in
// lim(K) iff running it through K's automaton never leaves the transition
// function (in_lim below).
//
// Containment of omega-languages works on the synchronized product: with both
// sides deterministic and each condition a Buchi set and/or one Rabin pair, a
// lasso in S(a) \ S(b) exists iff some reachable strongly connected piece of the
// product satisfies a's condition and violates b's. An ultimately periodic
// counterexample exists whenever any counterexample does, so searching product
// SCCs is exact.
#pragma once

#include <optional>

#include "omegaloc/core.hpp"

namespace omegaloc {

// Tarjan SCCs of the transition graph restricted to `within` (all states when null).
// comp[q] = -1 for excluded states. nontrivial[c]: contains a cycle.
struct SccResult {
    std::vector<int> comp;
    std::vector<bool> nontrivial;
    int count = 0;
};
SccResult strongly_connected(const StarAutomaton& a, const StateSet* within = nullptr);

// Backward reachability: states that can reach `target` using only states in `within`.
StateSet can_reach(const StarAutomaton& a, const StateSet& target, const StateSet* within = nullptr);

// States from which some cycle through `accepting` is reachable.
StateSet live_states(const StarAutomaton& a, const StateSet& accepting);

StarAutomaton pre_automaton(const StarAutomaton& a);
StarAutomaton pre_automaton(const BuchiAutomaton& a);
BuchiAutomaton clo_automaton(const BuchiAutomaton& a);
bool is_deadlock_free(const BuchiAutomaton& a);

bool in_lim(const StarAutomaton& a, const LassoWord& w);

struct StarCompare {
    bool holds = true;
    std::optional<Word> counterexample;  // in exactly one language (equal) / in a not b (contained)
};
StarCompare star_equal(const StarAutomaton& a, const StarAutomaton& b);
StarCompare star_contained(const StarAutomaton& a, const StarAutomaton& b);

// Conjunction of an optional Buchi set and an optional single Rabin pair.
// With neither, every infinite run of the automaton is accepted.
struct OmegaCondition {
    std::optional<StateSet> buchi;
    std::optional<RabinPair> pair;

    bool accepts(const StateSet& omega) const;
    static OmegaCondition of(const BuchiAutomaton& a) { return {a.accepting, std::nullopt}; }
    static OmegaCondition rabin_of(const RabinBuchiAutomaton& a);   // pair only; rejects multi-pair
    static OmegaCondition both_of(const RabinBuchiAutomaton& a);    // Buchi and pair
};

bool accepts(const StarAutomaton& a, const OmegaCondition& c, const LassoWord& w);

struct OmegaCompare {
    bool contained = true;
    std::optional<LassoWord> witness;  // in S(a) \ S(b)
};
OmegaCompare omega_contained(const StarAutomaton& a, const OmegaCondition& ca, const StarAutomaton& b,
                             const OmegaCondition& cb);
OmegaCompare omega_contained_single_pair(const RabinBuchiAutomaton& a, const RabinBuchiAutomaton& b);

}  // namespace omegaloc
