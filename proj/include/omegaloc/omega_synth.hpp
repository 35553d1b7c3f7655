// Liveness synthesis: Rabin-Buchi product, controllability subset, sup/inf
// languages, existence check and the (product-state, tracker-state) supervisor.
//
// Acceptance of the Rabin-Buchi product follows the plant-as-assumption
// reading: a run is legal when it violates the Buchi layer (the plant itself is
// not live along it) or satisfies the Rabin pair.
#pragma once

#include <optional>

#include "omegaloc/core.hpp"
#include "omegaloc/omega_lang.hpp"

namespace omegaloc {

struct RabinBuchiProduct {
    RabinBuchiAutomaton automaton;
    std::vector<State> plant_state;
    std::vector<State> legal_state;  // kNone once the legal spec has been left
};

// A Buchi legal spec is read as the pair (R = accepting, I = all states).
RabinBuchiAutomaton as_rabin(const BuchiAutomaton& a);

// legal: exactly one Rabin pair; its Buchi line (if any) is ignored.
RabinBuchiProduct build_rabin_buchi(const BuchiAutomaton& plant, const RabinBuchiAutomaton& legal);

struct ControllabilityResult {
    StateSet subset;
    std::vector<std::vector<bool>> phi;  // phi[q][e]; all false outside the subset

    std::vector<Event> pattern(State q) const;
};

// One-step controllable predecessor: some control pattern (all defined
// uncontrollable events plus any chosen controllable ones, at least one event
// in total) keeps every possible successor inside `target`.
StateSet cpre(const StarAutomaton& a, const StateSet& target);

ControllabilityResult controllability_subset(const RabinBuchiAutomaton& a);

// Keeps only the states of the controllability subset and the transitions among them.
RabinBuchiAutomaton restrict_sup(const RabinBuchiAutomaton& a, const ControllabilityResult& c);

// clo(minimal) intersected with the Buchi behaviour `plant_omega`.
BuchiAutomaton inf_closure(const BuchiAutomaton& minimal, const BuchiAutomaton& plant_omega);

// inf_a contained in the legal behaviour of sup_e (Buchi layer and Rabin pair).
OmegaCompare existence_check(const BuchiAutomaton& inf_a, const RabinBuchiAutomaton& sup_e);

struct OmegaSupervisor {
    StarAutomaton automaton;
    StateSet buchi_lift;
    std::vector<std::pair<State, State>> origin;  // (product state, tracker state)
    std::vector<std::vector<Event>> psi;          // enabled events per supervisor state
    StarAutomaton tracker;                         // totalized minimal spec
    State sink = kNone;
    bool f0_full = true;  // every reachable product state lies in pre(sup C^w)
};

// plant: the controlled plant used to lift acceptance onto the result.
OmegaSupervisor assemble_fomega(const RabinBuchiAutomaton& asup, const ControllabilityResult& c,
                                const BuchiAutomaton& minimal, const BuchiAutomaton& plant);

}  // namespace omegaloc
