// Supremal *-controllable sublanguage and the safety supervisor.
#pragma once

#include <optional>

#include "omegaloc/core.hpp"

namespace omegaloc {

struct SafetySupervisor {
    StarAutomaton automaton;  // minimal recognizer of the supremal language
    StateSet buchi_lift;      // x accepted iff some string reaching x reaches an accepting plant state
    bool empty() const { return automaton.empty(); }
};

// plant and spec over one alphabet (lift the spec first if needed).
SafetySupervisor sup_con_star(const BuchiAutomaton& plant, const StarAutomaton& spec);

// Acceptance lifted from the plant onto any recognizer of a sublanguage of L(plant).
StateSet lift_acceptance(const StarAutomaton& sup, const BuchiAutomaton& plant);

BuchiAutomaton controlled_plant(const BuchiAutomaton& plant, const SafetySupervisor& sup);

struct ControllabilityCheck {
    bool controllable = true;
    std::optional<Word> string;  // s in pre(K) with s.e in L(plant) but not in pre(K)
    Event event = -1;
};
ControllabilityCheck check_star_controllability(const StarAutomaton& plant, const StarAutomaton& k);

}  // namespace omegaloc
