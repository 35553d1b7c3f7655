// Supervisor localization: enable/disable profiles, control congruences and
// per-event local controllers.
#pragma once

#include <optional>
#include <string>

#include "omegaloc/core.hpp"
#include "omegaloc/omega_synth.hpp"
#include "omegaloc/safety.hpp"

namespace omegaloc {

enum class Kind { Safety, Liveness };
// C1: strings in the prefix closure of the minimal spec; C2: the rest.
// None on a liveness profile means both parts together (undivided).
enum class Part { None, C1, C2 };

std::string to_string(Kind k);
std::string to_string(Part p);

struct Profile {
    Event event = -1;
    Part part = Part::None;
    StateSet enable;
    StateSet disable;
};

// sup: the safety supervisor's automaton; D found on the sup x plant product.
Profile profile_safety(const BuchiAutomaton& plant, const StarAutomaton& sup, Event alpha);

// controlled: G^{f*}; tracker/sink: the totalized minimal-spec prefix automaton
// (sink == kNone when it is total, so C2 is empty).
Profile profile_liveness(const BuchiAutomaton& controlled, const StarAutomaton& sup, const StarAutomaton& tracker,
                         State sink, Event alpha, Part part);
inline Profile profile_liveness(const BuchiAutomaton& controlled, const OmegaSupervisor& sup, Event alpha, Part part) {
    return profile_liveness(controlled, sup.automaton, sup.tracker, sup.sink, alpha, part);
}

bool consistent(const Profile& p, State x, State y);

struct Congruence {
    std::vector<std::vector<State>> cells;  // each sorted; cells ordered by smallest member
    std::vector<int> index;                 // state -> cell

    static Congruence from_index(const std::vector<int>& raw);
    int size() const { return static_cast<int>(cells.size()); }
};

// nullopt when valid, otherwise a description of the first violation.
std::optional<std::string> check_congruence(const StarAutomaton& sup, const Profile& p, const Congruence& c);

// Greedy merging in lexicographic pair order with forward-closure propagation.
Congruence build_congruence(const StarAutomaton& sup, const Profile& p);

struct LocalController {
    StarAutomaton automaton;
    Event event = -1;
    Kind kind = Kind::Safety;
    Part part = Part::None;
    Congruence congruence;  // cells over the parent supervisor's states, in controller state order

    std::string name() const;  // loc_<event>_safety / _live_c1 / _live_c2 / _live_all
};

LocalController build_local_controller(const StarAutomaton& sup, const Congruence& c, Event alpha, Kind kind,
                                       Part part);

struct Localization {
    std::vector<LocalController> safety;    // one per controllable event, in event order
    std::vector<LocalController> liveness;  // (c1, c2) per controllable event
    std::vector<LocalController> all() const;
};

Localization localize_all(const BuchiAutomaton& plant, const SafetySupervisor& sup_star,
                          const BuchiAutomaton& controlled, const OmegaSupervisor& sup_omega);

// Liveness controller from the undivided profile (C1 and C2 together).
LocalController localize_undivided(const BuchiAutomaton& controlled, const OmegaSupervisor& sup_omega, Event alpha);

}  // namespace omegaloc
