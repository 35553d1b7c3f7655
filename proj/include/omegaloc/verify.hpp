// Equivalence checks for a set of local controllers, the limit-intersection
// harness, and brute-force oracles for congruences and controllability.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "omegaloc/core.hpp"
#include "omegaloc/localization.hpp"
#include "omegaloc/random.hpp"

namespace omegaloc {

struct EquivalenceReport {
    bool finite_ok = true;
    bool infinite_ok = true;
    std::optional<Word> counterexample;        // finite disagreement
    std::optional<LassoWord> lasso_counterexample;
    int checked_lassos = 0;
    int lassos_accepted = 0;  // sampled lassos inside the reference behaviour
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, bool>> sub_results;
    std::string detail;
};

// Exact: L(plant) ∩ ⋂ L(controllers) == L(sup_omega). Also reports
// plant ∩ safety controllers == L(sup_star) and sup_star ∩ liveness controllers == L(sup_omega).
EquivalenceReport check_finite_equivalence(const BuchiAutomaton& plant, const StarAutomaton& sup_star,
                                           const StarAutomaton& sup_omega,
                                           const std::vector<LocalController>& controllers);

// Tier 1 rechecks that the synchronized product of plant and controllers is
// contained in every operand and recognizes L(sup_omega), so the limits agree
// (lim distributes over intersections of prefix-closed languages). Tier 2
// compares S(plant) ∩ lim(controllers) against S(plant) ∩ lim(sup_omega) on
// `lassos` seeded samples with cycles of length <= max_cycle.
EquivalenceReport check_infinite_equivalence(const BuchiAutomaton& plant, const StarAutomaton& sup_omega,
                                             const std::vector<LocalController>& controllers, int lassos,
                                             std::uint64_t seed, int max_cycle = 12);

struct Lemma1Report {
    int trials = 0;
    int lassos = 0;
    int violations = 0;
    int in_both = 0;     // lim(A) ∩ lim(B) side witnessed
    int in_neither = 0;  // lasso outside lim(C)
    std::optional<std::string> first_violation;
};

// Random prefix-closed A, B (<= max_states) with C the synchronized product;
// checks lim(A) ∩ lim(B) == lim(C) on sampled lassos.
Lemma1Report lemma1_harness(int trials, int lassos_per_trial, std::uint64_t seed, int max_states = 5);
// Same check on one fixed pair.
Lemma1Report lemma1_check(const StarAutomaton& a, const StarAutomaton& b, int lassos, Rng& rng);

// Exhaustive minimum control congruence; throws above 8 states.
Congruence brute_force_min_congruence(const StarAutomaton& sup, const Profile& p);

// Exhaustive memoryless control-pattern search; throws above 6 states or on
// anything but one Rabin pair. A state wins under a pattern assignment when no
// reachable cycle of the controlled graph visits the Buchi layer while missing
// R or leaving I, and no dead end is reachable.
StateSet brute_force_controllability(const RabinBuchiAutomaton& a);

// Single-transition mutations of one controller, for tamper tests.
struct Mutation {
    std::size_t controller = 0;
    State state = kNone;
    Event event = -1;
    State target = kNone;  // kNone: delete
    std::string describe(const std::vector<LocalController>& cs) const;
};
std::vector<Mutation> all_deletions(const std::vector<LocalController>& cs);
// Adds the controller's own event where it is undefined.
std::vector<Mutation> all_event_additions(const std::vector<LocalController>& cs);
std::vector<LocalController> apply(const std::vector<LocalController>& cs, const Mutation& m);

}  // namespace omegaloc
