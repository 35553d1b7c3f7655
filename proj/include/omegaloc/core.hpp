// Explicit-state deterministic automata: *-, Buchi- and Rabin-Buchi layers.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace omegaloc {

using Event = int;
using State = int;
using Word = std::vector<Event>;
using StateSet = std::vector<bool>;

constexpr State kNone = -1;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Events are kept sorted by label; an event id is its index in that order.
class Alphabet {
public:
    Alphabet() = default;
    // labels must be unique and non-empty
    Alphabet(std::vector<std::pair<std::string, bool>> labelled);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::string& label(Event e) const { return labels_.at(e); }
    bool controllable(Event e) const { return ctrl_.at(e); }
    std::optional<Event> find(const std::string& label) const;
    Event index(const std::string& label) const;  // throws on unknown label
    const std::vector<std::string>& labels() const { return labels_; }

    std::vector<Event> controllable_events() const;
    bool contains(const Alphabet& sub) const;  // same labels and same partition
    bool operator==(const Alphabet& o) const { return labels_ == o.labels_ && ctrl_ == o.ctrl_; }

    // union of alphabets; a label controllable in one and not the other is an error
    static Alphabet merge(const std::vector<Alphabet>& parts);

private:
    std::vector<std::string> labels_;
    std::vector<bool> ctrl_;
};

struct StarAutomaton {
    Alphabet alphabet;
    int num_states = 0;        // 0 means the empty language (no initial state)
    State initial = kNone;
    std::vector<std::vector<State>> delta;  // delta[q][e], kNone if undefined

    static StarAutomaton make(Alphabet a, int n, State init);
    bool empty() const { return num_states == 0; }
    State next(State q, Event e) const { return delta[q][e]; }
    bool defined(State q, Event e) const { return delta[q][e] != kNone; }
    void set(State q, Event e, State t) { delta[q][e] = t; }
    int num_transitions() const;
    std::vector<Event> enabled(State q) const;
};

struct BuchiAutomaton {
    StarAutomaton core;
    StateSet accepting;
};

struct RabinPair {
    StateSet R;  // must be visited infinitely often
    StateSet I;  // the run must eventually stay inside
};

struct RabinBuchiAutomaton {
    StarAutomaton core;
    StateSet buchi;
    std::vector<RabinPair> pairs;
};

struct LassoWord {
    Word stem;
    Word cycle;  // non-empty
};

int count(const StateSet& s);
StateSet full_set(int n);
StateSet empty_set(int n);

std::string word_to_string(const Alphabet& a, const Word& w);
std::string lasso_to_string(const Alphabet& a, const LassoWord& w);
Word parse_word(const Alphabet& a, const std::string& text);
LassoWord parse_lasso(const Alphabet& a, const std::string& text);  // "u1 u2 ; v1 v2"

// Adds self-loops for events of `global` that `a` does not know; events of `a`
// must all appear in `global` with the same controllability.
StarAutomaton lift(const StarAutomaton& a, const Alphabet& global);
BuchiAutomaton lift(const BuchiAutomaton& a, const Alphabet& global);

struct ProductResult {
    StarAutomaton automaton;
    std::vector<std::vector<State>> tuples;  // component states per product state
};

// Shared events synchronize, absent events self-loop. BFS numbering.
ProductResult sync_product_tuples(const std::vector<StarAutomaton>& components, const Alphabet& global);
StarAutomaton sync_product(const std::vector<StarAutomaton>& components, const Alphabet& global);

struct IntersectionResult {
    BuchiAutomaton automaton;
    struct Origin {
        State a, b;
        int phase;
    };
    std::vector<Origin> origin;
};

IntersectionResult buchi_intersection_traced(const BuchiAutomaton& a, const BuchiAutomaton& b);
BuchiAutomaton buchi_intersection(const BuchiAutomaton& a, const BuchiAutomaton& b);

struct TrimResult {
    StarAutomaton automaton;
    std::vector<State> old_of_new;
    std::vector<State> new_of_old;  // kNone for removed states
};

// keep == nullptr keeps every state; otherwise only states with keep[q].
TrimResult reachable_trim_traced(const StarAutomaton& a, const StateSet* keep = nullptr);
StarAutomaton reachable_trim(const StarAutomaton& a);
BuchiAutomaton reachable_trim(const BuchiAutomaton& a);
RabinBuchiAutomaton reachable_trim(const RabinBuchiAutomaton& a);

StateSet remap_set(const StateSet& s, const TrimResult& t);

struct Totalized {
    StarAutomaton automaton;
    State sink = kNone;  // kNone if the input was already total
};

Totalized totalize(const StarAutomaton& a);

// Returns kNone when the word leaves the transition function.
State run_star(const StarAutomaton& a, const Word& w);

struct LassoRun {
    bool defined = false;        // every prefix stays inside the transition function
    StateSet omega;              // states visited infinitely often
};

LassoRun lasso_run(const StarAutomaton& a, const LassoWord& w);

struct LassoVerdict {
    bool defined = false;
    bool buchi = false;
    std::vector<bool> rabin_pairs;
    bool rabin = false;  // some pair accepts
};

bool omega_meets(const StateSet& omega, const StateSet& s);
bool omega_within(const StateSet& omega, const StateSet& s);
bool rabin_accepts(const StateSet& omega, const RabinPair& p);

LassoVerdict run_lasso(const BuchiAutomaton& a, const LassoWord& w);
LassoVerdict run_lasso(const RabinBuchiAutomaton& a, const LassoWord& w);

// Language-preserving state minimization of a prefix-closed recognizer
// (Moore refinement on definedness), BFS-renumbered.
StarAutomaton minimize(const StarAutomaton& a);

bool structurally_equal(const StarAutomaton& a, const StarAutomaton& b);

}  // namespace omegaloc
