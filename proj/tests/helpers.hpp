// Independent reference routines for the unit tests. They work on explicit
// strings rather than on automata products.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "omegaloc/core.hpp"
#include "omegaloc/io.hpp"

namespace testing_support {

using namespace omegaloc;

// Direct transition-function walk, without run_star.
inline bool accepts_word(const StarAutomaton& a, const Word& w) {
    if (a.num_states == 0) return false;
    State q = a.initial;
    for (Event e : w) {
        q = a.delta[q][e];
        if (q < 0) return false;
    }
    return true;
}

// Every word over the alphabet with length <= max_len.
inline std::vector<Word> all_words(int alphabet_size, int max_len) {
    std::vector<Word> out{{}};
    std::size_t begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (Event e = 0; e < alphabet_size; ++e) {
                Word w = out[i];
                w.push_back(e);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

// Every lasso with |stem| <= max_stem and 1 <= |cycle| <= max_cycle.
inline std::vector<LassoWord> all_lassos(int alphabet_size, int max_stem, int max_cycle) {
    std::vector<LassoWord> out;
    for (const auto& s : all_words(alphabet_size, max_stem))
        for (const auto& c : all_words(alphabet_size, max_cycle))
            if (!c.empty()) out.push_back({s, c});
    return out;
}

// Unrolls a lasso and reports the states visited on the repeating part, by
// simulating long enough for the run to become periodic.
struct Unrolled {
    bool defined = true;
    std::vector<State> recurring;
};
inline Unrolled unroll(const StarAutomaton& a, const LassoWord& w) {
    Unrolled u;
    if (a.num_states == 0) return {false, {}};
    State q = a.initial;
    auto step = [&](Event e) {
        if (q < 0) return;
        q = a.delta[q][e];
    };
    for (Event e : w.stem) step(e);
    // after num_states cycle iterations the state at cycle starts repeats
    for (int i = 0; i < a.num_states + 1; ++i)
        for (Event e : w.cycle) step(e);
    if (q < 0) return {false, {}};
    for (int i = 0; i < a.num_states + 1; ++i)
        for (Event e : w.cycle) {
            step(e);
            if (q < 0) return {false, {}};
            u.recurring.push_back(q);
        }
    return u;
}

inline bool buchi_accepts(const BuchiAutomaton& a, const LassoWord& w) {
    auto u = unroll(a.core, w);
    if (!u.defined) return false;
    for (State q : u.recurring)
        if (a.accepting[q]) return true;
    return false;
}

inline bool pair_accepts(const StarAutomaton& a, const RabinPair& p, const LassoWord& w) {
    auto u = unroll(a, w);
    if (!u.defined) return false;
    bool meets = false;
    for (State q : u.recurring) {
        if (!p.I[q]) return false;
        meets = meets || p.R[q];
    }
    return meets;
}

inline AutomatonFile model(const std::string& name) {
    return load_automaton(std::string(MODELS_DIR) + "/small-factory/" + name);
}

inline Alphabet ab(std::vector<std::pair<std::string, bool>> ev) { return Alphabet(std::move(ev)); }

}  // namespace testing_support
