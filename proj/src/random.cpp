#include "omegaloc/random.hpp"

#include "omegaloc/omega_lang.hpp"

namespace omegaloc {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

Alphabet random_alphabet(Rng& rng, int n_events, double ctrl_fraction) {
    std::vector<std::pair<std::string, bool>> ev;
    for (int i = 0; i < n_events; ++i) ev.emplace_back("e" + std::to_string(i), coin(rng, ctrl_fraction));
    if (n_events >= 2) {
        ev[0].second = true;
        ev[1].second = false;
    }
    return Alphabet(ev);
}

StarAutomaton random_star(Rng& rng, const Alphabet& a, int n_states, double density) {
    StarAutomaton g = StarAutomaton::make(a, n_states, 0);
    const int m = a.size();
    // spanning tree first so every state is reachable
    for (State q = 1; q < n_states; ++q) {
        std::vector<std::pair<State, Event>> free;
        for (State p = 0; p < q; ++p)
            for (Event e = 0; e < m; ++e)
                if (g.delta[p][e] == kNone) free.emplace_back(p, e);
        auto [p, e] = free[uniform(rng, 0, static_cast<int>(free.size()) - 1)];
        g.delta[p][e] = q;
    }
    for (State q = 0; q < n_states; ++q)
        for (Event e = 0; e < m; ++e)
            if (g.delta[q][e] == kNone && coin(rng, density)) g.delta[q][e] = uniform(rng, 0, n_states - 1);
    return reachable_trim(g);
}

StarAutomaton random_nonblocking(Rng& rng, const Alphabet& a, int n_states, double density) {
    StarAutomaton g = random_star(rng, a, n_states, density);
    for (State q = 0; q < g.num_states; ++q)
        if (g.enabled(q).empty()) g.delta[q][uniform(rng, 0, a.size() - 1)] = uniform(rng, 0, g.num_states - 1);
    return g;
}

StateSet random_subset(Rng& rng, int n, double p) {
    StateSet s(n);
    for (int i = 0; i < n; ++i) s[i] = coin(rng, p);
    return s;
}

BuchiAutomaton random_buchi(Rng& rng, const Alphabet& a, int n_states, double density) {
    while (true) {
        StarAutomaton g = random_nonblocking(rng, a, n_states, density);
        StateSet acc = random_subset(rng, g.num_states, 0.4);
        acc[uniform(rng, 0, g.num_states - 1)] = true;
        StateSet live = live_states(g, acc);
        if (!live[g.initial]) continue;
        auto t = reachable_trim_traced(g, &live);
        BuchiAutomaton b{t.automaton, remap_set(acc, t)};
        if (is_deadlock_free(b)) return b;
    }
}

RabinBuchiAutomaton random_rabin_buchi(Rng& rng, const Alphabet& a, int n_states, double density) {
    StarAutomaton g = random_nonblocking(rng, a, n_states, density);
    const int n = g.num_states;
    RabinPair pair{random_subset(rng, n, 0.4), random_subset(rng, n, 0.75)};
    return {g, random_subset(rng, n, 0.5), {pair}};
}

LassoWord random_walk_lasso(Rng& rng, const StarAutomaton& a, int max_stem, int max_cycle) {
    LassoWord w;
    State q = a.empty() ? kNone : a.initial;
    auto step = [&](Word& out) {
        if (q == kNone) {
            out.push_back(uniform(rng, 0, a.alphabet.size() - 1));
            return;
        }
        auto en = a.enabled(q);
        if (en.empty()) {
            q = kNone;
            out.push_back(uniform(rng, 0, a.alphabet.size() - 1));
            return;
        }
        Event e = en[uniform(rng, 0, static_cast<int>(en.size()) - 1)];
        out.push_back(e);
        q = a.delta[q][e];
    };
    int stem = uniform(rng, 0, max_stem);
    for (int i = 0; i < stem; ++i) step(w.stem);
    // close the cycle when the walk returns to its starting state, if it does
    State start = q;
    int len = uniform(rng, 1, max_cycle);
    for (int i = 0; i < len; ++i) {
        step(w.cycle);
        if (q != kNone && q == start && coin(rng, 0.7)) break;
    }
    return w;
}

LassoWord random_lasso(Rng& rng, const Alphabet& a, int max_stem, int max_cycle) {
    LassoWord w;
    int stem = uniform(rng, 0, max_stem), cyc = uniform(rng, 1, max_cycle);
    for (int i = 0; i < stem; ++i) w.stem.push_back(uniform(rng, 0, a.size() - 1));
    for (int i = 0; i < cyc; ++i) w.cycle.push_back(uniform(rng, 0, a.size() - 1));
    return w;
}

BuchiAutomaton lasso_automaton(const Alphabet& a, const LassoWord& w) {
    if (w.cycle.empty()) throw Error("lasso_automaton: empty cycle");
    const int s = static_cast<int>(w.stem.size()), c = static_cast<int>(w.cycle.size());
    StarAutomaton g = StarAutomaton::make(a, s + c, 0);
    for (int i = 0; i < s; ++i) g.delta[i][w.stem[i]] = i + 1;
    for (int i = 0; i < c; ++i) g.delta[s + i][w.cycle[i]] = (i + 1 < c) ? s + i + 1 : s;
    StateSet acc = empty_set(s + c);
    acc[s] = true;
    // states are already in BFS order
    return {g, acc};
}

}  // namespace omegaloc
