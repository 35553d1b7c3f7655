#include "omegaloc/safety.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace omegaloc {

SafetySupervisor sup_con_star(const BuchiAutomaton& plant, const StarAutomaton& spec) {
    if (!(plant.core.alphabet == spec.alphabet)) throw Error("sup_con_star: plant and spec alphabets differ");
    const Alphabet& sigma = spec.alphabet;
    auto prod = sync_product_tuples({plant.core, spec}, sigma);
    const StarAutomaton& P = prod.automaton;
    const int n = P.num_states;
    SafetySupervisor res;
    if (n == 0) {
        res.automaton = StarAutomaton::make(sigma, 0, kNone);
        return res;
    }
    // predecessors along uncontrollable edges, for backward propagation
    std::vector<std::vector<State>> upred(n);
    StateSet bad = empty_set(n);
    std::deque<State> work;
    for (State s = 0; s < n; ++s) {
        State p = prod.tuples[s][0];
        for (int e = 0; e < sigma.size(); ++e) {
            if (sigma.controllable(e)) continue;
            if (P.delta[s][e] != kNone) upred[P.delta[s][e]].push_back(s);
            else if (plant.core.delta[p][e] != kNone && !bad[s]) {
                bad[s] = true;
                work.push_back(s);
            }
        }
    }
    while (!work.empty()) {
        State s = work.front();
        work.pop_front();
        for (State p : upred[s])
            if (!bad[p]) {
                bad[p] = true;
                work.push_back(p);
            }
    }
    StateSet good(n);
    for (State s = 0; s < n; ++s) good[s] = !bad[s];
    res.automaton = minimize(reachable_trim_traced(P, &good).automaton);
    res.buchi_lift = lift_acceptance(res.automaton, plant);
    return res;
}

StateSet lift_acceptance(const StarAutomaton& sup, const BuchiAutomaton& plant) {
    StateSet out = empty_set(sup.num_states);
    if (sup.empty()) return out;
    auto prod = sync_product_tuples({sup, plant.core}, sup.alphabet);
    for (const auto& t : prod.tuples)
        if (plant.accepting[t[1]]) out[t[0]] = true;
    return out;
}

BuchiAutomaton controlled_plant(const BuchiAutomaton&, const SafetySupervisor& sup) {
    return {sup.automaton, sup.buchi_lift};
}

ControllabilityCheck check_star_controllability(const StarAutomaton& plant, const StarAutomaton& k) {
    if (!(plant.alphabet == k.alphabet)) throw Error("controllability check: alphabet mismatch");
    ControllabilityCheck res;
    if (k.empty() || plant.empty()) return res;
    std::map<std::pair<State, State>, int> seen;
    std::vector<std::pair<State, State>> nodes{{k.initial, plant.initial}};
    std::vector<std::pair<int, Event>> parent{{-1, -1}};
    seen[nodes[0]] = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto [x, p] = nodes[i];
        for (int e = 0; e < k.alphabet.size(); ++e) {
            State p2 = plant.delta[p][e], x2 = k.delta[x][e];
            if (p2 == kNone) continue;
            if (x2 == kNone) {
                if (k.alphabet.controllable(e)) continue;
                Word w;
                for (int cur = static_cast<int>(i); parent[cur].first != -1; cur = parent[cur].first)
                    w.push_back(parent[cur].second);
                std::reverse(w.begin(), w.end());
                res.controllable = false;
                res.string = w;
                res.event = e;
                return res;
            }
            auto [it, fresh] = seen.emplace(std::make_pair(x2, p2), static_cast<int>(nodes.size()));
            if (fresh) {
                nodes.push_back({x2, p2});
                parent.push_back({static_cast<int>(i), e});
            }
        }
    }
    return res;
}

}  // namespace omegaloc
