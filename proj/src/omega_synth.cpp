#include "omegaloc/omega_synth.hpp"

#include <deque>
#include <map>

#include "omegaloc/safety.hpp"

namespace omegaloc {

namespace {

StateSet unite(const StateSet& a, const StateSet& b) {
    StateSet r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] || b[i];
    return r;
}

StateSet meet(const StateSet& a, const StateSet& b) {
    StateSet r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] && b[i];
    return r;
}

StateSet invert(const StateSet& a) {
    StateSet r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = !a[i];
    return r;
}

}  // namespace

RabinBuchiAutomaton as_rabin(const BuchiAutomaton& a) {
    const int n = a.core.num_states;
    return {a.core, full_set(n), {{a.accepting, full_set(n)}}};
}

RabinBuchiProduct build_rabin_buchi(const BuchiAutomaton& plant, const RabinBuchiAutomaton& legal) {
    if (legal.pairs.size() != 1)
        throw Error("build_rabin_buchi: exactly one Rabin pair supported, got " + std::to_string(legal.pairs.size()));
    if (!(plant.core.alphabet == legal.core.alphabet)) throw Error("build_rabin_buchi: alphabet mismatch");
    const RabinPair& pair = legal.pairs[0];
    const int nl = legal.core.num_states;

    // pre(E_l): legal states from which a Rabin-accepting cycle is reachable
    auto scc = strongly_connected(legal.core, &pair.I);
    StateSet good = empty_set(nl);
    for (State q = 0; q < nl; ++q)
        if (pair.R[q] && pair.I[q] && scc.nontrivial[scc.comp[q]]) {
            for (State s = 0; s < nl; ++s)
                if (scc.comp[s] == scc.comp[q]) good[s] = true;
        }
    StateSet live = can_reach(legal.core, good);
    auto trimmed = reachable_trim_traced(legal.core, &live);

    // clo(E_l) is the trimmed structure with every state accepting. Moves that
    // leave it go to a trap outside R and I, so the plant's continuation after
    // a violation stays visible to the game.
    Totalized total = totalize(trimmed.automaton);
    BuchiAutomaton clo{total.automaton, full_set(total.automaton.num_states)};
    auto inter = buchi_intersection_traced(plant, clo);

    RabinBuchiProduct res;
    const int n = inter.automaton.core.num_states;
    res.automaton.core = inter.automaton.core;
    res.automaton.buchi = inter.automaton.accepting;
    RabinPair lifted{empty_set(n), empty_set(n)};
    for (State s = 0; s < n; ++s) {
        State b = inter.origin[s].b;
        State l = b == total.sink ? kNone : trimmed.old_of_new[b];
        res.plant_state.push_back(inter.origin[s].a);
        res.legal_state.push_back(l);
        if (l == kNone) continue;
        lifted.R[s] = pair.R[l];
        lifted.I[s] = pair.I[l];
    }
    res.automaton.pairs.push_back(std::move(lifted));
    return res;
}

std::vector<Event> ControllabilityResult::pattern(State q) const {
    std::vector<Event> out;
    for (std::size_t e = 0; e < phi[q].size(); ++e)
        if (phi[q][e]) out.push_back(static_cast<Event>(e));
    return out;
}

StateSet cpre(const StarAutomaton& a, const StateSet& target) {
    StateSet out = empty_set(a.num_states);
    for (State q = 0; q < a.num_states; ++q) {
        bool has_u = false, ok = true, some_c = false;
        for (int e = 0; e < a.alphabet.size() && ok; ++e) {
            State t = a.delta[q][e];
            if (t == kNone) continue;
            if (a.alphabet.controllable(e)) {
                some_c = some_c || target[t];
            } else {
                has_u = true;
                ok = target[t];
            }
        }
        out[q] = ok && (has_u || some_c);
    }
    return out;
}

namespace {

// Winning objective per run: the Buchi layer is visited only finitely often, or
// the pair (R, I) accepts. Solved as
//   W = mu O. Cpre(O) | S1(O) | S2(O)
//   S1(O) = nu X. notB & Cpre(X | O)                      (stay out of B)
//   S2(O) = nu Z. mu Y. nu X. I & ( (R & Cpre(Z | O))
//                                 | Cpre(Y | O)
//                                 | (notB & Cpre(X | Y | O)) )
// S2 is the one-assumption/one-guarantee reactivity game played inside I.
// Each state keeps the target set of the clause that first certified it; phi is
// the largest pattern whose successors stay in that target.
struct Solver {
    const StarAutomaton& a;
    StateSet B, notB, R, I;
    int n;

    StateSet cp(const StateSet& s) const { return cpre(a, s); }

    StateSet nu_stay(const StateSet& O) const {
        StateSet X = full_set(n);
        while (true) {
            StateSet X2 = meet(notB, cp(unite(X, O)));
            if (X2 == X) return X;
            X = X2;
        }
    }

    // innermost nu X for a given Y and Z
    StateSet inner(const StateSet& Z, const StateSet& Y, const StateSet& O) const {
        StateSet rz = meet(R, cp(unite(Z, O)));
        StateSet py = cp(unite(Y, O));
        StateSet X = full_set(n);
        while (true) {
            StateSet X2 = meet(I, unite(unite(rz, py), meet(notB, cp(unite(unite(X, Y), O)))));
            if (X2 == X) return X;
            X = X2;
        }
    }

    StateSet mu_progress(const StateSet& Z, const StateSet& O, std::vector<StateSet>* layers) const {
        StateSet Y = empty_set(n);
        if (layers) layers->clear();
        while (true) {
            StateSet Y2 = inner(Z, Y, O);
            if (Y2 == Y) return Y;
            if (layers) layers->push_back(Y2);
            Y = Y2;
        }
    }

    StateSet reactive(const StateSet& O) const {
        StateSet Z = full_set(n);
        while (true) {
            StateSet Z2 = mu_progress(Z, O, nullptr);
            if (Z2 == Z) return Z;
            Z = Z2;
        }
    }
};

ControllabilityResult solve(const RabinBuchiAutomaton& a) {
    const int n = a.core.num_states;
    const int m = a.core.alphabet.size();
    Solver s{a.core, a.buchi, invert(a.buchi), a.pairs[0].R, a.pairs[0].I, n};

    ControllabilityResult res;
    res.subset = empty_set(n);
    res.phi.assign(n, std::vector<bool>(m, false));
    auto assign = [&](State q, const StateSet& target) {
        for (int e = 0; e < m; ++e) {
            State t = a.core.delta[q][e];
            if (t == kNone) continue;
            res.phi[q][e] = !a.core.alphabet.controllable(e) || target[t];
        }
    };

    StateSet O = empty_set(n);
    while (true) {
        StateSet Z = s.reactive(O);
        StateSet stay = s.nu_stay(O);
        StateSet down = s.cp(O);
        StateSet next = unite(unite(O, down), unite(stay, Z));
        if (next == O) break;

        // certificates for the states added in this round
        std::vector<StateSet> layers;
        s.mu_progress(Z, O, &layers);
        StateSet zo = unite(Z, O);
        for (State q = 0; q < n; ++q) {
            if (O[q] || !next[q]) continue;
            if (Z[q]) {
                std::size_t r = 0;
                while (!layers[r][q]) ++r;
                StateSet below = r ? unite(layers[r - 1], O) : O;
                StateSet same = unite(layers[r], O);
                if (s.R[q] && s.cp(zo)[q]) assign(q, zo);
                else if (s.notB[q] && s.cp(same)[q]) assign(q, same);
                else assign(q, below);
            } else if (stay[q]) {
                assign(q, unite(stay, O));
            } else {
                assign(q, O);
            }
        }
        O = next;
    }
    res.subset = O;
    return res;
}

}  // namespace

ControllabilityResult controllability_subset(const RabinBuchiAutomaton& a) {
    if (a.pairs.size() != 1)
        throw Error("controllability_subset: exactly one Rabin pair supported, got " + std::to_string(a.pairs.size()));
    return solve(a);
}

RabinBuchiAutomaton restrict_sup(const RabinBuchiAutomaton& a, const ControllabilityResult& c) {
    // numbering is kept so phi still indexes the result; losing states become
    // isolated and lose every acceptance mark, so no run may pass through them
    RabinBuchiAutomaton out = a;
    for (State q = 0; q < a.core.num_states; ++q) {
        for (Event e = 0; e < a.core.alphabet.size(); ++e) {
            State t = out.core.delta[q][e];
            if (t != kNone && (!c.subset[q] || !c.subset[t])) out.core.delta[q][e] = kNone;
        }
        if (c.subset[q]) continue;
        out.buchi[q] = false;
        for (auto& p : out.pairs) p.R[q] = p.I[q] = false;
    }
    return out;
}

BuchiAutomaton inf_closure(const BuchiAutomaton& minimal, const BuchiAutomaton& plant_omega) {
    if (minimal.core.empty()) return minimal;
    return buchi_intersection(plant_omega, clo_automaton(minimal));
}

OmegaCompare existence_check(const BuchiAutomaton& inf_a, const RabinBuchiAutomaton& sup_e) {
    return omega_contained(inf_a.core, OmegaCondition::of(inf_a), sup_e.core, OmegaCondition::both_of(sup_e));
}

OmegaSupervisor assemble_fomega(const RabinBuchiAutomaton& asup, const ControllabilityResult& c,
                                const BuchiAutomaton& minimal, const BuchiAutomaton& plant) {
    const StarAutomaton& A = asup.core;
    const Alphabet& sigma = A.alphabet;
    const int n = A.num_states;
    OmegaSupervisor res;

    // pre(sup C^w): states that can reach a cycle accepted by both layers
    const RabinPair& pair = asup.pairs.at(0);
    auto scc = strongly_connected(A, &pair.I);
    StateSet good = empty_set(n);
    for (int comp = 0; comp < scc.count; ++comp) {
        if (!scc.nontrivial[comp]) continue;
        bool has_r = false, has_b = false;
        for (State q = 0; q < n; ++q)
            if (scc.comp[q] == comp) {
                has_r = has_r || pair.R[q];
                has_b = has_b || asup.buchi[q];
            }
        if (has_r && has_b)
            for (State q = 0; q < n; ++q)
                if (scc.comp[q] == comp) good[q] = true;
    }
    StateSet qm = can_reach(A, good);
    auto reach = reachable_trim_traced(A);
    for (State q : reach.old_of_new) res.f0_full = res.f0_full && qm[q];

    Totalized z = totalize(pre_automaton(minimal));
    res.tracker = z.automaton;
    res.sink = z.sink;
    if (!(res.tracker.alphabet == sigma)) throw Error("assemble_fomega: minimal spec alphabet mismatch");

    std::map<std::pair<State, State>, State> index;
    std::vector<std::vector<State>> rows;
    std::deque<State> queue;
    auto add = [&](State q, State zz) {
        auto [it, fresh] = index.emplace(std::make_pair(q, zz), static_cast<State>(res.origin.size()));
        if (fresh) {
            res.origin.push_back({q, zz});
            rows.emplace_back(sigma.size(), kNone);
            queue.push_back(it->second);
        }
        return it->second;
    };
    if (!A.empty()) add(A.initial, res.tracker.initial);
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        auto [q, zz] = res.origin[s];
        const bool tracked = zz != res.sink;  // string still in pre(A)
        std::vector<Event> enabled;
        for (int e = 0; e < sigma.size(); ++e) {
            State t = A.delta[q][e];
            if (t == kNone) continue;
            // uncontrollable moves are never refused, even toward states off every good cycle
            bool on = tracked ? qm[t] || !sigma.controllable(e) : c.subset[q] && c.phi[q][e];
            if (on) enabled.push_back(e);
        }
        res.psi.push_back(enabled);
        for (Event e : enabled) {
            State z2 = tracked ? res.tracker.delta[zz][e] : res.sink;
            State t = add(A.delta[q][e], z2);
            rows[s][e] = t;
        }
    }
    const int ns = static_cast<int>(rows.size());
    res.automaton = StarAutomaton::make(sigma, ns, 0);
    res.automaton.delta = std::move(rows);
    res.buchi_lift = lift_acceptance(res.automaton, plant);
    return res;
}

}  // namespace omegaloc
