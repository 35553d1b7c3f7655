#include "omegaloc/verify.hpp"

#include <functional>

#include "omegaloc/omega_lang.hpp"

namespace omegaloc {

namespace {

StarAutomaton product_with(const StarAutomaton& base, const std::vector<LocalController>& cs,
                           const std::function<bool(const LocalController&)>& pick) {
    std::vector<StarAutomaton> parts{base};
    for (const auto& c : cs)
        if (pick(c)) parts.push_back(c.automaton);
    return sync_product(parts, base.alphabet);
}

}  // namespace

EquivalenceReport check_finite_equivalence(const BuchiAutomaton& plant, const StarAutomaton& sup_star,
                                           const StarAutomaton& sup_omega,
                                           const std::vector<LocalController>& controllers) {
    EquivalenceReport r;
    auto any = [](const LocalController&) { return true; };
    auto safety = [](const LocalController& c) { return c.kind == Kind::Safety; };
    auto liveness = [](const LocalController& c) { return c.kind == Kind::Liveness; };

    auto safety_eq = star_equal(product_with(plant.core, controllers, safety), sup_star);
    auto live_eq = star_equal(product_with(sup_star, controllers, liveness), sup_omega);
    auto all_eq = star_equal(product_with(plant.core, controllers, any), sup_omega);

    r.sub_results = {{"safety_factor", safety_eq.holds},
                     {"liveness_factor", live_eq.holds},
                     {"combined", all_eq.holds}};
    r.finite_ok = all_eq.holds;
    if (!all_eq.holds) {
        r.counterexample = all_eq.counterexample;
        r.detail = "closed loop and supervisor disagree on " + word_to_string(sup_omega.alphabet, *all_eq.counterexample);
    }
    return r;
}

EquivalenceReport check_infinite_equivalence(const BuchiAutomaton& plant, const StarAutomaton& sup_omega,
                                             const std::vector<LocalController>& controllers, int lassos,
                                             std::uint64_t seed, int max_cycle) {
    EquivalenceReport r;
    r.seed = seed;
    const Alphabet& sigma = plant.core.alphabet;
    StarAutomaton loop = product_with(plant.core, controllers, [](const LocalController&) { return true; });

    // tier 1: the product recognizes the intersection and equals the reference
    bool inside = star_contained(loop, plant.core).holds;
    for (const auto& c : controllers) inside = inside && star_contained(loop, c.automaton).holds;
    auto eq = star_equal(loop, sup_omega);
    r.sub_results.emplace_back("product_within_operands", inside);
    r.sub_results.emplace_back("finite_equal", eq.holds);
    bool tier1 = inside && eq.holds;
    r.sub_results.emplace_back("tier1", tier1);
    if (!eq.holds) r.counterexample = eq.counterexample;

    // tier 2: sampled lassos on both sides
    Rng rng(seed);
    bool tier2 = true;
    const StarAutomaton* sources[] = {&sup_omega, &plant.core, &loop};
    for (int i = 0; i < lassos; ++i) {
        const StarAutomaton& src = *sources[i % 3];
        LassoWord w = random_walk_lasso(rng, src, 8, max_cycle);
        ++r.checked_lassos;
        bool live = run_lasso(plant, w).buchi;
        bool left = live;
        for (const auto& c : controllers) left = left && in_lim(c.automaton, w);
        bool right = live && in_lim(sup_omega, w);
        if (right) ++r.lassos_accepted;
        if (left != right) {
            tier2 = false;
            if (!r.lasso_counterexample) {
                r.lasso_counterexample = w;
                r.detail = "tier-2 disagreement on " + lasso_to_string(sigma, w);
            }
        }
    }
    r.sub_results.emplace_back("tier2", tier2);
    r.finite_ok = eq.holds;
    r.infinite_ok = tier1 && tier2;
    if (!tier1 && r.detail.empty()) r.detail = "tier-1 premise failed";
    return r;
}

Lemma1Report lemma1_check(const StarAutomaton& a, const StarAutomaton& b, int lassos, Rng& rng) {
    Lemma1Report r;
    r.trials = 1;
    StarAutomaton c = sync_product({a, b}, a.alphabet);
    const StarAutomaton* sources[] = {&a, &b, &c};
    for (int i = 0; i < lassos; ++i) {
        LassoWord w = (i % 4 == 3) ? random_lasso(rng, a.alphabet, 6, 8) : random_walk_lasso(rng, *sources[i % 4], 6, 8);
        ++r.lassos;
        bool lhs = in_lim(a, w) && in_lim(b, w);
        bool rhs = in_lim(c, w);
        if (lhs) ++r.in_both;
        if (!rhs) ++r.in_neither;
        if (lhs != rhs) {
            ++r.violations;
            if (!r.first_violation) r.first_violation = lasso_to_string(a.alphabet, w);
        }
    }
    return r;
}

Lemma1Report lemma1_harness(int trials, int lassos_per_trial, std::uint64_t seed, int max_states) {
    Lemma1Report total;
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        Alphabet sigma = random_alphabet(rng, 3);
        double density = std::uniform_real_distribution<double>(0.4, 0.8)(rng);
        int na = std::uniform_int_distribution<int>(1, max_states)(rng);
        int nb = std::uniform_int_distribution<int>(1, max_states)(rng);
        StarAutomaton a = random_star(rng, sigma, na, density);
        StarAutomaton b = random_star(rng, sigma, nb, density);
        Lemma1Report r = lemma1_check(a, b, lassos_per_trial, rng);
        total.trials += 1;
        total.lassos += r.lassos;
        total.violations += r.violations;
        total.in_both += r.in_both;
        total.in_neither += r.in_neither;
        if (!total.first_violation && r.first_violation) total.first_violation = r.first_violation;
    }
    return total;
}

Congruence brute_force_min_congruence(const StarAutomaton& sup, const Profile& p) {
    const int n = sup.num_states;
    if (n > 8) throw Error("brute_force_min_congruence: more than 8 states");
    std::vector<int> rgs(n, 0);
    std::optional<Congruence> best;
    // restricted growth strings enumerate every set partition once
    std::function<void(int, int)> rec = [&](int i, int blocks) {
        if (best && blocks >= best->size()) return;
        if (i == n) {
            Congruence c = Congruence::from_index(rgs);
            if (!check_congruence(sup, p, c)) best = std::move(c);
            return;
        }
        for (int b = 0; b <= blocks && b < n; ++b) {
            rgs[i] = b;
            rec(i + 1, std::max(blocks, b + 1));
        }
    };
    if (n == 0) return Congruence{};
    rec(0, 0);
    return *best;  // the identity partition always qualifies
}

StateSet brute_force_controllability(const RabinBuchiAutomaton& a) {
    const int n = a.core.num_states;
    if (n > 6) throw Error("brute_force_controllability: more than 6 states");
    if (a.pairs.size() != 1) throw Error("brute_force_controllability: exactly one Rabin pair supported");
    const Alphabet& sigma = a.core.alphabet;
    const RabinPair& pair = a.pairs[0];

    // candidate patterns per state as event bitmasks
    std::vector<std::vector<unsigned>> options(n);
    for (State q = 0; q < n; ++q) {
        unsigned u = 0;
        std::vector<Event> c;
        for (Event e = 0; e < sigma.size(); ++e) {
            if (!a.core.defined(q, e)) continue;
            if (sigma.controllable(e)) c.push_back(e);
            else u |= 1u << e;
        }
        for (unsigned sub = 0; sub < (1u << c.size()); ++sub) {
            unsigned m = u;
            for (std::size_t k = 0; k < c.size(); ++k)
                if (sub & (1u << k)) m |= 1u << c[k];
            if (m) options[q].push_back(m);
        }
        if (options[q].empty()) options[q].push_back(0);  // dead end
    }

    StateSet win = empty_set(n);
    StateSet not_r(n);
    for (State q = 0; q < n; ++q) not_r[q] = !pair.R[q];
    std::vector<std::size_t> pick(n, 0);
    while (true) {
        StarAutomaton g = StarAutomaton::make(sigma, n, 0);
        StateSet bad = empty_set(n);
        for (State q = 0; q < n; ++q) {
            unsigned m = options[q][pick[q]];
            if (!m) bad[q] = true;
            for (Event e = 0; e < sigma.size(); ++e)
                if (m & (1u << e)) g.delta[q][e] = a.core.delta[q][e];
        }
        auto mark = [&](const SccResult& s, const std::function<bool(int)>& comp_bad) {
            for (State q = 0; q < n; ++q)
                if (s.comp[q] >= 0 && s.nontrivial[s.comp[q]] && comp_bad(s.comp[q])) bad[q] = true;
        };
        // a cycle avoiding R that meets the Buchi layer
        SccResult avoid = strongly_connected(g, &not_r);
        mark(avoid, [&](int c) {
            for (State q = 0; q < n; ++q)
                if (avoid.comp[q] == c && a.buchi[q]) return true;
            return false;
        });
        // a cycle meeting the Buchi layer and leaving I
        SccResult all = strongly_connected(g);
        mark(all, [&](int c) {
            bool b = false, out = false;
            for (State q = 0; q < n; ++q)
                if (all.comp[q] == c) {
                    b = b || a.buchi[q];
                    out = out || !pair.I[q];
                }
            return b && out;
        });
        StateSet lose = can_reach(g, bad);
        for (State q = 0; q < n; ++q)
            if (!lose[q]) win[q] = true;

        int k = 0;
        while (k < n && ++pick[k] == options[k].size()) pick[k++] = 0;
        if (k == n) break;
    }
    return win;
}

std::string Mutation::describe(const std::vector<LocalController>& cs) const {
    const auto& c = cs.at(controller);
    std::string what = target == kNone ? "delete" : "add -> " + std::to_string(target);
    return c.name() + ": " + what + " at state " + std::to_string(state) + " on " + c.automaton.alphabet.label(event);
}

std::vector<Mutation> all_deletions(const std::vector<LocalController>& cs) {
    std::vector<Mutation> out;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto& a = cs[i].automaton;
        for (State q = 0; q < a.num_states; ++q)
            for (Event e = 0; e < a.alphabet.size(); ++e)
                if (a.defined(q, e)) out.push_back({i, q, e, kNone});
    }
    return out;
}

std::vector<Mutation> all_event_additions(const std::vector<LocalController>& cs) {
    std::vector<Mutation> out;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto& a = cs[i].automaton;
        for (State q = 0; q < a.num_states; ++q)
            if (!a.defined(q, cs[i].event)) out.push_back({i, q, cs[i].event, q});
    }
    return out;
}

std::vector<LocalController> apply(const std::vector<LocalController>& cs, const Mutation& m) {
    auto out = cs;
    out.at(m.controller).automaton.delta[m.state][m.event] = m.target;
    return out;
}

}  // namespace omegaloc
