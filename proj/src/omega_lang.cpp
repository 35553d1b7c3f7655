#include "omegaloc/omega_lang.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace omegaloc {

SccResult strongly_connected(const StarAutomaton& a, const StateSet* within) {
    const int n = a.num_states;
    const int m = a.alphabet.size();
    SccResult res;
    res.comp.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<State> stack;
    int counter = 0;
    auto in = [&](State q) { return !within || (*within)[q]; };
    for (State root = 0; root < n; ++root) {
        if (!in(root) || index[root] != -1) continue;
        // explicit DFS frames: (state, next event to try)
        std::vector<std::pair<State, int>> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [q, e] = frames.back();
            if (e < m) {
                State t = a.delta[q][e++];
                if (t == kNone || !in(t)) continue;
                if (index[t] == -1) {
                    index[t] = low[t] = counter++;
                    stack.push_back(t);
                    on_stack[t] = true;
                    frames.push_back({t, 0});
                } else if (on_stack[t]) {
                    low[q] = std::min(low[q], index[t]);
                }
                continue;
            }
            State done = q;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
            if (low[done] != index[done]) continue;
            int c = res.count++;
            int size = 0;
            State s;
            do {
                s = stack.back();
                stack.pop_back();
                on_stack[s] = false;
                res.comp[s] = c;
                ++size;
            } while (s != done);
            bool self = false;
            for (int ev = 0; ev < m; ++ev) self = self || a.delta[done][ev] == done;
            res.nontrivial.push_back(size > 1 || self);
        }
    }
    return res;
}

StateSet can_reach(const StarAutomaton& a, const StateSet& target, const StateSet* within) {
    const int n = a.num_states;
    std::vector<std::vector<State>> pred(n);
    for (State q = 0; q < n; ++q)
        for (State t : a.delta[q])
            if (t != kNone) pred[t].push_back(q);
    StateSet out = empty_set(n);
    std::deque<State> queue;
    for (State q = 0; q < n; ++q)
        if (target[q] && (!within || (*within)[q])) {
            out[q] = true;
            queue.push_back(q);
        }
    while (!queue.empty()) {
        State q = queue.front();
        queue.pop_front();
        for (State p : pred[q])
            if (!out[p] && (!within || (*within)[p])) {
                out[p] = true;
                queue.push_back(p);
            }
    }
    return out;
}

StateSet live_states(const StarAutomaton& a, const StateSet& accepting) {
    auto scc = strongly_connected(a);
    StateSet good = empty_set(a.num_states);
    for (State q = 0; q < a.num_states; ++q)
        if (accepting[q] && scc.nontrivial[scc.comp[q]]) good[q] = true;
    return can_reach(a, good);
}

StarAutomaton pre_automaton(const StarAutomaton& a) { return reachable_trim(a); }

StarAutomaton pre_automaton(const BuchiAutomaton& a) {
    StateSet live = live_states(a.core, a.accepting);
    return reachable_trim_traced(a.core, &live).automaton;
}

BuchiAutomaton clo_automaton(const BuchiAutomaton& a) {
    StarAutomaton p = pre_automaton(a);
    return {p, full_set(p.num_states)};
}

bool is_deadlock_free(const BuchiAutomaton& a) {
    if (a.core.empty()) return true;
    StateSet live = live_states(a.core, a.accepting);
    auto t = reachable_trim_traced(a.core);
    for (State q : t.old_of_new)
        if (!live[q]) return false;
    return true;
}

bool in_lim(const StarAutomaton& a, const LassoWord& w) { return lasso_run(a, w).defined; }

namespace {

// BFS over the pair product until one side defines an event the other lacks.
StarCompare compare(const StarAutomaton& a, const StarAutomaton& b, bool symmetric) {
    if (!(a.alphabet == b.alphabet)) throw Error("language comparison: alphabet mismatch");
    StarCompare res;
    if (a.empty()) {
        if (symmetric && !b.empty()) res = {false, Word{}};
        return res;
    }
    if (b.empty()) return {false, Word{}};
    std::map<std::pair<State, State>, int> seen;
    std::vector<std::pair<State, State>> nodes;
    std::vector<std::pair<int, Event>> parent;
    std::deque<int> queue;
    nodes.push_back({a.initial, b.initial});
    parent.push_back({-1, -1});
    seen[nodes[0]] = 0;
    queue.push_back(0);
    auto path = [&](int node, Event last) {
        Word w{last};
        for (int cur = node; parent[cur].first != -1; cur = parent[cur].first) w.push_back(parent[cur].second);
        std::reverse(w.begin(), w.end());
        return w;
    };
    while (!queue.empty()) {
        int node = queue.front();
        queue.pop_front();
        auto [p, q] = nodes[node];
        for (int e = 0; e < a.alphabet.size(); ++e) {
            State p2 = a.delta[p][e], q2 = b.delta[q][e];
            bool da = p2 != kNone, db = q2 != kNone;
            if (da && !db) return {false, path(node, e)};
            if (symmetric && db && !da) return {false, path(node, e)};
            if (!da || !db) continue;
            auto [it, fresh] = seen.emplace(std::make_pair(p2, q2), static_cast<int>(nodes.size()));
            if (fresh) {
                nodes.push_back({p2, q2});
                parent.push_back({node, e});
                queue.push_back(it->second);
            }
        }
    }
    return res;
}

}  // namespace

StarCompare star_equal(const StarAutomaton& a, const StarAutomaton& b) { return compare(a, b, true); }
StarCompare star_contained(const StarAutomaton& a, const StarAutomaton& b) { return compare(a, b, false); }

bool OmegaCondition::accepts(const StateSet& omega) const {
    if (buchi && !omega_meets(omega, *buchi)) return false;
    if (pair && !rabin_accepts(omega, *pair)) return false;
    return true;
}

OmegaCondition OmegaCondition::rabin_of(const RabinBuchiAutomaton& a) {
    if (a.pairs.size() != 1) throw Error("single Rabin pair required, got " + std::to_string(a.pairs.size()));
    return {std::nullopt, a.pairs[0]};
}

OmegaCondition OmegaCondition::both_of(const RabinBuchiAutomaton& a) {
    if (a.pairs.size() != 1) throw Error("single Rabin pair required, got " + std::to_string(a.pairs.size()));
    return {a.buchi, a.pairs[0]};
}

bool accepts(const StarAutomaton& a, const OmegaCondition& c, const LassoWord& w) {
    auto r = lasso_run(a, w);
    return r.defined && c.accepts(r.omega);
}

namespace {

StateSet extend(const StateSet& s, int n) {
    StateSet out = s;
    out.resize(n, false);
    return out;
}

bool is_witness(const StarAutomaton& a, const OmegaCondition& ca, const StarAutomaton& b, const OmegaCondition& cb,
                const LassoWord& w) {
    return !w.cycle.empty() && accepts(a, ca, w) && !accepts(b, cb, w);
}

// Greedy shortening: drop single events while the lasso stays a witness.
LassoWord shrink(const StarAutomaton& a, const OmegaCondition& ca, const StarAutomaton& b, const OmegaCondition& cb,
                 LassoWord w) {
    for (Word* part : {&w.stem, &w.cycle}) {
        for (std::size_t i = 0; i < part->size();) {
            LassoWord t = w;
            Word& tp = part == &w.stem ? t.stem : t.cycle;
            tp.erase(tp.begin() + i);
            if (is_witness(a, ca, b, cb, t)) w = std::move(t);
            else ++i;
        }
    }
    return w;
}

}  // namespace

OmegaCompare omega_contained(const StarAutomaton& a, const OmegaCondition& ca, const StarAutomaton& b,
                             const OmegaCondition& cb) {
    if (!(a.alphabet == b.alphabet)) throw Error("omega containment: alphabet mismatch");
    OmegaCompare res;
    if (a.empty()) return res;
    Totalized bt = totalize(b);
    const int nb = bt.automaton.num_states;
    const StarAutomaton& B = bt.automaton;

    // product a x total(b), only a-defined moves
    auto prod = sync_product_tuples({a, B}, a.alphabet);
    // sync_product over identical alphabets is the plain product
    const StarAutomaton& P = prod.automaton;
    const int n = P.num_states;
    auto pa = [&](State s) { return prod.tuples[s][0]; };
    auto pb = [&](State s) { return prod.tuples[s][1]; };

    std::optional<StateSet> bb;
    std::optional<RabinPair> bp;
    if (cb.buchi) bb = extend(*cb.buchi, nb);
    if (cb.pair) bp = RabinPair{extend(cb.pair->R, nb), extend(cb.pair->I, nb)};

    using Pred = std::function<bool(State)>;
    struct Mode {
        Pred allowed;
        Pred extra;  // an additional state that must appear on the cycle (may be null)
    };
    std::vector<Mode> modes;
    if (bb) modes.push_back({[&](State s) { return !(*bb)[pb(s)]; }, nullptr});
    if (bp) {
        modes.push_back({[&](State s) { return !bp->R[pb(s)]; }, nullptr});
        modes.push_back({nullptr, [&](State s) { return !bp->I[pb(s)]; }});
    }
    modes.push_back({nullptr, [&](State s) { return bt.sink != kNone && pb(s) == bt.sink; }});

    std::vector<Pred> required;
    if (ca.buchi) required.push_back([&](State s) { return (*ca.buchi)[pa(s)]; });
    if (ca.pair) required.push_back([&](State s) { return ca.pair->R[pa(s)]; });

    for (const auto& mode : modes) {
        StateSet allowed = full_set(n);
        for (State s = 0; s < n; ++s) {
            if (ca.pair && !ca.pair->I[pa(s)]) allowed[s] = false;
            if (mode.allowed && !mode.allowed(s)) allowed[s] = false;
        }
        auto scc = strongly_connected(P, &allowed);
        std::vector<Pred> need = required;
        if (mode.extra) need.push_back(mode.extra);
        for (int c = 0; c < scc.count; ++c) {
            if (!scc.nontrivial[c]) continue;
            std::vector<State> picks;
            bool ok = true;
            for (const auto& pr : need) {
                State found = kNone;
                for (State s = 0; s < n && found == kNone; ++s)
                    if (scc.comp[s] == c && pr(s)) found = s;
                if (found == kNone) ok = false;
                else picks.push_back(found);
            }
            if (!ok) continue;
            if (picks.empty()) {
                for (State s = 0; s < n; ++s)
                    if (scc.comp[s] == c) {
                        picks.push_back(s);
                        break;
                    }
            }
            // shortest path with at least one step; `inside` keeps it within the SCC
            auto path = [&](State from, State to, bool inside) {
                std::vector<State> par(n, -2);
                std::vector<Event> via(n, -1);
                std::deque<State> queue{from};
                bool found = false;
                while (!queue.empty() && !found) {
                    State q = queue.front();
                    queue.pop_front();
                    for (int e = 0; e < P.alphabet.size(); ++e) {
                        State t = P.delta[q][e];
                        if (t == kNone || (inside && scc.comp[t] != c) || par[t] != -2) continue;
                        par[t] = q;
                        via[t] = e;
                        if (t == to) {
                            found = true;
                            break;
                        }
                        queue.push_back(t);
                    }
                }
                if (!found) throw Error("internal: missing path in containment search");
                Word w;
                State cur = to;
                do {
                    w.push_back(via[cur]);
                    cur = par[cur];
                } while (cur != from);
                std::reverse(w.begin(), w.end());
                return w;
            };
            LassoWord lw;
            if (picks[0] != P.initial) lw.stem = path(P.initial, picks[0], false);
            picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
            if (picks.size() > 1 && picks.front() == picks.back()) picks.pop_back();
            for (std::size_t i = 0; i < picks.size(); ++i) {
                Word seg = path(picks[i], picks[(i + 1) % picks.size()], true);
                lw.cycle.insert(lw.cycle.end(), seg.begin(), seg.end());
            }
            if (!is_witness(a, ca, b, cb, lw)) throw Error("internal: containment witness failed to replay");
            res.contained = false;
            res.witness = shrink(a, ca, b, cb, lw);
            return res;
        }
    }
    return res;
}

OmegaCompare omega_contained_single_pair(const RabinBuchiAutomaton& a, const RabinBuchiAutomaton& b) {
    return omega_contained(a.core, OmegaCondition::rabin_of(a), b.core, OmegaCondition::rabin_of(b));
}

}  // namespace omegaloc
