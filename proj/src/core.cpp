#include "omegaloc/core.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>

namespace omegaloc {

Alphabet::Alphabet(std::vector<std::pair<std::string, bool>> labelled) {
    std::sort(labelled.begin(), labelled.end());
    for (std::size_t i = 0; i < labelled.size(); ++i) {
        if (labelled[i].first.empty()) throw Error("empty event label");
        if (i > 0 && labelled[i].first == labelled[i - 1].first)
            throw Error("duplicate event label '" + labelled[i].first + "'");
        labels_.push_back(labelled[i].first);
        ctrl_.push_back(labelled[i].second);
    }
}

std::optional<Event> Alphabet::find(const std::string& label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return std::nullopt;
    return static_cast<Event>(it - labels_.begin());
}

Event Alphabet::index(const std::string& label) const {
    auto e = find(label);
    if (!e) throw Error("unknown event label '" + label + "'");
    return *e;
}

std::vector<Event> Alphabet::controllable_events() const {
    std::vector<Event> out;
    for (int e = 0; e < size(); ++e)
        if (ctrl_[e]) out.push_back(e);
    return out;
}

bool Alphabet::contains(const Alphabet& sub) const {
    for (int e = 0; e < sub.size(); ++e) {
        auto f = find(sub.label(e));
        if (!f || controllable(*f) != sub.controllable(e)) return false;
    }
    return true;
}

Alphabet Alphabet::merge(const std::vector<Alphabet>& parts) {
    std::map<std::string, bool> all;
    for (const auto& p : parts)
        for (int e = 0; e < p.size(); ++e) {
            auto [it, fresh] = all.emplace(p.label(e), p.controllable(e));
            if (!fresh && it->second != p.controllable(e))
                throw Error("event '" + p.label(e) + "' declared both controllable and uncontrollable");
        }
    return Alphabet(std::vector<std::pair<std::string, bool>>(all.begin(), all.end()));
}

StarAutomaton StarAutomaton::make(Alphabet a, int n, State init) {
    StarAutomaton s;
    s.alphabet = std::move(a);
    s.num_states = n;
    s.initial = n > 0 ? init : kNone;
    s.delta.assign(n, std::vector<State>(s.alphabet.size(), kNone));
    return s;
}

int StarAutomaton::num_transitions() const {
    int c = 0;
    for (const auto& row : delta)
        for (State t : row) c += t != kNone;
    return c;
}

std::vector<Event> StarAutomaton::enabled(State q) const {
    std::vector<Event> out;
    for (int e = 0; e < alphabet.size(); ++e)
        if (delta[q][e] != kNone) out.push_back(e);
    return out;
}

int count(const StateSet& s) { return static_cast<int>(std::count(s.begin(), s.end(), true)); }
StateSet full_set(int n) { return StateSet(n, true); }
StateSet empty_set(int n) { return StateSet(n, false); }

std::string word_to_string(const Alphabet& a, const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += a.label(w[i]);
    }
    return out;
}

std::string lasso_to_string(const Alphabet& a, const LassoWord& w) {
    return word_to_string(a, w.stem) + " ; " + word_to_string(a, w.cycle);
}

Word parse_word(const Alphabet& a, const std::string& text) {
    std::istringstream in(text);
    Word w;
    std::string tok;
    while (in >> tok) w.push_back(a.index(tok));
    return w;
}

LassoWord parse_lasso(const Alphabet& a, const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos) throw Error("lasso needs 'stem ; cycle'");
    LassoWord w{parse_word(a, text.substr(0, semi)), parse_word(a, text.substr(semi + 1))};
    if (w.cycle.empty()) throw Error("lasso cycle must be non-empty");
    return w;
}

StarAutomaton lift(const StarAutomaton& a, const Alphabet& global) {
    if (!global.contains(a.alphabet)) throw Error("component alphabet not contained in global alphabet");
    StarAutomaton out = StarAutomaton::make(global, a.num_states, a.initial);
    for (State q = 0; q < a.num_states; ++q)
        for (int g = 0; g < global.size(); ++g) {
            auto local = a.alphabet.find(global.label(g));
            out.delta[q][g] = local ? a.delta[q][*local] : q;
        }
    return out;
}

BuchiAutomaton lift(const BuchiAutomaton& a, const Alphabet& global) {
    return {lift(a.core, global), a.accepting};
}

ProductResult sync_product_tuples(const std::vector<StarAutomaton>& comps, const Alphabet& global) {
    const int k = static_cast<int>(comps.size());
    // local event id per component per global event; -1 when absent
    std::vector<std::vector<int>> local(k, std::vector<int>(global.size(), -1));
    for (int c = 0; c < k; ++c) {
        if (!global.contains(comps[c].alphabet)) throw Error("component alphabet not contained in global alphabet");
        for (int g = 0; g < global.size(); ++g) {
            auto e = comps[c].alphabet.find(global.label(g));
            local[c][g] = e ? *e : -1;
        }
    }
    ProductResult res;
    for (const auto& c : comps)
        if (c.empty()) {
            res.automaton = StarAutomaton::make(global, 0, kNone);
            return res;
        }
    std::map<std::vector<State>, State> index;
    std::deque<State> queue;
    std::vector<State> init;
    for (const auto& c : comps) init.push_back(c.initial);
    index[init] = 0;
    res.tuples.push_back(init);
    queue.push_back(0);
    std::vector<std::vector<State>> rows;
    rows.emplace_back(global.size(), kNone);
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        for (int g = 0; g < global.size(); ++g) {
            std::vector<State> next(k);
            bool ok = true;
            for (int c = 0; c < k && ok; ++c) {
                State q = res.tuples[s][c];
                if (local[c][g] < 0) {
                    next[c] = q;
                } else {
                    next[c] = comps[c].delta[q][local[c][g]];
                    ok = next[c] != kNone;
                }
            }
            if (!ok) continue;
            auto [it, fresh] = index.emplace(next, static_cast<State>(res.tuples.size()));
            if (fresh) {
                res.tuples.push_back(next);
                rows.emplace_back(global.size(), kNone);
                queue.push_back(it->second);
            }
            rows[s][g] = it->second;
        }
    }
    res.automaton = StarAutomaton::make(global, static_cast<int>(rows.size()), 0);
    res.automaton.delta = std::move(rows);
    return res;
}

StarAutomaton sync_product(const std::vector<StarAutomaton>& components, const Alphabet& global) {
    return sync_product_tuples(components, global).automaton;
}

IntersectionResult buchi_intersection_traced(const BuchiAutomaton& a, const BuchiAutomaton& b) {
    if (!(a.core.alphabet == b.core.alphabet)) throw Error("buchi_intersection: alphabet mismatch");
    const Alphabet& sigma = a.core.alphabet;
    IntersectionResult res;
    if (a.core.empty() || b.core.empty()) {
        res.automaton.core = StarAutomaton::make(sigma, 0, kNone);
        return res;
    }
    // An all-accepting operand needs no phase bit: the other side's set suffices.
    const bool a_all = count(a.accepting) == a.core.num_states;
    const bool b_all = count(b.accepting) == b.core.num_states;
    const bool counter = !a_all && !b_all;

    std::map<std::tuple<State, State, int>, State> index;
    std::deque<State> queue;
    std::vector<std::vector<State>> rows;
    auto add = [&](State p, State q, int c) {
        auto [it, fresh] = index.emplace(std::make_tuple(p, q, c), static_cast<State>(res.origin.size()));
        if (fresh) {
            res.origin.push_back({p, q, c});
            rows.emplace_back(sigma.size(), kNone);
            queue.push_back(it->second);
        }
        return it->second;
    };
    add(a.core.initial, b.core.initial, 0);
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        auto [p, q, c] = res.origin[s];
        int c2 = c;
        if (counter) {
            // phase 0 waits for a's set, phase 1 for b's; the move happens on leaving
            if (c == 0 && a.accepting[p]) c2 = 1;
            else if (c == 1 && b.accepting[q]) c2 = 0;
        }
        for (int e = 0; e < sigma.size(); ++e) {
            State p2 = a.core.delta[p][e], q2 = b.core.delta[q][e];
            if (p2 == kNone || q2 == kNone) continue;
            State t = add(p2, q2, c2);
            rows[s][e] = t;
        }
    }
    const int n = static_cast<int>(rows.size());
    res.automaton.core = StarAutomaton::make(sigma, n, 0);
    res.automaton.core.delta = std::move(rows);
    res.automaton.accepting = empty_set(n);
    for (State s = 0; s < n; ++s) {
        const auto& o = res.origin[s];
        if (counter) res.automaton.accepting[s] = o.phase == 0 && a.accepting[o.a];
        else if (a_all) res.automaton.accepting[s] = b.accepting[o.b];
        else res.automaton.accepting[s] = a.accepting[o.a];
    }
    return res;
}

BuchiAutomaton buchi_intersection(const BuchiAutomaton& a, const BuchiAutomaton& b) {
    return buchi_intersection_traced(a, b).automaton;
}

TrimResult reachable_trim_traced(const StarAutomaton& a, const StateSet* keep) {
    TrimResult res;
    res.new_of_old.assign(a.num_states, kNone);
    if (a.empty() || (keep && !(*keep)[a.initial])) {
        res.automaton = StarAutomaton::make(a.alphabet, 0, kNone);
        return res;
    }
    std::deque<State> queue{a.initial};
    res.new_of_old[a.initial] = 0;
    res.old_of_new.push_back(a.initial);
    while (!queue.empty()) {
        State q = queue.front();
        queue.pop_front();
        for (int e = 0; e < a.alphabet.size(); ++e) {
            State t = a.delta[q][e];
            if (t == kNone || (keep && !(*keep)[t]) || res.new_of_old[t] != kNone) continue;
            res.new_of_old[t] = static_cast<State>(res.old_of_new.size());
            res.old_of_new.push_back(t);
            queue.push_back(t);
        }
    }
    const int n = static_cast<int>(res.old_of_new.size());
    res.automaton = StarAutomaton::make(a.alphabet, n, 0);
    for (State s = 0; s < n; ++s)
        for (int e = 0; e < a.alphabet.size(); ++e) {
            State t = a.delta[res.old_of_new[s]][e];
            if (t != kNone) res.automaton.delta[s][e] = res.new_of_old[t];
        }
    return res;
}

StarAutomaton reachable_trim(const StarAutomaton& a) { return reachable_trim_traced(a).automaton; }

StateSet remap_set(const StateSet& s, const TrimResult& t) {
    StateSet out(t.old_of_new.size());
    for (std::size_t i = 0; i < t.old_of_new.size(); ++i) out[i] = s[t.old_of_new[i]];
    return out;
}

BuchiAutomaton reachable_trim(const BuchiAutomaton& a) {
    auto t = reachable_trim_traced(a.core);
    return {t.automaton, remap_set(a.accepting, t)};
}

RabinBuchiAutomaton reachable_trim(const RabinBuchiAutomaton& a) {
    auto t = reachable_trim_traced(a.core);
    RabinBuchiAutomaton out{t.automaton, remap_set(a.buchi, t), {}};
    for (const auto& p : a.pairs) out.pairs.push_back({remap_set(p.R, t), remap_set(p.I, t)});
    return out;
}

Totalized totalize(const StarAutomaton& a) {
    Totalized res{a, kNone};
    bool total = !a.empty();
    for (State q = 0; q < a.num_states && total; ++q)
        for (int e = 0; e < a.alphabet.size(); ++e)
            if (a.delta[q][e] == kNone) total = false;
    if (total) return res;
    State sink = a.num_states;
    res.sink = sink;
    res.automaton.num_states = a.num_states + 1;
    if (a.empty()) res.automaton.initial = sink;
    res.automaton.delta.emplace_back(a.alphabet.size(), kNone);
    for (auto& row : res.automaton.delta)
        for (auto& t : row)
            if (t == kNone) t = sink;
    return res;
}

State run_star(const StarAutomaton& a, const Word& w) {
    if (a.empty()) return kNone;
    State q = a.initial;
    for (Event e : w) {
        if (e < 0 || e >= a.alphabet.size()) throw Error("run_star: unknown event");
        q = a.delta[q][e];
        if (q == kNone) return kNone;
    }
    return q;
}

LassoRun lasso_run(const StarAutomaton& a, const LassoWord& w) {
    LassoRun res;
    res.omega = empty_set(a.num_states);
    if (w.cycle.empty()) throw Error("lasso cycle must be non-empty");
    State q = run_star(a, w.stem);
    if (q == kNone) return res;
    // iterate the cycle until its start state repeats
    std::map<State, int> seen;
    std::vector<std::vector<State>> visited;
    while (!seen.count(q)) {
        seen[q] = static_cast<int>(visited.size());
        std::vector<State> states{q};
        for (Event e : w.cycle) {
            if (e < 0 || e >= a.alphabet.size()) throw Error("run_lasso: unknown event");
            q = a.delta[q][e];
            if (q == kNone) return res;
            states.push_back(q);
        }
        visited.push_back(std::move(states));
    }
    for (std::size_t i = seen[q]; i < visited.size(); ++i)
        for (State s : visited[i]) res.omega[s] = true;
    res.defined = true;
    return res;
}

bool omega_meets(const StateSet& omega, const StateSet& s) {
    for (std::size_t i = 0; i < omega.size(); ++i)
        if (omega[i] && s[i]) return true;
    return false;
}

bool omega_within(const StateSet& omega, const StateSet& s) {
    for (std::size_t i = 0; i < omega.size(); ++i)
        if (omega[i] && !s[i]) return false;
    return true;
}

bool rabin_accepts(const StateSet& omega, const RabinPair& p) {
    return omega_meets(omega, p.R) && omega_within(omega, p.I);
}

LassoVerdict run_lasso(const BuchiAutomaton& a, const LassoWord& w) {
    LassoVerdict v;
    auto r = lasso_run(a.core, w);
    v.defined = r.defined;
    v.buchi = r.defined && omega_meets(r.omega, a.accepting);
    return v;
}

LassoVerdict run_lasso(const RabinBuchiAutomaton& a, const LassoWord& w) {
    LassoVerdict v;
    auto r = lasso_run(a.core, w);
    v.defined = r.defined;
    v.buchi = r.defined && omega_meets(r.omega, a.buchi);
    for (const auto& p : a.pairs) {
        bool ok = r.defined && rabin_accepts(r.omega, p);
        v.rabin_pairs.push_back(ok);
        v.rabin = v.rabin || ok;
    }
    return v;
}

StarAutomaton minimize(const StarAutomaton& in) {
    StarAutomaton a = reachable_trim(in);
    if (a.empty()) return a;
    const int n = a.num_states, m = a.alphabet.size();
    std::vector<int> block(n, 0);
    int blocks = 1;
    while (true) {
        std::map<std::vector<int>, int> sig_index;
        std::vector<int> next(n);
        for (State q = 0; q < n; ++q) {
            std::vector<int> sig{block[q]};
            for (int e = 0; e < m; ++e) sig.push_back(a.delta[q][e] == kNone ? -1 : block[a.delta[q][e]]);
            next[q] = sig_index.emplace(sig, static_cast<int>(sig_index.size())).first->second;
        }
        const int count_now = static_cast<int>(sig_index.size());
        block = std::move(next);
        if (count_now == blocks) break;
        blocks = count_now;
    }
    StarAutomaton q = StarAutomaton::make(a.alphabet, blocks, block[a.initial]);
    for (State s = 0; s < n; ++s)
        for (int e = 0; e < m; ++e)
            if (a.delta[s][e] != kNone) q.delta[block[s]][e] = block[a.delta[s][e]];
    return reachable_trim(q);
}

bool structurally_equal(const StarAutomaton& a, const StarAutomaton& b) {
    return a.alphabet == b.alphabet && a.num_states == b.num_states && a.initial == b.initial && a.delta == b.delta;
}

}  // namespace omegaloc
