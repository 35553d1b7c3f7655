#include "omegaloc/localization.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace omegaloc {

std::string to_string(Kind k) { return k == Kind::Safety ? "safety" : "liveness"; }

std::string to_string(Part p) {
    switch (p) {
        case Part::C1: return "c1";
        case Part::C2: return "c2";
        default: return "none";
    }
}

namespace {

void require_controllable(const Alphabet& a, Event alpha) {
    if (alpha < 0 || alpha >= a.size()) throw Error("localization: event id out of range");
    if (!a.controllable(alpha)) throw Error("localization: event '" + a.label(alpha) + "' is uncontrollable");
}

}  // namespace

Profile profile_safety(const BuchiAutomaton& plant, const StarAutomaton& sup, Event alpha) {
    if (!(plant.core.alphabet == sup.alphabet)) throw Error("profile_safety: alphabet mismatch");
    require_controllable(sup.alphabet, alpha);
    const int n = sup.num_states;
    Profile p{alpha, Part::None, empty_set(n), empty_set(n)};
    for (State x = 0; x < n; ++x) p.enable[x] = sup.defined(x, alpha);
    if (sup.empty()) return p;
    auto prod = sync_product_tuples({sup, plant.core}, sup.alphabet);
    for (const auto& t : prod.tuples)
        if (!p.enable[t[0]] && plant.core.defined(t[1], alpha)) p.disable[t[0]] = true;
    return p;
}

Profile profile_liveness(const BuchiAutomaton& controlled, const StarAutomaton& sup, const StarAutomaton& tracker,
                         State sink, Event alpha, Part part) {
    if (!(controlled.core.alphabet == sup.alphabet) || !(tracker.alphabet == sup.alphabet))
        throw Error("profile_liveness: alphabet mismatch");
    require_controllable(sup.alphabet, alpha);
    const int n = sup.num_states;
    Profile p{alpha, part, empty_set(n), empty_set(n)};
    for (State x = 0; x < n; ++x) p.enable[x] = sup.defined(x, alpha);
    if (sup.empty()) return p;
    // the tracker is total, so it never blocks the product
    auto prod = sync_product_tuples({sup, controlled.core, tracker}, sup.alphabet);
    for (const auto& t : prod.tuples) {
        const bool in_c1 = t[2] != sink;
        if (part == Part::C1 && !in_c1) continue;
        if (part == Part::C2 && in_c1) continue;
        if (!p.enable[t[0]] && controlled.core.defined(t[1], alpha)) p.disable[t[0]] = true;
    }
    return p;
}

bool consistent(const Profile& p, State x, State y) {
    return !(p.enable[x] && p.disable[y]) && !(p.enable[y] && p.disable[x]);
}

Congruence Congruence::from_index(const std::vector<int>& raw) {
    Congruence c;
    c.index.assign(raw.size(), -1);
    std::vector<int> renum;
    std::vector<int> seen;
    for (std::size_t s = 0; s < raw.size(); ++s) {
        int r = raw[s];
        auto it = std::find(seen.begin(), seen.end(), r);
        int id;
        if (it == seen.end()) {
            id = static_cast<int>(seen.size());
            seen.push_back(r);
            c.cells.emplace_back();
        } else {
            id = static_cast<int>(it - seen.begin());
        }
        c.index[s] = id;
        c.cells[id].push_back(static_cast<State>(s));
    }
    return c;
}

std::optional<std::string> check_congruence(const StarAutomaton& sup, const Profile& p, const Congruence& c) {
    const int n = sup.num_states;
    if (static_cast<int>(c.index.size()) != n) return "index does not cover every state";
    std::vector<int> hits(n, 0);
    for (int i = 0; i < c.size(); ++i) {
        if (c.cells[i].empty()) return "empty cell " + std::to_string(i);
        for (State x : c.cells[i]) {
            if (x < 0 || x >= n) return "state out of range in cell " + std::to_string(i);
            if (c.index[x] != i) return "index disagrees with cell " + std::to_string(i);
            ++hits[x];
        }
    }
    for (State x = 0; x < n; ++x)
        if (hits[x] != 1) return "state " + std::to_string(x) + " is in " + std::to_string(hits[x]) + " cells";
    for (int i = 0; i < c.size(); ++i) {
        const auto& cell = c.cells[i];
        for (std::size_t a = 0; a < cell.size(); ++a)
            for (std::size_t b = a + 1; b < cell.size(); ++b)
                if (!consistent(p, cell[a], cell[b]))
                    return "states " + std::to_string(cell[a]) + " and " + std::to_string(cell[b]) +
                           " are not control consistent";
        for (int e = 0; e < sup.alphabet.size(); ++e) {
            int target = -1;
            for (State x : cell) {
                State t = sup.delta[x][e];
                if (t == kNone) continue;
                if (target == -1) target = c.index[t];
                else if (target != c.index[t])
                    return "cell " + std::to_string(i) + " splits under event " + sup.alphabet.label(e);
            }
        }
    }
    return std::nullopt;
}

namespace {

struct Cells {
    std::vector<int> parent;
    std::vector<char> has_e, has_d;
    std::vector<std::vector<State>> members;

    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
};

// Merges x and y plus everything forward closure forces; false on any conflict.
bool try_merge(Cells& c, const StarAutomaton& a, State x, State y) {
    std::deque<std::pair<State, State>> todo{{x, y}};
    while (!todo.empty()) {
        auto [u, v] = todo.front();
        todo.pop_front();
        int ru = c.find(u), rv = c.find(v);
        if (ru == rv) continue;
        bool e = c.has_e[ru] || c.has_e[rv], d = c.has_d[ru] || c.has_d[rv];
        if (e && d) return false;
        if (c.members[ru].size() < c.members[rv].size()) std::swap(ru, rv);
        c.parent[rv] = ru;
        c.has_e[ru] = e;
        c.has_d[ru] = d;
        c.members[ru].insert(c.members[ru].end(), c.members[rv].begin(), c.members[rv].end());
        c.members[rv].clear();
        for (int ev = 0; ev < a.alphabet.size(); ++ev) {
            State first = kNone;
            for (State m : c.members[ru]) {
                State t = a.delta[m][ev];
                if (t == kNone) continue;
                if (first == kNone) first = t;
                else if (c.find(t) != c.find(first)) todo.emplace_back(first, t);
            }
        }
    }
    return true;
}

}  // namespace

Congruence build_congruence(const StarAutomaton& sup, const Profile& p) {
    const int n = sup.num_states;
    Cells cells;
    cells.parent.resize(n);
    std::iota(cells.parent.begin(), cells.parent.end(), 0);
    cells.members.resize(n);
    for (State x = 0; x < n; ++x) {
        cells.has_e.push_back(p.enable[x]);
        cells.has_d.push_back(p.disable[x]);
        cells.members[x] = {x};
    }
    for (State i = 0; i < n; ++i)
        for (State j = i + 1; j < n; ++j) {
            if (cells.find(i) == cells.find(j)) continue;
            Cells trial = cells;
            if (try_merge(trial, sup, i, j)) cells = std::move(trial);
        }
    std::vector<int> raw(n);
    for (State x = 0; x < n; ++x) raw[x] = cells.find(x);
    return Congruence::from_index(raw);
}

std::string LocalController::name() const {
    std::string base = "loc_" + automaton.alphabet.label(event);
    if (kind == Kind::Safety) return base + "_safety";
    switch (part) {
        case Part::C1: return base + "_live_c1";
        case Part::C2: return base + "_live_c2";
        default: return base + "_live_all";
    }
}

LocalController build_local_controller(const StarAutomaton& sup, const Congruence& c, Event alpha, Kind kind,
                                       Part part) {
    LocalController lc;
    lc.event = alpha;
    lc.kind = kind;
    lc.part = part;
    if (sup.empty()) {
        lc.automaton = StarAutomaton::make(sup.alphabet, 0, kNone);
        return lc;
    }
    const int m = c.size();
    StarAutomaton q = StarAutomaton::make(sup.alphabet, m, c.index[sup.initial]);
    for (int i = 0; i < m; ++i)
        for (State x : c.cells[i])
            for (int e = 0; e < sup.alphabet.size(); ++e) {
                State t = sup.delta[x][e];
                if (t == kNone) continue;
                State old = q.delta[i][e];
                if (old != kNone && old != c.index[t]) throw Error("build_local_controller: not a congruence");
                q.delta[i][e] = c.index[t];
            }
    auto trimmed = reachable_trim_traced(q);
    lc.automaton = trimmed.automaton;
    for (State cell : trimmed.old_of_new) lc.congruence.cells.push_back(c.cells[cell]);
    lc.congruence.index.assign(sup.num_states, -1);
    for (int i = 0; i < lc.congruence.size(); ++i)
        for (State x : lc.congruence.cells[i]) lc.congruence.index[x] = i;
    return lc;
}

std::vector<LocalController> Localization::all() const {
    std::vector<LocalController> out = safety;
    out.insert(out.end(), liveness.begin(), liveness.end());
    return out;
}

Localization localize_all(const BuchiAutomaton& plant, const SafetySupervisor& sup_star,
                          const BuchiAutomaton& controlled, const OmegaSupervisor& sup_omega) {
    Localization res;
    const Alphabet& sigma = sup_star.automaton.alphabet;
    for (Event e : sigma.controllable_events()) {
        Profile ps = profile_safety(plant, sup_star.automaton, e);
        res.safety.push_back(build_local_controller(sup_star.automaton, build_congruence(sup_star.automaton, ps), e,
                                                    Kind::Safety, Part::None));
    }
    for (Event e : sigma.controllable_events()) {
        // a congruence that works for the whole profile also works for each part,
        // and greedy merging on the smaller profile can land on a worse partition
        Congruence whole = build_congruence(sup_omega.automaton, profile_liveness(controlled, sup_omega, e, Part::None));
        for (Part part : {Part::C1, Part::C2}) {
            Profile pl = profile_liveness(controlled, sup_omega, e, part);
            auto own = build_local_controller(sup_omega.automaton, build_congruence(sup_omega.automaton, pl), e,
                                              Kind::Liveness, part);
            auto shared = build_local_controller(sup_omega.automaton, whole, e, Kind::Liveness, part);
            res.liveness.push_back(shared.automaton.num_states < own.automaton.num_states ? shared : own);
        }
    }
    return res;
}

LocalController localize_undivided(const BuchiAutomaton& controlled, const OmegaSupervisor& sup_omega, Event alpha) {
    Profile p = profile_liveness(controlled, sup_omega, alpha, Part::None);
    return build_local_controller(sup_omega.automaton, build_congruence(sup_omega.automaton, p), alpha,
                                  Kind::Liveness, Part::None);
}

}  // namespace omegaloc
