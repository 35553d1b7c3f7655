// Acceptance runner: `acceptance [N]` checks criterion N (all when omitted)
// and prints one PASS/FAIL line per criterion. Exit status is nonzero when any
// selected criterion fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>

#include "omegaloc/omega_lang.hpp"
#include "omegaloc/pipeline.hpp"

using namespace omegaloc;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream note;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            note << "[mismatch] ";
        }
        note << what << "; ";
    }
};

std::string sf_config() { return std::string(MODELS_DIR) + "/small-factory/pipeline.cfg"; }

struct SmallFactory {
    Models m;
    PipelineResult r;
    explicit SmallFactory(const PipelineOptions& opt) {
        m = load_models(load_config(sf_config()));
        r = run_pipeline(m, opt);
    }
};

std::string num(long long v) { return std::to_string(v); }

void criterion1(Outcome& o) {
    Models m = load_models(load_config(sf_config()));
    auto sup = sup_con_star(m.plant, m.spec);
    int b = count(sup.buchi_lift);
    o.require(sup.automaton.num_states == 8, "states " + num(sup.automaton.num_states) + " (want 8)");
    o.require(sup.automaton.num_transitions() == 14,
              "transitions " + num(sup.automaton.num_transitions()) + " (want 14)");
    o.require(b == 5, "|B| " + num(b) + " (want 5)");
}

void criterion2(Outcome& o) {
    Models m = load_models(load_config(sf_config()));
    auto sup = sup_con_star(m.plant, m.spec);
    auto p = build_rabin_buchi(controlled_plant(m.plant, sup), m.legal).automaton;
    o.require(p.core.num_states == 27, "states " + num(p.core.num_states) + " (want 27)");
    o.require(count(p.buchi) == 10, "|Buchi| " + num(count(p.buchi)) + " (want 10)");
    o.require(count(p.pairs[0].R) == 4, "|R| " + num(count(p.pairs[0].R)) + " (want 4)");
}

void criterion3(Outcome& o) {
    SmallFactory sf({0, 1, false});
    const auto& p = sf.r.product.automaton;
    const auto& c = sf.r.control;
    const Alphabet& a = sf.m.alphabet;
    int n = p.core.num_states;
    o.require(n == 27, "product states " + num(n) + " (want 27)");
    o.require(count(c.subset) == n, "|C| " + num(count(c.subset)) + " of " + num(n));
    int refined = 0;
    std::vector<int> drops(a.size(), 0);
    bool unc_dropped = false;
    for (State q = 0; q < n; ++q) {
        if (!c.subset[q]) continue;
        bool any = false;
        for (Event e : p.core.enabled(q))
            if (!c.phi[q][e]) {
                any = true;
                ++drops[e];
                if (!a.controllable(e)) unc_dropped = true;
            }
        refined += any;
    }
    Event a1 = a.index("a1"), a2 = a.index("a2");
    o.require(refined == 8, "refined states " + num(refined) + " (want 8)");
    o.require(drops[a1] == 4, "a1 dropped at " + num(drops[a1]) + " (want 4)");
    o.require(drops[a2] == 4, "a2 dropped at " + num(drops[a2]) + " (want 4)");
    o.require(!unc_dropped, "no uncontrollable drop");
}

void criterion4(Outcome& o) {
    SmallFactory sf({0, 1, false});
    const auto& s = sf.r.sup_omega.automaton;
    o.require(sf.r.existence.contained, "existence check");
    o.require(s.num_states == 34, "states " + num(s.num_states) + " (want 34)");
    o.require(s.num_transitions() == 51, "transitions " + num(s.num_transitions()) + " (want 51)");
    int b = count(sf.r.sup_omega.buchi_lift);
    o.require(b == 15, "|B| " + num(b) + " (want 15)");
    // disablement is counted against the plant under the safety supervisor;
    // counted against the raw plant it would also include every safety cut
    auto d = disabled_counts(sf.r.controlled, s);
    auto raw = disabled_counts(sf.m.plant, s);
    const Alphabet& a = sf.m.alphabet;
    for (const char* ev : {"a1", "a2"}) {
        Event e = a.index(ev);
        o.require(d[e] == 4, std::string(ev) + " disabled at " + num(d[e]) + " (want 4; " + num(raw[e]) +
                                 " against the raw plant)");
    }
}

void criterion5(Outcome& o) {
    SmallFactory sf({0, 1, false});
    const auto& L = sf.r.local;
    o.require(L.safety.size() == 2, "safety controllers " + num(L.safety.size()));
    o.require(L.liveness.size() == 4, "liveness controllers " + num(L.liveness.size()));
    for (const auto& c : L.liveness)
        if (c.part == Part::C1) o.require(c.automaton.num_states == 1, c.name() + " states " + num(c.automaton.num_states));
}

void criterion6(Outcome& o) {
    SmallFactory sf({0, 1, true});
    auto cs = sf.r.local.all();
    o.require(cs.size() + 1 == 7, "operands " + num(cs.size() + 1));
    o.require(sf.r.finite.finite_ok, "plant and controllers equal the supervisor");
    auto dels = all_deletions(cs);
    int survived = 0;
    for (const auto& mu : dels)
        if (check_finite_equivalence(sf.m.plant, sf.r.sup_star.automaton, sf.r.sup_omega.automaton, omegaloc::apply(cs, mu))
                .finite_ok)
            ++survived;
    o.require(survived == 0, num(dels.size()) + " deletions, " + num(survived) + " undetected");
    int benign = 0;
    auto adds = all_event_additions(cs);
    for (const auto& mu : adds)
        if (check_finite_equivalence(sf.m.plant, sf.r.sup_star.automaton, sf.r.sup_omega.automaton, omegaloc::apply(cs, mu))
                .finite_ok)
            ++benign;
    o.note << "event additions: " << adds.size() - benign << " detected, " << benign
           << " outside every reachable plant context; ";
}

void criterion7(Outcome& o) {
    SmallFactory sf({500, 1, true});
    const auto& inf = sf.r.infinite;
    bool tier1 = false;
    for (const auto& [k, v] : inf.sub_results)
        if (k == "tier1") tier1 = v;
    o.require(tier1, "tier 1");
    o.require(inf.checked_lassos == 500, "lassos " + num(inf.checked_lassos));
    o.require(inf.infinite_ok, "tier 2 disagreements: " + std::string(inf.infinite_ok ? "0" : inf.detail));
    o.note << inf.lassos_accepted << " sampled lassos inside the reference; ";
}

void criterion8(Outcome& o) {
    int violations = 0, events = 0, instances = 0;
    int greedy_worse = 0;
    auto check = [&](const PipelineResult& r) {
        for (Event e : r.controlled.core.alphabet.controllable_events()) {
            auto whole = localize_undivided(r.controlled, r.sup_omega, e);
            for (Part part : {Part::C1, Part::C2}) {
                Profile p = profile_liveness(r.controlled, r.sup_omega, e, part);
                auto own = build_local_controller(r.sup_omega.automaton, build_congruence(r.sup_omega.automaton, p), e,
                                                  Kind::Liveness, part);
                if (own.automaton.num_states > whole.automaton.num_states) ++greedy_worse;
            }
            int worst = 0;
            for (const auto& c : r.local.liveness)
                if (c.event == e) worst = std::max(worst, c.automaton.num_states);
            ++events;
            if (worst > whole.automaton.num_states) ++violations;
        }
    };
    SmallFactory sf({0, 1, false});
    check(sf.r);
    Rng rng(8);
    while (instances < 20) {
        auto m = random_models(rng);
        if (!m) continue;
        auto r = run_pipeline(*m, {0, 1, false});
        if (r.exit != exit_code::ok) continue;
        check(r);
        ++instances;
    }
    o.require(violations == 0, num(events) + " events over Small Factory + " + num(instances) + " random, " +
                                   num(violations) + " violations");
    o.note << greedy_worse << " parts where greedy merging on the part alone was larger than the undivided one; ";
}

void criterion9(Outcome& o) {
    Rng rng(9);
    int disagree = 0, nonempty = 0;
    for (int t = 0; t < 50; ++t) {
        Alphabet sigma = random_alphabet(rng, 3);
        int n = std::uniform_int_distribution<int>(2, 6)(rng);
        auto a = random_rabin_buchi(rng, sigma, n, 0.6);
        auto c = controllability_subset(a).subset;
        if (c != brute_force_controllability(a)) ++disagree;
        if (count(c) > 0) ++nonempty;
    }
    o.require(disagree == 0, "controllability: 50 instances, " + num(disagree) + " disagreements (" +
                                 num(nonempty) + " nonempty)");
    int invalid = 0, below = 0, above = 0;
    for (int t = 0; t < 50; ++t) {
        Alphabet sigma = random_alphabet(rng, 3);
        int n = std::uniform_int_distribution<int>(2, 8)(rng);
        StarAutomaton sup = random_star(rng, sigma, n, 0.6);
        Event e = sigma.controllable_events()[0];
        Profile p{e, Part::None, empty_set(sup.num_states), empty_set(sup.num_states)};
        for (State x = 0; x < sup.num_states; ++x) {
            p.enable[x] = sup.defined(x, e);
            p.disable[x] = !p.enable[x] && rng() % 2;
        }
        auto g = build_congruence(sup, p);
        auto b = brute_force_min_congruence(sup, p);
        if (check_congruence(sup, p, g)) ++invalid;
        if (g.size() < b.size()) ++below;
        if (g.size() > b.size()) ++above;
    }
    o.require(invalid == 0 && below == 0, "congruences: 50 profiles, " + num(invalid) + " invalid, " + num(below) +
                                              " below the minimum, " + num(above) + " strictly above");
}

void criterion10(Outcome& o) {
    auto r = lemma1_harness(100, 50, 10);
    o.require(r.violations == 0, num(r.trials) + " pairs x 50 lassos, " + num(r.violations) + " violations" +
                                     (r.first_violation ? " first " + *r.first_violation : std::string()));
    o.note << r.in_both << " in both limits, " << r.in_neither << " outside; ";
}

struct Criterion {
    void (*run)(Outcome&);
    double budget_s;
};

const Criterion kCriteria[] = {{criterion1, 1},  {criterion2, 1},  {criterion3, 5},   {criterion4, 5},
                               {criterion5, 5},  {criterion6, 5},  {criterion7, 30},  {criterion8, 120},
                               {criterion9, 300}, {criterion10, 60}};

bool run(int n) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
        kCriteria[n - 1].run(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.note << "exception: " << e.what() << "; ";
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double budget = kCriteria[n - 1].budget_s;
    if (s >= budget) {
        o.pass = false;
        o.note << "[over budget] ";
    }
    std::printf("criterion %d: %s (%.3fs / %.0fs) %s\n", n, o.pass ? "PASS" : "FAIL", s, budget, o.note.str().c_str());
    std::fflush(stdout);
    return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
    constexpr int total = sizeof(kCriteria) / sizeof(kCriteria[0]);
    if (argc > 2) {
        std::fprintf(stderr, "usage: acceptance [criterion]\n");
        return 2;
    }
    bool ok = true;
    if (argc == 2) {
        int n = std::atoi(argv[1]);
        if (n < 1 || n > total) {
            std::fprintf(stderr, "criterion must be 1..%d\n", total);
            return 2;
        }
        ok = run(n);
    } else {
        for (int n = 1; n <= total; ++n) ok = run(n) && ok;
    }
    return ok ? 0 : 1;
}
