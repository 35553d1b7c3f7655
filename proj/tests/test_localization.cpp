#include "doctest.h"
#include "helpers.hpp"
#include "omegaloc/localization.hpp"
#include "omegaloc/omega_lang.hpp"
#include "omegaloc/pipeline.hpp"
#include "omegaloc/random.hpp"
#include "omegaloc/verify.hpp"

using namespace omegaloc;
using namespace testing_support;

namespace {

// 0 -al-> 0, 0 -x-> 1 -y-> 2; al enabled at 0, disabled at 2, don't-care at 1.
struct Chain {
    Alphabet sigma = ab({{"al", true}, {"x", false}, {"y", false}});
    StarAutomaton sup = StarAutomaton::make(sigma, 3, 0);
    Profile p;
    Chain() {
        sup.set(0, sigma.index("al"), 0);
        sup.set(0, sigma.index("x"), 1);
        sup.set(1, sigma.index("y"), 2);
        p = {sigma.index("al"), Part::None, StateSet{true, false, false}, StateSet{false, false, true}};
    }
};

bool invalid(const StarAutomaton& sup, const Profile& p, const Congruence& c) {
    return check_congruence(sup, p, c).has_value();
}

Congruence identity(int n) {
    std::vector<int> raw(n);
    for (int i = 0; i < n; ++i) raw[i] = i;
    return Congruence::from_index(raw);
}

State walk(const StarAutomaton& a, const Word& w) {
    if (a.num_states == 0) return kNone;
    State q = a.initial;
    for (Event e : w) {
        q = a.delta[q][e];
        if (q < 0) return kNone;
    }
    return q;
}

// s.alpha in LOC and s.alpha in plant and s in parent  <=>  s.alpha in parent,
// for every s in scope up to the length bound.
void check_controller_property(const LocalController& c, const StarAutomaton& parent, const StarAutomaton& plant,
                               int max_len, const std::function<bool(const Word&)>& in_scope) {
    const Alphabet& a = parent.alphabet;
    for (const auto& s : all_words(a.size(), max_len)) {
        if (!accepts_word(parent, s) || !in_scope(s)) continue;
        Word sa = s;
        sa.push_back(c.event);
        bool lhs = accepts_word(c.automaton, sa) && accepts_word(plant, sa);
        REQUIRE_MESSAGE(lhs == accepts_word(parent, sa), c.name() << " at " << word_to_string(a, s));
    }
}

struct SmallFactory {
    Models m;
    PipelineResult r;
    SmallFactory() {
        m = load_models(load_config(std::string(MODELS_DIR) + "/small-factory/pipeline.cfg"));
        r = run_pipeline(m, {0, 1, false});
    }
};

}  // namespace

TEST_CASE("consistency follows the enable/disable formula") {
    Chain ch;
    CHECK_FALSE(consistent(ch.p, 0, 2));
    CHECK_FALSE(consistent(ch.p, 2, 0));
    CHECK(consistent(ch.p, 0, 1));
    CHECK(consistent(ch.p, 1, 2));
    Profile zero{0, Part::None, StateSet{true, false, true}, StateSet{false, false, false}};
    for (State x = 0; x < 3; ++x)
        for (State y = 0; y < 3; ++y) CHECK(consistent(zero, x, y));
}

TEST_CASE("non-transitive consistency keeps the two ends apart") {
    Chain ch;
    Congruence c = build_congruence(ch.sup, ch.p);
    CHECK_FALSE(invalid(ch.sup, ch.p, c));
    CHECK(c.index[0] != c.index[2]);
    CHECK(c.size() == 2);
    CHECK(brute_force_min_congruence(ch.sup, ch.p).size() == 2);
}

TEST_CASE("a profile without disablements merges everything into one cell") {
    Chain ch;
    Profile zero{ch.p.event, Part::None, ch.p.enable, empty_set(3)};
    Congruence c = build_congruence(ch.sup, zero);
    CHECK(c.size() == 1);
    auto lc = build_local_controller(ch.sup, c, zero.event, Kind::Safety, Part::None);
    CHECK(lc.automaton.num_states == 1);
    for (Event e = 0; e < ch.sigma.size(); ++e) CHECK(lc.automaton.next(0, e) == 0);
}

TEST_CASE("the identity partition is valid and reproduces the supervisor") {
    Rng rng(83);
    for (int trial = 0; trial < 30; ++trial) {
        Alphabet sigma = random_alphabet(rng, 3);
        BuchiAutomaton g = random_buchi(rng, sigma, 5, 0.7);
        auto sup = sup_con_star(g, random_star(rng, sigma, 3, 0.8));
        if (sup.empty()) continue;
        for (Event e : sigma.controllable_events()) {
            Profile p = profile_safety(g, sup.automaton, e);
            Congruence id = identity(sup.automaton.num_states);
            CHECK_FALSE(invalid(sup.automaton, p, id));
            auto lc = build_local_controller(sup.automaton, id, e, Kind::Safety, Part::None);
            CHECK(lc.automaton.num_states == sup.automaton.num_states);
            CHECK(star_equal(lc.automaton, sup.automaton).holds);
            // greedy output is valid and never larger than the identity
            Congruence gc = build_congruence(sup.automaton, p);
            CHECK_FALSE(invalid(sup.automaton, p, gc));
            CHECK(gc.size() <= id.size());
        }
    }
}

TEST_CASE("congruence checker reports broken partitions") {
    Chain ch;
    Congruence all = Congruence::from_index({0, 0, 0});
    CHECK(invalid(ch.sup, ch.p, all));
    Congruence partial;
    partial.cells = {{0}, {1}};
    partial.index = {0, 1, -1};
    CHECK(invalid(ch.sup, ch.p, partial));
}

TEST_CASE("safety profile agrees with a string-level reference") {
    Rng rng(89);
    for (int trial = 0; trial < 25; ++trial) {
        Alphabet sigma = random_alphabet(rng, 3);
        BuchiAutomaton g = random_buchi(rng, sigma, 3, 0.7);
        auto sup = sup_con_star(g, random_star(rng, sigma, 3, 0.7));
        if (sup.empty()) continue;
        for (Event e : sigma.controllable_events()) {
            Profile p = profile_safety(g, sup.automaton, e);
            StateSet d = empty_set(sup.automaton.num_states);
            for (const auto& s : all_words(sigma.size(), 6)) {
                State x = walk(sup.automaton, s);
                if (x == kNone || sup.automaton.defined(x, e)) continue;
                Word se = s;
                se.push_back(e);
                if (accepts_word(g.core, se)) d[x] = true;
            }
            CHECK(p.disable == d);
            for (State x = 0; x < sup.automaton.num_states; ++x) CHECK_FALSE((p.enable[x] && p.disable[x]));
        }
    }
    Alphabet sigma = random_alphabet(rng, 3);
    BuchiAutomaton g = random_buchi(rng, sigma, 4, 0.7);
    CHECK_THROWS_AS(profile_safety(g, g.core, 1), Error);  // event 1 is uncontrollable
}

TEST_CASE("a state reached only outside the minimal prefix is not disabled in part C1") {
    // sup: 0 -a-> 1, 0 -b-> 2; the plant allows al at 2 but the supervisor does not.
    Alphabet sigma = ab({{"a", true}, {"al", true}, {"b", true}});
    Event a = sigma.index("a"), al = sigma.index("al"), b = sigma.index("b");
    StarAutomaton sup = StarAutomaton::make(sigma, 3, 0);
    sup.set(0, a, 1);
    sup.set(0, b, 2);
    sup.set(1, al, 1);
    StarAutomaton plant_core = sup;
    plant_core.set(2, al, 2);
    BuchiAutomaton plant{plant_core, full_set(3)};
    // minimal spec: a al^omega, so only strings starting with a are in its prefix closure
    StarAutomaton m = StarAutomaton::make(sigma, 2, 0);
    m.set(0, a, 1);
    m.set(1, al, 1);
    Totalized z = totalize(m);
    Profile c1 = profile_liveness(plant, sup, z.automaton, z.sink, al, Part::C1);
    Profile c2 = profile_liveness(plant, sup, z.automaton, z.sink, al, Part::C2);
    Profile both = profile_liveness(plant, sup, z.automaton, z.sink, al, Part::None);
    CHECK(c1.disable == StateSet{false, false, false});
    CHECK(c2.disable == StateSet{false, false, true});
    CHECK(both.disable == StateSet{false, false, true});
}

TEST_CASE("Small Factory: arity, collapse of the C1 controllers, valid congruences") {
    SmallFactory sf;
    const auto& L = sf.r.local;
    CHECK(L.safety.size() == 2);
    CHECK(L.liveness.size() == 4);
    for (const auto& c : L.liveness)
        if (c.part == Part::C1) CHECK(c.automaton.num_states == 1);
    for (const auto& c : L.safety) {
        Profile p = profile_safety(sf.m.plant, sf.r.sup_star.automaton, c.event);
        CHECK_FALSE(invalid(sf.r.sup_star.automaton, p, c.congruence));
        CHECK(star_contained(sf.r.sup_star.automaton, c.automaton).holds);
    }
    for (const auto& c : L.liveness) {
        Profile p = profile_liveness(sf.r.controlled, sf.r.sup_omega, c.event, c.part);
        CHECK_FALSE(invalid(sf.r.sup_omega.automaton, p, c.congruence));
        CHECK(star_contained(sf.r.sup_omega.automaton, c.automaton).holds);
    }
    std::vector<std::string> names;
    for (const auto& c : L.all()) names.push_back(c.name());
    CHECK(names == std::vector<std::string>{"loc_a1_safety", "loc_a2_safety", "loc_a1_live_c1", "loc_a1_live_c2",
                                            "loc_a2_live_c1", "loc_a2_live_c2"});
}

TEST_CASE("Small Factory: controller property on all short strings") {
    SmallFactory sf;
    for (const auto& c : sf.r.local.safety)
        check_controller_property(c, sf.r.sup_star.automaton, sf.m.plant.core, 8, [](const Word&) { return true; });
    const auto& s = sf.r.sup_omega;
    for (const auto& c : sf.r.local.liveness) {
        auto scope = [&](const Word& w) {
            State z = walk(s.tracker, w);
            bool c1 = z != s.sink;
            return c.part == Part::C1 ? c1 : !c1;
        };
        check_controller_property(c, s.automaton, sf.r.controlled.core, 8, scope);
    }
}

TEST_CASE("Small Factory: split controllers are no larger than the undivided one") {
    SmallFactory sf;
    for (Event e : sf.m.alphabet.controllable_events()) {
        auto whole = localize_undivided(sf.r.controlled, sf.r.sup_omega, e);
        for (const auto& c : sf.r.local.liveness)
            if (c.event == e) CHECK(c.automaton.num_states <= whole.automaton.num_states);
    }
}

TEST_CASE("no controllable events, no controllers") {
    Alphabet sigma = ab({{"u", false}});
    StarAutomaton g = StarAutomaton::make(sigma, 1, 0);
    g.set(0, 0, 0);
    BuchiAutomaton plant{g, StateSet{true}};
    SafetySupervisor s{g, StateSet{true}};
    OmegaSupervisor w;
    w.automaton = g;
    w.tracker = g;
    CHECK(localize_all(plant, s, plant, w).all().empty());
}
