#include "doctest.h"
#include "helpers.hpp"
#include "omegaloc/omega_lang.hpp"
#include "omegaloc/random.hpp"

using namespace omegaloc;
using namespace testing_support;

namespace {

bool cond_accepts(const StarAutomaton& a, const OmegaCondition& c, const LassoWord& w) {
    if (c.buchi && !buchi_accepts({a, *c.buchi}, w)) return false;
    if (c.pair && !pair_accepts(a, *c.pair, w)) return false;
    return unroll(a, w).defined;
}

}  // namespace

TEST_CASE("strongly connected components honour the restriction") {
    Alphabet sigma = ab({{"a", true}, {"b", false}});
    StarAutomaton g = StarAutomaton::make(sigma, 4, 0);
    g.set(0, 0, 1);
    g.set(1, 0, 0);
    g.set(1, 1, 2);
    g.set(2, 1, 2);
    g.set(3, 0, 0);
    auto s = strongly_connected(g);
    CHECK(s.comp[0] == s.comp[1]);
    CHECK(s.comp[2] != s.comp[1]);
    CHECK(s.nontrivial[s.comp[0]]);
    CHECK(s.nontrivial[s.comp[2]]);
    CHECK_FALSE(s.nontrivial[s.comp[3]]);
    StateSet within{true, false, true, true};
    auto r = strongly_connected(g, &within);
    CHECK(r.comp[1] == -1);
    CHECK_FALSE(r.nontrivial[r.comp[0]]);
}

TEST_CASE("can_reach and live_states") {
    Alphabet sigma = ab({{"a", true}});
    StarAutomaton g = StarAutomaton::make(sigma, 3, 0);
    g.set(0, 0, 1);
    g.set(1, 0, 1);
    StateSet t{false, true, false};
    CHECK(can_reach(g, t) == StateSet{true, true, false});
    CHECK(live_states(g, t) == StateSet{true, true, false});
    CHECK(live_states(g, StateSet{true, false, false}) == StateSet{false, false, false});
}

TEST_CASE("star_equal and star_contained agree with word enumeration") {
    Rng rng(5);
    Alphabet sigma = ab({{"a", true}, {"b", false}});
    for (int trial = 0; trial < 60; ++trial) {
        StarAutomaton x = random_star(rng, sigma, 3, 0.6), y = random_star(rng, sigma, 3, 0.6);
        bool eq_ref = true, sub_ref = true;
        for (const auto& w : all_words(2, 8)) {
            bool ix = accepts_word(x, w), iy = accepts_word(y, w);
            eq_ref = eq_ref && ix == iy;
            sub_ref = sub_ref && (!ix || iy);
        }
        auto eq = star_equal(x, y);
        auto sub = star_contained(x, y);
        CHECK(eq.holds == eq_ref);
        CHECK(sub.holds == sub_ref);
        if (!eq.holds) {
            REQUIRE(eq.counterexample);
            CHECK(accepts_word(x, *eq.counterexample) != accepts_word(y, *eq.counterexample));
        }
        if (!sub.holds) {
            REQUIRE(sub.counterexample);
            CHECK(accepts_word(x, *sub.counterexample));
            CHECK_FALSE(accepts_word(y, *sub.counterexample));
        }
    }
}

TEST_CASE("star_equal against the empty automaton yields the empty word") {
    Alphabet sigma = ab({{"a", true}});
    StarAutomaton g = StarAutomaton::make(sigma, 1, 0);
    auto r = star_equal(g, StarAutomaton::make(sigma, 0, kNone));
    CHECK_FALSE(r.holds);
    CHECK(r.counterexample->empty());
}

TEST_CASE("pre and clo of a Buchi automaton") {
    Alphabet sigma = ab({{"a", true}, {"b", false}});
    // 0 -a-> 1 (accepting loop on b); 0 -b-> 2 (dead loop on a, never accepting)
    StarAutomaton g = StarAutomaton::make(sigma, 3, 0);
    g.set(0, 0, 1);
    g.set(1, 1, 1);
    g.set(0, 1, 2);
    g.set(2, 0, 2);
    BuchiAutomaton b{g, StateSet{false, true, false}};
    StarAutomaton p = pre_automaton(b);
    CHECK(p.num_states == 2);
    CHECK_FALSE(is_deadlock_free(b));
    BuchiAutomaton c = clo_automaton(b);
    CHECK(count(c.accepting) == c.core.num_states);
    CHECK(is_deadlock_free(c));
    CHECK(in_lim(g, {{1}, {0}}));
    CHECK_FALSE(in_lim(g, {{}, {0}}));
}

TEST_CASE("omega containment is sound and its witnesses replay") {
    Rng rng(17);
    int refuted = 0;
    for (int trial = 0; trial < 120; ++trial) {
        Alphabet sigma = random_alphabet(rng, 2);
        auto a = random_rabin_buchi(rng, sigma, 3, 0.7);
        auto b = random_rabin_buchi(rng, sigma, 3, 0.7);
        OmegaCondition ca = trial % 3 == 0 ? OmegaCondition{a.buchi, std::nullopt}
                            : trial % 3 == 1 ? OmegaCondition::rabin_of(a)
                                             : OmegaCondition::both_of(a);
        OmegaCondition cb = trial % 2 ? OmegaCondition::both_of(b) : OmegaCondition::rabin_of(b);
        auto r = omega_contained(a.core, ca, b.core, cb);
        bool enumerated_gap = false;
        for (const auto& w : all_lassos(sigma.size(), 2, 3))
            if (cond_accepts(a.core, ca, w) && !cond_accepts(b.core, cb, w)) enumerated_gap = true;
        if (enumerated_gap) CHECK_FALSE(r.contained);
        if (!r.contained) {
            ++refuted;
            REQUIRE(r.witness);
            CHECK(cond_accepts(a.core, ca, *r.witness));
            CHECK_FALSE(cond_accepts(b.core, cb, *r.witness));
        }
    }
    CHECK(refuted > 0);
}

TEST_CASE("omega containment is reflexive and respects an empty right side") {
    Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        Alphabet sigma = random_alphabet(rng, 3);
        auto a = random_rabin_buchi(rng, sigma, 4, 0.6);
        CHECK(omega_contained(a.core, OmegaCondition::both_of(a), a.core, OmegaCondition::both_of(a)).contained);
        CHECK(omega_contained_single_pair(a, a).contained);
    }
    Alphabet sigma = ab({{"a", true}});
    StarAutomaton loop = StarAutomaton::make(sigma, 1, 0);
    loop.set(0, 0, 0);
    OmegaCondition all{StateSet{true}, std::nullopt};
    auto r = omega_contained(loop, all, StarAutomaton::make(sigma, 0, kNone), OmegaCondition{});
    CHECK_FALSE(r.contained);
    CHECK(r.witness->cycle == Word{0});
}

TEST_CASE("multi-pair conditions are rejected") {
    Alphabet sigma = ab({{"a", true}});
    RabinBuchiAutomaton a{StarAutomaton::make(sigma, 1, 0), StateSet{true}, {}};
    a.pairs.push_back({StateSet{true}, StateSet{true}});
    a.pairs.push_back({StateSet{true}, StateSet{true}});
    CHECK_THROWS_AS(OmegaCondition::rabin_of(a), Error);
}
