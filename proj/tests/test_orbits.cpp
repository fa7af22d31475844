#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"

using namespace eqbundle;
using namespace testutil;

TEST_CASE("conjugation action on characters") {
    // elements of H act trivially
    auto q = corpus_action("q8_d2.action");
    TablePtr ht = character_table(q.h_view.grp);
    for (int h : q.kernel.members)
        for (int i = 0; i < ht->count(); ++i)
            CHECK(act_on_character(q, ht->at(i), h).values == ht->at(i).values);

    // abelian G: every element acts trivially
    auto ab = corpus_action("z2z2_d2.action");
    TablePtr abt = character_table(ab.h_view.grp);
    for (int g = 0; g < ab.group->order(); ++g)
        for (int i = 0; i < abt->count(); ++i)
            CHECK(act_on_character(ab, abt->at(i), g).values == abt->at(i).values);

    // a transposition swaps the two nontrivial characters of A_3
    auto s = corpus_action("s3_sign.action");
    TablePtr st = character_table(s.h_view.grp);
    int transposition = *s.b;
    int moved = 0;
    for (int i = 0; i < st->count(); ++i) {
        Character img = act_on_character(s, st->at(i), transposition);
        if (img.values != st->at(i).values) {
            ++moved;
            CHECK(st->index_of(img) >= 0);
        }
    }
    CHECK(moved == 2);
}

TEST_CASE("orbit decomposition") {
    // trivial kernel: a single orbit with full isotropy
    auto rot = corpus_action("z4_rotation.action");
    auto orbits = orbit_decomposition(rot);
    REQUIRE(orbits.size() == 1);
    CHECK(orbits[0].isotropy.order() == 4);
    CHECK(orbits[0].e == 0);

    // Q8 center: two singleton orbits, both with full isotropy and e = 2
    auto q = corpus_action("q8_d2.action");
    auto qorbits = orbit_decomposition(q);
    REQUIRE(qorbits.size() == 2);
    for (const auto& od : qorbits) {
        CHECK(od.size() == 1);
        CHECK(od.isotropy.order() == 8);
        CHECK(od.isotropy_image == ImageKind{true, 2});
        CHECK(od.e == 2);
    }

    // S_3 over A_3: orbits {trivial} and {omega, omega-bar}
    auto s = corpus_action("s3_sign.action");
    auto sorbits = orbit_decomposition(s);
    REQUIRE(sorbits.size() == 2);
    std::vector<int> sizes{sorbits[0].size(), sorbits[1].size()};
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{1, 2});
    for (const auto& od : sorbits) {
        if (od.size() == 1) CHECK(od.isotropy.order() == 6);
        if (od.size() == 2) CHECK(od.isotropy.order() == 3);
    }
}

TEST_CASE("orbit invariants over the corpus") {
    for (const auto& [name, act] : all_corpus_actions()) {
        INFO(name);
        TablePtr ht = character_table(act.h_view.grp);
        auto orbits = orbit_decomposition(act);
        std::vector<int> covered(ht->count(), 0);
        for (const auto& od : orbits) {
            // orbit-stabilizer
            CHECK(static_cast<long>(od.size()) * od.isotropy.order() == act.group->order());
            // H inside the isotropy
            for (int h : act.kernel.members) CHECK(od.isotropy.contains(h));
            // members share degree; representative is minimal
            for (int m : od.members) {
                ++covered[m];
                CHECK(ht->at(m).degree() == ht->at(od.representative).degree());
                CHECK(m >= od.representative);
            }
            // e matches the isotropy image kind
            CHECK(od.e == (od.isotropy_image.dihedral ? 2 : 0));
            // cyclic global image forces cyclic isotropy images
            if (!act.dihedral()) CHECK(!od.isotropy_image.dihedral);
        }
        for (int c : covered) CHECK(c == 1);
    }
}

TEST_CASE("invariance test matches multiplicity constancy") {
    std::mt19937 rng(11);
    for (const auto& [name, act] : all_corpus_actions()) {
        INFO(name);
        TablePtr ht = character_table(act.h_view.grp);
        auto orbits = orbit_decomposition(act);
        std::uniform_int_distribution<int> pick(0, 2);
        for (int trial = 0; trial < 5; ++trial) {
            // random non-negative combination of irreducibles
            std::vector<long> mult(ht->count());
            Character psi;
            psi.group = act.h_view.grp;
            psi.values.assign(ht->at(0).values.size(), Cyclotomic(0));
            for (int i = 0; i < ht->count(); ++i) {
                mult[i] = pick(rng);
                for (long c = 0; c < mult[i]; ++c) psi = character_sum(psi, ht->at(i));
            }
            bool invariant = is_g_invariant(act, psi);
            bool constant = true;
            for (const auto& od : orbits)
                for (int m : od.members)
                    if (mult[m] != mult[od.representative]) constant = false;
            CHECK(invariant == constant);
        }
        // the trivial character is always invariant
        CHECK(is_g_invariant(act, trivial_character(act.h_view.grp)));
    }
}

TEST_CASE("the moved pair omega, omega-bar") {
    // inside S_3 over A_3: omega alone is not invariant, omega + omega-bar is
    auto s = corpus_action("s3_sign.action");
    TablePtr ht = character_table(s.h_view.grp);
    std::vector<int> moved;
    for (int i = 0; i < ht->count(); ++i)
        if (!is_g_invariant(s, ht->at(i))) moved.push_back(i);
    REQUIRE(moved.size() == 2);
    Character sum = character_sum(ht->at(moved[0]), ht->at(moved[1]));
    CHECK(is_g_invariant(s, sum));
}
