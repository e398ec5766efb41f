#include <doctest.h>

#include "rbc/twisted.hpp"
#include "rbc/verify.hpp"

using namespace rbc;

TEST_CASE("twisted character of the trivial representation") {
    auto g = build_group("GL1", 5);
    CharTable t = char_table(*g);
    TwistedContext ctx = make_twisted_context(*g);
    TwistedPair p = twisted_char(ctx, t, trivial_index(t));
    for (const Cyc& v : p.plus.tvals) CHECK(v == Cyc(1));
    for (const Cyc& v : p.minus.tvals) CHECK(v == Cyc(-1));
}

TEST_CASE("twisted character: non-eps-invariant input is rejected") {
    auto g = build_group("GL1", 5);
    CharTable t = char_table(*g);
    TwistedContext ctx = make_twisted_context(*g);
    // A character of order 4 on GL1 is inverted by eps.
    uint32_t bad = UINT32_MAX;
    for (uint32_t i = 0; i < t.irr.size(); ++i) {
        bool selfinv = true;
        for (uint32_t c = 0; c < t.irr[i].vals.size(); ++c) {
            uint32_t ce = g->class_of(g->index_of(g->apply_eps(g->elem(g->classes()[c].rep))));
            if (!(t.irr[i].vals[c] == t.irr[i].vals[ce])) selfinv = false;
        }
        if (!selfinv) bad = i;
    }
    REQUIRE(bad != UINT32_MAX);
    CHECK_THROWS_AS(twisted_char(ctx, t, bad), std::domain_error);
}

TEST_CASE("extensions of an eps-invariant cuspidal are scalar on the outer coset") {
    auto gl2 = build_group("GL2", 5);
    CharTable t = char_table(*gl2);
    CyclicTorus lx = embed_lx_torus(*gl2);
    VirtualChar R = dl_identify_lx(t, lx, 20, 0); // lifted chi_1, trivial central character
    TwistedContext ctx = make_twisted_context(*gl2);
    TwistedPair p = twisted_char(ctx, t, R.parts[0].second);
    uint32_t t0 = gl2->twisted_class_of(gl2->identity_index());
    CHECK(p.plus.tvals[t0] == Cyc(4)); // trace of +id on a (q-1)-dimensional space
    CHECK(p.minus.tvals[t0] == Cyc(-4));
    // The two extensions are negatives of each other on the whole coset.
    for (size_t i = 0; i < p.plus.tvals.size(); ++i)
        CHECK(p.plus.tvals[i] == -p.minus.tvals[i]);
}

TEST_CASE("shintani suite at q=5 (includes factor/semidirect cross-check)") {
    auto rep = verify_shintani(5);
    CAPTURE(rep.dump());
    CHECK(report_passed(rep));
}

TEST_CASE("lifted torus characters") {
    auto tns = build_group("TNS", 5);
    CyclicTorus big = embed_lx_torus(*tns);
    CyclicTorus fix = embed_nonsplit_torus(*tns); // the norm-one subgroup l^1
    // chi trivial lifts to the trivial character.
    auto l0 = lift_torus_char(*tns, big, fix, 0);
    for (const Cyc& v : l0.vals) CHECK(v == Cyc(1));
    // chi of order 6: the lift has trivial restriction to k^x.
    auto l1 = lift_torus_char(*tns, big, fix, 1);
    CHECK(l1.exponent == 20); // -(q-1) mod q^2-1
    const QuadExt& L = quad_ext(5);
    for (long m = 0; m < big.order(); ++m) {
        // element g0^m lies in k^x iff (q-1) | m(q-... iff frobq fixes it
        int z = L.ext().gen_pow(m);
        if (L.frobq(z) == z) CHECK(l1.vals[m] == Cyc(1));
    }
    // order of the lift divides the order of chi.
    for (long b = 0; b <= 6; ++b) {
        auto lb = lift_torus_char(*tns, big, fix, b);
        long n2 = big.order();
        long ordb = (6 / std::gcd(6L, b == 0 ? 6L : b));
        long orde = n2 / std::gcd(n2, lb.exponent == 0 ? n2 : lb.exponent);
        CHECK(ordb % orde == 0);
    }
}

TEST_CASE("epsilon lift of series labels") {
    // Well-defined on the chi <-> chi^{-1} orbit.
    for (long b = 1; b <= 5; ++b) {
        auto l1 = epsilon_lift_series(canonical_series("SL2xPM", 5, CyclicTorus::NonsplitS, b, 0));
        auto l2 =
            epsilon_lift_series(canonical_series("SL2xPM", 5, CyclicTorus::NonsplitS, 6 - b, 0));
        CHECK(l1 == l2);
    }
    // Injective on regular series.
    auto a = epsilon_lift_series(canonical_series("SL2xPM", 5, CyclicTorus::NonsplitS, 1, 0));
    auto b = epsilon_lift_series(canonical_series("SL2xPM", 5, CyclicTorus::NonsplitS, 2, 0));
    CHECK(!(a == b));
    // Trivial series lifts to the trivial series.
    auto t0 = epsilon_lift_series(canonical_series("SL2", 5, CyclicTorus::NonsplitS, 0, 0));
    CHECK(t0.chi_exp == 0);
    // Consistency with the value-level torus lift.
    auto tns = build_group("TNS", 5);
    CyclicTorus big = embed_lx_torus(*tns);
    CyclicTorus fix = embed_nonsplit_torus(*tns);
    for (long bb = 1; bb <= 2; ++bb) {
        auto lift = lift_torus_char(*tns, big, fix, bb);
        auto lab = epsilon_lift_series(canonical_series("SL2", 5, CyclicTorus::NonsplitS, bb, 0));
        long n2 = 24;
        long e = lift.exponent % n2;
        CHECK((lab.chi_exp == e || lab.chi_exp == e * 5 % n2));
    }
}

TEST_CASE("series members") {
    auto sl2 = build_group("SL2", 5);
    CharTable t = char_table(*sl2);
    // Regular nonsplit: exactly one member (the cuspidal).
    auto m1 = series_members(t, canonical_series("SL2", 5, CyclicTorus::NonsplitS, 1, 0));
    CHECK(m1.size() == 1);
    CHECK(t.irr[m1[0]].degree_int() == 4);
    // Trivial split: {1, St}.
    auto m2 = series_members(t, canonical_series("SL2", 5, CyclicTorus::SplitM, 0, 0));
    REQUIRE(m2.size() == 2);
    CHECK(t.irr[m2[0]].degree_int() == 1);
    CHECK(t.irr[m2[1]].degree_int() == 5);
    // Order-2 split: the two degree-(q+1)/2 components.
    auto m3 = series_members(t, canonical_series("SL2", 5, CyclicTorus::SplitM, 2, 0));
    REQUIRE(m3.size() == 2);
    CHECK(t.irr[m3[0]].degree_int() == 3);
    CHECK(t.irr[m3[1]].degree_int() == 3);

    // Lifted quadratic series on GL2xGL1: {eta o det, St . eta o det}.
    auto gz = build_group("GL2xGL1", 5);
    CharTable tz = char_table(*gz);
    auto ls = epsilon_lift_series(canonical_series("SL2xPM", 5, CyclicTorus::NonsplitS, 3, 0));
    auto mm = lifted_series_members(tz, ls);
    REQUIRE(mm.size() == 2);
    std::multiset<long long> degs{tz.irr[mm[0]].degree_int(), tz.irr[mm[1]].degree_int()};
    CHECK(degs == std::multiset<long long>{1, 5});
}
