#include <doctest.h>

#include <random>

#include "rbc/cyclotomic.hpp"
#include "rbc/finite_field.hpp"

using namespace rbc;

TEST_CASE("rational arithmetic") {
    Rational a(1, 2), b(1, 3);
    CHECK(a + b == Rational(5, 6));
    CHECK(a * b == Rational(1, 6));
    CHECK(a - a == Rational(0));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("cyclotomic basics") {
    CHECK(Cyc::zeta(4, 1) * Cyc::zeta(4, 1) == Cyc(-1));
    CHECK((Cyc(1) + Cyc::zeta(3, 1) + Cyc::zeta(3, 2)).is_zero());
    CHECK(Cyc::zeta(6, 1) == -Cyc::zeta(3, 2));
    CHECK(Cyc::zeta(8, 1).conj() == Cyc::zeta(8, 7));
    // sqrt(5) = zeta5 + zeta5^4 - (zeta5^2 + zeta5^3) has square 5
    Cyc s5 = Cyc::zeta(5, 1) + Cyc::zeta(5, 4) - Cyc::zeta(5, 2) - Cyc::zeta(5, 3);
    CHECK(s5 * s5 == Cyc(5));
}

TEST_CASE("gauss sums square to +-q") {
    for (int q : {5, 7, 9, 11, 13}) {
        int p = (q == 9) ? 3 : q;
        int e = (q == 9) ? 2 : 1;
        Cyc g = Cyc::gauss_sqrt(p, e);
        long long sign = (((q - 1) / 2) % 2 == 0) ? q : -q;
        CHECK(g * g == Cyc(sign));
        if (q == 9) CHECK(g == Cyc(3));
    }
}

TEST_CASE("cyclotomic ring laws on random triples, exact and embedded") {
    std::mt19937 rng(0xC0FFEE);
    auto random_cyc = [&]() {
        long n = 1 + long(rng() % 120);
        Cyc v;
        int terms = 1 + int(rng() % 3);
        for (int t = 0; t < terms; ++t) {
            long k = long(rng() % n);
            long num = long(rng() % 7) - 3;
            v += Cyc::root_term(n, k, Rational(num));
        }
        return v;
    };
    for (int it = 0; it < 1000; ++it) {
        Cyc a = random_cyc(), b = random_cyc(), c = random_cyc();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
    for (int it = 0; it < 200; ++it) {
        Cyc a = random_cyc(), b = random_cyc();
        auto lhs = (a * b).embed();
        auto rhs = a.embed() * b.embed();
        CHECK(std::abs(lhs - rhs) < 1e-9);
        auto l2 = (a + b).embed();
        auto r2 = a.embed() + b.embed();
        CHECK(std::abs(l2 - r2) < 1e-9);
    }
}

TEST_CASE("finite fields: construction and generator order") {
    for (int q : {5, 7, 9, 11, 13}) {
        const Fq& F = base_field(q);
        CHECK(F.q() == q);
        CHECK(F.element_order(F.gen()) == q - 1);
        // a * a^{-1} = 1
        for (int a = 1; a < q; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
    }
}

TEST_CASE("Frobenius fixes exactly q elements of F_{q^2}") {
    for (int q : {5, 7, 9, 11, 13}) {
        const QuadExt& L = quad_ext(q);
        int fixed = 0;
        for (int x = 0; x < L.ext().q(); ++x)
            if (L.frobq(x) == x) ++fixed;
        CHECK(fixed == q);
    }
}

TEST_CASE("norm map: total, multiplicative, fibers of size q+1") {
    for (int q : {5, 7, 9, 11, 13}) {
        const QuadExt& L = quad_ext(q);
        const Fq& E = L.ext();
        CHECK(L.norm(1) == 1);
        // multiplicative on a sample
        for (int x = 1; x < E.q(); x += 3)
            for (int y = 1; y < E.q(); y += 7)
                CHECK(L.norm(E.mul(x, y)) == L.base().mul(L.norm(x), L.norm(y)));
        std::vector<int> fiber(q, 0);
        for (int x = 1; x < E.q(); ++x) ++fiber[L.norm(x)];
        CHECK(fiber[0] == 0);
        for (int c = 1; c < q; ++c) CHECK(fiber[c] == q + 1); // surjective, fibers q+1
    }
}

TEST_CASE("norm-one subgroup is cyclic of order q+1 and contains -1") {
    for (int q : {5, 7, 9, 11, 13}) {
        const QuadExt& L = quad_ext(q);
        const Fq& E = L.ext();
        auto n1 = L.norm_one_subgroup();
        CHECK(int(n1.size()) == q + 1);
        // generator has order exactly q+1
        int x = L.norm_one_gen();
        int ord = 1, y = x;
        while (y != 1) { y = E.mul(y, x); ++ord; }
        CHECK(ord == q + 1);
        bool has_minus1 = false;
        for (int v : n1) has_minus1 = has_minus1 || v == E.neg(1);
        CHECK(has_minus1);
    }
}
