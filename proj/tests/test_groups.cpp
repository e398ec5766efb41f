#include <doctest.h>

#include <map>
#include <set>

#include "rbc/gl3.hpp"
#include "rbc/group.hpp"
#include "rbc/parallel.hpp"

using namespace rbc;

TEST_CASE("SL(2,5): order, classes, class equation") {
    auto g = build_group("SL2", 5);
    CHECK(g->order() == 120);
    const auto& cls = g->classes();
    CHECK(cls.size() == 9);
    uint64_t total = 0;
    for (const auto& c : cls) {
        total += c.size;
        CHECK(c.size * c.centralizer == g->order());
    }
    CHECK(total == g->order());
}

TEST_CASE("O(2,1)(5) and SO(2,1)(5) vs PGL(2,5)") {
    auto o21 = build_group("O21", 5);
    auto so21 = build_group("SO21", 5);
    auto pgl2 = build_group("PGL2", 5);
    CHECK(o21->order() == 240);
    CHECK(so21->order() == 120);
    CHECK(o21->order() == 2 * so21->order());
    CHECK(pgl2->order() == so21->order());
    std::multiset<uint64_t> a, b;
    for (const auto& c : so21->classes()) a.insert(c.size);
    for (const auto& c : pgl2->classes()) b.insert(c.size);
    CHECK(a == b); // class-size multisets agree
}

TEST_CASE("G_F has order 2(q-1) and is abelian") {
    for (int q : {5, 9, 13}) {
        auto gf = build_group("GF", q);
        CHECK(gf->order() == uint64_t(2 * (q - 1)));
        CHECK(gf->classes().size() == gf->order());
    }
}

TEST_CASE("fixed points of eps on GL2xGL1 give SL2 x {+-1}") {
    auto big = build_group("GL2xGL1", 5);
    auto fixed = big->fixed_subgroup();
    auto sl2pm = build_group("SL2xPM", 5);
    CHECK(fixed->order() == 240);
    CHECK(fixed->order() == sl2pm->order());
    for (const Elem& e : fixed->elems) CHECK(sl2pm->contains(e));
}

TEST_CASE("identity automorphism fixes everything") {
    auto g = build_group("SL2", 5);
    g->eps = Aut{Aut::Identity};
    g->has_eps = true;
    CHECK(g->fixed_subgroup()->order() == g->order());
}

TEST_CASE("norm map") {
    auto big = build_group("GL2xGL1", 5);
    // eps-fixed g: norm = g^2
    auto sl2pm = build_group("SL2xPM", 5);
    for (uint32_t i = 0; i < 50; ++i) {
        const Elem& e = sl2pm->elem(i % uint32_t(sl2pm->order()));
        CHECK(big->norm_map(e) == big->mul(e, e));
    }
    Elem id{mat_identity(), 0};
    CHECK(big->norm_map(id) == id);

    // On l^x the norm map realizes x -> x/xbar and surjects onto the
    // norm-one subgroup.
    auto tns = build_group("TNS", 5);
    std::set<uint64_t> image;
    for (const Elem& e : tns->elems) image.insert(elem_key(tns->norm_map(e)));
    CHECK(image.size() == 6); // q+1
    CyclicTorus n1 = embed_nonsplit_torus(*tns);
    for (uint32_t idx : n1.by_power) CHECK(image.count(elem_key(tns->elem(idx))) == 1);
}

TEST_CASE("class counts: GL(2,5) has q^2-1 ordinary classes") {
    auto gl2 = build_group("GL2", 5);
    CHECK(gl2->classes().size() == 24);
}

TEST_CASE("twisted class sizes divide the group order") {
    auto big = build_group("GL2xGL1", 5);
    for (const auto& c : big->twisted_classes()) CHECK(big->order() % c.size == 0);
    uint64_t total = 0;
    for (const auto& c : big->twisted_classes()) total += c.size;
    CHECK(total == big->order());
}

TEST_CASE("SL(2,q) has exactly two nontrivial unipotent classes") {
    for (int q : {5, 9}) {
        auto sl2 = build_group("SL2", q);
        const Fq& F = *sl2->F;
        std::set<uint32_t> classes;
        for (int c = 1; c < q; ++c)
            classes.insert(sl2->class_of(sl2->index_of({corner(1, 0, c, 1, 1), 0})));
        CHECK(classes.size() == 2);
        CHECK(classes.count(sl2->class_of(sl2->index_of({corner(1, 0, F.least_nonsquare(), 1, 1), 0}))) == 1);
    }
}

TEST_CASE("torus embeddings") {
    auto sl2 = build_group("SL2", 5);
    CyclicTorus ns = embed_nonsplit_torus(*sl2);
    CHECK(ns.order() == 6);
    // cyclic: power map consistent
    Elem gen = sl2->elem(ns.by_power[1]);
    Elem x{mat_identity(), 0};
    for (long m = 0; m < ns.order(); ++m) {
        CHECK(sl2->index_of(x) == ns.by_power[m]);
        x = sl2->mul(x, gen);
    }
    CHECK(x == Elem{mat_identity(), 0});

    CyclicTorus sp = embed_split_torus(*sl2);
    CHECK(sp.order() == 4);

    auto so21 = build_group("SO21", 5);
    CyclicTorus ns2 = embed_nonsplit_torus(*so21);
    CHECK(ns2.order() == 6);
    CyclicTorus sp2 = embed_split_torus(*so21);
    CHECK(sp2.order() == 4);
}

TEST_CASE("cubic torus image is the unipotent radical of the Borel") {
    auto sl2 = build_group("SL2", 5);
    auto img = cubic_torus_image(*sl2);
    CHECK(img.size() == 5);
    auto b = borel_subgroup(*sl2);
    for (const Elem& e : img) CHECK(b->contains(e));

    auto so21 = build_group("SO21", 5);
    auto img2 = cubic_torus_image(*so21);
    CHECK(img2.size() == 5);
    auto by = borel_subgroup(*so21);
    for (const Elem& e : img2) CHECK(by->contains(e));
}

TEST_CASE("semidirect product: order doubles, outer classes = twisted classes") {
    auto big = build_group("GL2xGL1", 5);
    auto sd = build_semidirect(*big);
    CHECK(sd->order() == 2 * big->order());
    size_t outer = 0;
    for (const auto& c : sd->classes())
        if (sd->elem(c.rep).eps == 1) ++outer;
    CHECK(outer == big->twisted_classes().size());
}

TEST_CASE("norm map descends to twisted classes (exhaustive q=5)") {
    auto big = build_group("GL2xGL1", 5);
    const auto& tcls = big->twisted_classes();
    std::vector<uint32_t> norm_class_of_tclass(tcls.size());
    for (uint32_t t = 0; t < tcls.size(); ++t)
        norm_class_of_tclass[t] =
            big->class_of(big->index_of(big->norm_map(big->elem(tcls[t].rep))));
    for (uint32_t i = 0; i < big->order(); ++i) {
        uint32_t t = big->twisted_class_of(i);
        CHECK(big->class_of(big->index_of(big->norm_map(big->elem(i)))) ==
              norm_class_of_tclass[t]);
    }
}

TEST_CASE("GL(3,5) canonical classes") {
    const auto& gl3 = gl3_classes(5);
    CHECK(gl3.classes().size() == 120); // q^3 - q
    CHECK(gl3.order() == 1488000);
    uint64_t total = 0;
    for (const auto& c : gl3.classes()) total += c.size;
    CHECK(total == gl3.order());

    //

    // Conjugation invariance of classify on parabolic conjugators.
    auto p = build_gl3_parabolic(5);
    const Fq& F = base_field(5);
    std::mt19937 rng(42);
    for (int it = 0; it < 200; ++it) {
        const auto& cls = gl3.classes()[rng() % gl3.classes().size()];
        const Elem& x = p->elem(rng() % p->order());
        Mat conj = mat_mul(F, mat_mul(F, x.m, cls.rep), mat_inv(F, x.m));
        CHECK(gl3.classify(conj) == gl3.classify(cls.rep));
    }
}

TEST_CASE("GL(3,5) centralizer formulas vs exhaustive count") {
    const auto& gl3 = gl3_classes(5);
    const Fq& F = base_field(5);
    // One representative from each similarity-class type (skip the scalar,
    // whose centralizer is the whole group by definition).
    std::map<int, uint32_t> per_type;
    for (uint32_t i = 0; i < gl3.classes().size(); ++i)
        per_type.emplace(gl3.classes()[i].type, i);
    for (auto& [type, idx] : per_type) {
        if (type == 1) continue;
        const auto& cls = gl3.classes()[idx];
        std::vector<uint64_t> counts(par::max_threads(), 0);
        par::for_n(1953125, [&](int64_t n) {
            Mat x{};
            int64_t t = n;
            for (int i = 0; i < 9; ++i) { x[i] = uint8_t(t % 5); t /= 5; }
            if (mat_mul(F, x, cls.rep) != mat_mul(F, cls.rep, x)) return;
            if (mat_det(F, x) == 0) return;
            ++counts[par::thread_id()];
        });
        uint64_t total = 0;
        for (uint64_t c : counts) total += c;
        CHECK(total == cls.centralizer);
    }
}
