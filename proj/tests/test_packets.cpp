#include <doctest.h>

#include <map>
#include <set>

#include "rbc/jsonio.hpp"
#include "rbc/packets.hpp"
#include "rbc/verify.hpp"

using namespace rbc;

TEST_CASE("principal-series classification") {
    int q = 5;
    // lambda1 = |.|_E
    CHECK(classify_ps({q, 0, 0, 2, +1}) == PsCase::Case1);
    // lambda1|_F = omega |.|^{+-1}: quadratic residue part, half-twist.
    CHECK(classify_ps({q, 2, 0, 1, +1}) == PsCase::Case2);
    CHECK(classify_ps({q, 2, 2, -1, -1}) == PsCase::Case2);
    // lambda1 nontrivial, trivial on F^x.
    CHECK(classify_ps({q, 0, 2, 0, +1}) == PsCase::Case3);
    // lambda1 trivial: none of the three cases.
    CHECK(classify_ps({q, 0, 0, 0, -1}) == PsCase::Irreducible);
    // q = 7: omega(varpi) = -1, so the case-2 uniformizer value is +-i.
    CHECK(classify_ps({7, 3, 1, 1, +1}) == PsCase::Case2);
    CHECK(classify_ps({7, 3, 0, 1, +1}) == PsCase::Irreducible);
}

TEST_CASE("weyl involution") {
    DepthZeroChar lam{5, 1, 0, 1, -1};
    CHECK(weyl_conjugate(weyl_conjugate(lam)) == lam);
    CHECK(weyl_canonical(lam) == weyl_canonical(weyl_conjugate(lam)));
}

TEST_CASE("packet counts ledger") {
    for (int q : {5, 9, 13}) {
        PacketCounts c = packet_counts(q);
        CHECK(c.case1_constituents == 4);
        CHECK(c.case2_pi2 == 4);
        CHECK(c.case2_pin == 4);
        CHECK(c.case3_pi1 == 2);
        CHECK(c.case3_pi2 == 2);
        CHECK(c.sc3_classes == 4);
        CHECK(c.sc_size2_packets == q - 1);
        CHECK(c.u11_sc_size2 == 1);
        CHECK(c.u2_size2 == 1);
    }
}

TEST_CASE("endoscopic transfer") {
    PacketOptions opt;
    opt.q = 5;
    Packet p = endoscopic_transfer(1, +1, opt);
    REQUIRE(p.members.size() == 2);
    std::set<std::string> verts{p.members[0].vertex, p.members[1].vertex};
    CHECK(verts == std::set<std::string>{"y", "z"});
    // chi and chi^{-1} give the same packet.
    Packet p2 = endoscopic_transfer(5, +1, opt); // -1 mod 6
    CHECK(p.id == p2.id);
    // distinct nu give disjoint packets.
    Packet p3 = endoscopic_transfer(1, -1, opt);
    CHECK(p.id != p3.id);
    for (auto& m : p.members)
        for (auto& m3 : p3.members) CHECK(!(m == m3));
    CHECK_THROWS_AS(endoscopic_transfer(3, +1, opt), std::domain_error); // order 2
    CHECK_THROWS_AS(endoscopic_transfer(0, +1, opt), std::domain_error);
}

TEST_CASE("A-packet pairing") {
    PacketOptions opt;
    opt.q = 5;
    int t04 = 0;
    std::set<std::string> sc3;
    std::map<int, std::set<int>> nu_by_l2;
    for (int su : {0, 2})
        for (int l2 : {+1, -1}) {
            DepthZeroChar lam{5, 2, t04 + su, 1, l2};
            auto [A, L] = a_packet_pairing(lam, opt);
            REQUIRE(A.members.size() == 2);
            REQUIRE(L.members.size() == 2);
            CHECK(A.kind == 'A');
            CHECK(L.kind == 'L');
            CHECK(A.members[0].kind == "pi-n");
            CHECK(L.members[0].kind == "pi-2");
            CHECK(A.members[1] == L.members[1]); // shared pi^s
            sc3.insert(A.members[1].str());
            nu_by_l2[l2].insert(A.members[1].nu);
        }
    CHECK(sc3.size() == 4); // bijective with the four case-2 orbits
    // flipping lambda2 flips nu
    CHECK(nu_by_l2[+1] != nu_by_l2[-1]);
    // not-case2 input rejected
    CHECK_THROWS_AS(a_packet_pairing(DepthZeroChar{5, 1, 0, 0, +1}, opt), std::domain_error);
}

TEST_CASE("base change clause per packet kind") {
    PacketOptions opt;
    opt.q = 5;
    std::map<std::string, int> clauses;
    for (const auto& p : enumerate_packets("U21", opt)) {
        TransferImage img = base_change(p, opt);
        CHECK(!img.clause.empty());
        clauses[img.clause]++;
        if (p.members[0].kind == "one-dim") CHECK(img.clause == "bc_ps(iii)");
        if (p.members[0].kind == "pi1") CHECK(img.clause == "bc_ps(iv)");
        if (p.members[0].kind == "sc1") CHECK(img.clause == "bc_sc");
        if (p.kind == 'A') CHECK(img.clause == "bc_card_2(ii)");
        if (p.members[0].kind == "pi-2") CHECK(img.clause == "bc_card_2(i)");
    }
    // every section-7 clause is realized in the catalog
    for (const char* c : {"bc_ps(i)", "bc_ps(ii)", "bc_ps(iii)", "bc_ps(iv)", "bc_sc",
                          "bc_card_2(i)", "bc_card_2(ii)"})
        CHECK(clauses.count(c) == 1u * (clauses.count(c) > 0));
}

TEST_CASE("packet partition: members lie in exactly one L-packet") {
    PacketOptions opt;
    opt.q = 5;
    auto packets = enumerate_packets("U21", opt);
    std::map<std::string, int> l_count;
    for (const auto& p : packets) {
        if (p.kind != 'L') continue;
        for (const auto& m : p.members) l_count[m.str()]++;
    }
    for (auto& [k, n] : l_count) CHECK(n == 1);
    // A-packets overlap the L-partition only in pi^s.
    for (const auto& p : packets) {
        if (p.kind != 'A') continue;
        for (const auto& m : p.members) {
            if (m.kind == "pi-s") continue;
            CHECK(m.kind == "pi-n"); // pi-n sits in its own singleton L-packet
        }
    }
}

TEST_CASE("omega choice does not change the catalog") {
    PacketOptions a{5, +1}, b{5, -1};
    auto pa = enumerate_packets("U21", a);
    auto pb = enumerate_packets("U21", b);
    REQUIRE(pa.size() == pb.size());
    for (size_t i = 0; i < pa.size(); ++i) {
        CHECK(pa[i].id == pb[i].id);
        CHECK(pa[i].members.size() == pb[i].members.size());
        for (size_t j = 0; j < pa[i].members.size(); ++j)
            CHECK(pa[i].members[j] == pb[i].members[j]);
    }
}

TEST_CASE("jl identity and uniqueness at q=5") {
    JlResult r = jl_verify(5);
    CHECK(r.identity_holds);
    CHECK(r.unique);
    std::map<std::string, std::string> as(r.assignment.begin(), r.assignment.end());
    CHECK(as["Pi1+"] == "St");
    CHECK(as["Pi1-"] == "St.mu");
    CHECK(as["Pi1_quad"] == "SC2");
    CHECK(as["Pi1_chi1"] == "SC1_b1");
}

TEST_CASE("ktype compatibility for representative packets at q=5") {
    PacketOptions opt;
    opt.q = 5;
    auto packets = enumerate_packets("U21", opt);
    int checked = 0;
    for (const auto& p : packets) {
        bool interesting = p.members[0].kind == "sc1" || p.kind == 'A' ||
                           p.members[0].kind == "ps-irred";
        if (!interesting || checked > 6) continue;
        ++checked;
        KtypeReport rep = ktype_compat_check(p, opt);
        CAPTURE(p.id);
        for (auto& line : rep.ledger) CAPTURE(line);
        CHECK(rep.pass);
    }
    CHECK(checked > 0);
}
