// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Criteria follow the project contract; tolerances are exact
// (cyclotomic arithmetic) except for the stated wall-clock bounds.

#include <chrono>
#include <cstdio>
#include <set>

#include "rbc/jsonio.hpp"
#include "rbc/parallel.hpp"
#include "rbc/verify.hpp"

using namespace rbc;
using clk = std::chrono::steady_clock;

namespace {

int failures = 0;

void line(int crit, bool pass, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", crit, what.c_str());
    if (!pass) ++failures;
}

double secs(clk::time_point a, clk::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

} // namespace

int main() {
    // 1. SL(2,q) character tables.
    for (int q : {5, 7, 9, 11, 13}) {
        auto t0 = clk::now();
        auto g = build_group("SL2", q);
        CharTable t = char_table(*g);
        bool ok = int(t.irr.size()) == q + 4;
        long long d2 = 0;
        int np = 0, nm = 0;
        for (auto& chi : t.irr) {
            d2 += chi.degree_int() * chi.degree_int();
            if (chi.degree_int() == (q + 1) / 2) ++np;
            if (chi.degree_int() == (q - 1) / 2) ++nm;
        }
        ok = ok && uint64_t(d2) == g->order() && np == 2 && nm == 2;
        for (uint32_t i = 0; i < t.irr.size() && ok; ++i)
            for (uint32_t j = i; j < t.irr.size() && ok; ++j) {
                Cyc ip = inner_product(t.irr[i], t.irr[j]);
                ok = (i == j) ? (ip == Cyc(1)) : ip.is_zero();
            }
        // Column orthogonality.
        const auto& cls = g->classes();
        for (uint32_t c = 0; c < cls.size() && ok; ++c)
            for (uint32_t d = c; d < cls.size() && ok; ++d) {
                Cyc s;
                for (auto& chi : t.irr) s += chi.vals[c] * chi.vals[d].conj();
                ok = (c == d) ? (s == Cyc((long long)cls[c].centralizer)) : s.is_zero();
            }
        double el = secs(t0, clk::now());
        ok = ok && el <= 10.0;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "SL(2,%d) table: %d irreducibles, exact orthogonality, "
                      "sum deg^2 = |G| (%.2fs)",
                      q, q + 4, el);
        line(1, ok, buf);
    }

    // 2. Deligne-Lusztig value formula, every nonsplit chi of order > 2.
    for (int q : {5, 7, 9, 11, 13}) {
        json r = verify_dl_formula(q);
        line(2, report_passed(r),
             "DL cuspidal values and uniqueness at q = " + std::to_string(q));
    }

    // 3. finite-torus lemma, all five parts, with the q = 7 exception.
    {
        auto t0 = clk::now();
        bool ok = true;
        for (int q : {5, 7, 9, 11, 13}) ok = ok && report_passed(verify_finite_torus(q));
        double el = secs(t0, clk::now());
        ok = ok && el <= 60.0;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "finite-torus lemma (i)-(v), q in {5,9,11,13} + the q=7 witness "
                      "(%.2fs)",
                      el);
        line(3, ok, buf);
    }

    // 4. Twisted/Shintani identity with sign +.
    for (int q : {5, 9}) {
        json r = verify_shintani(q);
        line(4, report_passed(r),
             "Shintani identity with sign + and scalar extension at q = " + std::to_string(q));
    }

    // 5. A-packet unipotent values.
    for (int q : {5, 7, 9, 11, 13}) {
        json r = verify_a_packet_values(q);
        std::string form = (q % 4 == 1) ? "(1 +- sqrt q)/2" : "(1 +- i sqrt q)/2";
        line(5, report_passed(r),
             "A-packet component values " + form + " and unique cuspidal selection, q = " +
                 std::to_string(q));
    }

    // 6. K-type compatibility for every depth-zero packet at q = 5.
    {
        auto t0 = clk::now();
        PacketOptions opt;
        opt.q = 5;
        bool ok = true;
        int count = 0;
        for (const auto& p : enumerate_packets("U21", opt)) {
            KtypeReport rep = ktype_compat_check(p, opt);
            if (!rep.pass) {
                std::printf("    ktype failure in %s\n", p.id.c_str());
                for (auto& l : rep.ledger) std::printf("      %s\n", l.c_str());
            }
            ok = ok && rep.pass;
            ++count;
        }
        double el = secs(t0, clk::now());
        ok = ok && el <= 600.0;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "K-type compatibility for all %d packets at q=5, GL(3,5) via class "
                      "representatives (%.1fs)",
                      count, el);
        line(6, ok, buf);
    }

    // 7. Packet count ledger.
    for (int q : {5, 9, 13}) {
        PacketCounts c = packet_counts(q);
        bool ok = c.case1_constituents == 4 && c.case2_pi2 == 4 && c.case2_pin == 4 &&
                  c.case3_pi1 == 2 && c.case3_pi2 == 2 && c.sc3_classes == 4 &&
                  c.sc_size2_packets == q - 1 && c.u11_sc_size2 == 1 && c.u2_size2 == 1;
        line(7, ok, "packet count ledger at q = " + std::to_string(q));
    }

    // 8. Jacquet-Langlands identity and uniqueness.
    for (int q : {5, 9, 11, 13}) {
        JlResult r = jl_verify(q);
        line(8, r.identity_holds && r.unique,
             "JL identity on matched classes and uniqueness among bijections, q = " +
                 std::to_string(q));
    }

    // 9. Determinism across runs and thread counts.
    {
        PacketOptions opt;
        opt.q = 5;
        par::set_threads(1);
        std::string h1 = hash_hex(catalog_to_json(enumerate_packets("U21", opt), opt, false).dump());
        auto ga = build_group("SL2", 5);
        std::string t1 = hash_hex(table_to_json(char_table(*ga)).dump());
        std::string f1 = hash_hex(verify_finite_torus(7).dump());
        par::set_threads(par::max_threads());
        std::string h2 = hash_hex(catalog_to_json(enumerate_packets("U21", opt), opt, false).dump());
        auto gb = build_group("SL2", 5);
        std::string t2 = hash_hex(table_to_json(char_table(*gb)).dump());
        std::string f2 = hash_hex(verify_finite_torus(7).dump());
        bool ok = h1 == h2 && t1 == t2 && f1 == f2;
        line(9, ok, "output hashes identical across runs and thread counts");
    }

    std::printf("%s (%d failure%s)\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                failures, failures == 1 ? "" : "s");
    return failures == 0 ? 0 : 1;
}
