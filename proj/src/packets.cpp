#include "rbc/packets.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>

namespace rbc {

namespace {

long mod(long x, long n) { return ((x % n) + n) % n; }

// Per-q cache of groups and tables; table pointers stay valid because the
// groups are owned by shared_ptr.
struct Cache {
    int q = 0;
    std::map<std::string, GroupPtr> groups;
    std::map<std::string, CharTable> tables;

    const Group& group(const std::string& name) {
        auto it = groups.find(name);
        if (it == groups.end()) it = groups.emplace(name, build_group(name, q)).first;
        return *it->second;
    }
    const CharTable& table(const std::string& name) {
        auto it = tables.find(name);
        if (it == tables.end()) it = tables.emplace(name, char_table(group(name))).first;
        return it->second;
    }
};

Cache& cache_for(int q) {
    static std::map<int, Cache> caches;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto it = caches.find(q);
    if (it == caches.end()) {
        it = caches.emplace(q, Cache{}).first;
        it->second.q = q;
    }
    return it->second;
}

int omega_parity(int q) { return ((q - 1) / 2) % 2; } // omega(varpi) = (-1)^...

std::string sgn(int s) { return s > 0 ? "+" : "-"; }

} // namespace

std::string DepthZeroChar::str() const {
    return "a" + std::to_string(a) + ".u" + std::to_string(u4) + ".e" + std::to_string(twice_e) +
           ".l2" + sgn(l2);
}

std::string ps_case_name(PsCase c) {
    switch (c) {
    case PsCase::Irreducible: return "irreducible";
    case PsCase::Case1: return "case1";
    case PsCase::Case2: return "case2";
    case PsCase::Case3: return "case3";
    }
    return "?";
}

PsCase classify_ps(const DepthZeroChar& lam) {
    int q = lam.q;
    long a = mod(lam.a, q - 1);
    int u4 = mod(lam.u4, 4);
    int e = lam.twice_e;
    if (a == 0 && u4 == 0 && (e == 2 || e == -2)) return PsCase::Case1;
    if (a == (q - 1) / 2 && (e == 1 || e == -1) && (u4 % 2) == omega_parity(q))
        return PsCase::Case2;
    if (a == 0 && e == 0 && u4 == 2) return PsCase::Case3;
    return PsCase::Irreducible;
}

DepthZeroChar weyl_conjugate(const DepthZeroChar& lam) {
    DepthZeroChar w = lam;
    w.a = mod(-lam.a, lam.q - 1);
    w.u4 = mod(2 * lam.a - lam.u4, 4);
    w.twice_e = -lam.twice_e;
    return w;
}

DepthZeroChar weyl_canonical(const DepthZeroChar& lam) {
    DepthZeroChar x = lam;
    x.a = mod(x.a, x.q - 1);
    x.u4 = mod(x.u4, 4);
    DepthZeroChar w = weyl_conjugate(x);
    auto key = [](const DepthZeroChar& c) {
        return std::make_tuple(c.a, c.u4, c.twice_e, c.l2);
    };
    return key(w) < key(x) ? w : x;
}

std::string RepParam::str() const {
    std::string s = kind + "@" + vertex;
    if (chi >= 0) s += ".chi" + std::to_string(chi);
    s += ".nu" + sgn(nu);
    if (component >= 0) s += ".c" + std::to_string(component);
    if (has_lambda) s += ".[" + lambda.str() + "]";
    return s;
}

namespace {

long canonical_orbit(long b, long n) {
    b = mod(b, n);
    return std::min(b, mod(-b, n));
}

RepParam ps_member(const std::string& kind, const DepthZeroChar& lam) {
    RepParam r;
    r.kind = kind;
    r.vertex = "F";
    r.chi = -1;
    r.nu = lam.l2;
    r.has_lambda = true;
    r.lambda = lam;
    return r;
}

} // namespace

std::pair<Packet, Packet> a_packet_pairing(const DepthZeroChar& lam0, const PacketOptions& opt) {
    DepthZeroChar lam = weyl_canonical(lam0);
    if (classify_ps(lam) != PsCase::Case2)
        throw std::domain_error("a_packet_pairing: lambda is not of case 2");
    int q = lam.q;
    Cache& C = cache_for(q);
    const CharTable& t = C.table("SL2");
    const Group& sl2 = *t.G;
    const Fq& F = *sl2.F;

    // theta(u) of the component matched to pi^n per the explicit unipotent
    // value (1 - eta(2 varpi_E) q^{1/2})/2.
    int t04 = (q % 4 == 3) ? 1 : 0;
    int s = (mod(lam.u4, 4) == t04) ? +1 : -1;
    int two = F.add(1, 1);
    int eta2 = F.is_square(two) ? +1 : -1;
    Cyc gauss = Cyc::gauss_sqrt(F.p(), F.e());
    Cyc target = (Cyc(1) - gauss.scaled(Rational(s * eta2))).scaled(Rational(1, 2));

    CyclicTorus split = embed_split_torus(sl2);
    VirtualChar ps = dl_identify(t, split, (q - 1) / 2);
    if (ps.parts.size() != 2) throw std::logic_error("a_packet_pairing: bad split series");
    int theta_idx = -1, theta_other = -1;
    for (auto& [sg, i] : ps.parts) {
        if (unipotent_values(t.irr[i]).first == target)
            theta_idx = int(i);
        else
            theta_other = int(i);
    }
    if (theta_idx < 0 || theta_other < 0)
        throw std::logic_error("a_packet_pairing: explicit unipotent value not found");

    auto [tu, tu2] = unipotent_values(t.irr[theta_idx]);
    CyclicTorus ns = embed_nonsplit_torus(sl2);
    VirtualChar cusp = dl_identify(t, ns, (q + 1) / 2);
    if (cusp.parts.size() != 2) throw std::logic_error("a_packet_pairing: bad cuspidal pair");
    std::vector<uint32_t> halves{cusp.parts[0].second, cusp.parts[1].second};
    std::sort(halves.begin(), halves.end());
    int comp = -1;
    for (int i = 0; i < 2; ++i) {
        auto [su, su2] = unipotent_values(t.irr[halves[i]]);
        if (su == -tu && su2 == -tu2) {
            if (comp >= 0) throw std::logic_error("a_packet_pairing: component not unique");
            comp = i;
        }
    }
    if (comp < 0) throw std::logic_error("a_packet_pairing: no component matches -theta");

    int nu = (omega_parity(q) ? -1 : +1) * lam.l2;

    RepParam pin = ps_member("pi-n", lam);
    RepParam pi2 = ps_member("pi-2", lam);
    RepParam pis;
    pis.kind = "pi-s";
    pis.vertex = "z";
    pis.chi = (q + 1) / 2;
    pis.nu = nu;
    pis.component = comp;

    Packet A{"U21:A:" + lam.str(), 'A', "U21", {pin, pis}, "A-pair(" + lam.str() + ")"};
    Packet L{"U21:L2:" + lam.str(), 'L', "U21", {pi2, pis}, "case2(" + lam.str() + ")"};
    (void)opt;
    return {A, L};
}

Packet endoscopic_transfer(long chi_exp, int nu, const PacketOptions& opt) {
    int q = opt.q;
    long n = q + 1;
    long b = canonical_orbit(chi_exp, n);
    if (b == 0 || 2 * b % n == 0)
        throw std::domain_error("endoscopic_transfer: character order must exceed 2");
    RepParam py{"sc1", "y", b, nu, -1, false, {}};
    RepParam pz{"sc2", "z", b, nu, -1, false, {}};
    long bphi = canonical_orbit(b + n / 2, n);
    int nuomega = nu * (omega_parity(q) ? -1 : +1);
    std::string origin = "endoscopic(rho: chi.phi=b" + std::to_string(bphi) + ", nu.Omegabar" +
                         sgn(nuomega) + ", Omega" + sgn(opt.omega_sign) + ")";
    return Packet{"U21:sc:b" + std::to_string(b) + ":nu" + sgn(nu), 'L', "U21", {py, pz},
                  origin};
}

std::vector<Packet> enumerate_packets(const std::string& group, const PacketOptions& opt) {
    int q = opt.q;
    std::vector<Packet> out;

    auto singleton = [&](const std::string& grp, const std::string& id, const RepParam& r,
                         const std::string& origin) {
        out.push_back(Packet{id, 'L', grp, {r}, origin});
    };

    if (group == "U21") {
        // Untwisted residue orbits.
        for (long a = 0; a < q - 1; ++a)
            for (int u4 : {0, 2})
                for (int l2 : {+1, -1}) {
                    DepthZeroChar lam{q, a, u4, 0, l2};
                    if (!(weyl_canonical(lam) == lam)) continue;
                    PsCase c = classify_ps(lam);
                    if (c == PsCase::Irreducible) {
                        singleton("U21", "U21:ps:" + lam.str(), ps_member("ps-irred", lam),
                                  "principal-series");
                    } else if (c == PsCase::Case3) {
                        RepParam p1 = ps_member("pi1", lam);
                        RepParam p2 = ps_member("pi2", lam);
                        out.push_back(Packet{"U21:L3:" + lam.str(), 'L', "U21", {p1, p2},
                                             "case3(" + lam.str() + ")"});
                    }
                }
        // Case 1: lambda1 = |.|_E (exponent-sign Weyl-redundant).
        for (int l2 : {+1, -1}) {
            DepthZeroChar lam{q, 0, 0, 2, l2};
            singleton("U21", "U21:one:" + lam.str(), ps_member("one-dim", lam),
                      "case1(" + lam.str() + ")");
            singleton("U21", "U21:st:" + lam.str(), ps_member("steinberg-twist", lam),
                      "case1(" + lam.str() + ")");
        }
        // Irreducible principal series whose lift is reducible (bc clause ii):
        // lambda1|_F = |.|_F, chi trivial on units.
        for (int u4 : {0, 2})
            for (int l2 : {+1, -1}) {
                DepthZeroChar lam{q, 0, u4, 1, l2};
                if (classify_ps(lam) != PsCase::Irreducible)
                    throw std::logic_error("enumerate_packets: tagged family misclassified");
                singleton("U21", "U21:ps:" + lam.str(), ps_member("ps-irred", lam),
                          "principal-series");
            }
        // Case 2 orbits: A-packets, L-packets, and the pi^n singletons.
        int t04 = (q % 4 == 3) ? 1 : 0;
        for (int su : {0, 2})
            for (int l2 : {+1, -1}) {
                DepthZeroChar lam{q, (q - 1) / 2, t04 + su, 1, l2};
                auto [A, L] = a_packet_pairing(lam, opt);
                out.push_back(L);
                out.push_back(A);
                singleton("U21", "U21:L5:" + lam.str(), A.members[0],
                          "case2-nontempered(" + lam.str() + ")");
            }
        // Supercuspidal size-2 packets.
        for (long b = 1; b <= (q - 1) / 2; ++b)
            for (int nu : {+1, -1}) out.push_back(endoscopic_transfer(b, nu, opt));
        return out;
    }

    if (group == "U11") {
        for (long a = 0; a < q - 1; ++a)
            for (int u4 : {0, 2}) {
                DepthZeroChar lam{q, a, u4, 0, +1};
                if (!(weyl_canonical(lam) == lam)) continue;
                bool caseb = (a == (q - 1) / 2) && (u4 % 2) == omega_parity(q);
                if (caseb) {
                    RepParam p1{"u11-pi1", "F", -1, +1, -1, true, lam};
                    RepParam p2{"u11-pi2", "F", -1, +1, -1, true, lam};
                    out.push_back(Packet{"U11:L2:" + lam.str(), 'L', "U11", {p1, p2},
                                         "case-omega(" + lam.str() + ")"});
                } else {
                    RepParam r{"u11-ps", "F", -1, +1, -1, true, lam};
                    singleton("U11", "U11:ps:" + lam.str(), r, "principal-series");
                }
            }
        if (omega_parity(q) == 1) {
            // q = 3 mod 4: the omega-restriction case needs u = +-i.
            for (int u4 : {1, 3}) {
                DepthZeroChar lam{q, (q - 1) / 2, u4, 0, +1};
                RepParam p1{"u11-pi1", "F", -1, +1, -1, true, lam};
                RepParam p2{"u11-pi2", "F", -1, +1, -1, true, lam};
                out.push_back(Packet{"U11:L2:" + lam.str(), 'L', "U11", {p1, p2},
                                     "case-omega(" + lam.str() + ")"});
            }
        }
        for (int mu : {+1, -1}) {
            RepParam one{"u11-one-dim", "F", -1, mu, -1, false, {}};
            RepParam st{"u11-st", "z", -1, mu, -1, false, {}};
            singleton("U11", std::string("U11:one:mu") + sgn(mu), one, "case-abs");
            singleton("U11", std::string("U11:st:mu") + sgn(mu), st, "case-abs");
        }
        for (long b = 1; b <= (q - 1) / 2; ++b) {
            RepParam r{"u11-sc1", "z", b, +1, -1, false, {}};
            singleton("U11", "U11:sc1:b" + std::to_string(b), r, "cuspidal chi");
        }
        RepParam h1{"u11-sc2", "z", (q + 1) / 2, +1, 0, false, {}};
        RepParam h2{"u11-sc2", "z", (q + 1) / 2, +1, 1, false, {}};
        out.push_back(Packet{"U11:sc2", 'L', "U11", {h1, h2}, "quadratic chi"});
        return out;
    }

    if (group == "U2") {
        RepParam plus{"u2-ext", "y", 0, +1, -1, false, {}};
        RepParam minus{"u2-ext", "y", 0, -1, -1, false, {}};
        singleton("U2", "U2:plus", plus, "trivial chi, trivial extension");
        singleton("U2", "U2:minus", minus, "trivial chi, determinant extension");
        RepParam qa{"u2-quadext", "y", (q + 1) / 2, +1, 0, false, {}};
        RepParam qb{"u2-quadext", "y", (q + 1) / 2, -1, 1, false, {}};
        out.push_back(Packet{"U2:quad", 'L', "U2", {qa, qb}, "quadratic chi"});
        for (long b = 1; b <= (q - 1) / 2; ++b) {
            RepParam r{"u2-ind", "y", b, +1, -1, false, {}};
            singleton("U2", "U2:ind:b" + std::to_string(b), r, "regular chi");
        }
        return out;
    }

    throw std::domain_error("enumerate_packets: unknown group " + group);
}

TransferImage base_change(const Packet& p, const PacketOptions& opt) {
    int q = opt.q;
    if (p.group != "U21")
        return TransferImage{"n/a", "base change handled at the U(1,1)/U(2) level"};

    auto lam_of = [&]() { return p.members[0].lambda; };
    const std::string& k0 = p.members[0].kind;

    if (k0 == "one-dim")
        return TransferImage{"bc_ps(iii)", "one-dimensional lambda~2 o det"};
    if (k0 == "steinberg-twist")
        return TransferImage{"bc_ps(iii)", "St . (lambda~2 o det)"};
    if (k0 == "pi1")
        return TransferImage{"bc_ps(iv)", "ind_{B~}^{G~}(lambda~)"};
    if (k0 == "ps-irred") {
        DepthZeroChar lam = lam_of();
        bool lift_reducible =
            mod(lam.a, q - 1) == 0 && lam.u4 % 2 == 0 && (lam.twice_e == 1 || lam.twice_e == -1);
        if (lift_reducible)
            return TransferImage{"bc_ps(ii)",
                                 "constituent ind_{P~}^{G~}((lambda1 lambda~2 |.|^{-1/2} o det) "
                                 "(x) lambda~2)"};
        return TransferImage{"bc_ps(i)", "ind_{B~}^{G~}(lambda~) (irreducible)"};
    }
    if (k0 == "sc1") {
        long b = p.members[0].chi;
        long e3 = canonical_orbit(mod(-b, q + 1) * (q - 1), (long)q * q - 1);
        return TransferImage{"bc_sc",
                             "ind_{P~}^{G~}(bc(rho0).(Omega o det) (x) nu~); z-type "
                             "R_{S~}(chi~ (x) 1), chi~ exponent " +
                                 std::to_string(e3)};
    }
    if (p.kind == 'A')
        return TransferImage{"bc_card_2(ii)",
                             "ind_{P~}^{G~}((lambda1 lambda~2 |.|^{-1/2} o det) (x) lambda~2)"};
    if (k0 == "pi-2")
        return TransferImage{"bc_card_2(i)",
                             "ind_{P~}^{G~}(St_{H~} . ((lambda1 lambda~2 |.|^{-1/2} o det) (x) "
                             "lambda~2))"};
    if (k0 == "pi-n")
        return TransferImage{"bc_card_2(ii)",
                             "A-packet image: ind_{P~}^{G~}((lambda1 lambda~2 |.|^{-1/2} o det) "
                             "(x) lambda~2)"};
    throw std::domain_error("base_change: unhandled packet " + p.id);
}

// ---------------------------------------------------------------------------
// Jacquet-Langlands verification.
// ---------------------------------------------------------------------------

JlResult jl_verify(int q) {
    JlResult res;
    res.q = q;
    Cache& C = cache_for(q);
    const CharTable& to2 = C.table("O2");
    const CharTable& tsl2 = C.table("SL2");
    const Group& o2 = *to2.G;
    const Group& sl2 = *tsl2.G;
    const Fq& F = *sl2.F;
    long n = q + 1;

    CyclicTorus so2 = embed_nonsplit_torus(o2);
    CyclicTorus S = embed_nonsplit_torus(sl2);

    // Matched columns: regular rotation orbits {m, -m}, then the two
    // reflection classes.
    std::vector<long> orbit_reps;
    for (long m = 1; 2 * m < n; ++m) orbit_reps.push_back(m); // excludes 2m = 0 mod n
    std::vector<uint32_t> o2_cols, sl2_cols;
    for (long m : orbit_reps) {
        o2_cols.push_back(o2.class_of(so2.by_power[m]));
        sl2_cols.push_back(sl2.class_of(S.by_power[m]));
    }
    std::vector<uint32_t> refl;
    for (uint32_t k = 0; k < o2.classes().size(); ++k) {
        const Elem& rep = o2.elem(o2.classes()[k].rep);
        auto c = corner_of(rep.m);
        if (F.sub(F.mul(c[0], c[3]), F.mul(c[1], c[2])) == F.neg(1)) refl.push_back(k);
    }
    if (refl.size() != 2) throw std::logic_error("jl_verify: expected two reflection classes");

    const size_t ncols = orbit_reps.size() + refl.size();

    // H1 packets as value vectors.
    struct Side {
        std::string name;
        std::vector<Cyc> vec;
    };
    std::vector<Side> lhs;

    auto o2_linear_vec = [&](uint32_t idx) {
        std::vector<Cyc> v;
        for (uint32_t c : o2_cols) v.push_back(to2.irr[idx].vals[c]);
        for (uint32_t c : refl) v.push_back(to2.irr[idx].vals[c]);
        return v;
    };

    uint32_t triv = trivial_index(to2);
    uint32_t detc = UINT32_MAX;
    std::vector<uint32_t> quad_exts;
    for (uint32_t i = 0; i < to2.irr.size(); ++i) {
        if (to2.irr[i].degree_int() != 1) continue;
        bool triv_on_so2 = true;
        for (uint32_t c : o2_cols)
            if (!(to2.irr[i].vals[c] == Cyc(1))) { triv_on_so2 = false; break; }
        // also require triviality at all rotation classes, not only regular
        for (long m = 0; m < n && triv_on_so2; ++m)
            if (!(to2.irr[i].vals[o2.class_of(so2.by_power[m])] == Cyc(1))) triv_on_so2 = false;
        if (triv_on_so2) {
            if (i != triv) detc = i;
        } else {
            quad_exts.push_back(i);
        }
    }
    if (detc == UINT32_MAX || quad_exts.size() != 2)
        throw std::logic_error("jl_verify: O(2) linear characters not as expected");

    lhs.push_back({"Pi1+", o2_linear_vec(triv)});
    lhs.push_back({"Pi1-", o2_linear_vec(detc)});
    {
        std::vector<Cyc> v = o2_linear_vec(quad_exts[0]);
        std::vector<Cyc> w = o2_linear_vec(quad_exts[1]);
        for (size_t i = 0; i < v.size(); ++i) v[i] += w[i];
        lhs.push_back({"Pi1_quad", v});
    }
    for (long b = 1; 2 * b < n; ++b) {
        if (2 * b % n == 0) continue;
        // the induced 2-dimensional character for the orbit {b, -b}
        std::vector<uint32_t> hit;
        for (uint32_t i = 0; i < to2.irr.size(); ++i) {
            if (to2.irr[i].degree_int() != 2) continue;
            bool ok = true;
            for (size_t mi = 0; mi < orbit_reps.size() && ok; ++mi) {
                Cyc want = Cyc::zeta(n, mod(b * orbit_reps[mi], n)) +
                           Cyc::zeta(n, mod(-b * orbit_reps[mi], n));
                if (!(to2.irr[i].vals[o2_cols[mi]] == want)) ok = false;
            }
            if (ok) hit.push_back(i);
        }
        if (hit.size() != 1) throw std::logic_error("jl_verify: induced O(2) character not unique");
        lhs.push_back({"Pi1_chi" + std::to_string(b), o2_linear_vec(hit[0])});
    }

    // H0 discrete targets.
    std::vector<Side> rhs;
    uint32_t st = steinberg_index(tsl2);
    for (int k : {0, 1}) {
        std::vector<Cyc> v;
        for (uint32_t c : sl2_cols) v.push_back(tsl2.irr[st].vals[c]);
        // y-vertex shadow at the matched reflection classes: the Iwahori
        // sign times the split O(2) determinant character of the twist.
        for (size_t i = 0; i < refl.size(); ++i) v.push_back(Cyc(k == 0 ? -1 : 1));
        rhs.push_back({k == 0 ? "St" : "St.mu", v});
    }
    {
        VirtualChar pair = dl_identify(tsl2, S, n / 2);
        std::vector<Cyc> v;
        for (uint32_t c : sl2_cols)
            v.push_back(tsl2.irr[pair.parts[0].second].vals[c] +
                        tsl2.irr[pair.parts[1].second].vals[c]);
        for (size_t i = 0; i < refl.size(); ++i) v.push_back(Cyc(0));
        rhs.push_back({"SC2", v});
    }
    for (long b = 1; 2 * b < n; ++b) {
        if (2 * b % n == 0) continue;
        VirtualChar cusp = dl_identify(tsl2, S, b);
        std::vector<Cyc> v;
        for (uint32_t c : sl2_cols) v.push_back(tsl2.irr[cusp.parts[0].second].vals[c]);
        for (size_t i = 0; i < refl.size(); ++i) v.push_back(Cyc(0));
        rhs.push_back({"SC1_b" + std::to_string(b), v});
    }

    if (lhs.size() != rhs.size()) throw std::logic_error("jl_verify: side sizes differ");
    const size_t np = lhs.size();

    // Identity matrix: LHS_i(col) == -RHS_j(col) for all matched columns.
    std::vector<std::vector<bool>> ok(np, std::vector<bool>(np, true));
    for (size_t i = 0; i < np; ++i)
        for (size_t j = 0; j < np; ++j)
            for (size_t c = 0; c < ncols; ++c)
                if (!(lhs[i].vec[c] == -rhs[j].vec[c])) { ok[i][j] = false; break; }

    // The defined map.
    auto target_of = [&](const std::string& nm) -> std::string {
        if (nm == "Pi1+") return "St";
        if (nm == "Pi1-") return "St.mu";
        if (nm == "Pi1_quad") return "SC2";
        return "SC1_b" + nm.substr(7); // Pi1_chiB
    };
    res.identity_holds = true;
    for (size_t i = 0; i < np; ++i) {
        std::string tgt = target_of(lhs[i].name);
        size_t j = 0;
        while (j < np && rhs[j].name != tgt) ++j;
        res.assignment.push_back({lhs[i].name, tgt});
        if (j == np || !ok[i][j]) res.identity_holds = false;
    }

    // Uniqueness among all packet bijections: count perfect matchings.
    int matchings = 0;
    std::vector<bool> used(np, false);
    std::function<void(size_t)> dfs = [&](size_t i) {
        if (matchings >= 2) return;
        if (i == np) { ++matchings; return; }
        for (size_t j = 0; j < np; ++j)
            if (!used[j] && ok[i][j]) {
                used[j] = true;
                dfs(i + 1);
                used[j] = false;
            }
    };
    dfs(0);
    res.unique = (matchings == 1) && res.identity_holds;
    res.detail = "perfect matchings: " + std::to_string(matchings);
    return res;
}

// ---------------------------------------------------------------------------
// K-type compatibility.
// ---------------------------------------------------------------------------

namespace {

// The finite shadow of the lifted principal-series character: both the
// p-adic route (coordinates of lambda o N_eps on the diagonal of GL(3,E))
// and the finite route (lambda-bar o N-bar_eps on (k^x)^3) must give the
// same character of the finite torus.
bool check_lambda_routes(const DepthZeroChar& lam, std::string& err) {
    int q = lam.q;
    long nq = q - 1;
    // Route A: lambda~ = (mu1, mu2, mu3) with mu1 = lambda1 . nu2,
    // mu2 = nu2, mu3 = (lambda1 o iota)^{-1} nu2, nu2 = lambda2(x iota(x)^{-1});
    // residue: nu2-bar is trivial on units, lambda1-bar has exponent a.
    long m1 = mod(lam.a, nq), m2 = 0, m3 = mod(-lam.a, nq);
    // Route B: evaluate lambda-bar o N-bar_eps on all unit triples.
    const Fq& F = base_field(q);
    for (int la = 0; la < q - 1; ++la)
        for (int lb = 0; lb < q - 1; ++lb)
            for (int lc = 0; lc < q - 1; ++lc) {
                // N-bar_eps(a,b,c) = (a c^{-1}, 1, c a^{-1}); lambda-bar on the
                // fixed torus (t, s, t^{-1}) is zeta^(a_lam log t) l2(s).
                long t = mod(la - lc, nq);
                Cyc fin = Cyc::zeta(nq, mod(lam.a * t, nq));
                Cyc par = Cyc::zeta(nq, mod(m1 * la + m2 * lb + m3 * lc, nq));
                if (!(fin == par)) {
                    err = "lambda-tilde routes disagree at (" + std::to_string(la) + "," +
                          std::to_string(lb) + "," + std::to_string(lc) + ")";
                    return false;
                }
            }
    (void)F;
    return true;
}

} // namespace

KtypeReport ktype_compat_check(const Packet& p, const PacketOptions& opt) {
    KtypeReport rep;
    rep.packet_id = p.id;
    rep.pass = true;
    int q = opt.q;
    Cache& C = cache_for(q);
    auto note = [&](const std::string& s) { rep.ledger.push_back(s); };
    auto fail = [&](const std::string& s) {
        rep.pass = false;
        rep.ledger.push_back("FAIL: " + s);
    };

    if (p.group != "U21") {
        note("K-type check applies to the U(2,1) catalog; skipped");
        return rep;
    }

    const std::string& k0 = p.members[0].kind;
    bool ps_type = p.members[0].has_lambda;

    if (ps_type) {
        std::string err;
        if (check_lambda_routes(p.members[0].lambda, err))
            note("lambda~-bar equals the eps-lift of lambda-bar on the F-facet quotient");
        else
            fail(err);
    }

    bool has_pis = false;
    for (auto& m : p.members) has_pis = has_pis || m.kind == "pi-s";
    if (has_pis) {
        // Section 8.3: the lifted series of the quadratic series is
        // {eta o det, St . eta o det}, and the z-K-type of the lifted packet
        // is exactly their sum.
        const CharTable& tz = C.table("GL2xGL1");
        const Group& gz = *tz.G;
        LiftedSeries ls = epsilon_lift_series(
            canonical_series("SL2xPM", q, CyclicTorus::NonsplitS, (q + 1) / 2, 0));
        auto members = lifted_series_members(tz, ls);
        if (members.size() != 2) {
            fail("quadratic lifted series should have two members");
        } else {
            long j = (q - 1) / 2;
            Character ind = induce_from_borel(gz, j, j, 0);
            auto dec = decompose(tz, ind.vals);
            std::vector<uint32_t> cons;
            for (auto& [m, i] : dec) {
                if (m != 1) fail("ind(lambda~-bar) not multiplicity-free");
                cons.push_back(i);
            }
            std::sort(cons.begin(), cons.end());
            if (cons == members)
                note("ind_{B~z}(lambda~-bar) = eta-bar + St.eta-bar matches the lifted series");
            else
                fail("constituents of ind(lambda~-bar) differ from the lifted series");
            long long d0 = tz.irr[members[0]].degree_int();
            long long d1 = tz.irr[members[1]].degree_int();
            if (!((d0 == 1 && d1 == q) || (d0 == q && d1 == 1)))
                fail("lifted quadratic series degrees are not {1, q}");
        }
    }

    if (k0 == "sc1") {
        long b = p.members[0].chi;
        // z-vertex: the eps-lift of the G_z-series of chi.
        const CharTable& tz = C.table("GL2xGL1");
        const Group& gz = *tz.G;
        LiftedSeries ls =
            epsilon_lift_series(canonical_series("SL2xPM", q, CyclicTorus::NonsplitS, b, 0));
        auto members = lifted_series_members(tz, ls);
        if (members.size() != 1) {
            fail("regular lifted series should be a single cuspidal");
        } else {
            CyclicTorus lx = embed_lx_torus(gz);
            VirtualChar R = dl_identify_lx(tz, lx, ls.chi_exp, 0);
            Character Rm{&gz, false, R.vals};
            Cyc ip = inner_product(Character{&gz, false, tz.irr[members[0]].vals}, Rm);
            if (ip == Cyc(-1))
                note("z-vertex: <lifted cuspidal, R_{S~}(chi~ (x) 1)> = -1 (member of -R)");
            else if (ip == Cyc(1))
                note("z-vertex: <lifted cuspidal, R_{S~}(chi~ (x) 1)> = 1");
            else
                fail("z-vertex inner product not +-1: " + ip.str());
        }
        // Omega-twist collapse (both Omega choices): lift(chi.phi) + quad = lift(chi).
        {
            long n2 = (long)q * q - 1;
            long lift_b = mod(-b * (q - 1), n2);
            long lift_bphi = mod(-(b + (q + 1) / 2) * (q - 1), n2);
            if (mod(lift_bphi + n2 / 2, n2) == lift_b)
                note("Omega-quadratic twist collapses lift(chi.phi) to lift(chi), "
                     "independent of the Omega sign");
            else
                fail("Omega-twist collapse identity fails");
        }
        // y-vertex (q = 5 only): Harish-Chandra induction to GL(3,q).
        if (q == 5) {
            const auto& HC = gl3_induction(q);
            const CharTable& tz2 = C.table("GL2xGL1");
            const Group& gz2 = *tz2.G;
            CyclicTorus lx = embed_lx_torus(gz2);
            long n2 = (long)q * q - 1;
            VirtualChar R = dl_identify_lx(tz2, lx, mod(-b * (q - 1), n2), 0);
            // The cuspidal package cusp(chi~) (x) 1 on the Levi.
            const Character& cusp = tz2.irr[R.parts[0].second];
            auto X = HC.induce(cusp.vals);
            Rational degX = X[HC.gl3().classify(mat_identity())].rational_value();
            long long want = (long long)(q - 1) * (q * q + q + 1);
            if (degX == Rational(want))
                note("y-vertex: induced degree = (q-1)(q^2+q+1) = " + std::to_string(want));
            else
                fail("y-vertex: induced degree mismatch");
            Cyc ipXX = HC.inner_product_gl3(X, X);
            if (ipXX == Cyc(1))
                note("y-vertex: <X, X> = 1, R_{S~'}^{G~y}(chi~ (x) 1) irreducible; Frobenius "
                     "reciprocity multiplicity 1");
            else
                fail("y-vertex: <X, X> != 1: " + ipXX.str());
        }
    }

    if (k0 == "ps-irred" || k0 == "pi1") {
        // Nothing beyond the lambda-route check: the K-type on both sides is
        // inflated from the matched facet character.
        note("minimal K-type inflated from lambda-bar on both sides");
    }

    return rep;
}

PacketCounts packet_counts(int q) {
    PacketOptions opt;
    opt.q = q;
    PacketCounts c;
    auto u21 = enumerate_packets("U21", opt);
    std::set<std::string> sc3_params;
    for (const auto& p : u21) {
        for (const auto& m : p.members) {
            if (p.kind == 'L' && m.kind == "pi-2") ++c.case2_pi2;
            if (p.kind == 'L' && m.kind == "pi-n") ++c.case2_pin; // the singleton packets
            if (m.kind == "pi1") ++c.case3_pi1;
            if (m.kind == "pi2") ++c.case3_pi2;
            if (m.kind == "one-dim" || m.kind == "steinberg-twist") ++c.case1_constituents;
            if (m.kind == "pi-s") sc3_params.insert(m.str());
        }
        if (p.members.size() == 2 && p.members[0].kind == "sc1") ++c.sc_size2_packets;
    }
    c.sc3_classes = int(sc3_params.size());
    for (const auto& p : enumerate_packets("U11", opt))
        if (p.members.size() == 2 && p.members[0].kind == "u11-sc2") ++c.u11_sc_size2;
    for (const auto& p : enumerate_packets("U2", opt))
        if (p.members.size() == 2) ++c.u2_size2;
    return c;
}

} // namespace rbc
