#pragma once

#include <string>
#include <vector>

#include "rbc/twisted.hpp"

namespace rbc {

/// Depth-zero character of the diagonal torus M of U(2,1) (or of E^x for
/// U(1,1)).  lambda1 is stored as its residue exponent a on k^x, the choice
/// of value at the uniformizer as a power of i (u4: value i^u4 times the
/// norm part), and a symbolic |.|_E exponent carried as twice_e/2, which is
/// invisible at the residue level.  lambda2 is the sign on E^1/(1+p).
struct DepthZeroChar {
    int q = 0;
    long a = 0;
    int u4 = 0;      // lambda1(varpi_E) = i^u4 * q^{-twice_e/2}
    int twice_e = 0; // in {-2,-1,0,1,2}
    int l2 = +1;

    friend bool operator==(const DepthZeroChar& x, const DepthZeroChar& y) {
        return x.q == y.q && x.a == y.a && x.u4 == y.u4 && x.twice_e == y.twice_e &&
               x.l2 == y.l2;
    }
    std::string str() const;
};

enum class PsCase { Irreducible, Case1, Case2, Case3 };
std::string ps_case_name(PsCase c);

/// Total classification of ind_B^G(lambda) by the three conditions on
/// lambda1.
PsCase classify_ps(const DepthZeroChar& lam);

DepthZeroChar weyl_conjugate(const DepthZeroChar& lam);
DepthZeroChar weyl_canonical(const DepthZeroChar& lam);

struct RepParam {
    std::string kind;   ///< ps-irred, one-dim, steinberg-twist, pi1, pi2, pi-n,
                        ///< pi-2, pi-s, sc1, sc2, sc3, u11-*, u2-*
    std::string vertex; ///< y, z, F, none
    long chi = 0;       ///< torus-character exponent where applicable
    int nu = +1;        ///< central sign
    int component = -1; ///< sc3: index of the cuspidal half in the fixed labeling
    bool has_lambda = false;
    DepthZeroChar lambda;

    std::string str() const;
    friend bool operator==(const RepParam& x, const RepParam& y) {
        return x.kind == y.kind && x.vertex == y.vertex && x.chi == y.chi && x.nu == y.nu &&
               x.component == y.component && x.has_lambda == y.has_lambda &&
               (!x.has_lambda || x.lambda == y.lambda);
    }
};

struct TransferImage {
    std::string clause;
    std::string description;
};

struct Packet {
    std::string id;
    char kind = 'L'; ///< 'L' or 'A'
    std::string group;
    std::vector<RepParam> members;
    std::string origin;
};

struct PacketOptions {
    int q = 5;
    int omega_sign = +1; ///< the two depth-zero extensions of omega_{E/F}
};

/// Complete depth-zero packet catalogs ("U21", "U11", "U2").
std::vector<Packet> enumerate_packets(const std::string& group, const PacketOptions& opt);

/// Xi_G on a regular endoscopic parameter (chi of order > 2, central nu).
Packet endoscopic_transfer(long chi_exp, int nu, const PacketOptions& opt);

/// For a case-2 lambda: the A-packet {pi^n, pi^s} and L-packet {pi^2, pi^s},
/// with pi^s resolved through the unipotent-value rule.
std::pair<Packet, Packet> a_packet_pairing(const DepthZeroChar& lam, const PacketOptions& opt);

TransferImage base_change(const Packet& p, const PacketOptions& opt);

struct JlResult {
    int q = 0;
    bool identity_holds = false;
    bool unique = false;
    std::vector<std::pair<std::string, std::string>> assignment;
    std::string detail;
};

/// The Jacquet-Langlands-style packet correspondence U(2) -> U(1,1):
/// verifies the signed character identity on the matched classes and that
/// no other packet bijection satisfies it.
JlResult jl_verify(int q);

struct KtypeReport {
    std::string packet_id;
    bool pass = false;
    std::vector<std::string> ledger;
};

/// Finite-level K-type compatibility of base change for one packet.
KtypeReport ktype_compat_check(const Packet& p, const PacketOptions& opt);

struct PacketCounts {
    int case1_constituents = 0;
    int case2_pi2 = 0;
    int case2_pin = 0;
    int case3_pi1 = 0;
    int case3_pi2 = 0;
    int sc3_classes = 0;
    int sc_size2_packets = 0;
    int u11_sc_size2 = 0;
    int u2_size2 = 0;
};

PacketCounts packet_counts(int q);

} // namespace rbc
