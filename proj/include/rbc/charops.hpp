#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rbc/character.hpp"
#include "rbc/gl3.hpp"
#include "rbc/group.hpp"

namespace rbc {

/// Signed combination of irreducibles together with its value vector.
struct VirtualChar {
    const Group* G = nullptr;
    std::vector<std::pair<int, uint32_t>> parts; // (sign, index into the table)
    std::vector<Cyc> vals;
};

/// Values of the exponent-j character of a cyclic torus, one per power of
/// the fixed generator.
Cyc torus_char_value(const CyclicTorus& t, long j, long power);

/// Character of the Borel subgroup inflated from the diagonal part; for
/// z-type groups b = [[a,0],[c,d]] (corner) with middle entry e the value is
/// chi1(a) chi2(d) chi_mid(e); SO21 uses the (0,0) entry.
std::vector<Cyc> borel_inflated_char(const Group& g, const Group& b, long exp_a, long exp_d,
                                     long exp_mid);

/// ind_B^G of the inflated torus character, as a class function.
Character induce_from_borel(const Group& g, long exp_a, long exp_d, long exp_mid);

/// The Deligne-Lusztig virtual character R_T^G(chi) for rank-1 groups.
/// Split torus: + ind_B^G(inflated chi).  Nonsplit torus, chi of order > 2:
/// -(unique cuspidal matching theta(t) = -chi(t)-chi^{-1}(t) on all regular
/// classes).  Nonsplit order <= 2 is supported for the SL2-type groups:
/// trivial chi gives 1 - St, the quadratic chi gives minus the sum of the
/// two degree-(q-1)/2 components.  Throws NoUniqueMatch on failure.
struct NoUniqueMatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// mid_exp is the character exponent on the middle GL(1)/{+-1} factor of a
/// tagged product group (the full maximal torus is S0 x middle there); zero
/// for the plain rank-1 groups.
VirtualChar dl_identify(const CharTable& table, const CyclicTorus& torus, long chi_exp,
                        long mid_exp = 0);

/// Same for a GL2-type group with the full l^x torus; chi_exp is modulo
/// q^2 - 1 and must be regular (chi != chi^q).
VirtualChar dl_identify_lx(const CharTable& table, const CyclicTorus& lx, long chi_exp,
                           long mid_exp = 0);

/// Values on the two nontrivial unipotent classes (u with subdiagonal 1,
/// then u' with the least nonsquare).
std::pair<Cyc, Cyc> unipotent_values(const Character& chi);

/// Indices of distinguished irreducibles.
uint32_t trivial_index(const CharTable& table);
uint32_t steinberg_index(const CharTable& table);

/// Brute-force verification of the finite-torus character lemma on the
/// cyclic group of order q+1 (all five parts, all (chi, psi) pairs and all
/// sign maps where quantified).
struct FiniteTorusReport {
    int q = 0;
    bool pass = false;
    struct Item {
        std::string part;
        bool holds = false;
        bool expected_exception = false; ///< the documented q = 7 failure of (ii)
        std::string witness;
    };
    std::vector<Item> items;
};

FiniteTorusReport finite_torus_lemma(int q);

/// Harish-Chandra induction to GL(3,q): inflate a GL2xGL1 class function to
/// the (2,1) parabolic and induce; values on the canonical GL3 classes.
class Gl3Induction {
public:
    explicit Gl3Induction(int q);

    const Gl3Classes& gl3() const { return *gl3_; }
    const Group& levi() const { return *levi_; }

    std::vector<Cyc> induce(const std::vector<Cyc>& levi_class_vals) const;
    Cyc inner_product_gl3(const std::vector<Cyc>& a, const std::vector<Cyc>& b) const;

private:
    const Gl3Classes* gl3_;
    GroupPtr levi_;     // GL2xGL1
    GroupPtr parabolic_;
    std::vector<uint32_t> fuse_;      // P-class -> GL3 class
    std::vector<uint32_t> levi_cls_;  // P-class -> Levi class
};

const Gl3Induction& gl3_induction(int q);

} // namespace rbc
