#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rbc/character.hpp"
#include "rbc/charops.hpp"

namespace rbc {

/// Outer-coset values of one extension of an eps-invariant irreducible,
/// i.e. the eps-twisted character theta_{pi,eps} under one of the two
/// normalizations pi(eps)^2 = 1.
struct TwistedCharacter {
    const Group* G = nullptr;
    int ext_sign = +1;
    std::vector<Cyc> tvals; // indexed by the twisted classes of G
};

struct TwistedPair {
    TwistedCharacter plus, minus;
};

/// Precomputed semidirect-product data for a group with eps.
struct TwistedContext {
    const Group* base = nullptr;
    GroupPtr sd;
    CharTable sd_table;
    std::vector<uint32_t> inner_cls; // base class -> sd class of (g, 0)
    std::vector<uint32_t> outer_cls; // base twisted class -> sd class of (g, 1)
};

TwistedContext make_twisted_context(const Group& g, const TableLimits& lim = {});

/// Both extensions of table.irr[irr_index] through the semidirect table.
/// 'plus' has positive rational value at the twisted class of the identity
/// (lexicographic tie-break when that value vanishes or is irrational).
TwistedPair twisted_char(const TwistedContext& ctx, const CharTable& base_table,
                         uint32_t irr_index);

/// Factor-wise twisted character on a tagged product group whose eps acts
/// factor by factor; avoids building the big semidirect product.
TwistedPair twisted_char_product(const Group& g, const TwistedContext& ctx_a,
                                 const CharTable& ta, uint32_t ia, const TwistedContext& ctx_b,
                                 const CharTable& tb, uint32_t ib);

/// eps-regularity per twisted class: the twisted centralizer
/// {x : x g eps(x)^{-1} = g} is abelian.  Stabilizers larger than the
/// maximal-torus bound (q^2-1)(q-1) are rejected without scanning.
std::vector<bool> eps_regular_classes(const Group& g);

struct ShintaniResult {
    bool consistent = false;
    int sign = 0; ///< the constant c for the 'plus' extension; 0 if degenerate
    std::string failure;
    struct Row {
        uint32_t tclass;
        bool regular;
        Cyc twisted;
        Cyc ordinary; ///< theta_pi at the class of the norm
    };
    std::vector<Row> ledger;
};

/// Verifies theta_{pi~,eps}(g) = c * theta_pi(N(g)) over all eps-regular
/// twisted classes of gt, c constant in {+1,-1}.
ShintaniResult shintani_check(const Group& gt, const Group& fixed, const Character& pi,
                              const TwistedPair& pit);

/// chi -> chi o N_eps on an abelian torus with eps.
struct LiftedTorusChar {
    long exponent = 0;      ///< chi~ = (exponent) on the big cyclic torus
    std::vector<Cyc> vals;  ///< value per power of the big-torus generator
};

LiftedTorusChar lift_torus_char(const Group& gt, const CyclicTorus& big,
                                const CyclicTorus& fixed_torus, long chi_exp);

/// Rational series of the fixed-point groups, keyed by (torus kind,
/// character-orbit exponent); geometric conjugacy in rank one identifies
/// chi with chi^{-1}.
struct SeriesLabel {
    std::string group; ///< "SL2" (H_z0), "SL2xPM" (G_z), "SO21" (G_y0)
    int q = 0;
    CyclicTorus::Kind torus = CyclicTorus::SplitM;
    long chi_exp = 0;
    long mid_exp = 0; ///< character of the middle factor where present

    std::string str() const;
    friend bool operator==(const SeriesLabel& a, const SeriesLabel& b) {
        return a.group == b.group && a.q == b.q && a.torus == b.torus &&
               a.chi_exp == b.chi_exp && a.mid_exp == b.mid_exp;
    }
};

SeriesLabel canonical_series(const std::string& group, int q, CyclicTorus::Kind torus, long chi,
                             long mid);

/// Image of a series under the eps-lifting (chi -> chi o N_eps on torus
/// characters); the lifted middle character is always trivial.
struct LiftedSeries {
    std::string group; ///< "GL2", "GL2xGL1", "GL3"
    int q = 0;
    CyclicTorus::Kind torus = CyclicTorus::SplitM;
    long chi_exp = 0; ///< on l^x (nonsplit) resp. the split coordinate
    std::string str() const;
    friend bool operator==(const LiftedSeries& a, const LiftedSeries& b) {
        return a.group == b.group && a.q == b.q && a.torus == b.torus && a.chi_exp == b.chi_exp;
    }
};

LiftedSeries epsilon_lift_series(const SeriesLabel& label);

/// Members of a series on the fixed-point group (indices into its table).
std::vector<uint32_t> series_members(const CharTable& table, const SeriesLabel& label);

/// Members of a lifted series on GL2 / GL2xGL1 (not GL3, which has no
/// table; use gl3_induction there).
std::vector<uint32_t> lifted_series_members(const CharTable& table, const LiftedSeries& series);

} // namespace rbc
