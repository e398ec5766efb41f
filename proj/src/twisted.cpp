#include "rbc/twisted.hpp"

#include <algorithm>
#include <numeric>

namespace rbc {

TwistedContext make_twisted_context(const Group& g, const TableLimits& lim) {
    TwistedContext ctx;
    ctx.base = &g;
    ctx.sd = build_semidirect(g);
    ctx.sd_table = char_table(*ctx.sd, lim);
    const auto& cls = g.classes();
    ctx.inner_cls.resize(cls.size());
    for (uint32_t c = 0; c < cls.size(); ++c) {
        const Elem& rep = g.elem(cls[c].rep);
        ctx.inner_cls[c] = ctx.sd->class_of(ctx.sd->index_of({rep.m, 0}));
    }
    const auto& tcls = g.twisted_classes();
    ctx.outer_cls.resize(tcls.size());
    for (uint32_t t = 0; t < tcls.size(); ++t) {
        const Elem& rep = g.elem(tcls[t].rep);
        ctx.outer_cls[t] = ctx.sd->class_of(ctx.sd->index_of({rep.m, 1}));
    }
    return ctx;
}

namespace {

// Put the pair into canonical order: 'plus' has positive rational value at
// the twisted class of the identity, falling back to the lexicographically
// larger value vector.
TwistedPair orient_pair(const Group& g, std::vector<Cyc> a, std::vector<Cyc> b) {
    uint32_t t0 = g.twisted_class_of(g.identity_index());
    bool swap = false;
    const Cyc& va = a[t0];
    if (va.is_rational() && !va.is_zero()) {
        swap = va.rational_value() < Rational(0);
    } else {
        swap = std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
    if (swap) std::swap(a, b);
    TwistedPair out;
    out.plus = TwistedCharacter{&g, +1, std::move(a)};
    out.minus = TwistedCharacter{&g, -1, std::move(b)};
    return out;
}

} // namespace

TwistedPair twisted_char(const TwistedContext& ctx, const CharTable& base_table,
                         uint32_t irr_index) {
    const Group& g = *ctx.base;
    const Character& pi = base_table.irr[irr_index];
    const auto& cls = g.classes();

    // eps-invariance: values must agree on eps-permuted classes.
    for (uint32_t c = 0; c < cls.size(); ++c) {
        Elem im = g.apply_eps(g.elem(cls[c].rep));
        uint32_t ce = g.class_of(g.index_of(im));
        if (!(pi.vals[c] == pi.vals[ce]))
            throw std::domain_error(g.name + ": character is not eps-invariant");
    }

    std::vector<uint32_t> hits;
    for (uint32_t i = 0; i < ctx.sd_table.irr.size(); ++i) {
        const Character& cand = ctx.sd_table.irr[i];
        bool ok = true;
        for (uint32_t c = 0; c < cls.size() && ok; ++c)
            if (!(cand.vals[ctx.inner_cls[c]] == pi.vals[c])) ok = false;
        if (ok) hits.push_back(i);
    }
    if (hits.size() != 2)
        throw std::logic_error(g.name + ": extension count " + std::to_string(hits.size()) +
                               " (table inconsistency)");

    const auto& tcls = g.twisted_classes();
    std::vector<Cyc> a(tcls.size()), b(tcls.size());
    for (uint32_t t = 0; t < tcls.size(); ++t) {
        a[t] = ctx.sd_table.irr[hits[0]].vals[ctx.outer_cls[t]];
        b[t] = ctx.sd_table.irr[hits[1]].vals[ctx.outer_cls[t]];
    }
    return orient_pair(g, std::move(a), std::move(b));
}

TwistedPair twisted_char_product(const Group& g, const TwistedContext& ctx_a,
                                 const CharTable& ta, uint32_t ia, const TwistedContext& ctx_b,
                                 const CharTable& tb, uint32_t ib) {
    if (!g.product) throw std::logic_error(g.name + ": not a tagged product");
    const Group& A = *g.product->corner_factor;
    const Group& B = *g.product->middle_factor;
    TwistedPair pa = twisted_char(ctx_a, ta, ia);
    TwistedPair pb = twisted_char(ctx_b, tb, ib);

    const auto& tcls = g.twisted_classes();
    std::vector<Cyc> vals(tcls.size());
    for (uint32_t t = 0; t < tcls.size(); ++t) {
        const Elem& rep = g.elem(tcls[t].rep);
        auto c = corner_of(rep.m);
        uint32_t taci = A.twisted_class_of(A.index_of({corner(c[0], c[1], c[2], c[3], 1), 0}));
        uint32_t tbci = B.twisted_class_of(B.index_of({corner(1, 0, 0, 1, middle_of(rep.m)), 0}));
        vals[t] = pa.plus.tvals[taci] * pb.plus.tvals[tbci];
    }
    std::vector<Cyc> neg(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) neg[i] = -vals[i];
    return orient_pair(g, std::move(vals), std::move(neg));
}

std::vector<bool> eps_regular_classes(const Group& g) {
    const auto& tcls = g.twisted_classes();
    std::vector<bool> regular(tcls.size(), false);
    uint64_t torus_bound =
        uint64_t(g.q) * g.q * uint64_t(g.q) - 1; // coarse; refined below
    torus_bound = (uint64_t(g.q) * g.q - 1) * (g.q - 1);
    for (uint32_t t = 0; t < tcls.size(); ++t) {
        uint64_t stab_size = g.order() / tcls[t].size;
        if (stab_size > torus_bound) continue; // cannot be (contained in) a torus
        const Elem rep = g.elem(tcls[t].rep);
        std::vector<Elem> stab;
        stab.reserve(stab_size);
        for (const Elem& x : g.elems)
            if (g.conj_twisted(x, rep) == rep) stab.push_back(x);
        if (stab.size() != stab_size) throw std::logic_error("twisted stabilizer size mismatch");
        bool abelian = true;
        for (size_t i = 0; i < stab.size() && abelian; ++i)
            for (size_t j = i + 1; j < stab.size() && abelian; ++j)
                if (!(g.mul(stab[i], stab[j]) == g.mul(stab[j], stab[i]))) abelian = false;
        regular[t] = abelian;
    }
    return regular;
}

ShintaniResult shintani_check(const Group& gt, const Group& fixed, const Character& pi,
                              const TwistedPair& pit) {
    ShintaniResult res;
    const auto& tcls = gt.twisted_classes();
    auto regular = eps_regular_classes(gt);
    bool plus_ok = true, minus_ok = true;
    std::string first_bad;
    for (uint32_t t = 0; t < tcls.size(); ++t) {
        if (!regular[t]) continue;
        Elem nrm = gt.norm_map(gt.elem(tcls[t].rep));
        if (!fixed.contains(nrm)) {
            res.failure = "norm of regular class " + std::to_string(t) +
                          " is not in the fixed subgroup";
            res.consistent = false;
            return res;
        }
        Cyc ordinary = pi.vals[fixed.class_of(fixed.index_of(nrm))];
        const Cyc& tw = pit.plus.tvals[t];
        res.ledger.push_back({t, true, tw, ordinary});
        if (!(tw == ordinary)) {
            if (plus_ok && first_bad.empty())
                first_bad = "class " + std::to_string(t) + ": twisted != +ordinary";
            plus_ok = false;
        }
        if (!(tw == -ordinary)) minus_ok = false;
    }
    if (plus_ok && minus_ok) {
        res.consistent = true;
        res.sign = 0; // all compared values vanish
    } else if (plus_ok) {
        res.consistent = true;
        res.sign = +1;
    } else if (minus_ok) {
        res.consistent = true;
        res.sign = -1;
    } else {
        res.consistent = false;
        res.failure = first_bad.empty() ? "mixed signs across classes" : first_bad;
    }
    return res;
}

LiftedTorusChar lift_torus_char(const Group& gt, const CyclicTorus& big,
                                const CyclicTorus& fixed_torus, long chi_exp) {
    long nb = big.order(), nf = fixed_torus.order();
    // Locate each norm inside the fixed torus.
    std::vector<long> power_of_fixed(gt.elems.size(), -1);
    for (long m = 0; m < nf; ++m) power_of_fixed[fixed_torus.by_power[m]] = m;

    LiftedTorusChar out;
    out.vals.resize(nb);
    long j0 = -1;
    for (long m = 0; m < nb; ++m) {
        Elem nrm = gt.norm_map(gt.elem(big.by_power[m]));
        long p = power_of_fixed[gt.index_of(nrm)];
        if (p < 0) throw std::domain_error("lift_torus_char: norm leaves the fixed torus");
        if (m == 1) j0 = p;
        out.vals[m] = Cyc::zeta(nf, ((chi_exp % nf) * (p % nf) % nf + nf) % nf);
    }
    if (nb > 1) {
        out.exponent = ((chi_exp * j0) % nb * (nb / nf)) % nb;
        if (out.exponent < 0) out.exponent += nb;
        // Cross-check the exponent form against the value route.
        for (long m = 0; m < nb; ++m)
            if (!(Cyc::zeta(nb, out.exponent * m % nb) == out.vals[m]))
                throw std::logic_error("lift_torus_char: exponent route disagrees");
    }
    return out;
}

std::string SeriesLabel::str() const {
    return group + "/q" + std::to_string(q) + "/" +
           (torus == CyclicTorus::SplitM ? "split" : "nonsplit") + "/chi" +
           std::to_string(chi_exp) + "/nu" + std::to_string(mid_exp);
}

std::string LiftedSeries::str() const {
    return group + "/q" + std::to_string(q) + "/" +
           (torus == CyclicTorus::SplitM ? "split" : "nonsplit") + "/chi" +
           std::to_string(chi_exp);
}

SeriesLabel canonical_series(const std::string& group, int q, CyclicTorus::Kind torus, long chi,
                             long mid) {
    long n = (torus == CyclicTorus::SplitM) ? q - 1 : q + 1;
    chi = ((chi % n) + n) % n;
    chi = std::min(chi, (n - chi) % n);
    long nm = (group == "SL2" || group == "SO21") ? 1 : 2;
    mid = ((mid % nm) + nm) % nm;
    return SeriesLabel{group, q, torus, chi, mid};
}

LiftedSeries epsilon_lift_series(const SeriesLabel& label) {
    long q = label.q;
    std::string up;
    if (label.group == "SL2")
        up = "GL2";
    else if (label.group == "SL2xPM")
        up = "GL2xGL1";
    else if (label.group == "SO21")
        up = "GL3";
    else
        throw std::domain_error("epsilon_lift_series: unsupported group " + label.group);

    if (label.torus == CyclicTorus::SplitM) {
        // chi~ on the split coordinate (pair (j, -j)); identified with -j.
        long n = q - 1;
        long j = std::min(label.chi_exp % n, (n - label.chi_exp % n) % n);
        return LiftedSeries{up, q, CyclicTorus::SplitM, j};
    }
    // Nonsplit: chi~ = chi o N_eps on l^x has exponent -j(q-1) mod q^2-1;
    // geometric conjugacy identifies e with q e.
    long n = (long)q * q - 1;
    long e = ((-(label.chi_exp) % (q + 1)) + (q + 1)) % (q + 1) * (q - 1) % n;
    long e2 = e * q % n;
    return LiftedSeries{up, q, CyclicTorus::NonsplitS, std::min(e, e2)};
}

std::vector<uint32_t> series_members(const CharTable& table, const SeriesLabel& label) {
    const Group& G = *table.G;
    CyclicTorus torus = (label.torus == CyclicTorus::SplitM) ? embed_split_torus(G)
                                                             : embed_nonsplit_torus(G);
    VirtualChar R = dl_identify(table, torus, label.chi_exp, label.mid_exp);
    std::vector<uint32_t> out;
    for (auto& [s, i] : R.parts) out.push_back(i);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<uint32_t> lifted_series_members(const CharTable& table, const LiftedSeries& series) {
    const Group& G = *table.G;
    if (series.torus == CyclicTorus::SplitM) {
        Character ind = induce_from_borel(G, series.chi_exp, -series.chi_exp, 0);
        std::vector<uint32_t> out;
        for (auto& [m, i] : decompose(table, ind.vals)) out.push_back(i);
        std::sort(out.begin(), out.end());
        return out;
    }
    long n = (long)G.q * G.q - 1;
    long e = series.chi_exp % n;
    long ord = n / std::gcd(n, e == 0 ? n : e);
    CyclicTorus lx = embed_lx_torus(G);
    if (ord > 2) {
        VirtualChar R = dl_identify_lx(table, lx, e, 0);
        std::vector<uint32_t> out;
        for (auto& [s, i] : R.parts) out.push_back(i);
        std::sort(out.begin(), out.end());
        return out;
    }
    // Quadratic (or trivial) lifted character: the series consists of the
    // degree-1 character eta o det and its Steinberg twist, realized as the
    // constituents of the Borel induction of the matching diagonal pair.
    long j = (ord == 2) ? (G.q - 1) / 2 : 0;
    Character ind = induce_from_borel(G, j, j, 0);
    std::vector<uint32_t> out;
    for (auto& [m, i] : decompose(table, ind.vals)) out.push_back(i);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace rbc
