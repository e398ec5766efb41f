#include "rbc/group.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "rbc/parallel.hpp"

namespace rbc {

Mat mat_identity() {
    Mat m{};
    m[0] = m[4] = m[8] = 1;
    return m;
}

Mat mat_mul(const Fq& F, const Mat& a, const Mat& b) {
    Mat r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int s = 0;
            for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(a[3 * i + k], b[3 * k + j]));
            r[3 * i + j] = uint8_t(s);
        }
    return r;
}

int mat_det(const Fq& F, const Mat& m) {
    auto M = [&](int i, int j) { return m[3 * i + j]; };
    int d = F.mul(M(0, 0), F.sub(F.mul(M(1, 1), M(2, 2)), F.mul(M(1, 2), M(2, 1))));
    d = F.sub(d, F.mul(M(0, 1), F.sub(F.mul(M(1, 0), M(2, 2)), F.mul(M(1, 2), M(2, 0)))));
    d = F.add(d, F.mul(M(0, 2), F.sub(F.mul(M(1, 0), M(2, 1)), F.mul(M(1, 1), M(2, 0)))));
    return d;
}

Mat mat_inv(const Fq& F, const Mat& m) {
    int det = mat_det(F, m);
    if (det == 0) throw std::domain_error("mat_inv: singular matrix");
    int dinv = F.inv(det);
    auto M = [&](int i, int j) { return m[3 * i + j]; };
    auto cof = [&](int i, int j) {
        int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
        return F.sub(F.mul(M(r0, c0), M(r1, c1)), F.mul(M(r0, c1), M(r1, c0)));
    };
    Mat r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[3 * i + j] = uint8_t(F.mul(cof(j, i), dinv));
    return r;
}

Mat mat_transpose(const Mat& a) {
    Mat r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[3 * i + j] = a[3 * j + i];
    return r;
}

std::string mat_str(const Mat& a) {
    std::string s = "[";
    for (int i = 0; i < 3; ++i) {
        s += i ? ";" : "";
        for (int j = 0; j < 3; ++j) s += (j ? "," : "") + std::to_string(a[3 * i + j]);
    }
    return s + "]";
}

Mat corner(int a, int b, int c, int d, int mid) {
    Mat m{};
    m[0] = uint8_t(a); m[2] = uint8_t(b);
    m[4] = uint8_t(mid);
    m[6] = uint8_t(c); m[8] = uint8_t(d);
    return m;
}

std::array<int, 4> corner_of(const Mat& m) { return {m[0], m[2], m[6], m[8]}; }
int middle_of(const Mat& m) { return m[4]; }

uint64_t elem_key(const Elem& e) {
    uint64_t k = 0;
    for (int i = 0; i < 9; ++i) k = (k << 4) | e.m[i];
    return (k << 1) | e.eps;
}

Mat apply_aut(const Fq& F, const Aut& a, const Mat& m) {
    switch (a.kind) {
    case Aut::Identity:
        return m;
    case Aut::PhiDual: {
        Mat mi = mat_inv(F, m);
        // (Phi tX Phi)_{ij} = s_i s_j X_{2-j,2-i}, s = (1,-1,1).
        Mat r{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int v = mi[3 * (2 - j) + (2 - i)];
                if ((i == 1) != (j == 1)) v = F.neg(v);
                r[3 * i + j] = uint8_t(v);
            }
        return r;
    }
    case Aut::DetQuotInv: {
        auto c = corner_of(m);
        int det = F.sub(F.mul(c[0], c[3]), F.mul(c[1], c[2]));
        if (det == 0) throw std::domain_error("DetQuotInv: singular corner block");
        int di = F.inv(det);
        int mid = middle_of(m);
        if (mid == 0) throw std::domain_error("DetQuotInv: zero middle entry");
        return corner(F.mul(c[0], di), F.mul(c[1], di), F.mul(c[2], di), F.mul(c[3], di),
                      F.inv(mid));
    }
    }
    return m;
}

namespace {

void projectivize_corner(const Fq& F, Mat& m) {
    auto c = corner_of(m);
    for (int v : c)
        if (v != 0) {
            int s = F.inv(v);
            m[0] = uint8_t(F.mul(m[0], s));
            m[2] = uint8_t(F.mul(m[2], s));
            m[6] = uint8_t(F.mul(m[6], s));
            m[8] = uint8_t(F.mul(m[8], s));
            return;
        }
    throw std::domain_error("projectivize: zero corner block");
}

} // namespace

void Group::finalize() {
    std::sort(elems.begin(), elems.end(),
              [](const Elem& a, const Elem& b) { return elem_key(a) < elem_key(b); });
    index_.clear();
    index_.reserve(elems.size() * 2);
    for (uint32_t i = 0; i < elems.size(); ++i) {
        auto [it, fresh] = index_.emplace(elem_key(elems[i]), i);
        if (!fresh) throw std::logic_error(name + ": duplicate element");
    }
    Elem id{mat_identity(), 0};
    auto it = index_.find(elem_key(id));
    if (it == index_.end()) throw std::logic_error(name + ": identity missing");
    id_idx_ = it->second;
}

uint32_t Group::index_of(const Elem& e) const {
    auto it = index_.find(elem_key(e));
    if (it == index_.end()) throw std::domain_error(name + ": element not in group");
    return it->second;
}

bool Group::contains(const Elem& e) const { return index_.count(elem_key(e)) != 0; }

Elem Group::mul(const Elem& a, const Elem& b) const {
    Mat bm = b.m;
    if (semidirect && a.eps) bm = apply_aut(*F, eps, bm);
    Elem r{mat_mul(*F, a.m, bm), uint8_t(a.eps ^ b.eps)};
    if (projective) projectivize_corner(*F, r.m);
    return r;
}

Elem Group::inv(const Elem& a) const {
    Mat mi = mat_inv(*F, a.m);
    if (semidirect && a.eps) mi = apply_aut(*F, eps, mi);
    Elem r{mi, a.eps};
    if (projective) projectivize_corner(*F, r.m);
    return r;
}

Elem Group::apply_eps(const Elem& a) const {
    if (!has_eps) throw std::logic_error(name + ": no automorphism attached");
    Elem r{apply_aut(*F, eps, a.m), a.eps};
    if (projective) projectivize_corner(*F, r.m);
    return r;
}

Elem Group::conj(const Elem& x, const Elem& g) const { return mul(mul(x, g), inv(x)); }

Elem Group::conj_twisted(const Elem& x, const Elem& g) const {
    return mul(mul(x, g), apply_eps(inv(x)));
}

Elem Group::norm_map(const Elem& g) const { return mul(g, apply_eps(g)); }

uint64_t Group::element_order(const Elem& e) const {
    Elem x = e;
    const Elem id{mat_identity(), 0};
    uint64_t n = 1;
    while (!(x == id)) {
        x = mul(x, e);
        if (++n > order()) throw std::logic_error(name + ": order overflow");
    }
    return n;
}

const std::vector<uint32_t>& Group::generators() const {
    if (gens_.empty()) compute_generators();
    return gens_;
}

void Group::compute_generators() const {
    std::set<uint64_t> closure{elem_key(elems[id_idx_])};
    std::vector<Elem> members{elems[id_idx_]};
    std::vector<Elem> genlist;
    for (uint32_t i = 0; i < elems.size() && closure.size() < elems.size(); ++i) {
        if (closure.count(elem_key(elems[i]))) continue;
        gens_.push_back(i);
        genlist.push_back(elems[i]);
        // Re-close.
        std::deque<Elem> work(members.begin(), members.end());
        closure.insert(elem_key(elems[i]));
        members.push_back(elems[i]);
        work.push_back(elems[i]);
        while (!work.empty()) {
            Elem x = work.front();
            work.pop_front();
            for (const Elem& g : genlist) {
                for (Elem y : {mul(x, g), mul(g, x)}) {
                    if (closure.insert(elem_key(y)).second) {
                        members.push_back(y);
                        work.push_back(y);
                    }
                }
            }
        }
    }
}

void Group::compute_classes(bool twisted) const {
    auto& cls = twisted ? tclasses_ : classes_;
    auto& cof = twisted ? tclass_of_ : class_of_;
    if (!cls.empty()) return;
    if (twisted && !has_eps) throw std::logic_error(name + ": twisted classes need an automorphism");
    const auto& gens = generators();
    cof.assign(elems.size(), UINT32_MAX);
    for (uint32_t i = 0; i < elems.size(); ++i) {
        if (cof[i] != UINT32_MAX) continue;
        uint32_t cid = uint32_t(cls.size());
        std::deque<uint32_t> work{i};
        cof[i] = cid;
        uint64_t size = 1;
        while (!work.empty()) {
            Elem g = elems[work.front()];
            work.pop_front();
            for (uint32_t gi : gens) {
                const Elem& x = elems[gi];
                Elem y = twisted ? conj_twisted(x, g) : conj(x, g);
                uint32_t yi = index_of(y);
                if (cof[yi] == UINT32_MAX) {
                    cof[yi] = cid;
                    ++size;
                    work.push_back(yi);
                }
            }
        }
        cls.push_back(ConjClass{i, size, order() / size, twisted});
    }
}

const std::vector<ConjClass>& Group::classes() const {
    compute_classes(false);
    return classes_;
}

uint32_t Group::class_of(uint32_t elem_idx) const {
    compute_classes(false);
    return class_of_[elem_idx];
}

const std::vector<ConjClass>& Group::twisted_classes() const {
    compute_classes(true);
    return tclasses_;
}

uint32_t Group::twisted_class_of(uint32_t elem_idx) const {
    compute_classes(true);
    return tclass_of_[elem_idx];
}

std::vector<uint32_t> Group::center() const {
    std::vector<uint32_t> z;
    const auto& gens = generators();
    for (uint32_t i = 0; i < elems.size(); ++i) {
        bool central = true;
        for (uint32_t gi : gens)
            if (!(mul(elems[i], elems[gi]) == mul(elems[gi], elems[i]))) {
                central = false;
                break;
            }
        if (central) z.push_back(i);
    }
    return z;
}

std::shared_ptr<Group> Group::fixed_subgroup() const {
    std::vector<Elem> fixed;
    for (const Elem& e : elems)
        if (apply_eps(e) == e) fixed.push_back(e);
    return subgroup(name + "^eps", fixed);
}

std::shared_ptr<Group> Group::subgroup(const std::string& subname,
                                       const std::vector<Elem>& elements) const {
    auto H = std::make_shared<Group>();
    H->name = subname;
    H->F = F;
    H->q = q;
    H->projective = projective;
    H->elems = elements;
    H->finalize();
    // Closure sanity on generators of the subset.
    for (uint32_t gi : H->generators())
        for (const Elem& e : H->elems)
            if (!H->contains(H->mul(e, H->elems[gi])))
                throw std::logic_error(subname + ": subset is not closed");
    return H;
}

namespace {

GroupPtr new_group(const std::string& name, int q) {
    auto g = std::make_shared<Group>();
    g->name = name;
    g->q = q;
    g->F = &base_field(q);
    return g;
}

GroupPtr build_gl1(int q) {
    auto g = new_group("GL1", q);
    g->eps = {Aut::DetQuotInv};
    g->has_eps = true;
    for (int e = 1; e < q; ++e) g->elems.push_back({corner(1, 0, 0, 1, e), 0});
    g->finalize();
    return g;
}

GroupPtr build_pm(int q) {
    auto g = new_group("PM", q);
    const Fq& F = *g->F;
    g->elems.push_back({corner(1, 0, 0, 1, 1), 0});
    g->elems.push_back({corner(1, 0, 0, 1, F.neg(1)), 0});
    g->finalize();
    return g;
}

GroupPtr build_gl2(int q) {
    auto g = new_group("GL2", q);
    const Fq& F = *g->F;
    g->eps = {Aut::DetQuotInv};
    g->has_eps = true;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d)
                    if (F.sub(F.mul(a, d), F.mul(b, c)) != 0)
                        g->elems.push_back({corner(a, b, c, d, 1), 0});
    g->finalize();
    return g;
}

GroupPtr build_sl2(int q) {
    auto g = new_group("SL2", q);
    const Fq& F = *g->F;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d)
                    if (F.sub(F.mul(a, d), F.mul(b, c)) == 1)
                        g->elems.push_back({corner(a, b, c, d, 1), 0});
    g->finalize();
    return g;
}

GroupPtr build_pgl2(int q) {
    auto g = new_group("PGL2", q);
    g->projective = true;
    const Fq& F = *g->F;
    std::set<uint64_t> seen;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d)
                    if (F.sub(F.mul(a, d), F.mul(b, c)) != 0) {
                        Mat m = corner(a, b, c, d, 1);
                        projectivize_corner(F, m);
                        if (seen.insert(elem_key({m, 0})).second) g->elems.push_back({m, 0});
                    }
    g->finalize();
    return g;
}

GroupPtr build_o2(int q, bool special_only) {
    auto g = new_group(special_only ? "SO2" : "O2", q);
    const Fq& F = *g->F;
    int eps_ns = F.least_nonsquare();
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d) {
                    // tg J g = J for J = diag(1, -eps_ns) on the corner block.
                    bool ok = F.sub(F.mul(a, a), F.mul(eps_ns, F.mul(c, c))) == 1 &&
                              F.mul(a, b) == F.mul(eps_ns, F.mul(c, d)) &&
                              F.sub(F.mul(b, b), F.mul(eps_ns, F.mul(d, d))) == F.neg(eps_ns);
                    if (!ok) continue;
                    if (special_only && F.sub(F.mul(a, d), F.mul(b, c)) != 1) continue;
                    g->elems.push_back({corner(a, b, c, d, 1), 0});
                }
    g->finalize();
    return g;
}

GroupPtr build_gl2gl1(int q) {
    auto g = new_group("GL2xGL1", q);
    const Fq& F = *g->F;
    g->eps = {Aut::DetQuotInv};
    g->has_eps = true;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d) {
                    if (F.sub(F.mul(a, d), F.mul(b, c)) == 0) continue;
                    for (int e = 1; e < q; ++e) g->elems.push_back({corner(a, b, c, d, e), 0});
                }
    g->finalize();
    g->product = Group::ProductInfo{build_gl2(q), build_gl1(q)};
    return g;
}

GroupPtr build_sl2pm(int q) {
    auto g = new_group("SL2xPM", q);
    const Fq& F = *g->F;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d) {
                    if (F.sub(F.mul(a, d), F.mul(b, c)) != 1) continue;
                    g->elems.push_back({corner(a, b, c, d, 1), 0});
                    g->elems.push_back({corner(a, b, c, d, F.neg(1)), 0});
                }
    g->finalize();
    g->product = Group::ProductInfo{build_sl2(q), build_pm(q)};
    return g;
}

GroupPtr build_gf(int q) {
    auto g = new_group("GF", q);
    const Fq& F = *g->F;
    for (int a = 1; a < q; ++a) {
        g->elems.push_back({corner(a, 0, 0, F.inv(a), 1), 0});
        g->elems.push_back({corner(a, 0, 0, F.inv(a), F.neg(1)), 0});
    }
    g->finalize();
    auto g0 = new_group("GF0", q);
    for (int a = 1; a < q; ++a) g0->elems.push_back({corner(a, 0, 0, F.inv(a), 1), 0});
    g0->finalize();
    g->product = Group::ProductInfo{g0, build_pm(q)};
    return g;
}

// Multiplication-by-z matrix on the basis {1, delta}, delta^2 = least
// nonsquare of F_q; z ranges over the quadratic extension.
struct LTorus {
    const QuadExt* L;
    int delta;
    std::vector<std::pair<int, int>> dcoords; // ext elem -> (a, b), z = a + b delta

    explicit LTorus(int q) : L(&quad_ext(q)) {
        const Fq& E = L->ext();
        const Fq& k = L->base();
        int ns = L->embed(k.least_nonsquare());
        delta = -1;
        for (int x = 0; x < E.q(); ++x)
            if (E.mul(x, x) == ns) { delta = x; break; }
        if (delta < 0) throw std::logic_error("LTorus: nonsquare has no square root upstairs");
        dcoords.assign(E.q(), {-1, -1});
        for (int a = 0; a < k.q(); ++a)
            for (int b = 0; b < k.q(); ++b) {
                int v = E.add(L->embed(a), E.mul(L->embed(b), delta));
                dcoords[v] = {a, b};
            }
    }

    Mat mult_matrix(int z) const {
        const Fq& k = L->base();
        auto [a, b] = dcoords[z];
        // z*1 = a + b delta, z*delta = (b*ns) + a delta.
        int ns = k.least_nonsquare();
        return corner(a, k.mul(ns, b), b, a, 1);
    }
};

GroupPtr build_tns(int q) {
    auto g = new_group("TNS", q);
    g->eps = {Aut::DetQuotInv};
    g->has_eps = true;
    LTorus T(q);
    const Fq& E = T.L->ext();
    int z = 1;
    for (int m = 0; m < E.q() - 1; ++m) {
        g->elems.push_back({T.mult_matrix(z), 0});
        z = E.mul(z, E.gen());
    }
    g->finalize();
    return g;
}

GroupPtr build_o21(int q, bool special_only) {
    if (q != 5)
        throw std::domain_error("O21/SO21: full enumeration only supported for q = 5");
    auto g = new_group(special_only ? "SO21" : "O21", q);
    const Fq& F = *g->F;
    Mat phi{};
    phi[2] = 1;
    phi[4] = uint8_t(F.neg(1));
    phi[6] = 1;
    int64_t total = 1;
    for (int i = 0; i < 9; ++i) total *= q;

    std::vector<std::vector<Elem>> found(par::max_threads());
    par::for_n(total, [&](int64_t idx) {
        Mat m{};
        int64_t t = idx;
        for (int i = 0; i < 9; ++i) { m[i] = uint8_t(t % q); t /= q; }
        // g Phi tg = Phi  (fixed points of the PhiDual automorphism).
        Mat a = mat_mul(F, m, phi);
        Mat b = mat_mul(F, a, mat_transpose(m));
        if (b != phi) return;
        if (special_only && mat_det(F, m) != 1) return;
        found[par::thread_id()].push_back({m, 0});
    });
    for (auto& v : found) g->elems.insert(g->elems.end(), v.begin(), v.end());
    g->eps = {Aut::PhiDual};
    g->has_eps = true; // restriction is the identity; kept for norm_map coherence
    g->finalize();
    return g;
}

} // namespace

GroupPtr build_group(const std::string& name, int q) {
    if (!supported_q(q)) throw std::domain_error("unsupported q: " + std::to_string(q));
    if (name == "GL1") return build_gl1(q);
    if (name == "PM") return build_pm(q);
    if (name == "GL2") return build_gl2(q);
    if (name == "SL2") return build_sl2(q);
    if (name == "PGL2") return build_pgl2(q);
    if (name == "O2") return build_o2(q, false);
    if (name == "SO2") return build_o2(q, true);
    if (name == "GL2xGL1") return build_gl2gl1(q);
    if (name == "SL2xPM") return build_sl2pm(q);
    if (name == "GF") return build_gf(q);
    if (name == "TNS") return build_tns(q);
    if (name == "O21") return build_o21(q, false);
    if (name == "SO21") return build_o21(q, true);
    throw std::domain_error("build_group: unknown group " + name);
}

GroupPtr build_semidirect(const Group& g) {
    if (!g.has_eps) throw std::logic_error(g.name + ": semidirect needs an automorphism");
    if (g.eps.order() != 2) throw std::logic_error("semidirect: automorphism must have order 2");
    // Verify order 2 on generators.
    for (uint32_t gi : g.generators()) {
        Elem e = g.elems[gi];
        if (!(g.apply_eps(g.apply_eps(e)) == e))
            throw std::logic_error(g.name + ": eps^2 != id");
    }
    auto sd = std::make_shared<Group>();
    sd->name = "semidirect(" + g.name + ")";
    sd->F = g.F;
    sd->q = g.q;
    sd->semidirect = true;
    sd->eps = g.eps;
    sd->has_eps = true;
    sd->elems.reserve(2 * g.order());
    for (const Elem& e : g.elems) {
        sd->elems.push_back({e.m, 0});
        sd->elems.push_back({e.m, 1});
    }
    sd->finalize();
    return sd;
}

CyclicTorus embed_split_torus(const Group& g) {
    const Fq& F = *g.F;
    CyclicTorus t;
    t.kind = CyclicTorus::SplitM;
    if (g.name == "SO21") {
        for (int m = 0; m < F.q() - 1; ++m) {
            int a = F.gen_pow(m);
            Mat d{};
            d[0] = uint8_t(a);
            d[4] = 1;
            d[8] = uint8_t(F.inv(a));
            t.by_power.push_back(g.index_of({d, 0}));
        }
        return t;
    }
    for (int m = 0; m < F.q() - 1; ++m) {
        int a = F.gen_pow(m);
        t.by_power.push_back(g.index_of({corner(a, 0, 0, F.inv(a), 1), 0}));
    }
    return t;
}

namespace {

// Anisotropic-plane embedding of the norm-one torus into SO(2,1): find an
// orthogonal basis (v1, v2, v3) for the Phi-form with Q(v2) = 1 and
// Q(v3) = -nonsquare, and rotate the (v2, v3)-plane.
CyclicTorus nonsplit_torus_so21(const Group& g) {
    const Fq& F = *g.F;
    int q = F.q();
    int ns = F.least_nonsquare();
    auto B = [&](const std::array<int, 3>& u, const std::array<int, 3>& v) {
        // Gram matrix Phi = antidiag(1,-1,1).
        int s = F.add(F.mul(u[0], v[2]), F.mul(u[2], v[0]));
        return F.sub(s, F.mul(u[1], v[1]));
    };
    auto findvec = [&](auto&& pred) {
        for (int i = 1; i < q * q * q; ++i) {
            std::array<int, 3> v{i % q, (i / q) % q, i / (q * q)};
            if (pred(v)) return v;
        }
        throw std::logic_error("nonsplit_torus_so21: vector search failed");
    };
    auto v2 = findvec([&](auto& v) { return B(v, v) == 1; });
    auto v3 = findvec([&](auto& v) { return B(v, v2) == 0 && B(v, v) == F.neg(ns); });
    auto v1 = findvec([&](auto& v) { return B(v, v2) == 0 && B(v, v3) == 0 && B(v, v) != 0; });

    Mat T{};
    for (int i = 0; i < 3; ++i) {
        T[3 * i + 0] = uint8_t(v1[i]);
        T[3 * i + 1] = uint8_t(v2[i]);
        T[3 * i + 2] = uint8_t(v3[i]);
    }
    Mat Tinv = mat_inv(F, T);

    LTorus L(g.q);
    const Fq& E = L.L->ext();
    CyclicTorus t;
    t.kind = CyclicTorus::NonsplitS;
    int w = L.L->norm_one_gen();
    int z = 1;
    for (int m = 0; m <= g.q; ++m) {
        auto [a, b] = L.dcoords[z];
        Mat rot{};
        rot[0] = 1;
        rot[4] = uint8_t(a);
        rot[5] = uint8_t(F.mul(ns, b));
        rot[7] = uint8_t(b);
        rot[8] = uint8_t(a);
        Mat el = mat_mul(F, T, mat_mul(F, rot, Tinv));
        t.by_power.push_back(g.index_of({el, 0}));
        z = E.mul(z, w);
        if (m == g.q && z != 1)
            throw std::logic_error("nonsplit_torus_so21: generator order mismatch");
    }
    return t;
}

} // namespace

CyclicTorus embed_nonsplit_torus(const Group& g) {
    if (g.name == "SO21" || g.name == "O21") return nonsplit_torus_so21(g);
    LTorus T(g.q);
    const Fq& E = T.L->ext();
    CyclicTorus t;
    t.kind = CyclicTorus::NonsplitS;
    int w = T.L->norm_one_gen();
    int z = 1;
    for (int m = 0; m <= g.q; ++m) {
        t.by_power.push_back(g.index_of({T.mult_matrix(z), 0}));
        z = E.mul(z, w);
    }
    if (z != 1) throw std::logic_error("embed_nonsplit_torus: generator order mismatch");
    return t;
}

CyclicTorus embed_lx_torus(const Group& g) {
    LTorus T(g.q);
    const Fq& E = T.L->ext();
    CyclicTorus t;
    t.kind = CyclicTorus::NonsplitS;
    int z = 1;
    for (int m = 0; m < E.q() - 1; ++m) {
        t.by_power.push_back(g.index_of({T.mult_matrix(z), 0}));
        z = E.mul(z, E.gen());
    }
    return t;
}

std::vector<Elem> cubic_torus_image(const Group& g) {
    std::vector<Elem> out;
    if (g.name == "SO21" || g.name == "O21") {
        for (const Elem& e : g.elems) {
            const Mat& m = e.m;
            bool upper_uni = m[0] == 1 && m[4] == 1 && m[8] == 1 && m[3] == 0 && m[6] == 0 &&
                             m[7] == 0;
            if (upper_uni && mat_det(*g.F, m) == 1) out.push_back(e);
        }
    } else {
        // z-type: lower-triangular unipotent corner block.
        for (int c = 0; c < g.q; ++c) {
            Elem e{corner(1, 0, c, 1, 1), 0};
            if (g.contains(e)) out.push_back(e);
        }
    }
    if (int(out.size()) != g.q)
        throw std::logic_error(g.name + ": cubic torus image is not the unipotent radical");
    return out;
}

std::shared_ptr<Group> borel_subgroup(const Group& g) {
    std::vector<Elem> b;
    if (g.name == "SO21") {
        for (const Elem& e : g.elems)
            if (e.m[3] == 0 && e.m[6] == 0 && e.m[7] == 0) b.push_back(e);
    } else {
        for (const Elem& e : g.elems)
            if (e.m[2] == 0) b.push_back(e); // corner (0,1) entry zero: lower triangular
    }
    return g.subgroup(g.name + ".B", b);
}

} // namespace rbc
