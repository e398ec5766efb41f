#include "rbc/character.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

#include "rbc/parallel.hpp"

namespace rbc {

Cyc Character::degree() const {
    if (twisted) throw std::logic_error("degree of a twisted class function");
    return vals[G->class_of(G->identity_index())];
}

long long Character::degree_int() const {
    Rational r = degree().rational_value();
    if (!r.is_integer()) throw std::logic_error("non-integral degree");
    return r.num();
}

Cyc inner_product(const Character& a, const Character& b) {
    if (a.G != b.G || a.twisted != b.twisted)
        throw std::domain_error("inner_product: mismatched class functions");
    const auto& cls = a.twisted ? a.G->twisted_classes() : a.G->classes();
    Cyc acc;
    for (uint32_t k = 0; k < cls.size(); ++k)
        acc += (a.vals[k] * b.vals[k].conj()).scaled(Rational((long long)cls[k].size));
    return acc.scaled(Rational(1, (long long)a.G->order()));
}

Character induce(const Group& g, const Group& h, const std::vector<Cyc>& h_vals) {
    const auto& gcls = g.classes();
    const auto& hcls = h.classes();
    if (h_vals.size() != hcls.size()) throw std::domain_error("induce: value count mismatch");
    Character out{&g, false, std::vector<Cyc>(gcls.size())};
    for (uint32_t d = 0; d < hcls.size(); ++d) {
        const Elem& rep = h.elem(hcls[d].rep);
        uint32_t k = g.class_of(g.index_of(rep));
        out.vals[k] += h_vals[d].scaled(Rational((long long)hcls[d].size, (long long)h.order()));
    }
    for (uint32_t k = 0; k < gcls.size(); ++k)
        out.vals[k] = out.vals[k].scaled(Rational((long long)gcls[k].centralizer));
    return out;
}

std::pair<uint32_t, uint32_t> product_class_split(const Group& g, uint32_t cls) {
    if (!g.product) throw std::logic_error(g.name + ": not a tagged product");
    const Group& A = *g.product->corner_factor;
    const Group& B = *g.product->middle_factor;
    const Elem& rep = g.elem(g.classes()[cls].rep);
    auto c = corner_of(rep.m);
    Elem ea{corner(c[0], c[1], c[2], c[3], 1), 0};
    Elem eb{corner(1, 0, 0, 1, middle_of(rep.m)), 0};
    return {A.class_of(A.index_of(ea)), B.class_of(B.index_of(eb))};
}

Character product_character(const Group& g, const CharTable& ta, uint32_t ia,
                            const CharTable& tb, uint32_t ib) {
    const auto& gcls = g.classes();
    Character out{&g, false, std::vector<Cyc>(gcls.size())};
    for (uint32_t k = 0; k < gcls.size(); ++k) {
        auto [ca, cb] = product_class_split(g, k);
        out.vals[k] = ta.irr[ia].vals[ca] * tb.irr[ib].vals[cb];
    }
    return out;
}

std::vector<std::pair<long long, uint32_t>> decompose(const CharTable& table,
                                                      const std::vector<Cyc>& vals,
                                                      bool require_character) {
    Character f{table.G, false, vals};
    std::vector<std::pair<long long, uint32_t>> out;
    for (uint32_t i = 0; i < table.irr.size(); ++i) {
        Cyc m = inner_product(f, table.irr[i]);
        if (m.is_zero()) continue;
        if (!m.is_rational() || !m.rational_value().is_integer() ||
            (require_character && m.rational_value().num() < 0))
            throw std::logic_error("decompose: non-integral multiplicity");
        out.push_back({m.rational_value().num(), i});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Burnside-Dixon-Schneider over F_ell.
// ---------------------------------------------------------------------------

namespace {

struct ModField {
    uint64_t ell;
    uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % ell; }
    uint64_t sub(uint64_t a, uint64_t b) const { return (a + ell - b) % ell; }
    uint64_t mul(uint64_t a, uint64_t b) const { return a * b % ell; }
    uint64_t pow(uint64_t a, uint64_t n) const {
        uint64_t r = 1;
        a %= ell;
        while (n) {
            if (n & 1) r = mul(r, a);
            a = mul(a, a);
            n >>= 1;
        }
        return r;
    }
    uint64_t inv(uint64_t a) const { return pow(a, ell - 2); }
};

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint64_t primitive_root(uint64_t ell) {
    uint64_t n = ell - 1;
    std::vector<uint64_t> pf;
    uint64_t m = n;
    for (uint64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            pf.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) pf.push_back(m);
    ModField K{ell};
    for (uint64_t g = 2; g < ell; ++g) {
        bool ok = true;
        for (uint64_t p : pf)
            if (K.pow(g, n / p) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw std::logic_error("no primitive root");
}

using Vec = std::vector<uint64_t>;

struct DixonEngine {
    const Group& G;
    const std::vector<ConjClass>& cls;
    uint32_t r;
    uint32_t id_class;
    uint64_t exponent = 1;
    std::vector<uint64_t> orders;
    std::vector<uint32_t> inv_class;
    std::vector<std::vector<uint32_t>> powmap;
    ModField K{0};
    uint64_t root = 0; // primitive root mod ell
    std::vector<std::vector<uint32_t>> A; // A[t]: r x r class constants

    explicit DixonEngine(const Group& g) : G(g), cls(g.classes()), r(uint32_t(cls.size())) {
        id_class = G.class_of(G.identity_index());
        orders.resize(r);
        powmap.resize(r);
        inv_class.resize(r);
        for (uint32_t k = 0; k < r; ++k) {
            const Elem& rep = G.elem(cls[k].rep);
            orders[k] = G.element_order(rep);
            exponent = std::lcm(exponent, orders[k]);
            inv_class[k] = G.class_of(G.index_of(G.inv(rep)));
            powmap[k].resize(orders[k]);
            Elem x{mat_identity(), 0};
            for (uint64_t s = 0; s < orders[k]; ++s) {
                powmap[k][s] = G.class_of(G.index_of(x));
                x = G.mul(x, rep);
            }
        }
        uint64_t bound = 1;
        while (bound * bound <= 4 * G.order()) ++bound; // bound > 2 sqrt|G|
        uint64_t ell = exponent + 1;
        while (!(is_prime(ell) && ell > bound && G.order() % ell != 0)) ell += exponent;
        K = ModField{ell};
        root = primitive_root(ell);

        // Class constants: one pass over the group, data-parallel with
        // per-thread accumulators merged in thread order.
        A.assign(r, std::vector<uint32_t>(size_t(r) * r, 0));
        std::vector<Elem> reps;
        for (uint32_t u = 0; u < r; ++u) reps.push_back(G.elem(cls[u].rep));
        std::vector<std::vector<uint32_t>> parts(par::max_threads(),
                                                 std::vector<uint32_t>(size_t(r) * r * r, 0));
        par::for_n(int64_t(G.order()), [&](int64_t i) {
            auto& acc = parts[par::thread_id()];
            uint32_t t = G.class_of(uint32_t(i));
            Elem xinv = G.inv(G.elem(uint32_t(i)));
            for (uint32_t u = 0; u < r; ++u) {
                uint32_t s = G.class_of(G.index_of(G.mul(xinv, reps[u])));
                ++acc[(size_t(t) * r + s) * r + u];
            }
        });
        for (const auto& p : parts)
            for (uint32_t t = 0; t < r; ++t)
                for (size_t j = 0; j < size_t(r) * r; ++j) A[t][j] += p[size_t(t) * r * r + j];
    }

    Vec mat_apply(uint32_t t, const Vec& v) const {
        Vec out(r, 0);
        for (uint32_t s = 0; s < r; ++s) {
            uint64_t acc = 0;
            const uint32_t* row = &A[t][size_t(s) * r];
            for (uint32_t u = 0; u < r; ++u)
                if (v[u]) acc = (acc + uint64_t(row[u]) * v[u]) % K.ell;
            out[s] = acc;
        }
        return out;
    }

    // Reduced echelon basis with pivot bookkeeping.
    struct Space {
        std::vector<Vec> rows;
        std::vector<uint32_t> pivots;
        uint32_t next_t = 0;
    };

    static void echelonize(const ModField& K, std::vector<Vec>& rows,
                           std::vector<uint32_t>& pivots) {
        pivots.clear();
        uint32_t rank = 0;
        uint32_t n = rows.empty() ? 0 : uint32_t(rows[0].size());
        for (uint32_t col = 0; col < n && rank < rows.size(); ++col) {
            uint32_t pr = UINT32_MAX;
            for (uint32_t i = rank; i < rows.size(); ++i)
                if (rows[i][col]) { pr = i; break; }
            if (pr == UINT32_MAX) continue;
            std::swap(rows[rank], rows[pr]);
            uint64_t inv = K.inv(rows[rank][col]);
            for (auto& x : rows[rank]) x = K.mul(x, inv);
            for (uint32_t i = 0; i < rows.size(); ++i) {
                if (i == rank || rows[i][col] == 0) continue;
                uint64_t f = rows[i][col];
                for (uint32_t j = 0; j < n; ++j)
                    rows[i][j] = K.sub(rows[i][j], K.mul(f, rows[rank][j]));
            }
            pivots.push_back(col);
            ++rank;
        }
        rows.resize(rank);
    }

    Vec coords_in(const Space& sp, Vec v) const {
        Vec c(sp.rows.size(), 0);
        for (uint32_t i = 0; i < sp.rows.size(); ++i) {
            uint64_t f = v[sp.pivots[i]];
            if (!f) continue;
            c[i] = f;
            for (uint32_t j = 0; j < r; ++j) v[j] = K.sub(v[j], K.mul(f, sp.rows[i][j]));
        }
        for (uint64_t x : v)
            if (x) throw std::logic_error("Dixon: subspace not invariant");
        return c;
    }

    // Characteristic polynomial values via Hessenberg reduction.
    std::vector<uint64_t> eigenvalues(const std::vector<Vec>& B) const {
        uint32_t n = uint32_t(B.size());
        // H[i][j], column-major input B[j] = column j.
        std::vector<Vec> H(n, Vec(n, 0));
        for (uint32_t j = 0; j < n; ++j)
            for (uint32_t i = 0; i < n; ++i) H[i][j] = B[j][i];
        // Reduce to upper Hessenberg by similarity.
        for (uint32_t col = 0; col + 2 < n; ++col) {
            uint32_t piv = UINT32_MAX;
            for (uint32_t i = col + 1; i < n; ++i)
                if (H[i][col]) { piv = i; break; }
            if (piv == UINT32_MAX) continue;
            if (piv != col + 1) {
                std::swap(H[piv], H[col + 1]);
                for (uint32_t i = 0; i < n; ++i) std::swap(H[i][piv], H[i][col + 1]);
            }
            uint64_t dinv = K.inv(H[col + 1][col]);
            for (uint32_t i = col + 2; i < n; ++i) {
                uint64_t f = K.mul(H[i][col], dinv);
                if (!f) continue;
                for (uint32_t j = 0; j < n; ++j) H[i][j] = K.sub(H[i][j], K.mul(f, H[col + 1][j]));
                for (uint32_t j = 0; j < n; ++j) H[j][col + 1] = K.add(H[j][col + 1], K.mul(f, H[j][i]));
            }
        }
        std::vector<uint64_t> roots;
        Vec p(n + 1), sub(n, 0);
        for (uint32_t i = 0; i + 1 < n; ++i) sub[i + 1] = H[i + 1][i];
        for (uint64_t lam = 0; lam < K.ell; ++lam) {
            p[0] = 1;
            for (uint32_t k = 1; k <= n; ++k) {
                uint64_t v = K.mul(K.sub(H[k - 1][k - 1], lam), p[k - 1]);
                uint64_t prod = 1;
                int sign = 1;
                for (uint32_t i = 1; i < k; ++i) {
                    prod = K.mul(prod, sub[k - i]);
                    uint64_t term = K.mul(K.mul(H[k - 1 - i][k - 1], prod), p[k - 1 - i]);
                    if (sign > 0)
                        v = K.sub(v, term);
                    else
                        v = K.add(v, term);
                    sign = -sign;
                }
                p[k] = v;
            }
            if (p[n] == 0) roots.push_back(lam);
        }
        return roots;
    }

    std::vector<Vec> omega_vectors() {
        std::deque<Space> queue;
        std::vector<Vec> done;
        Space full;
        for (uint32_t i = 0; i < r; ++i) {
            Vec e(r, 0);
            e[i] = 1;
            full.rows.push_back(e);
            full.pivots.push_back(i);
        }
        queue.push_back(std::move(full));
        while (!queue.empty()) {
            Space sp = std::move(queue.front());
            queue.pop_front();
            if (sp.rows.size() == 1) {
                done.push_back(sp.rows[0]);
                continue;
            }
            bool split = false;
            for (uint32_t t = sp.next_t; t < r && !split; ++t) {
                if (t == id_class) continue;
                uint32_t n = uint32_t(sp.rows.size());
                std::vector<Vec> B(n); // columns: coords of A_t * basis_j
                bool scalar = true;
                for (uint32_t j = 0; j < n; ++j) {
                    B[j] = coords_in(sp, mat_apply(t, sp.rows[j]));
                    for (uint32_t i = 0; i < n && scalar; ++i)
                        if (i != j && B[j][i] != 0) scalar = false;
                }
                if (scalar) {
                    uint64_t d = B[0][0];
                    for (uint32_t j = 1; j < n && scalar; ++j)
                        if (B[j][j] != d) scalar = false;
                }
                if (scalar) continue;
                auto lams = eigenvalues(B);
                std::vector<Space> pieces;
                for (uint64_t lam : lams) {
                    // Kernel of (B - lam I).
                    std::vector<Vec> M(n, Vec(n, 0));
                    for (uint32_t j = 0; j < n; ++j) {
                        for (uint32_t i = 0; i < n; ++i) M[i][j] = B[j][i];
                        M[j][j] = K.sub(M[j][j], lam);
                    }
                    std::vector<uint32_t> piv;
                    echelonize(K, M, piv);
                    std::vector<bool> is_piv(n, false);
                    for (uint32_t c : piv) is_piv[c] = true;
                    Space piece;
                    piece.next_t = t + 1;
                    for (uint32_t free = 0; free < n; ++free) {
                        if (is_piv[free]) continue;
                        Vec k(n, 0);
                        k[free] = 1;
                        for (uint32_t i = 0; i < piv.size(); ++i)
                            k[piv[i]] = K.sub(0, M[i][free]);
                        // Back to global coordinates.
                        Vec g(r, 0);
                        for (uint32_t i = 0; i < n; ++i)
                            if (k[i])
                                for (uint32_t j = 0; j < r; ++j)
                                    g[j] = K.add(g[j], K.mul(k[i], sp.rows[i][j]));
                        piece.rows.push_back(std::move(g));
                    }
                    echelonize(K, piece.rows, piece.pivots);
                    if (!piece.rows.empty()) pieces.push_back(std::move(piece));
                }
                uint32_t tot = 0;
                for (auto& pc : pieces) tot += uint32_t(pc.rows.size());
                if (tot != n) throw std::logic_error("Dixon: eigenspace split lost dimensions");
                for (auto& pc : pieces) queue.push_back(std::move(pc));
                split = true;
            }
            if (!split) throw std::logic_error("Dixon: space did not split to dimension 1");
        }
        if (done.size() != r) throw std::logic_error("Dixon: wrong eigenvector count");
        // Normalize so the identity-class coordinate equals 1.
        for (auto& v : done) {
            if (v[id_class] == 0) throw std::logic_error("Dixon: zero identity coordinate");
            uint64_t f = K.inv(v[id_class]);
            for (auto& x : v) x = K.mul(x, f);
        }
        return done;
    }

    CharTable lift(const std::vector<Vec>& omegas) {
        CharTable table;
        table.G = &G;
        uint64_t n = G.order() % K.ell;
        for (const Vec& w : omegas) {
            // Degree.
            uint64_t s = 0;
            for (uint32_t k = 0; k < r; ++k)
                s = K.add(s, K.mul(K.mul(w[k], w[inv_class[k]]), K.inv(cls[k].size % K.ell)));
            uint64_t d2 = K.mul(n, K.inv(s));
            long long deg = -1;
            for (long long d = 1; uint64_t(d) * d <= G.order(); ++d)
                if (K.mul(d % K.ell, d % K.ell) == d2) {
                    if (deg != -1) throw std::logic_error("Dixon: ambiguous degree");
                    deg = d;
                }
            if (deg < 0) throw std::logic_error("Dixon: no degree found");
            // Values mod ell.
            Vec chat(r);
            for (uint32_t k = 0; k < r; ++k)
                chat[k] = K.mul(K.mul(uint64_t(deg) % K.ell, w[k]), K.inv(cls[k].size % K.ell));
            // Exact lift class by class.
            Character chi{&G, false, std::vector<Cyc>(r)};
            for (uint32_t k = 0; k < r; ++k) {
                uint64_t nk = orders[k];
                uint64_t z = K.pow(root, (K.ell - 1) / nk);
                uint64_t zinv = K.inv(z);
                uint64_t ninv = K.inv(nk % K.ell);
                Cyc val;
                long long msum = 0;
                for (uint64_t t = 0; t < nk; ++t) {
                    uint64_t acc = 0;
                    uint64_t zp = 1; // zinv^(s t)
                    uint64_t step = K.pow(zinv, t);
                    for (uint64_t sdx = 0; sdx < nk; ++sdx) {
                        acc = K.add(acc, K.mul(chat[powmap[k][sdx]], zp));
                        zp = K.mul(zp, step);
                    }
                    uint64_t m = K.mul(acc, ninv);
                    if (m > uint64_t(deg))
                        throw std::logic_error("Dixon: multiplicity out of range");
                    if (m) val += Cyc::root_term(long(nk), long(t), Rational((long long)m));
                    msum += (long long)m;
                }
                if (msum != deg) throw std::logic_error("Dixon: eigenvalue multiplicities != degree");
                chi.vals[k] = val;
            }
            table.irr.push_back(std::move(chi));
        }
        return table;
    }
};

bool cyclic_generator(const Group& g, Elem& gen_out) {
    for (const Elem& e : g.elems)
        if (g.element_order(e) == g.order()) {
            gen_out = e;
            return true;
        }
    return false;
}

void sort_table(CharTable& t) {
    std::stable_sort(t.irr.begin(), t.irr.end(), [](const Character& a, const Character& b) {
        long long da = a.degree_int(), db = b.degree_int();
        if (da != db) return da < db;
        return std::lexicographical_compare(a.vals.begin(), a.vals.end(), b.vals.begin(),
                                            b.vals.end());
    });
}

} // namespace

CharTable char_table(const Group& g, const TableLimits& lim) {
    const auto& cls = g.classes();

    if (g.product) {
        CharTable ta = char_table(*g.product->corner_factor, lim);
        CharTable tb = char_table(*g.product->middle_factor, lim);
        if (ta.irr.size() * tb.irr.size() != cls.size())
            throw std::logic_error(g.name + ": product class count mismatch");
        CharTable out;
        out.G = &g;
        for (uint32_t ia = 0; ia < ta.irr.size(); ++ia)
            for (uint32_t ib = 0; ib < tb.irr.size(); ++ib)
                out.irr.push_back(product_character(g, ta, ia, tb, ib));
        sort_table(out);
        return out;
    }

    // Cyclic fast path.
    if (cls.size() == g.order()) {
        Elem gen;
        if (cyclic_generator(g, gen)) {
            long n = long(g.order());
            CharTable out;
            out.G = &g;
            std::vector<uint32_t> cls_of_power(n);
            Elem x{mat_identity(), 0};
            for (long m = 0; m < n; ++m) {
                cls_of_power[m] = g.class_of(g.index_of(x));
                x = g.mul(x, gen);
            }
            for (long j = 0; j < n; ++j) {
                Character chi{&g, false, std::vector<Cyc>(n)};
                for (long m = 0; m < n; ++m)
                    chi.vals[cls_of_power[m]] = Cyc::zeta(n, (j * m) % n);
                out.irr.push_back(std::move(chi));
            }
            sort_table(out);
            return out;
        }
    }

    if (g.order() > lim.max_order || cls.size() > lim.max_classes)
        throw TooLargeError(g.name + ": exceeds character-table gates (order " +
                            std::to_string(g.order()) + ", classes " +
                            std::to_string(cls.size()) + ")");

    DixonEngine engine(g);
    CharTable table = engine.lift(engine.omega_vectors());
    sort_table(table);
    return table;
}

} // namespace rbc
