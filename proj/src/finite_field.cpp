#include "rbc/finite_field.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <mutex>
#include <stdexcept>

namespace rbc {

namespace {

// Conway polynomials x^e + c_{e-1} x^{e-1} + ... + c_0 for the supported
// (p, e); fixed so representatives are reproducible across runs.
const std::map<std::pair<int, int>, std::vector<int>>& conway_table() {
    static const std::map<std::pair<int, int>, std::vector<int>> tab = {
        {{3, 1}, {1}},          // x + 1, generator 2
        {{3, 2}, {2, 2}},       // x^2 + 2x + 2
        {{3, 4}, {2, 0, 0, 2}}, // x^4 + 2x^3 + 2
        {{5, 1}, {3}},          // x + 3, generator 2
        {{5, 2}, {2, 4}},       // x^2 + 4x + 2
        {{7, 1}, {4}},          // x + 4, generator 3
        {{7, 2}, {3, 6}},       // x^2 + 6x + 3
        {{11, 1}, {9}},         // x + 9, generator 2
        {{11, 2}, {2, 7}},      // x^2 + 7x + 2
        {{13, 1}, {11}},        // x + 11, generator 2
        {{13, 2}, {2, 12}},     // x^2 + 12x + 2
    };
    return tab;
}

std::vector<int> digits(int idx, int p, int e) {
    std::vector<int> d(e);
    for (int i = 0; i < e; ++i) { d[i] = idx % p; idx /= p; }
    return d;
}

int undigits(const std::vector<int>& d, int p) {
    int idx = 0;
    for (int i = int(d.size()) - 1; i >= 0; --i) idx = idx * p + d[i];
    return idx;
}

} // namespace

Fq::Fq(int p, int e) : p_(p), e_(e) {
    auto it = conway_table().find({p, e});
    if (it == conway_table().end())
        throw std::domain_error("Fq: unsupported field F_" + std::to_string(p) + "^" +
                                std::to_string(e));
    modulus_ = it->second;
    q_ = 1;
    for (int i = 0; i < e; ++i) q_ *= p;

    add_.resize(size_t(q_) * q_);
    mul_.resize(size_t(q_) * q_);
    neg_.resize(q_);
    inv_tab_.assign(q_, 0);
    frob_.resize(q_);
    log_.assign(q_, -1);
    pow_.assign(q_ - 1, 0);

    // Addition / negation: digitwise mod p.
    for (int a = 0; a < q_; ++a) {
        auto da = digits(a, p, e);
        std::vector<int> dn(e);
        for (int i = 0; i < e; ++i) dn[i] = (p - da[i]) % p;
        neg_[a] = uint8_t(undigits(dn, p));
        for (int b = 0; b < q_; ++b) {
            auto db = digits(b, p, e);
            std::vector<int> ds(e);
            for (int i = 0; i < e; ++i) ds[i] = (da[i] + db[i]) % p;
            add_[size_t(a) * q_ + b] = uint8_t(undigits(ds, p));
        }
    }

    // Multiplication: polynomial product reduced by the monic modulus.
    auto polymul = [&](int a, int b) {
        auto da = digits(a, p, e), db = digits(b, p, e);
        std::vector<int> prod(2 * e - 1, 0);
        for (int i = 0; i < e; ++i)
            for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        for (int d = 2 * e - 2; d >= e; --d) {
            int c = prod[d];
            if (c == 0) continue;
            prod[d] = 0;
            for (int i = 0; i < e; ++i)
                prod[d - e + i] = ((prod[d - e + i] - c * modulus_[i]) % p + p * p) % p;
        }
        prod.resize(e);
        return undigits(prod, p);
    };
    for (int a = 0; a < q_; ++a)
        for (int b = 0; b < q_; ++b) mul_[size_t(a) * q_ + b] = uint8_t(polymul(a, b));

    // Generator: root of the modulus (the class of x for e > 1, -c_0 for e = 1).
    gen_ = (e == 1) ? (p - modulus_[0]) % p : p;
    int x = 1;
    for (int k = 0; k < q_ - 1; ++k) {
        pow_[k] = x;
        if (log_[x] != -1) throw std::logic_error("Fq: modulus is not primitive");
        log_[x] = k;
        x = mul_[size_t(x) * q_ + gen_];
    }
    if (x != 1) throw std::logic_error("Fq: generator order mismatch");

    for (int a = 1; a < q_; ++a) inv_tab_[a] = uint8_t(pow_[(q_ - 1 - log_[a]) % (q_ - 1)]);
    for (int a = 0; a < q_; ++a) {
        int y = a;
        int r = a;
        for (int i = 1; i < p; ++i) r = mul_[size_t(r) * q_ + y];
        frob_[a] = uint8_t(r);
    }
}

int Fq::inv(int a) const {
    if (a == 0) throw std::domain_error("Fq: inverse of zero");
    return inv_tab_[a];
}

int Fq::pow(int a, long long n) const {
    if (a == 0) {
        if (n <= 0) throw std::domain_error("Fq: 0^n, n <= 0");
        return 0;
    }
    long long k = (long long)log_[a] * (n % (q_ - 1));
    k %= (q_ - 1);
    if (k < 0) k += q_ - 1;
    return pow_[k];
}

int Fq::gen_pow(long long k) const {
    k %= (q_ - 1);
    if (k < 0) k += q_ - 1;
    return pow_[k];
}

bool Fq::is_square(int a) const {
    if (a == 0) return true;
    return log_[a] % 2 == 0;
}

int Fq::least_nonsquare() const {
    for (int a = 2; a < q_; ++a)
        if (!is_square(a)) return a;
    throw std::logic_error("Fq: no nonsquare (q must be odd)");
}

long long Fq::element_order(int a) const {
    if (a == 0) throw std::domain_error("Fq: order of zero");
    long long n = q_ - 1;
    return n / std::gcd<long long>(n, log_[a]);
}

std::string Fq::elem_str(int a) const { return std::to_string(a); }

QuadExt::QuadExt(const Fq& base) : base_(&base) {
    ext_ = std::make_unique<Fq>(base.p(), 2 * base.e());
    const Fq& E = *ext_;
    int q = base.q(), Q = E.q();

    // Embed the base field: map the base generator to a root of the base
    // modulus in the extension (smallest root by index, fixed choice).
    // For e = 1 constants embed as themselves; handle uniformly by finding
    // a root r of the base modulus and sending the class of x to r.
    auto eval_base_modulus = [&](int r) {
        // x^e + sum c_i x^i at r, inside E.
        int v = E.pow(r, base.e());
        int rp = 1;
        for (int i = 0; i < base.e(); ++i) {
            int c = base.modulus()[i] % base.p();
            int cE = c; // constants have the same index in any F_p-algebra basis
            v = E.add(v, E.mul(cE, rp));
            rp = E.mul(rp, r);
        }
        return v;
    };
    int root = -1;
    for (int r = 0; r < Q; ++r)
        if (eval_base_modulus(r) == 0) { root = r; break; }
    if (root < 0) throw std::logic_error("QuadExt: no root of base modulus");

    embed_.resize(q);
    for (int a = 0; a < q; ++a) {
        auto d = digits(a, base.p(), base.e());
        int v = 0, rp = 1;
        for (int i = 0; i < base.e(); ++i) {
            v = E.add(v, E.mul(d[i], rp));
            rp = E.mul(rp, root);
        }
        embed_[a] = v;
    }

    project_.assign(Q, -1);
    for (int a = 0; a < q; ++a) {
        if (project_[embed_[a]] != -1) throw std::logic_error("QuadExt: embedding not injective");
        project_[embed_[a]] = a;
    }

    frobq_.resize(Q);
    for (int x = 0; x < Q; ++x) {
        int y = x;
        for (int i = 0; i < base.e(); ++i) y = E.frob(y);
        frobq_[x] = y;
    }
    for (int a = 0; a < q; ++a)
        if (frobq_[embed_[a]] != embed_[a])
            throw std::logic_error("QuadExt: Frobenius does not fix the base field");

    theta_ = base.p(); // the class of x in the extension
    coords_.assign(Q, {-1, -1});
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            int v = E.add(embed_[a], E.mul(embed_[b], theta_));
            if (coords_[v].first != -1) throw std::logic_error("QuadExt: {1,Y} not a basis");
            coords_[v] = {a, b};
        }

    n1gen_ = E.gen_pow(q - 1); // order q + 1
}

int QuadExt::norm(int x) const {
    int v = ext_->mul(x, frobq_[x]);
    int a = project_[v];
    if (a < 0) throw std::logic_error("QuadExt: norm not in base field");
    return a;
}

int QuadExt::from_coords(int a, int b) const {
    return ext_->add(embed_[a], ext_->mul(embed_[b], theta_));
}

std::vector<int> QuadExt::norm_one_subgroup() const {
    std::vector<int> out;
    int q = base_->q();
    int x = 1;
    for (int k = 0; k <= q; ++k) {
        out.push_back(x);
        x = ext_->mul(x, n1gen_);
    }
    if (x != 1) throw std::logic_error("QuadExt: norm-one generator order mismatch");
    return out;
}

namespace {
std::map<std::pair<int, int>, std::unique_ptr<Fq>> g_fields;
std::map<int, std::unique_ptr<QuadExt>> g_quad;
std::mutex g_mutex;
} // namespace

const Fq& field(int p, int e) {
    std::lock_guard<std::mutex> lock(g_mutex);
    auto key = std::make_pair(p, e);
    auto it = g_fields.find(key);
    if (it == g_fields.end()) it = g_fields.emplace(key, std::make_unique<Fq>(p, e)).first;
    return *it->second;
}

bool supported_q(int q) { return q == 5 || q == 7 || q == 9 || q == 11 || q == 13; }

const Fq& base_field(int q) {
    if (!supported_q(q)) throw std::domain_error("unsupported q: " + std::to_string(q));
    return q == 9 ? field(3, 2) : field(q, 1);
}

const QuadExt& quad_ext(int q) {
    const Fq& base = base_field(q);
    std::lock_guard<std::mutex> lock(g_mutex);
    auto it = g_quad.find(q);
    if (it == g_quad.end()) it = g_quad.emplace(q, std::make_unique<QuadExt>(base)).first;
    return *it->second;
}

} // namespace rbc
