#include "rbc/gl3.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace rbc {

namespace {

uint64_t gl3_order(int q) {
    uint64_t q3 = uint64_t(q) * q * q;
    return (q3 - 1) * (q3 - q) * (q3 - uint64_t(q) * q);
}

int rank3(const Fq& F, Mat m) {
    int rank = 0;
    for (int col = 0; col < 3 && rank < 3; ++col) {
        int pivot = -1;
        for (int row = rank; row < 3; ++row)
            if (m[3 * row + col] != 0) { pivot = row; break; }
        if (pivot < 0) continue;
        for (int j = 0; j < 3; ++j) std::swap(m[3 * pivot + j], m[3 * rank + j]);
        int pinv = F.inv(m[3 * rank + col]);
        for (int j = 0; j < 3; ++j) m[3 * rank + j] = uint8_t(F.mul(m[3 * rank + j], pinv));
        for (int row = 0; row < 3; ++row) {
            if (row == rank) continue;
            int f = m[3 * row + col];
            if (f == 0) continue;
            for (int j = 0; j < 3; ++j)
                m[3 * row + j] = uint8_t(F.sub(m[3 * row + j], F.mul(f, m[3 * rank + j])));
        }
        ++rank;
    }
    return rank;
}

} // namespace

int64_t Gl3Classes::lookup_key(int type, int p1, int p2, int p3) const {
    return ((int64_t(type) * q_ + p1) * q_ + p2) * q_ + p3;
}

Gl3Classes::Gl3Classes(int q) : q_(q), F_(&base_field(q)), order_(gl3_order(q)) {
    const Fq& F = *F_;
    lookup_.assign(9LL * q * q * q, -1);

    auto push = [&](int type, int p1, int p2, int p3, Mat rep, uint64_t cent,
                    const std::string& label) {
        lookup_[lookup_key(type, p1, p2, p3)] = int64_t(classes_.size());
        classes_.push_back(Cls{rep, order_ / cent, cent, type, label});
    };

    uint64_t qq = uint64_t(q);
    uint64_t cent_scalar = order_;
    uint64_t cent_j2j1 = qq * qq * qq * (qq - 1) * (qq - 1);
    uint64_t cent_j3 = qq * qq * (qq - 1);
    uint64_t cent_aab = (qq * qq - 1) * (qq * qq - qq) * (qq - 1);
    uint64_t cent_j2b = qq * (qq - 1) * (qq - 1);
    uint64_t cent_abc = (qq - 1) * (qq - 1) * (qq - 1);
    uint64_t cent_quad = (qq * qq - 1) * (qq - 1);
    uint64_t cent_cubic = qq * qq * qq - 1;

    for (int a = 1; a < q; ++a) {
        Mat s{};
        s[0] = s[4] = s[8] = uint8_t(a);
        push(1, a, 0, 0, s, cent_scalar, "scalar(" + std::to_string(a) + ")");
        Mat j2 = s;
        j2[3] = 1;
        push(2, a, 0, 0, j2, cent_j2j1, "J2+J1(" + std::to_string(a) + ")");
        Mat j3 = j2;
        j3[7] = 1;
        push(3, a, 0, 0, j3, cent_j3, "J3(" + std::to_string(a) + ")");
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b) {
            if (b == a) continue;
            Mat d{};
            d[0] = d[4] = uint8_t(a);
            d[8] = uint8_t(b);
            push(4, a, b, 0, d, cent_aab,
                 "diag(" + std::to_string(a) + "," + std::to_string(a) + "," + std::to_string(b) +
                     ")");
            Mat j = d;
            j[3] = 1;
            push(5, a, b, 0, j, cent_j2b,
                 "J2(" + std::to_string(a) + ")+" + std::to_string(b));
        }
    for (int a = 1; a < q; ++a)
        for (int b = a + 1; b < q; ++b)
            for (int c = b + 1; c < q; ++c) {
                Mat d{};
                d[0] = uint8_t(a);
                d[4] = uint8_t(b);
                d[8] = uint8_t(c);
                push(6, a, b, c, d, cent_abc,
                     "diag(" + std::to_string(a) + "," + std::to_string(b) + "," +
                         std::to_string(c) + ")");
            }
    // Irreducible quadratics x^2 + b1 x + b0.
    int nquad = 0;
    for (int b1 = 0; b1 < q; ++b1)
        for (int b0 = 0; b0 < q; ++b0) {
            bool irred = true;
            for (int r = 0; r < q && irred; ++r)
                if (F.add(F.mul(r, r), F.add(F.mul(b1, r), b0)) == 0) irred = false;
            if (!irred) continue;
            ++nquad;
            for (int c = 1; c < q; ++c) {
                Mat m{};
                m[1] = uint8_t(F.neg(b0));
                m[3] = 1;
                m[4] = uint8_t(F.neg(b1));
                m[8] = uint8_t(c);
                push(7, b0, b1, c, m, cent_quad,
                     "quad(" + std::to_string(b0) + "," + std::to_string(b1) + ")+" +
                         std::to_string(c));
            }
        }
    if (nquad != q * (q - 1) / 2) throw std::logic_error("Gl3Classes: quadratic count");
    // Irreducible cubics x^3 + a2 x^2 + a1 x + a0.
    int ncubic = 0;
    for (int a2 = 0; a2 < q; ++a2)
        for (int a1 = 0; a1 < q; ++a1)
            for (int a0 = 0; a0 < q; ++a0) {
                bool has_root = false;
                for (int r = 0; r < q && !has_root; ++r) {
                    int v = F.add(F.mul(F.mul(r, r), r),
                                  F.add(F.mul(a2, F.mul(r, r)), F.add(F.mul(a1, r), a0)));
                    if (v == 0) has_root = true;
                }
                if (has_root) continue;
                ++ncubic;
                Mat m{};
                m[2] = uint8_t(F.neg(a0));
                m[3] = 1;
                m[5] = uint8_t(F.neg(a1));
                m[7] = 1;
                m[8] = uint8_t(F.neg(a2));
                push(8, a0, a1, a2, m, cent_cubic,
                     "cubic(" + std::to_string(a0) + "," + std::to_string(a1) + "," +
                         std::to_string(a2) + ")");
            }
    if (ncubic != (q * q * q - q) / 3) throw std::logic_error("Gl3Classes: cubic count");

    if (int(classes_.size()) != q * q * q - q)
        throw std::logic_error("Gl3Classes: class count mismatch");
    uint64_t total = 0;
    for (const auto& c : classes_) total += c.size;
    if (total != order_) throw std::logic_error("Gl3Classes: class sizes do not sum to |GL3|");
    for (uint32_t i = 0; i < classes_.size(); ++i)
        if (classify(classes_[i].rep) != i)
            throw std::logic_error("Gl3Classes: classify(rep) mismatch");
}

uint32_t Gl3Classes::classify(const Mat& m) const {
    const Fq& F = *F_;
    auto M = [&](int i, int j) { return m[3 * i + j]; };
    int tr = F.add(M(0, 0), F.add(M(1, 1), M(2, 2)));
    int minors = 0;
    minors = F.add(minors, F.sub(F.mul(M(1, 1), M(2, 2)), F.mul(M(1, 2), M(2, 1))));
    minors = F.add(minors, F.sub(F.mul(M(0, 0), M(2, 2)), F.mul(M(0, 2), M(2, 0))));
    minors = F.add(minors, F.sub(F.mul(M(0, 0), M(1, 1)), F.mul(M(0, 1), M(1, 0))));
    int det = mat_det(F, m);
    // p(x) = x^3 + a2 x^2 + a1 x + a0
    int a2 = F.neg(tr), a1 = minors, a0 = F.neg(det);

    // Extract roots with multiplicity by synthetic division.
    std::vector<int> coeffs = {a0, a1, a2, 1}; // ascending degree
    std::vector<int> roots;
    for (int r = 0; r < q_; ++r) {
        for (;;) {
            if (coeffs.size() == 1) break;
            int v = 0;
            for (int i = int(coeffs.size()) - 1; i >= 0; --i) v = F.add(F.mul(v, r), coeffs[i]);
            if (v != 0) break;
            // Divide by (x - r).
            std::vector<int> qts(coeffs.size() - 1);
            int carry = coeffs.back();
            for (int i = int(coeffs.size()) - 2; i >= 0; --i) {
                qts[i] = carry;
                carry = F.add(coeffs[i], F.mul(r, carry));
            }
            coeffs = qts;
            roots.push_back(r);
        }
    }

    int64_t key;
    if (roots.size() == 3) {
        if (roots[0] == roots[2]) {
            int a = roots[0];
            Mat shifted = m;
            for (int i = 0; i < 3; ++i)
                shifted[3 * i + i] = uint8_t(F.sub(shifted[3 * i + i], a));
            int rk = rank3(F, shifted);
            key = lookup_key(rk == 0 ? 1 : (rk == 1 ? 2 : 3), a, 0, 0);
        } else if (roots[0] == roots[1] || roots[1] == roots[2]) {
            int a = (roots[0] == roots[1]) ? roots[0] : roots[1];
            int b = (roots[0] == roots[1]) ? roots[2] : roots[0];
            Mat shifted = m;
            for (int i = 0; i < 3; ++i)
                shifted[3 * i + i] = uint8_t(F.sub(shifted[3 * i + i], a));
            int rk = rank3(F, shifted);
            key = lookup_key(rk == 1 ? 4 : 5, a, b, 0);
        } else {
            key = lookup_key(6, roots[0], roots[1], roots[2]);
        }
    } else if (roots.size() == 1) {
        // Remaining quadratic x^2 + c1 x + c0 is irreducible.
        key = lookup_key(7, coeffs[0], coeffs[1], roots[0]);
    } else if (roots.empty()) {
        key = lookup_key(8, a0, a1, a2);
    } else {
        throw std::logic_error("Gl3Classes: impossible root pattern");
    }
    int64_t idx = lookup_[key];
    if (idx < 0) throw std::logic_error("Gl3Classes: unknown class");
    return uint32_t(idx);
}

namespace {
std::map<int, std::unique_ptr<Gl3Classes>> g_gl3;
std::mutex g_gl3_mutex;
} // namespace

const Gl3Classes& gl3_classes(int q) {
    if (q != 5) throw std::domain_error("gl3_classes: only q = 5 is supported");
    std::lock_guard<std::mutex> lock(g_gl3_mutex);
    auto it = g_gl3.find(q);
    if (it == g_gl3.end()) it = g_gl3.emplace(q, std::make_unique<Gl3Classes>(q)).first;
    return *it->second;
}

GroupPtr build_gl3_parabolic(int q) {
    auto g = std::make_shared<Group>();
    g->name = "GL3.P";
    g->q = q;
    g->F = &base_field(q);
    const Fq& F = *g->F;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d) {
                    if (F.sub(F.mul(a, d), F.mul(b, c)) == 0) continue;
                    for (int e = 1; e < q; ++e)
                        for (int x = 0; x < q; ++x)
                            for (int y = 0; y < q; ++y) {
                                Mat m = corner(a, b, c, d, e);
                                m[1] = uint8_t(x);
                                m[7] = uint8_t(y);
                                g->elems.push_back({m, 0});
                            }
                }
    g->finalize();
    return g;
}

} // namespace rbc
