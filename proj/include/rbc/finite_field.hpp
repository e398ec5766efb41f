#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace rbc {

/// F_q, q = p^e, with all arithmetic table-driven.
///
/// Elements are indices 0..q-1; the index encodes the coefficient vector of
/// the residue polynomial in base p (index = sum c_i p^i), so index order is
/// the lexicographic order on coefficient vectors used everywhere for
/// deterministic representatives.  The modulus is a fixed primitive
/// (Conway-style) polynomial per (p, e); the constructor verifies that its
/// root generates the multiplicative group, which also proves irreducibility.
class Fq {
public:
    Fq(int p, int e);

    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
    int neg(int a) const { return neg_[a]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    int inv(int a) const;
    int pow(int a, long long n) const;

    /// Frobenius x -> x^p.
    int frob(int a) const { return frob_[a]; }

    int zero() const { return 0; }
    int one() const { return 1; }
    /// Fixed generator of the multiplicative group.
    int gen() const { return gen_; }
    /// Discrete log base gen(); -1 for 0.
    int log(int a) const { return log_[a]; }
    /// gen()^k
    int gen_pow(long long k) const;

    bool is_square(int a) const;
    /// Smallest non-square by index order.
    int least_nonsquare() const;
    long long element_order(int a) const;

    std::string elem_str(int a) const;

    /// The fixed modulus table; exposed for tests.
    const std::vector<int>& modulus() const { return modulus_; }

private:
    int p_, e_, q_;
    int gen_;
    std::vector<int> modulus_; // c_0..c_{e-1}; monic x^e + sum c_i x^i
    std::vector<uint8_t> add_, mul_, neg_, inv_tab_, frob_;
    std::vector<int> log_;
    std::vector<int> pow_;
};

/// The quadratic extension F_{q^2}/F_q realized as F_p[(2e)] with an explicit
/// subfield embedding; carries the norm map and the {1, Y} coordinate tables
/// used for regular-representation matrices.
class QuadExt {
public:
    explicit QuadExt(const Fq& base);

    const Fq& base() const { return *base_; }
    const Fq& ext() const { return *ext_; }

    /// Base-field element into the extension.
    int embed(int a) const { return embed_[a]; }
    /// Index in the base field if the element lies in it, else -1.
    int project(int x) const { return project_[x]; }

    /// x^q (the nontrivial automorphism over the base field).
    int frobq(int x) const { return frobq_[x]; }
    /// Norm x * x^q, returned as a base-field index.
    int norm(int x) const;

    /// Coordinates (a, b) with x = a + b*Y, a and b base-field indices.
    std::pair<int, int> coords(int x) const { return coords_[x]; }
    int from_coords(int a, int b) const;
    int Y() const { return theta_; }

    /// Fixed generator of the norm-one subgroup (order q+1).
    int norm_one_gen() const { return n1gen_; }
    /// All norm-one elements, as powers of norm_one_gen().
    std::vector<int> norm_one_subgroup() const;

private:
    const Fq* base_;
    std::unique_ptr<Fq> ext_;
    std::vector<int> embed_, project_, frobq_;
    std::vector<std::pair<int, int>> coords_;
    int theta_;
    int n1gen_;
};

/// Shared registry so a field is built once per (p, e).
const Fq& field(int p, int e);
const QuadExt& quad_ext(int q);
/// The base field F_q for a supported q in {5, 7, 9, 11, 13}.
const Fq& base_field(int q);
bool supported_q(int q);

} // namespace rbc
