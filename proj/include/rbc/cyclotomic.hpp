#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rbc/rational.hpp"

namespace rbc {

/// Exact element of Q(zeta_N), stored as a sparse sum of rational multiples
/// of roots of unity zeta_N^k.
///
/// The representation is canonical: for every prime power p^a || N, the
/// relation sum_{j mod p} zeta_N^(k + j*N/p) = 0 is used to eliminate all
/// exponents whose base-p digit at position a-1 equals p-1, and the
/// conductor is reduced by the gcd of the surviving exponents.  Two values
/// are equal iff their canonical forms are identical.
class Cyc {
public:
    Cyc() : n_(1) {}
    Cyc(const Rational& r) : n_(1) {
        if (!r.is_zero()) terms_.push_back({0, r});
    }
    Cyc(long long v) : Cyc(Rational(v)) {}

    /// zeta_N^k
    static Cyc zeta(long n, long k);
    /// c * zeta_N^k
    static Cyc root_term(long n, long k, const Rational& c);
    /// Quadratic Gauss sum of F_q, q = p^e:  equals sqrt(q) when
    /// q = 1 mod 4 and i*sqrt(q) when q = 3 mod 4.
    static Cyc gauss_sqrt(long p, long e);

    long conductor() const { return n_; }
    const std::vector<std::pair<long, Rational>>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const { return n_ == 1; }
    Rational rational_value() const; // throws unless is_rational()

    Cyc operator-() const;
    friend Cyc operator+(const Cyc& a, const Cyc& b);
    friend Cyc operator-(const Cyc& a, const Cyc& b);
    friend Cyc operator*(const Cyc& a, const Cyc& b);
    Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
    Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
    Cyc& operator*=(const Cyc& o) { return *this = *this * o; }

    Cyc scaled(const Rational& r) const;

    /// Complex conjugate (zeta^k -> zeta^-k).
    Cyc conj() const;
    /// Galois twist zeta^k -> zeta^(a*k); requires gcd(a, N) = 1.
    Cyc galois(long a) const;

    friend bool operator==(const Cyc& a, const Cyc& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    /// Total order used for deterministic tie-breaking; not numeric.
    friend bool operator<(const Cyc& a, const Cyc& b);

    std::complex<double> embed() const;

    std::string str() const;

private:
    void canonicalize();

    long n_;
    std::vector<std::pair<long, Rational>> terms_; // sorted by exponent
};

} // namespace rbc
