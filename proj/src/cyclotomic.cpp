#include "rbc/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rbc {

namespace {

std::vector<std::pair<long, long>> factorize(long n) {
    std::vector<std::pair<long, long>> out;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            long a = 0;
            while (n % p == 0) { n /= p; ++a; }
            out.push_back({p, a});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

long ipow(long b, long e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

Cyc Cyc::zeta(long n, long k) { return root_term(n, k, Rational(1)); }

Cyc Cyc::root_term(long n, long k, const Rational& c) {
    if (n <= 0) throw std::domain_error("Cyc: conductor must be positive");
    Cyc z;
    z.n_ = n;
    k %= n;
    if (k < 0) k += n;
    if (!c.is_zero()) z.terms_.push_back({k, c});
    z.canonicalize();
    return z;
}

Cyc Cyc::gauss_sqrt(long p, long e) {
    // Hasse-Davenport: G(F_{p^e}) = (-1)^(e-1) * G(F_p)^e.
    Cyc g;
    {
        Cyc s;
        for (long t = 1; t < p; ++t) {
            // Legendre symbol via Euler's criterion.
            long acc = 1;
            for (long i = 0; i < (p - 1) / 2; ++i) acc = (acc * t) % p;
            long sign = (acc == 1) ? 1 : -1;
            s += root_term(p, t, Rational(sign));
        }
        g = s;
    }
    Cyc out(1);
    for (long i = 0; i < e; ++i) out *= g;
    if (e % 2 == 0) out = -out;
    return out;
}

Rational Cyc::rational_value() const {
    if (n_ != 1) throw std::domain_error("Cyc: not rational");
    return terms_.empty() ? Rational(0) : terms_[0].second;
}

Cyc Cyc::operator-() const {
    Cyc out = *this;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
}

Cyc Cyc::scaled(const Rational& r) const {
    Cyc out;
    out.n_ = n_;
    if (!r.is_zero())
        for (auto& t : terms_) out.terms_.push_back({t.first, t.second * r});
    out.canonicalize();
    return out;
}

Cyc operator+(const Cyc& a, const Cyc& b) {
    long n = std::lcm(a.n_, b.n_);
    Cyc out;
    out.n_ = n;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    for (auto& t : a.terms_) out.terms_.push_back({t.first * (n / a.n_), t.second});
    for (auto& t : b.terms_) out.terms_.push_back({t.first * (n / b.n_), t.second});
    out.canonicalize();
    return out;
}

Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }

Cyc operator*(const Cyc& a, const Cyc& b) {
    long n = std::lcm(a.n_, b.n_);
    Cyc out;
    out.n_ = n;
    out.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (auto& s : a.terms_)
        for (auto& t : b.terms_)
            out.terms_.push_back(
                {(s.first * (n / a.n_) + t.first * (n / b.n_)) % n, s.second * t.second});
    out.canonicalize();
    return out;
}

Cyc Cyc::conj() const {
    Cyc out;
    out.n_ = n_;
    for (auto& t : terms_) out.terms_.push_back({t.first == 0 ? 0 : n_ - t.first, t.second});
    out.canonicalize();
    return out;
}

Cyc Cyc::galois(long a) const {
    if (std::gcd(a % n_ + n_, n_) != 1) throw std::domain_error("Cyc::galois: a not coprime to N");
    Cyc out;
    out.n_ = n_;
    for (auto& t : terms_) {
        long k = (t.first * a) % n_;
        if (k < 0) k += n_;
        out.terms_.push_back({k, t.second});
    }
    out.canonicalize();
    return out;
}

bool operator<(const Cyc& a, const Cyc& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    size_t m = std::min(a.terms_.size(), b.terms_.size());
    for (size_t i = 0; i < m; ++i) {
        if (a.terms_[i].first != b.terms_[i].first) return a.terms_[i].first < b.terms_[i].first;
        if (a.terms_[i].second != b.terms_[i].second) return a.terms_[i].second < b.terms_[i].second;
    }
    return a.terms_.size() < b.terms_.size();
}

std::complex<double> Cyc::embed() const {
    std::complex<double> z(0, 0);
    const double tau = 6.283185307179586476925286766559;
    for (auto& t : terms_) {
        double ang = tau * double(t.first) / double(n_);
        z += t.second.to_double() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return z;
}

std::string Cyc::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i) {
        auto& [k, c] = terms_[i];
        if (i) s += " + ";
        if (k == 0) {
            s += c.str();
        } else {
            if (c != Rational(1)) s += c.str() + "*";
            s += "z" + std::to_string(n_) + "^" + std::to_string(k);
        }
    }
    return s;
}

void Cyc::canonicalize() {
    for (;;) {
        // Merge duplicate exponents, drop zero coefficients.
        std::map<long, Rational> acc;
        for (auto& t : terms_) {
            long k = t.first % n_;
            if (k < 0) k += n_;
            auto it = acc.find(k);
            if (it == acc.end())
                acc.emplace(k, t.second);
            else
                it->second += t.second;
        }

        // Per-prime digit elimination.
        for (auto [p, a] : factorize(n_)) {
            long pa = ipow(p, a);
            long pa1 = pa / p;
            long step = n_ / p;
            bool again = true;
            while (again) {
                again = false;
                std::map<long, Rational> next;
                for (auto& [k, c] : acc) {
                    if (c.is_zero()) continue;
                    long digit = (k % pa) / pa1;
                    if (digit == p - 1) {
                        again = true;
                        for (long j = 1; j < p; ++j) {
                            long k2 = (k + j * step) % n_;
                            auto it = next.find(k2);
                            if (it == next.end())
                                next.emplace(k2, -c);
                            else
                                it->second -= c;
                        }
                    } else {
                        auto it = next.find(k);
                        if (it == next.end())
                            next.emplace(k, c);
                        else
                            it->second += c;
                    }
                }
                acc.swap(next);
            }
        }

        terms_.clear();
        for (auto& [k, c] : acc)
            if (!c.is_zero()) terms_.push_back({k, c});

        if (terms_.empty()) { n_ = 1; return; }

        long g = n_;
        for (auto& t : terms_) g = std::gcd(g, t.first);
        if (g <= 1) return;
        n_ /= g;
        for (auto& t : terms_) t.first /= g;
        // Exponents changed base; canonicalize in the reduced conductor.
    }
}

} // namespace rbc
