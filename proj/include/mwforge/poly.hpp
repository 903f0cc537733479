#pragma once

// Dense univariate polynomials: zpoly over Z (the workhorse representation
// for gcd, squarefree decomposition and factoring) and poly over Q (the
// public coefficient type). Coefficient i is the coefficient of x^i; trailing
// zeros are trimmed; the zero polynomial has degree -1.

#include "mwforge/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mwforge {

// Products switch from schoolbook to Karatsuba above this degree.
inline constexpr std::size_t kKaratsubaThreshold = 32;

struct zpoly {
    std::vector<zint> c;

    zpoly() = default;
    explicit zpoly(std::vector<zint> coeffs) : c(std::move(coeffs)) { trim(); }
    static zpoly constant(const zint& k) { return zpoly(std::vector<zint>{k}); }
    static zpoly monomial(const zint& k, std::size_t deg) {
        std::vector<zint> v(deg + 1);
        v[deg] = k;
        return zpoly(std::move(v));
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const zint& lc() const {
        static const zint z0 = 0;
        return c.empty() ? z0 : c.back();
    }
    zint coeff(std::size_t i) const { return i < c.size() ? c[i] : zint(0); }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
    bool is_constant() const { return c.size() <= 1; }

    bool operator==(const zpoly& o) const { return c == o.c; }
    bool operator!=(const zpoly& o) const { return !(c == o.c); }
};

inline zpoly operator-(const zpoly& f) {
    zpoly r = f;
    for (auto& x : r.c) x = -x;
    return r;
}

inline zpoly operator+(const zpoly& f, const zpoly& g) {
    zpoly r;
    r.c.resize(std::max(f.c.size(), g.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = f.coeff(i) + g.coeff(i);
    r.trim();
    return r;
}

inline zpoly operator-(const zpoly& f, const zpoly& g) {
    zpoly r;
    r.c.resize(std::max(f.c.size(), g.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = f.coeff(i) - g.coeff(i);
    r.trim();
    return r;
}

namespace detail {

inline void mul_schoolbook(const zint* a, std::size_t na, const zint* b, std::size_t nb,
                           std::vector<zint>& out) {
    out.assign(na + nb - 1, zint(0));
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < nb; ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
}

inline void mul_rec(const zint* a, std::size_t na, const zint* b, std::size_t nb,
                    std::vector<zint>& out) {
    if (na == 0 || nb == 0) {
        out.clear();
        return;
    }
    if (std::min(na, nb) <= kKaratsubaThreshold) {
        mul_schoolbook(a, na, b, nb, out);
        return;
    }
    const std::size_t h = (std::max(na, nb) + 1) / 2;
    const std::size_t a_lo = std::min(na, h), b_lo = std::min(nb, h);
    // a = a0 + x^h a1, b = b0 + x^h b1
    std::vector<zint> z0, z2, z1;
    mul_rec(a, a_lo, b, b_lo, z0);
    const std::size_t a_hi = na - a_lo, b_hi = nb - b_lo;
    if (a_hi && b_hi)
        mul_rec(a + a_lo, a_hi, b + b_lo, b_hi, z2);
    std::vector<zint> as(std::max(a_lo, a_hi)), bs(std::max(b_lo, b_hi));
    for (std::size_t i = 0; i < as.size(); ++i)
        as[i] = (i < a_lo ? a[i] : zint(0)) + (i < a_hi ? a[a_lo + i] : zint(0));
    for (std::size_t i = 0; i < bs.size(); ++i)
        bs[i] = (i < b_lo ? b[i] : zint(0)) + (i < b_hi ? b[b_lo + i] : zint(0));
    mul_rec(as.data(), as.size(), bs.data(), bs.size(), z1);
    // z1 -= z0 + z2
    for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
    for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];
    out.assign(na + nb - 1, zint(0));
    for (std::size_t i = 0; i < z0.size(); ++i) out[i] += z0[i];
    for (std::size_t i = 0; i < z1.size(); ++i) out[h + i] += z1[i];
    for (std::size_t i = 0; i < z2.size(); ++i) out[2 * h + i] += z2[i];
}

}  // namespace detail

inline zpoly operator*(const zpoly& f, const zpoly& g) {
    if (f.is_zero() || g.is_zero()) return zpoly{};
    zpoly r;
    detail::mul_rec(f.c.data(), f.c.size(), g.c.data(), g.c.size(), r.c);
    r.trim();
    return r;
}

inline zpoly operator*(const zpoly& f, const zint& k) {
    if (k == 0) return zpoly{};
    zpoly r = f;
    for (auto& x : r.c) x *= k;
    return r;
}

inline zpoly pow(const zpoly& f, unsigned e) {
    zpoly r = zpoly::constant(1), b = f;
    while (e) {
        if (e & 1) r = r * b;
        if (e >>= 1) b = b * b;
    }
    return r;
}

inline zpoly derivative(const zpoly& f) {
    zpoly r;
    if (f.c.size() <= 1) return r;
    r.c.resize(f.c.size() - 1);
    for (std::size_t i = 1; i < f.c.size(); ++i) r.c[i - 1] = f.c[i] * static_cast<unsigned long>(i);
    r.trim();
    return r;
}

// gcd of |coefficients|; content of the zero polynomial is 0.
inline zint content(const zpoly& f) {
    zint g = 0;
    for (const auto& x : f.c) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

inline zpoly divexact(const zpoly& f, const zint& k) {
    if (k == 0) throw std::domain_error("division by zero constant");
    zpoly r = f;
    for (auto& x : r.c) {
        if (!mpz_divisible_p(x.get_mpz_t(), k.get_mpz_t()))
            throw std::domain_error("inexact constant division of polynomial");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
    }
    return r;
}

// Primitive part: content removed, sign of the leading coefficient kept.
inline zpoly primitive_part(const zpoly& f) {
    if (f.is_zero()) return f;
    return divexact(f, content(f));
}

// Exact division over Z; throws when g does not divide f.
inline zpoly divexact(const zpoly& f, const zpoly& g) {
    if (g.is_zero()) throw std::domain_error("polynomial division by zero");
    if (f.is_zero()) return zpoly{};
    if (f.degree() < g.degree()) throw std::domain_error("inexact polynomial division");
    zpoly rem = f;
    std::vector<zint> q(f.degree() - g.degree() + 1);
    while (!rem.is_zero() && rem.degree() >= g.degree()) {
        if (!mpz_divisible_p(rem.lc().get_mpz_t(), g.lc().get_mpz_t()))
            throw std::domain_error("inexact polynomial division");
        zint t;
        mpz_divexact(t.get_mpz_t(), rem.lc().get_mpz_t(), g.lc().get_mpz_t());
        std::size_t k = rem.degree() - g.degree();
        q[k] = t;
        for (std::size_t i = 0; i < g.c.size(); ++i) rem.c[k + i] -= t * g.c[i];
        rem.trim();
    }
    if (!rem.is_zero()) throw std::domain_error("inexact polynomial division");
    zpoly r(std::move(q));
    return r;
}

inline bool divides(const zpoly& g, const zpoly& f) {
    if (g.is_zero()) return f.is_zero();
    if (f.is_zero()) return true;
    if (f.degree() < g.degree()) return false;
    zpoly rem = f;
    while (!rem.is_zero() && rem.degree() >= g.degree()) {
        if (!mpz_divisible_p(rem.lc().get_mpz_t(), g.lc().get_mpz_t())) return false;
        zint t;
        mpz_divexact(t.get_mpz_t(), rem.lc().get_mpz_t(), g.lc().get_mpz_t());
        std::size_t k = rem.degree() - g.degree();
        for (std::size_t i = 0; i < g.c.size(); ++i) rem.c[k + i] -= t * g.c[i];
        rem.trim();
    }
    return rem.is_zero();
}

inline rational eval(const zpoly& f, const rational& x) {
    rational acc(0);
    for (std::size_t i = f.c.size(); i-- > 0;) acc = acc * x + rational(f.c[i]);
    return acc;
}

inline zint eval(const zpoly& f, const zint& x) {
    zint acc = 0;
    for (std::size_t i = f.c.size(); i-- > 0;) acc = acc * x + f.c[i];
    return acc;
}

// ---------------------------------------------------------------------------

class poly {
public:
    poly() = default;
    explicit poly(std::vector<rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    poly(const rational& k) : c_{k} { trim(); }
    poly(int k) : poly(rational(k)) {}
    static poly monomial(const rational& k, std::size_t deg) {
        std::vector<rational> v(deg + 1);
        v[deg] = k;
        return poly(std::move(v));
    }
    static poly variable() { return monomial(rational(1), 1); }
    static poly from_z(const zpoly& f) {
        std::vector<rational> v(f.c.size());
        for (std::size_t i = 0; i < f.c.size(); ++i) v[i] = rational(f.c[i]);
        return poly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : rational(0); }
    const rational& lc() const {
        static const rational z0;
        return c_.empty() ? z0 : c_.back();
    }
    const std::vector<rational>& coeffs() const { return c_; }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == rational(1); }

    bool operator==(const poly& o) const { return c_ == o.c_; }
    bool operator!=(const poly& o) const { return !(c_ == o.c_); }

    poly operator-() const {
        poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    poly operator+(const poly& o) const {
        std::vector<rational> v(std::max(c_.size(), o.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
        return poly(std::move(v));
    }
    poly operator-(const poly& o) const { return *this + (-o); }
    poly operator*(const poly& o) const;
    poly operator*(const rational& k) const {
        if (k.is_zero()) return poly();
        poly r = *this;
        for (auto& x : r.c_) x *= k;
        return r;
    }

    rational operator()(const rational& x) const {
        rational acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // f = content * primitive, primitive integral with positive leading
    // coefficient; content carries the sign. Zero splits as (0, 0).
    std::pair<rational, zpoly> content_split() const {
        if (is_zero()) return {rational(0), zpoly{}};
        zint l = 1;
        for (const auto& q : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.den().get_mpz_t());
        zpoly zf;
        zf.c.resize(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            zint scaled = c_[i].num() * (l / c_[i].den());
            zf.c[i] = scaled;
        }
        zint cont = content(zf);
        if (sign_of(zf.lc()) < 0) cont = -cont;
        zf = divexact(zf, cont);
        return {rational(cont, l), zf};
    }

    poly monic() const {
        if (is_zero()) return *this;
        return *this * lc().inverse();
    }

    poly derivative() const {
        if (c_.size() <= 1) return poly();
        std::vector<rational> v(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * rational(static_cast<long>(i));
        return poly(std::move(v));
    }

    std::string str(const std::string& var = "t") const;

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<rational> c_;
};

inline poly poly::operator*(const poly& o) const {
    if (is_zero() || o.is_zero()) return poly();
    auto [ca, pa] = content_split();
    auto [cb, pb] = o.content_split();
    return poly::from_z(pa * pb) * (ca * cb);
}

inline poly operator*(const rational& k, const poly& f) { return f * k; }

// Quotient/remainder over Q (divisor nonzero).
inline std::pair<poly, poly> divmod(const poly& f, const poly& g) {
    if (g.is_zero()) throw std::domain_error("polynomial division by zero");
    poly q, r = f;
    const rational gl = g.lc().inverse();
    while (!r.is_zero() && r.degree() >= g.degree()) {
        rational t = r.lc() * gl;
        std::size_t k = r.degree() - g.degree();
        poly term = poly::monomial(t, k);
        q = q + term;
        r = r - term * g;
    }
    return {q, r};
}

inline poly operator/(const poly& f, const poly& g) { return divmod(f, g).first; }
inline poly operator%(const poly& f, const poly& g) { return divmod(f, g).second; }

inline poly pow(const poly& f, unsigned e) {
    poly r(rational(1)), b = f;
    while (e) {
        if (e & 1) r = r * b;
        if (e >>= 1) b = b * b;
    }
    return r;
}

inline std::string poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const rational& q = c_[i];
        if (q.is_zero()) continue;
        std::string mag = q.abs().str();
        if (out.empty()) {
            out += q.is_negative() ? "-" : "";
        } else {
            out += q.is_negative() ? " - " : " + ";
        }
        const bool unit = (mag == "1");
        if (i == 0) {
            out += mag;
        } else {
            if (!unit) out += mag + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace mwforge
