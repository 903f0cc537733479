#pragma once

// Reduced rational functions over Q(t). Canonical representation: a rational
// scale c and coprime primitive integer polynomials n, d with positive
// leading coefficients, value = c * n / d. Zero is (0, 1, 1). Equal values
// have bit-identical representations. The public num/den view is num = c*n
// (a Q-polynomial) over den = d (primitive integer, positive lc), matching
// the serialized form.

#include "mwforge/poly.hpp"
#include "mwforge/poly_gcd.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mwforge {

class ratfunc {
public:
    ratfunc() : c_(0), n_(zpoly::constant(1)), d_(zpoly::constant(1)) {}
    ratfunc(const rational& k) : ratfunc() {
        if (!k.is_zero()) c_ = k;
    }
    ratfunc(int k) : ratfunc(rational(k)) {}
    ratfunc(const poly& p) : ratfunc(p, poly(rational(1))) {}
    ratfunc(const poly& num, const poly& den) {
        if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
        auto [cn, pn] = num.content_split();
        auto [cd, pd] = den.content_split();
        if (num.is_zero()) {
            *this = ratfunc();
            return;
        }
        assign_reduced(cn / cd, pn, pd);
    }

    static ratfunc from_parts(const rational& c, zpoly n, zpoly d) {
        ratfunc f;
        if (d.is_zero()) throw std::domain_error("rational function with zero denominator");
        if (c.is_zero() || n.is_zero()) return f;
        zint cn = content(n), cd = content(d);
        if (sign_of(n.lc()) < 0) cn = -cn;
        if (sign_of(d.lc()) < 0) cd = -cd;
        f.assign_reduced(c * rational(cn, cd), divexact(n, cn), divexact(d, cd));
        return f;
    }

    bool is_zero() const { return c_.is_zero(); }
    bool is_constant() const { return n_.is_constant() && d_.is_constant(); }
    rational const_value() const {
        if (!is_constant()) throw std::domain_error("non-constant rational function");
        return c_;
    }

    const rational& scale() const { return c_; }
    const zpoly& num_primitive() const { return n_; }
    const zpoly& den_primitive() const { return d_; }

    poly num_poly() const { return poly::from_z(n_) * c_; }
    poly den_poly() const { return poly::from_z(d_); }

    bool operator==(const ratfunc& o) const { return c_ == o.c_ && n_ == o.n_ && d_ == o.d_; }
    bool operator!=(const ratfunc& o) const { return !(*this == o); }

    ratfunc operator-() const {
        ratfunc r = *this;
        r.c_ = -r.c_;
        return r;
    }

    ratfunc operator+(const ratfunc& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        // over the lcm of the denominators:
        // c1 n1/d1 + c2 n2/d2 = (a1 b2 n1 (d2/g) + a2 b1 n2 (d1/g)) / (b1 b2 (d1/g) d2)
        const zint a1 = c_.num(), b1 = c_.den(), a2 = o.c_.num(), b2 = o.c_.den();
        zpoly g = gcd_z(d_, o.d_);
        zpoly d1r = divexact(d_, g), d2r = divexact(o.d_, g);
        zpoly num = (n_ * d2r) * (a1 * b2) + (o.n_ * d1r) * (a2 * b1);
        return from_parts(rational(zint(1), b1 * b2), num, d1r * o.d_);
    }
    ratfunc operator-(const ratfunc& o) const { return *this + (-o); }

    ratfunc operator*(const ratfunc& o) const {
        if (is_zero() || o.is_zero()) return ratfunc();
        // cross-cancel so only small gcds are needed
        zpoly g1 = gcd_z(n_, o.d_), g2 = gcd_z(o.n_, d_);
        ratfunc r;
        r.c_ = c_ * o.c_;
        r.n_ = divexact(n_, g1) * divexact(o.n_, g2);
        r.d_ = divexact(d_, g2) * divexact(o.d_, g1);
        return r;
    }

    ratfunc operator/(const ratfunc& o) const {
        if (o.is_zero()) throw std::domain_error("rational function division by zero");
        ratfunc inv;
        inv.c_ = o.c_.inverse();
        inv.n_ = o.d_;
        inv.d_ = o.n_;
        return *this * inv;
    }

    ratfunc pow(long e) const {
        if (e < 0) return (ratfunc(rational(1)) / *this).pow(-e);
        ratfunc r(rational(1)), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    // Evaluation; absent where the denominator vanishes.
    std::optional<rational> eval(const rational& x) const {
        rational den = mwforge::eval(d_, x);
        if (den.is_zero()) return std::nullopt;
        return c_ * mwforge::eval(n_, x) / den;
    }

    std::string str(const std::string& var = "t") const {
        poly np = num_poly();
        if (d_.is_one()) return np.str(var);
        return "(" + np.str(var) + ") / (" + poly::from_z(d_).str(var) + ")";
    }

private:
    void assign_reduced(const rational& c, zpoly n, zpoly d) {
        zpoly g = gcd_z(n, d);
        n_ = divexact(n, g);
        d_ = divexact(d, g);
        c_ = c;
        if (c_.is_zero() || n_.is_zero()) {
            *this = ratfunc();
            return;
        }
        // callers pass primitive n, d; only leading-coefficient signs remain
        if (sign_of(n_.lc()) < 0) {
            c_ = -c_;
            n_ = -n_;
        }
        if (sign_of(d_.lc()) < 0) {
            c_ = -c_;
            d_ = -d_;
        }
    }

    rational c_;
    zpoly n_, d_;
};

// Exact substitution t -> g(r); throws when the denominator of f vanishes
// identically under the substitution.
inline ratfunc compose(const ratfunc& f, const ratfunc& g) {
    if (f.is_zero()) return ratfunc();
    const zpoly& N = f.num_primitive();
    const zpoly& D = f.den_primitive();
    const zint ag = g.scale().num(), bg = g.scale().den();
    const zpoly Gn_scaled = g.num_primitive() * ag;
    const zpoly Gd_scaled = g.den_primitive() * bg;
    const int dN = N.degree(), dD = D.degree();
    const int dmax = std::max(dN, dD);

    std::vector<zpoly> gd_pow(dmax + 1);
    gd_pow[0] = zpoly::constant(1);
    for (int i = 1; i <= dmax; ++i) gd_pow[i] = gd_pow[i - 1] * Gd_scaled;

    auto homogenize = [&](const zpoly& P, int deg) {
        zpoly H;
        for (int k = deg; k >= 0; --k) {
            H = H * Gn_scaled + gd_pow[deg - k] * P.coeff(k);
        }
        return H;
    };
    zpoly HN = homogenize(N, dN);
    zpoly HD = homogenize(D, dD);
    if (HD.is_zero()) throw std::domain_error("substitution annihilates the denominator");
    if (dD >= dN)
        HN = HN * gd_pow[dD - dN];
    else
        HD = HD * gd_pow[dN - dD];
    return ratfunc::from_parts(f.scale(), HN, HD);
}

// Square root in Q(t) when one exists: multiplicity parities from squarefree
// decomposition of numerator and denominator plus an exact square test on
// the scale. Canonical choice: numerator with positive leading coefficient.
inline std::optional<ratfunc> is_square_ratfunc(const ratfunc& f) {
    if (f.is_zero()) return ratfunc();
    auto cs = is_square_rational(f.scale());
    if (!cs) return std::nullopt;
    zpoly rn = zpoly::constant(1), rd = zpoly::constant(1);
    for (const auto& [a, m] : yun_z(f.num_primitive())) {
        if (m & 1) return std::nullopt;
        rn = rn * pow(a, static_cast<unsigned>(m / 2));
    }
    for (const auto& [b, m] : yun_z(f.den_primitive())) {
        if (m & 1) return std::nullopt;
        rd = rd * pow(b, static_cast<unsigned>(m / 2));
    }
    ratfunc root = ratfunc::from_parts(*cs, rn, rd);
    if (!(root * root == f)) throw std::logic_error("square root reconstruction failed");
    return root;
}

}  // namespace mwforge
