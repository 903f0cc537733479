#pragma once

// Curves y^2 = x^3 + A x^2 + B x over a generic coefficient field, their
// chord-tangent group law in affine coordinates, torsion-order search, and
// the Z/4Z Tate normal form with its conversion to this model.

#include "mwforge/field.hpp"

#include <optional>
#include <stdexcept>

namespace mwforge {

template <class K>
struct ec_point {
    bool infinite = true;
    K x{};
    K y{};

    static ec_point infinity() { return ec_point{}; }
    static ec_point affine(K px, K py) { return ec_point{false, std::move(px), std::move(py)}; }

    bool operator==(const ec_point& o) const {
        if (infinite || o.infinite) return infinite == o.infinite;
        return x == o.x && y == o.y;
    }
    bool operator!=(const ec_point& o) const { return !(*this == o); }
};

template <class K>
struct curve_ab {
    K A;
    K B;

    curve_ab(K a, K b) : A(std::move(a)), B(std::move(b)) {
        if (is_zero(B)) throw std::domain_error("singular curve: B = 0");
        K disc = A * A - four(B);
        if (is_zero(disc)) throw std::domain_error("singular curve: A^2 - 4B = 0");
    }

    // discriminant proxy B^2 (A^2 - 4B)
    K disc_proxy() const { return B * B * (A * A - four(B)); }

    static K four(const K& v) {
        K t = v + v;
        return t + t;
    }

    bool operator==(const curve_ab& o) const { return A == o.A && B == o.B; }
};

template <class K>
K curve_rhs(const curve_ab<K>& c, const K& x) {
    return x * (x * x + c.A * x + c.B);
}

template <class K>
bool on_curve(const curve_ab<K>& c, const ec_point<K>& P) {
    if (P.infinite) return true;
    return P.y * P.y == curve_rhs(c, P.x);
}

template <class K>
ec_point<K> neg(const ec_point<K>& P) {
    if (P.infinite) return P;
    return ec_point<K>::affine(P.x, zero_like(P.y) - P.y);
}

template <class K>
ec_point<K> add(const curve_ab<K>& c, const ec_point<K>& P, const ec_point<K>& Q) {
    if (P.infinite) return Q;
    if (Q.infinite) return P;
    K lam = zero_like(c.A);
    if (P.x == Q.x) {
        if (P.y == zero_like(P.y) - Q.y) return ec_point<K>::infinity();
        // tangent: (3x^2 + 2Ax + B) / 2y
        K x2 = P.x * P.x;
        K num = x2 + x2 + x2 + (c.A + c.A) * P.x + c.B;
        lam = num / (P.y + P.y);
    } else {
        lam = (Q.y - P.y) / (Q.x - P.x);
    }
    K x3 = lam * lam - c.A - P.x - Q.x;
    K y3 = lam * (P.x - x3) - P.y;
    return ec_point<K>::affine(std::move(x3), std::move(y3));
}

template <class K>
ec_point<K> sub(const curve_ab<K>& c, const ec_point<K>& P, const ec_point<K>& Q) {
    return add(c, P, neg(Q));
}

template <class K>
ec_point<K> dbl(const curve_ab<K>& c, const ec_point<K>& P) {
    return add(c, P, P);
}

template <class K>
ec_point<K> mul_scalar(const curve_ab<K>& c, long n, const ec_point<K>& P) {
    ec_point<K> acc = ec_point<K>::infinity();
    ec_point<K> base = n < 0 ? neg(P) : P;
    unsigned long k = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    while (k) {
        if (k & 1) acc = add(c, acc, base);
        if (k >>= 1) base = dbl(c, base);
    }
    return acc;
}

// Least n <= bound with nP = infinity; absent when the order exceeds bound.
// The default bound 12 is the maximal torsion order over Q.
template <class K>
std::optional<int> point_order_bounded(const curve_ab<K>& c, const ec_point<K>& P, int bound = 12) {
    if (P.infinite) return 1;
    ec_point<K> acc = P;
    for (int n = 1; n <= bound; ++n) {
        if (acc.infinite) return n;
        if (n < bound) acc = add(c, acc, P);
    }
    return std::nullopt;
}

// Lift an x-coordinate to a curve point with the canonical square root,
// absent when x^3 + Ax^2 + Bx is not a square.
template <class K>
std::optional<ec_point<K>> lift_x(const curve_ab<K>& c, const K& x) {
    auto y = field_sqrt(curve_rhs(c, x));
    if (!y) return std::nullopt;
    return ec_point<K>::affine(x, *y);
}

// ---------------------------------------------------------------------------
// Tate normal form for torsion Z/4Z: Y^2 + aXY + abY = X^3 + bX^2 with
// ab(a^2 - 16b) != 0; (0,0) has order 4 on it.

template <class K>
struct tate_curve {
    K a;
    K b;

    tate_curve(K av, K bv) : a(std::move(av)), b(std::move(bv)) {
        if (is_zero(a) || is_zero(b)) throw std::domain_error("degenerate Tate parameters: ab = 0");
        K a2 = a * a;
        K b16 = curve_ab<K>::four(curve_ab<K>::four(b));
        if (is_zero(a2 - b16)) throw std::domain_error("degenerate Tate parameters: a^2 - 16b = 0");
    }
};

template <class K>
struct tate_conversion {
    curve_ab<K> curve;
    ec_point<K> torsion;  // order-4 point (4b, 4ab)
};

// Model change to y^2 = x^3 + Ax^2 + Bx with A = a^2 - 8b, B = 16 b^2,
// carrying the order-4 point to (4b, 4ab). Verified on construction: the
// point satisfies the curve equation and doubles to the 2-torsion (0, 0),
// and A^2 - 4B = a^2 (a^2 - 16b), so both nonsingularity conditions agree.
template <class K>
tate_conversion<K> tate_to_ab(const tate_curve<K>& tc) {
    K b4 = curve_ab<K>::four(tc.b);
    K b8 = b4 + b4;
    K A = tc.a * tc.a - b8;
    K B = b4 * b4;
    curve_ab<K> c(A, B);
    ec_point<K> T = ec_point<K>::affine(b4, curve_ab<K>::four(tc.a * tc.b));
    if (!on_curve(c, T)) throw std::logic_error("torsion point fails the curve equation");
    ec_point<K> T2 = dbl(c, T);
    ec_point<K> two_tors = ec_point<K>::affine(zero_like(A), zero_like(A));
    if (T2 != two_tors) throw std::logic_error("torsion point does not double to (0,0)");
    return {std::move(c), std::move(T)};
}

// ---------------------------------------------------------------------------
// Specialization t -> t0 from Q(t) down to Q. Absent when a denominator
// vanishes or the specialized curve is singular.

inline std::optional<curve_ab<rational>> specialize_curve(const curve_ab<ratfunc>& c,
                                                          const rational& t0) {
    auto A = c.A.eval(t0);
    auto B = c.B.eval(t0);
    if (!A || !B) return std::nullopt;
    if (B->is_zero()) return std::nullopt;
    rational disc = *A * *A - rational(4) * *B;
    if (disc.is_zero()) return std::nullopt;
    return curve_ab<rational>(*A, *B);
}

inline std::optional<ec_point<rational>> specialize_point(const ec_point<ratfunc>& P,
                                                          const rational& t0) {
    if (P.infinite) return ec_point<rational>::infinity();
    auto x = P.x.eval(t0);
    auto y = P.y.eval(t0);
    if (!x || !y) return std::nullopt;
    return ec_point<rational>::affine(*x, *y);
}

}  // namespace mwforge
