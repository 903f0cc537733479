#pragma once

// Quadratic-section machinery: impose a candidate x-coordinate on a family
// over Q(t) and extract the square-class condition, parametrize genus-0
// conditions from a rational point, push families through substitutions, and
// normalize to an integer polynomial model comparable with a printed one.

#include "mwforge/curve.hpp"
#include "mwforge/poly_gcd.hpp"
#include "mwforge/ratfunc.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace mwforge {

// Square-class residue of a rational function: odd-multiplicity parts of
// numerator and denominator times the squarefree part of the scale. The sign
// is part of the class and is kept.
inline zpoly square_class_residue(const ratfunc& w) {
    if (w.is_zero()) throw std::domain_error("square class of zero");
    zpoly odd = zpoly::constant(1);
    for (const auto& [a, m] : yun_z(w.num_primitive()))
        if (m & 1) odd = odd * a;
    for (const auto& [b, m] : yun_z(w.den_primitive()))
        if (m & 1) odd = odd * b;
    zint k = squarefree_part(w.scale().num() * w.scale().den());
    return odd * k;
}

struct section_condition {
    zpoly s;           // squarefree; content squarefree; sign significant
    ratfunc source_x;  // the imposed x-coordinate
};

// The condition "X is the x-coordinate of a point": X^3 + A X^2 + B X = [].
// Returned with all square factors stripped; s constant-square iff X already
// lifts.
inline section_condition impose_x(const curve_ab<ratfunc>& family, const ratfunc& X) {
    if (X.is_zero()) throw std::domain_error("impose_x: X = 0 is the 2-torsion abscissa");
    ratfunc W = curve_rhs(family, X);
    if (W.is_zero()) throw std::domain_error("impose_x: X^3 + AX^2 + BX vanishes identically");
    zpoly s = square_class_residue(W);
    // class invariant: W and s agree modulo squares
    if (!is_square_ratfunc(W / ratfunc(poly::from_z(s))).has_value())
        throw std::logic_error("square-class residue drifted from its source");
    return {std::move(s), X};
}

struct conic_param {
    ratfunc t_of_m;
    ratfunc z_of_m;
};

// Line-pencil parametrization of z^2 = s(t) through the rational point
// (t0, z0); s of degree 1 or 2 and squarefree. The identity
// s(t(m)) = z(m)^2 is asserted symbolically before returning.
inline conic_param parametrize_conic(const poly& s, const rational& t0, const rational& z0) {
    if (s.degree() < 1 || s.degree() > 2)
        throw std::domain_error("parametrize_conic: degree must be 1 or 2");
    if (poly_gcd(s, s.derivative()).degree() > 0)
        throw std::domain_error("parametrize_conic: condition is not squarefree");
    if (z0 * z0 != s(t0)) throw std::domain_error("parametrize_conic: point is not on the conic");

    const rational c2 = s.coeff(2), c1 = s.coeff(1);
    // lines z = z0 + m (t - t0); the second intersection is at
    // t - t0 = (2 c2 t0 + c1 - 2 z0 m) / (m^2 - c2)
    poly m = poly::variable();
    poly vnum = poly(c2 * t0 * rational(2) + c1) - m * (z0 + z0);
    poly vden = m * m - poly(c2);
    ratfunc v(vnum, vden);
    ratfunc t_of_m = ratfunc(poly(t0)) + v;
    ratfunc z_of_m = ratfunc(poly(z0)) + ratfunc(m) * v;

    ratfunc lhs = compose(ratfunc(s), t_of_m);
    if (lhs != z_of_m * z_of_m)
        throw std::logic_error("conic parametrization identity failed");
    return {std::move(t_of_m), std::move(z_of_m)};
}

// t -> g(r) on the family coefficients; the curve constructor re-checks
// nonsingularity over Q(r) and rejects degenerate substitutions.
inline curve_ab<ratfunc> apply_substitution(const curve_ab<ratfunc>& family, const ratfunc& g) {
    if (g.is_constant()) throw std::domain_error("apply_substitution: substitution is constant");
    try {
        return curve_ab<ratfunc>(compose(family.A, g), compose(family.B, g));
    } catch (const std::domain_error&) {
        throw std::domain_error("apply_substitution: substitution degenerates the family");
    }
}

namespace detail {

// pairwise-coprime squarefree basis refinement
inline void gcd_free_insert(std::vector<zpoly>& basis, zpoly f) {
    if (f.degree() < 1) return;
    for (std::size_t i = 0; i < basis.size() && f.degree() > 0; ++i) {
        zpoly g = gcd_z(f, basis[i]);
        if (g.degree() < 1) continue;
        zpoly brem = divexact(basis[i], g);
        f = divexact(f, g);
        basis[i] = g;
        if (brem.degree() > 0) basis.push_back(brem);
    }
    if (f.degree() > 0) basis.push_back(f);
}

// valuation of a nonzero poly at a squarefree basis element
inline int basis_valuation(const zpoly& f, const zpoly& e) {
    int v = 0;
    zpoly cur = f;
    while (divides(e, cur)) {
        cur = divexact(cur, e);
        ++v;
    }
    return v;
}

// Pairwise-coprime integer base: smooth factors by trial division, perfect
// powers reduced to their roots, leftover composites split against existing
// atoms by gcd until coprime. Valuations over the resulting base are exact
// for every integer that was inserted.
inline void coprime_base_insert(std::vector<zint>& atoms, zint q) {
    if (q <= 1) return;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        zint g;
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), atoms[i].get_mpz_t());
        if (g == 1) continue;
        if (g == q && g == atoms[i]) return;
        zint a = atoms[i];
        atoms.erase(atoms.begin() + static_cast<long>(i));
        coprime_base_insert(atoms, g);
        coprime_base_insert(atoms, a / g);
        coprime_base_insert(atoms, q / g);
        return;
    }
    atoms.push_back(q);
}

inline void int_atoms_insert(std::vector<zint>& atoms, zint n) {
    n = abs(n);
    if (n <= 1) return;
    for (std::uint64_t p = 2; p <= 100000 && n > 1; p = (p == 2 ? 3 : p + 2)) {
        if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
        coprime_base_insert(atoms, zint(static_cast<unsigned long>(p)));
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        zint bound = zint(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p);
        if (n > 1 && n < bound) {  // remainder is prime
            coprime_base_insert(atoms, n);
            return;
        }
    }
    if (n > 1) {
        while (mpz_perfect_power_p(n.get_mpz_t())) {
            for (unsigned long e = mpz_sizeinbase(n.get_mpz_t(), 2); e >= 2; --e) {
                zint root, rem;
                mpz_rootrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), e);
                if (rem == 0 && root > 1) {
                    n = root;
                    break;
                }
            }
        }
        coprime_base_insert(atoms, n);
    }
}

inline int atom_valuation(const zint& n, const zint& a) {
    int v = 0;
    zint cur = abs(n);
    while (cur % a == 0) {
        cur /= a;
        ++v;
    }
    return v;
}

}  // namespace detail

struct normalized_model {
    poly A;        // integer coefficients
    poly B;        // integer coefficients
    ratfunc twist;  // lambda with A = lambda^2 A_in, B = lambda^4 B_in
};

// The unique minimal lambda making (lambda^2 A, lambda^4 B) an integer
// polynomial pair: per irreducible q (and per content prime),
// v_q(lambda) = max(ceil(-v_q(A)/2), ceil(-v_q(B)/4)), which also strips
// every removable square. Deterministic and idempotent.
inline normalized_model normalize_to_polynomial_model(const curve_ab<ratfunc>& family) {
    auto ceil_div = [](int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); };

    std::vector<zpoly> basis;
    auto feed = [&](const zpoly& f) {
        for (const auto& [part, mult] : yun_z(f)) {
            (void)mult;
            detail::gcd_free_insert(basis, part);
        }
    };
    feed(family.A.num_primitive());
    feed(family.A.den_primitive());
    feed(family.B.num_primitive());
    feed(family.B.den_primitive());

    ratfunc lambda(rational(1));
    ratfunc rvar(poly::variable());
    for (const auto& e : basis) {
        int va = detail::basis_valuation(family.A.num_primitive(), e) -
                 detail::basis_valuation(family.A.den_primitive(), e);
        int vb = detail::basis_valuation(family.B.num_primitive(), e) -
                 detail::basis_valuation(family.B.den_primitive(), e);
        int vl = std::max(ceil_div(-va, 2), ceil_div(-vb, 4));
        if (vl != 0) lambda = lambda * ratfunc(poly::from_z(e)).pow(vl);
    }

    std::vector<zint> atoms;
    detail::int_atoms_insert(atoms, family.A.scale().num());
    detail::int_atoms_insert(atoms, family.A.scale().den());
    detail::int_atoms_insert(atoms, family.B.scale().num());
    detail::int_atoms_insert(atoms, family.B.scale().den());
    rational gamma(1);
    for (const auto& a : atoms) {
        int va = detail::atom_valuation(family.A.scale().num(), a) -
                 detail::atom_valuation(family.A.scale().den(), a);
        int vb = detail::atom_valuation(family.B.scale().num(), a) -
                 detail::atom_valuation(family.B.scale().den(), a);
        int vl = std::max(ceil_div(-va, 2), ceil_div(-vb, 4));
        if (vl != 0) gamma = gamma * rational(a).pow(vl);
    }
    lambda = lambda * ratfunc(gamma);

    ratfunc A2 = lambda * lambda * family.A;
    ratfunc B2 = lambda.pow(4) * family.B;
    if (!A2.den_primitive().is_one() || !B2.den_primitive().is_one() ||
        !A2.scale().is_integer() || !B2.scale().is_integer())
        throw std::logic_error("normalization did not clear denominators");
    return {A2.num_poly(), B2.num_poly(), lambda};
}

// mu with A2 = mu^2 A1, B2 = mu^4 B1, when the curves are square-scaling
// equivalent; absent otherwise.
inline std::optional<ratfunc> is_square_scaling_equivalent(const curve_ab<ratfunc>& c1,
                                                           const curve_ab<ratfunc>& c2) {
    if (c1.A.is_zero() != c2.A.is_zero()) return std::nullopt;
    if (c1.A.is_zero()) {
        auto musq = is_square_ratfunc(c2.B / c1.B);
        if (!musq) return std::nullopt;
        return is_square_ratfunc(*musq);
    }
    ratfunc mu2 = c2.A / c1.A;
    auto mu = is_square_ratfunc(mu2);
    if (!mu) return std::nullopt;
    if (c2.B != mu2 * mu2 * c1.B) return std::nullopt;
    return mu;
}

}  // namespace mwforge
