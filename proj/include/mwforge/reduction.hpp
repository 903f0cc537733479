#pragma once

// Reduction of Q-curves and points modulo witness primes, the point-halving
// membership test via the halving quartic, and naive point counting. This is
// the engine behind independence certification and torsion bounding.

#include "mwforge/curve.hpp"
#include "mwforge/fp.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mwforge {

struct bad_reduction : std::domain_error {
    using std::domain_error::domain_error;
};

struct prime_field {
    std::uint64_t p;

    explicit prime_field(std::uint64_t prime) : p(prime) {
        if (prime == 2 || !is_prime_u64(prime)) throw std::domain_error("prime_field needs an odd prime");
    }
};

// A rational reduced mod p; absent when p divides the denominator.
inline std::optional<fp_el> reduce_mod(const rational& q, std::uint64_t p) {
    zint d = q.den() % static_cast<unsigned long>(p);
    if (d == 0) return std::nullopt;
    zint n = q.num() % static_cast<unsigned long>(p);
    if (n < 0) n += static_cast<unsigned long>(p);
    std::uint64_t nv = n.get_ui(), dv = d.get_ui();
    return fp_el{mulmod_u64(nv, inv_mod_u64(dv, p), p), p};
}

struct reduced_curve {
    curve_ab<fp_el> curve;
    std::uint64_t p;
};

inline std::optional<reduced_curve> try_reduce_curve(const curve_ab<rational>& c, const prime_field& F) {
    auto A = reduce_mod(c.A, F.p);
    auto B = reduce_mod(c.B, F.p);
    if (!A || !B) return std::nullopt;
    // good reduction: B^2 (A^2 - 4B) != 0 mod p
    fp_el disc = (*A * *A - curve_ab<fp_el>::four(*B)) * (*B * *B);
    if (disc.v == 0) return std::nullopt;
    return reduced_curve{curve_ab<fp_el>(*A, *B), F.p};
}

inline reduced_curve reduce_curve(const curve_ab<rational>& c, const prime_field& F) {
    auto rc = try_reduce_curve(c, F);
    if (!rc) throw bad_reduction("bad reduction at p = " + std::to_string(F.p));
    return *rc;
}

// Coordinate-wise reduction. The point at infinity reduces to infinity;
// an affine point whose denominators contain p lands at infinity, which is
// inconclusive for witness purposes, so it is reported as absent.
inline std::optional<ec_point<fp_el>> reduce_point(const ec_point<rational>& P, const reduced_curve& rc) {
    if (P.infinite) return ec_point<fp_el>::infinity();
    auto x = reduce_mod(P.x, rc.p);
    auto y = reduce_mod(P.y, rc.p);
    if (!x || !y) return std::nullopt;
    auto Q = ec_point<fp_el>::affine(*x, *y);
    if (!on_curve(rc.curve, Q)) throw std::logic_error("reduced point leaves the reduced curve");
    return Q;
}

// True iff P = 2Q for some Q in E(F_p). Roots of the halving quartic
// (x^2 - B)^2 - 4 x_P (x^3 + A x^2 + B x) are the candidate x(Q); each
// is lifted through a square root and confirmed by doubling.
inline bool is_halvable(const reduced_curve& rc, const ec_point<fp_el>& P) {
    if (P.infinite) return true;
    const std::uint64_t p = rc.p;
    const std::uint64_t A = rc.curve.A.v, B = rc.curve.B.v, xp = P.x.v;
    auto M = [&](std::uint64_t a, std::uint64_t b) { return mulmod_u64(a, b, p); };
    auto N = [&](std::uint64_t a) { return a == 0 ? 0 : p - a; };  // negation
    std::uint64_t x4 = M(4 % p, xp);
    fpv quartic{
        M(B, B),                            // B^2
        N(M(x4, B)),                        // -4 xP B
        N((M(2 % p, B) + M(x4, A)) % p),    // -2B - 4 xP A
        N(x4),                              // -4 xP
        1,
    };
    fpv_trim(quartic);
    for (std::uint64_t x0 : fpv_roots(quartic, p)) {
        std::uint64_t w = fpv_eval(fpv{0, B, A, 1}, x0, p);
        auto y0 = sqrt_mod_p_u64(w, p);
        if (!y0) continue;
        for (std::uint64_t yv : {*y0, p - *y0}) {
            ec_point<fp_el> Q = ec_point<fp_el>::affine({x0, p}, {yv % p, p});
            if (dbl(rc.curve, Q) == P) return true;
        }
    }
    return false;
}

// True iff P - kT is halvable for some k in {0,1,2,3}; T of order dividing 4.
inline bool in_double_plus_torsion(const reduced_curve& rc, const ec_point<fp_el>& P,
                                   const ec_point<fp_el>& T) {
    ec_point<fp_el> cur = P;
    for (int k = 0; k < 4; ++k) {
        if (is_halvable(rc, cur)) return true;
        cur = sub(rc.curve, cur, T);
    }
    return false;
}

// Exact |E(F_p)| including infinity via the quadratic-character sum.
inline std::uint64_t count_points_naive(const reduced_curve& rc) {
    const std::uint64_t p = rc.p;
    if (p > (1ull << 20)) throw std::domain_error("count_points_naive: prime above 2^20 guard");
    std::vector<signed char> chi(p, -1);
    chi[0] = 0;
    for (std::uint64_t x = 1; x <= (p - 1) / 2; ++x) chi[mulmod_u64(x, x, p)] = 1;
    const std::uint64_t A = rc.curve.A.v, B = rc.curve.B.v;
    long long sum = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t w = fpv_eval(fpv{0, B, A, 1}, x, p);
        sum += chi[w];
    }
    return static_cast<std::uint64_t>(static_cast<long long>(p) + 1 + sum);
}

}  // namespace mwforge
