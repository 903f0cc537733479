#pragma once

// Factorization of univariate polynomials over Q into irreducibles:
// Cantor-Zassenhaus over F_p, multifactor quadratic Hensel lifting, and
// Zassenhaus subset recombination. Each claimed-irreducible factor records
// the certificate that grounds the claim.

#include "mwforge/fp.hpp"
#include "mwforge/poly.hpp"
#include "mwforge/poly_gcd.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace mwforge {

// ---------------------------------------------------------------------------
// Factorization over F_p.

struct fp_factorization {
    std::uint64_t lc = 1;
    std::vector<std::pair<fpv, int>> factors;  // monic irreducible, exponent
};

namespace detail {

inline std::uint64_t fnv1a_seed(const fpv& f, std::uint64_t p) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(p);
    for (auto c : f) mix(c);
    return h;
}

inline bool fpv_less(const fpv& a, const fpv& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

// squarefree factorization over F_p including the derivative-vanishing case
inline void fp_squarefree(const fpv& f, std::uint64_t p, int mult,
                          std::vector<std::pair<fpv, int>>& out) {
    fpv w = fpv_monic(f, p);
    if (fpv_deg(w) <= 0) return;
    fpv d = fpv_deriv(w, p);
    if (d.empty()) {
        // w = v(x^p) = v(x)^p over F_p
        fpv v((w.size() - 1) / p + 1, 0);
        for (std::size_t i = 0; i < w.size(); i += p) v[i / p] = w[i];
        fp_squarefree(v, p, mult * static_cast<int>(p), out);
        return;
    }
    fpv c = fpv_gcd(w, d, p);
    fpv rest = fpv_divmod(w, c, p).first;
    int i = 1;
    while (fpv_deg(rest) > 0) {
        fpv y = fpv_gcd(rest, c, p);
        fpv part = fpv_divmod(rest, y, p).first;
        if (fpv_deg(part) > 0) out.emplace_back(fpv_monic(part, p), mult * i);
        rest = y;
        c = fpv_divmod(c, y, p).first;
        ++i;
    }
    if (fpv_deg(c) > 0) {
        // remaining factors have multiplicity divisible by p: c = v(x^p)
        fpv v((c.size() - 1) / p + 1, 0);
        for (std::size_t j = 0; j < c.size(); j += p) v[j / p] = c[j];
        fp_squarefree(v, p, mult * static_cast<int>(p), out);
    }
}

// equal-degree splitting of a squarefree product of degree-d irreducibles
inline void fp_edf(const fpv& g, int d, std::uint64_t p, std::mt19937_64& rng,
                   std::vector<fpv>& out) {
    if (fpv_deg(g) == d) {
        out.push_back(fpv_monic(g, p));
        return;
    }
    zint pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), p, static_cast<unsigned long>(d));
    const zint pd_half = (pd - 1) / 2;
    std::uniform_int_distribution<std::uint64_t> du(0, p - 1);
    while (true) {
        fpv r(static_cast<std::size_t>(2 * d), 0);
        for (auto& c : r) c = du(rng);
        r.push_back(1);
        fpv share = fpv_gcd(r, g, p);
        if (fpv_deg(share) > 0 && fpv_deg(share) < fpv_deg(g)) {
            fp_edf(share, d, p, rng, out);
            fp_edf(fpv_monic(fpv_divmod(g, share, p).first, p), d, p, rng, out);
            return;
        }
        fpv h = fpv_powmod(r, pd_half, g, p);
        h = fpv_sub(h, fpv{1}, p);
        if (h.empty()) continue;
        fpv split = fpv_gcd(h, g, p);
        if (fpv_deg(split) > 0 && fpv_deg(split) < fpv_deg(g)) {
            fp_edf(split, d, p, rng, out);
            fp_edf(fpv_monic(fpv_divmod(g, split, p).first, p), d, p, rng, out);
            return;
        }
    }
}

}  // namespace detail

// Complete factorization over F_p (p an odd prime), deterministic: the
// equal-degree splitting consumes a PRNG seeded from (f, p).
inline fp_factorization factor_mod_p(fpv f, std::uint64_t p) {
    if (p == 2 || !is_prime_u64(p)) throw std::domain_error("factor_mod_p needs an odd prime");
    for (auto& c : f) c %= p;
    fpv_trim(f);
    if (f.empty()) throw std::domain_error("factor_mod_p of zero");
    fp_factorization out;
    out.lc = f.back();
    if (fpv_deg(f) == 0) return out;

    std::vector<std::pair<fpv, int>> sqf;
    detail::fp_squarefree(f, p, 1, sqf);
    std::mt19937_64 rng(detail::fnv1a_seed(f, p));

    for (auto& [part, mult] : sqf) {
        // distinct-degree splitting, then equal-degree splitting
        fpv w = part;
        fpv h{0, 1};  // x
        for (int d = 1; 2 * d <= fpv_deg(w); ++d) {
            h = fpv_powmod(h, zint(static_cast<unsigned long>(p)), w, p);
            fpv g = fpv_gcd(fpv_sub(h, fpv{0, 1}, p), w, p);
            if (fpv_deg(g) > 0) {
                std::vector<fpv> irr;
                detail::fp_edf(g, d, p, rng, irr);
                for (auto& q : irr) out.factors.emplace_back(q, mult);
                w = fpv_monic(fpv_divmod(w, g, p).first, p);
                h = fpv_rem(h, w, p);
            }
        }
        if (fpv_deg(w) > 0) out.factors.emplace_back(w, mult);
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return detail::fpv_less(a.first, b.first); });
    return out;
}

// ---------------------------------------------------------------------------
// Hensel lifting.

namespace detail {

inline zpoly zp_mod(const zpoly& f, const zint& m) {
    zpoly r = f;
    for (auto& c : r.c) {
        c %= m;
        if (c < 0) c += m;
    }
    r.trim();
    return r;
}

// division by a monic divisor with coefficients mod m
inline std::pair<zpoly, zpoly> zp_divmod_monic(const zpoly& f, const zpoly& g, const zint& m) {
    zpoly q, r = zp_mod(f, m);
    if (g.is_zero() || g.lc() != 1) throw std::logic_error("zp_divmod_monic needs a monic divisor");
    if (r.degree() < g.degree()) return {q, r};
    q.c.assign(r.degree() - g.degree() + 1, zint(0));
    while (!r.is_zero() && r.degree() >= g.degree()) {
        zint t = r.lc();
        std::size_t k = r.degree() - g.degree();
        q.c[k] = t;
        for (std::size_t i = 0; i < g.c.size(); ++i) {
            zint v = (r.c[k + i] - t * g.c[i]) % m;
            if (v < 0) v += m;
            r.c[k + i] = v;
        }
        r.trim();
    }
    q.trim();
    return {q, r};
}

// One quadratic Hensel step: from f = g h (mod m), s g + t h = 1 (mod m),
// h monic, to the same congruences mod m^2.
struct hensel_pair {
    zpoly g, h, s, t;
};

inline hensel_pair hensel_step(const zint& m, const zpoly& f, const hensel_pair& in) {
    const zint m2 = m * m;
    const zpoly e = zp_mod(f - in.g * in.h, m2);
    auto [q, r] = zp_divmod_monic(zp_mod(in.s * e, m2), in.h, m2);
    zpoly g2 = zp_mod(in.g + in.t * e + q * in.g, m2);
    zpoly h2 = zp_mod(in.h + r, m2);
    zpoly b = zp_mod(in.s * g2 + in.t * h2 - zpoly::constant(1), m2);
    auto [c, d] = zp_divmod_monic(zp_mod(in.s * b, m2), h2, m2);
    zpoly s2 = zp_mod(in.s - d, m2);
    zpoly t2 = zp_mod(in.t - in.t * b - c * g2, m2);
    return {g2, h2, s2, t2};
}

// extended euclid in F_p[x]: s a + t b = 1 with deg s < deg b, deg t < deg a
inline std::pair<fpv, fpv> fp_bezout(const fpv& a, const fpv& b, std::uint64_t p) {
    fpv r0 = a, r1 = b;
    fpv s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r] = fpv_divmod(r0, r1, p);
        fpv s2 = fpv_sub(s0, fpv_mul(q, s1, p), p);
        fpv t2 = fpv_sub(t0, fpv_mul(q, t1, p), p);
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (fpv_deg(r0) != 0) throw std::logic_error("fp_bezout of non-coprime inputs");
    std::uint64_t inv = inv_mod_u64(r0[0], p);
    return {fpv_scale(s0, inv, p), fpv_scale(t0, inv, p)};
}

struct hensel_node {
    std::size_t lo, hi, mid;
    hensel_pair v;  // value split: node product = g * h (g = [lo,mid), h = [mid,hi))
};

// Lift monic factors u (f = lc(f) prod u mod p, squarefree) to modulus
// m = p^(2^k) >= target. Returns monic factors mod m; leaf 0 absorbs lc
// internally and is re-normalized before returning.
inline std::vector<zpoly> hensel_lift(const zpoly& f, std::uint64_t p,
                                      const std::vector<fpv>& u, const zint& target,
                                      zint& modulus_out) {
    const zint pz(static_cast<unsigned long>(p));
    if (u.size() == 1) {
        zint m = pz;
        while (m < target) m = m * m;
        modulus_out = m;
        zint lcinv;
        zint lcm = f.lc() % m;
        if (lcm < 0) lcm += m;
        mpz_invert(lcinv.get_mpz_t(), lcm.get_mpz_t(), m.get_mpz_t());
        return {zp_mod(f * lcinv, m)};
    }

    // node products over F_p, leftmost leaf carries lc(f)
    struct build_node { std::size_t lo, hi, mid; };
    std::vector<hensel_node> nodes;
    auto product_fp = [&](std::size_t lo, std::size_t hi) {
        fpv prod{1};
        for (std::size_t i = lo; i < hi; ++i) prod = fpv_mul(prod, u[i], p);
        if (lo == 0) {
            zint l = f.lc() % pz;
            if (l < 0) l += pz;
            prod = fpv_scale(prod, l.get_ui(), p);
        }
        return prod;
    };
    auto to_z = [](const fpv& v) {
        zpoly r;
        r.c.assign(v.begin(), v.end());
        r.trim();
        return r;
    };
    // breadth-first tree over index ranges
    std::vector<std::pair<std::size_t, std::size_t>> ranges{{0, u.size()}};
    for (std::size_t qi = 0; qi < ranges.size(); ++qi) {
        auto [lo, hi] = ranges[qi];
        if (hi - lo == 1) continue;
        std::size_t mid = lo + (hi - lo) / 2;
        fpv gp = product_fp(lo, mid), hp = product_fp(mid, hi);
        auto [sp, tp] = fp_bezout(gp, hp, p);
        nodes.push_back({lo, hi, mid, {to_z(gp), to_z(hp), to_z(sp), to_z(tp)}});
        ranges.emplace_back(lo, mid);
        ranges.emplace_back(mid, hi);
    }

    zint m = pz;
    while (m < target) {
        // one quadratic step for every node, top-down; the parent's halves
        // provide the node inputs
        std::map<std::pair<std::size_t, std::size_t>, zpoly> value;
        value[{0, u.size()}] = zp_mod(f, m * m);
        for (auto& nd : nodes) {
            const zpoly& fv = value.at({nd.lo, nd.hi});
            nd.v = hensel_step(m, fv, nd.v);
            value[{nd.lo, nd.mid}] = nd.v.g;
            value[{nd.mid, nd.hi}] = nd.v.h;
        }
        m = m * m;
    }
    modulus_out = m;

    std::vector<zpoly> lifted(u.size());
    std::map<std::pair<std::size_t, std::size_t>, zpoly> value;
    value[{0, u.size()}] = zp_mod(f, m);
    for (auto& nd : nodes) {
        value[{nd.lo, nd.mid}] = nd.v.g;
        value[{nd.mid, nd.hi}] = nd.v.h;
    }
    for (std::size_t i = 0; i < u.size(); ++i) lifted[i] = value.at({i, i + 1});
    // re-normalize the lc-carrying leaf to monic
    zint lcm = f.lc() % m;
    if (lcm < 0) lcm += m;
    zint lcinv;
    mpz_invert(lcinv.get_mpz_t(), lcm.get_mpz_t(), m.get_mpz_t());
    lifted[0] = zp_mod(lifted[0] * lcinv, m);
    return lifted;
}

inline zpoly symmetric_lift(const zpoly& f, const zint& m) {
    zpoly r = zp_mod(f, m);
    for (auto& c : r.c)
        if (2 * c > m) c -= m;
    r.trim();
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Factorization over Q.

enum class irreducibility_cert {
    linear,                    // degree 1
    mod_p_irreducible,         // irreducible mod the recorded prime
    recombination_exhaustive,  // survived exhaustive subset recombination
};

struct factor_entry {
    zpoly f;  // primitive, positive leading coefficient, irreducible over Q
    int exp;
    irreducibility_cert cert;
    std::uint64_t cert_prime;  // the Zassenhaus prime backing the certificate
};

struct factorization {
    rational unit;
    std::vector<factor_entry> factors;

    poly product() const {
        poly p(unit);
        for (const auto& e : factors) p = p * pow(poly::from_z(e.f), static_cast<unsigned>(e.exp));
        return p;
    }
};

namespace detail {

struct zassenhaus_result {
    std::vector<zpoly> factors;
    std::vector<irreducibility_cert> certs;
    std::uint64_t prime;
};

// f: primitive, squarefree, positive lc, degree >= 1
inline zassenhaus_result zassenhaus(const zpoly& f) {
    if (f.degree() == 1) return {{f}, {irreducibility_cert::linear}, 0};

    // prime selection: smallest odd primes keeping f squarefree mod p,
    // 5 candidates, fewest modular factors wins
    struct cand { std::uint64_t p; fp_factorization fac; };
    std::vector<cand> cands;
    std::uint64_t p = 2;
    while (cands.size() < 5) {
        p = next_prime_u64(p);
        if (mpz_divisible_ui_p(f.lc().get_mpz_t(), p)) continue;
        fpv fp = fpv_from_zpoly(f, p);
        if (fpv_deg(fp) != f.degree()) continue;
        if (fpv_deg(fpv_gcd(fp, fpv_deriv(fp, p), p)) != 0) continue;  // p | res(f, f')
        cands.push_back({p, factor_mod_p(fp, p)});
    }
    auto best = std::min_element(cands.begin(), cands.end(), [](const cand& a, const cand& b) {
        return a.fac.factors.size() < b.fac.factors.size();
    });
    if (best->fac.factors.size() == 1)
        return {{f}, {irreducibility_cert::mod_p_irreducible}, best->p};

    // Mignotte-style coefficient bound for factors of f (documented formula):
    //   |g|_inf <= sqrt(n+1) * 2^n * |f|_inf  for any g | f with deg g <= n,
    // multiplied by |lc(f)| because recombination products are normalized to
    // leading coefficient lc(f). Lift until the modulus exceeds twice this.
    const int n = f.degree();
    zint maxabs = 0;
    for (const auto& c : f.c) {
        zint a = abs(c);
        if (a > maxabs) maxabs = a;
    }
    zint sq = isqrt(zint(n + 1));
    if (sq * sq < n + 1) sq += 1;
    zint bound = sq * (zint(1) << n) * maxabs * abs(f.lc());
    zint target = 2 * bound + 1;

    std::vector<fpv> u;
    for (auto& [g, e] : best->fac.factors) u.push_back(g);
    zint modulus;
    std::vector<zpoly> lifted = hensel_lift(f, best->p, u, target, modulus);

    // subset recombination
    zassenhaus_result out;
    out.prime = best->p;
    std::vector<std::size_t> live(lifted.size());
    for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
    zpoly rem = f;

    auto try_subset = [&](const std::vector<std::size_t>& subset) -> bool {
        zpoly prod = zpoly::constant(rem.lc());
        for (auto i : subset) prod = zp_mod(prod * lifted[i], modulus);
        zpoly g = symmetric_lift(prod, modulus);
        if (g.is_zero()) return false;
        zpoly gp = primitive_part(g);
        if (sign_of(gp.lc()) < 0) gp = -gp;
        if (!divides(gp, rem)) return false;
        rem = divexact(rem, gp);
        out.factors.push_back(gp);
        out.certs.push_back(subset.size() == 1 ? irreducibility_cert::mod_p_irreducible
                                               : irreducibility_cert::recombination_exhaustive);
        return true;
    };

    for (std::size_t size = 1; 2 * size <= live.size();) {
        bool found = false;
        std::vector<std::size_t> pick(size);
        // iterate size-subsets of live by index positions
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            for (std::size_t i = 0; i < size; ++i) pick[i] = live[idx[i]];
            if (try_subset(pick)) {
                std::vector<std::size_t> next;
                for (auto v : live)
                    if (std::find(pick.begin(), pick.end(), v) == pick.end()) next.push_back(v);
                live = std::move(next);
                found = true;
                break;
            }
            // next combination
            std::size_t i = size;
            while (i-- > 0) {
                if (idx[i] + (size - i) < live.size()) {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) goto combos_done;
            }
            if (size == 0) break;
        }
    combos_done:
        if (!found) ++size;
    }
    if (!live.empty()) {
        zpoly gp = primitive_part(rem);
        if (sign_of(gp.lc()) < 0) gp = -gp;
        out.factors.push_back(gp);
        out.certs.push_back(live.size() == 1 ? irreducibility_cert::mod_p_irreducible
                                             : irreducibility_cert::recombination_exhaustive);
    }
    return out;
}

}  // namespace detail

// Factorization over Q with exact product reconstruction asserted before
// returning. Factors are primitive integer polynomials with positive leading
// coefficients, canonically ordered (degree, then coefficient-lexicographic).
inline factorization factor_over_q(const poly& f) {
    if (f.is_zero()) throw std::domain_error("factorization of zero");
    factorization out;
    auto [c, F] = f.content_split();
    out.unit = c;
    if (F.degree() >= 1) {
        for (auto& [part, mult] : yun_z(F)) {
            auto z = detail::zassenhaus(part);
            for (std::size_t i = 0; i < z.factors.size(); ++i) {
                out.factors.push_back({z.factors[i], mult,
                                       z.factors[i].degree() == 1 ? irreducibility_cert::linear
                                                                  : z.certs[i],
                                       z.prime});
            }
        }
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const factor_entry& a, const factor_entry& b) {
        if (a.f.degree() != b.f.degree()) return a.f.degree() < b.f.degree();
        for (std::size_t i = a.f.c.size(); i-- > 0;)
            if (a.f.c[i] != b.f.c[i]) return a.f.c[i] < b.f.c[i];
        return a.exp < b.exp;
    });
    if (out.product() != f) throw std::logic_error("factorization failed product reconstruction");
    return out;
}

// All 2^k products of distinct irreducible factors (k <= 24), primitive with
// positive leading coefficient, the empty product 1 included.
struct squarefree_divisor {
    zpoly d;
    bool nonconstant;
};

inline std::vector<squarefree_divisor> squarefree_divisors(const factorization& fact) {
    std::vector<zpoly> distinct;
    for (const auto& e : fact.factors) {
        bool seen = false;
        for (const auto& d : distinct) seen = seen || d == e.f;
        if (!seen) distinct.push_back(e.f);
    }
    if (distinct.size() > 24)
        throw std::domain_error("squarefree_divisors: more than 24 distinct factors");
    std::vector<squarefree_divisor> out;
    const std::size_t k = distinct.size();
    out.reserve(1u << k);
    for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
        zpoly d = zpoly::constant(1);
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1ull << i)) d = d * distinct[i];
        out.push_back({d, d.degree() >= 1});
    }
    return out;
}

}  // namespace mwforge
