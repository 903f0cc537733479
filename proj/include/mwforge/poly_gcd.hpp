#pragma once

// Polynomial gcd over Z/Q and Yun squarefree decomposition.
//
// The production gcd engine is a small-primes modular gcd (Brown): images
// mod 62-bit primes, CRT with symmetric lifting, stabilization, then an
// exact divisibility check that makes the result unconditional. A
// subresultant PRS is kept alongside; the test suite cross-checks the two
// on random inputs.

#include "mwforge/fp.hpp"
#include "mwforge/poly.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace mwforge {

namespace detail {

// i-th prime of the shared 62-bit pool; extended lazily under a lock so
// concurrent gcds stay safe
inline std::uint64_t gcd_prime(std::size_t i) {
    static std::mutex mu;
    static std::vector<std::uint64_t> pool;
    static std::uint64_t last = (1ull << 62);
    std::lock_guard<std::mutex> lock(mu);
    while (pool.size() <= i) {
        last = next_prime_u64(last);
        pool.push_back(last);
    }
    return pool[i];
}

}  // namespace detail

// Subresultant PRS gcd of primitive inputs; returns the primitive gcd with
// positive leading coefficient. Reference route, used as the test oracle.
inline zpoly subresultant_gcd(zpoly u, zpoly v) {
    if (u.is_zero()) return v.is_zero() ? v : primitive_part(sign_of(v.lc()) < 0 ? -v : v);
    if (v.is_zero()) return primitive_part(sign_of(u.lc()) < 0 ? -u : u);
    u = primitive_part(u);
    v = primitive_part(v);
    if (u.degree() < v.degree()) std::swap(u, v);
    zint g = 1, h = 1;
    while (true) {
        int delta = u.degree() - v.degree();
        // pseudo-remainder of lc(v)^(delta+1) * u by v
        zpoly r = u * pow(zpoly::constant(v.lc()), delta + 1).lc();
        while (!r.is_zero() && r.degree() >= v.degree()) {
            zint t;
            mpz_divexact(t.get_mpz_t(), r.lc().get_mpz_t(), v.lc().get_mpz_t());
            std::size_t k = r.degree() - v.degree();
            for (std::size_t i = 0; i < v.c.size(); ++i) r.c[k + i] -= t * v.c[i];
            r.trim();
        }
        if (r.is_zero()) break;
        if (r.degree() == 0) {
            v = zpoly::constant(1);
            break;
        }
        u = v;
        zint divisor = g;
        for (int i = 0; i < delta; ++i) divisor *= h;
        v = divexact(r, divisor);
        g = u.lc();
        if (delta >= 1) {
            zint gd = g;
            for (int i = 1; i < delta; ++i) gd *= g;
            zint hd = 1;
            for (int i = 1; i < delta; ++i) hd *= h;
            h = gd / hd;
        }
        // delta == 0 leaves h unchanged
    }
    zpoly out = primitive_part(v);
    if (sign_of(out.lc()) < 0) out = -out;
    return out;
}

// Modular gcd over Z (Brown). Result is primitive with positive leading
// coefficient times gcd of the contents.
inline zpoly gcd_z(const zpoly& f0, const zpoly& g0) {
    auto positive = [](zpoly p) { return sign_of(p.lc()) < 0 ? -p : p; };
    if (f0.is_zero()) return g0.is_zero() ? zpoly{} : positive(g0);
    if (g0.is_zero()) return positive(f0);

    const zint cf = content(f0), cg = content(g0);
    zint cont_gcd;
    mpz_gcd(cont_gcd.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
    zpoly f = divexact(f0, cf), g = divexact(g0, cg);
    if (sign_of(f.lc()) < 0) f = -f;
    if (sign_of(g.lc()) < 0) g = -g;
    if (f.degree() == 0 || g.degree() == 0) return zpoly::constant(cont_gcd);

    zint lead_gcd;
    mpz_gcd(lead_gcd.get_mpz_t(), f.lc().get_mpz_t(), g.lc().get_mpz_t());

    int best_deg = std::min(f.degree(), g.degree()) + 1;
    zint modulus = 1;
    std::vector<zint> acc;  // residues in [0, modulus)
    zpoly prev_candidate;
    bool have_prev = false;

    for (std::size_t pi = 0;; ++pi) {
        std::uint64_t p = detail::gcd_prime(pi);
        if (mpz_divisible_ui_p(f.lc().get_mpz_t(), p) || mpz_divisible_ui_p(g.lc().get_mpz_t(), p))
            continue;
        fpv fp = fpv_from_zpoly(f, p), gp = fpv_from_zpoly(g, p);
        fpv gcdp = fpv_gcd(fp, gp, p);
        int d = fpv_deg(gcdp);
        if (d == 0) return zpoly::constant(cont_gcd);  // coprime primitive parts
        if (d > best_deg) continue;                    // unlucky prime
        // normalize image to leading coefficient lead_gcd mod p
        zint lgm = lead_gcd % static_cast<unsigned long>(p);
        gcdp = fpv_scale(gcdp, lgm.get_ui(), p);
        if (d < best_deg) {
            best_deg = d;
            modulus = 1;
            acc.assign(d + 1, zint(0));
            have_prev = false;
        }
        // CRT combine
        zint pz(static_cast<unsigned long>(p));
        if (modulus == 1) {
            for (int i = 0; i <= d; ++i) acc[i] = zint(static_cast<unsigned long>(gcdp[i]));
            modulus = pz;
        } else {
            zint minv;
            zint mred = modulus % pz;
            mpz_invert(minv.get_mpz_t(), mred.get_mpz_t(), pz.get_mpz_t());
            for (int i = 0; i <= d; ++i) {
                zint r = acc[i] % pz;
                zint diff = (zint(static_cast<unsigned long>(gcdp[i])) - r) % pz;
                if (diff < 0) diff += pz;
                acc[i] += modulus * ((diff * minv) % pz);
            }
            modulus *= pz;
        }
        // symmetric lift to a candidate
        zpoly cand;
        cand.c.resize(best_deg + 1);
        for (int i = 0; i <= best_deg; ++i) {
            zint x = acc[i];
            if (2 * x > modulus) x -= modulus;
            cand.c[i] = x;
        }
        cand.trim();
        if (have_prev && cand == prev_candidate) {
            zpoly pp = primitive_part(cand);
            if (sign_of(pp.lc()) < 0) pp = -pp;
            if (divides(pp, f) && divides(pp, g)) return pp * cont_gcd;
        }
        prev_candidate = std::move(cand);
        have_prev = true;
    }
}

// Monic gcd over Q; gcd(f, 0) = monic(f), gcd(0, 0) = 0.
inline poly poly_gcd(const poly& f, const poly& g) {
    if (f.is_zero() && g.is_zero()) return poly();
    if (f.is_zero()) return g.monic();
    if (g.is_zero()) return f.monic();
    auto pf = f.content_split().second;
    auto pg = g.content_split().second;
    return poly::from_z(gcd_z(pf, pg)).monic();
}

// ---------------------------------------------------------------------------
// Yun squarefree decomposition.

// Primitive positive-lc input F decomposes as F = prod parts[i].first ^
// parts[i].second with primitive positive-lc, squarefree, pairwise coprime
// parts and strictly increasing multiplicities.
inline std::vector<std::pair<zpoly, int>> yun_z(const zpoly& input) {
    if (input.is_zero()) throw std::domain_error("squarefree decomposition of zero");
    zpoly F = primitive_part(input);
    if (sign_of(F.lc()) < 0) F = -F;
    std::vector<std::pair<zpoly, int>> parts;
    if (F.degree() == 0) return parts;

    zpoly Fd = derivative(F);
    zpoly d = gcd_z(F, Fd);
    zpoly b = divexact(F, d);
    zpoly c = divexact(Fd, d);
    zpoly z = c - derivative(b);
    int i = 1;
    while (b.degree() > 0) {
        zpoly a = gcd_z(b, z);
        if (a.degree() > 0) parts.emplace_back(a, i);
        b = divexact(b, a);
        c = divexact(z, a);
        z = c - derivative(b);
        ++i;
    }
    return parts;
}

struct squarefree_decomposition {
    rational lead;                          // = lc(f)
    std::vector<std::pair<poly, int>> parts;  // monic, squarefree, coprime; mult increasing

    poly product() const {
        poly p(lead);
        for (const auto& [g, m] : parts) p = p * pow(g, static_cast<unsigned>(m));
        return p;
    }
};

inline squarefree_decomposition squarefree_decompose(const poly& f) {
    if (f.is_zero()) throw std::domain_error("squarefree decomposition of zero");
    squarefree_decomposition out;
    out.lead = f.lc();
    auto [c, F] = f.content_split();
    (void)c;
    for (auto& [g, m] : yun_z(F)) out.parts.emplace_back(poly::from_z(g).monic(), m);
    return out;
}

}  // namespace mwforge
