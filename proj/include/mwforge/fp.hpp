#pragma once

// 64-bit prime field arithmetic: scalar ops with 128-bit intermediates,
// Tonelli-Shanks square roots, and dense F_p[x] vectors (mul, divmod, gcd,
// modular exponentiation, root extraction). Big-integer reduction happens
// only at the Q -> F_p boundary.

#include "mwforge/integer.hpp"
#include "mwforge/poly.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mwforge {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t inv_mod_u64(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw std::domain_error("inverse of zero in F_p");
    std::int64_t t = 0, nt = 1;
    std::uint64_t r = p, nr = a;
    while (nr != 0) {
        std::uint64_t q = r / nr;
        std::int64_t tmp = t - static_cast<std::int64_t>(q) * nt;
        t = nt;
        nt = tmp;
        std::uint64_t rmp = r - q * nr;
        r = nr;
        nr = rmp;
    }
    if (r != 1) throw std::domain_error("non-invertible element in F_p");
    return t < 0 ? static_cast<std::uint64_t>(t + static_cast<std::int64_t>(p)) : static_cast<std::uint64_t>(t);
}

// Legendre symbol for odd prime p: 0, 1 or -1.
inline int legendre_u64(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    std::uint64_t e = powmod_u64(a, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

// Least square root of a mod odd prime p (Tonelli-Shanks), absent for
// non-residues. sqrt(0) = 0.
inline std::optional<std::uint64_t> sqrt_mod_p_u64(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (legendre_u64(a, p) != 1) return std::nullopt;
    std::uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    std::uint64_t r;
    if (s == 1) {
        r = powmod_u64(a, (p + 1) / 4, p);
    } else {
        std::uint64_t z = 2;
        while (legendre_u64(z, p) != -1) ++z;
        std::uint64_t m = s, c = powmod_u64(z, q, p);
        std::uint64_t t = powmod_u64(a, q, p);
        r = powmod_u64(a, (q + 1) / 2, p);
        while (t != 1) {
            std::uint64_t i = 0, tt = t;
            while (tt != 1) { tt = mulmod_u64(tt, tt, p); ++i; }
            std::uint64_t b = c;
            for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod_u64(b, b, p);
            m = i;
            c = mulmod_u64(b, b, p);
            t = mulmod_u64(t, c, p);
            r = mulmod_u64(r, b, p);
        }
    }
    return std::min(r, p - r);
}

// Field element carrying its modulus; mixing moduli is a logic error.
struct fp_el {
    std::uint64_t v = 0;
    std::uint64_t p = 0;

    fp_el() = default;
    fp_el(std::uint64_t value, std::uint64_t prime) : v(value % prime), p(prime) {}

    bool operator==(const fp_el& o) const { return p == o.p && v == o.v; }
    bool operator!=(const fp_el& o) const { return !(*this == o); }
};

namespace detail {
inline void check_same_field(const fp_el& a, const fp_el& b) {
    if (a.p != b.p) throw std::domain_error("mixed F_p moduli");
}
}  // namespace detail

inline fp_el operator+(const fp_el& a, const fp_el& b) {
    detail::check_same_field(a, b);
    std::uint64_t s = a.v + b.v;
    if (s >= a.p || s < a.v) s -= a.p;
    return {s, a.p};
}
inline fp_el operator-(const fp_el& a, const fp_el& b) {
    detail::check_same_field(a, b);
    return {a.v >= b.v ? a.v - b.v : a.v + a.p - b.v, a.p};
}
inline fp_el operator-(const fp_el& a) { return {a.v == 0 ? 0 : a.p - a.v, a.p}; }
inline fp_el operator*(const fp_el& a, const fp_el& b) {
    detail::check_same_field(a, b);
    return {mulmod_u64(a.v, b.v, a.p), a.p};
}
inline fp_el operator/(const fp_el& a, const fp_el& b) {
    detail::check_same_field(a, b);
    return {mulmod_u64(a.v, inv_mod_u64(b.v, a.p), a.p), a.p};
}

// ---------------------------------------------------------------------------
// Dense F_p[x]: vector of residues, trailing zeros trimmed, index = degree.

using fpv = std::vector<std::uint64_t>;

inline void fpv_trim(fpv& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int fpv_deg(const fpv& f) { return static_cast<int>(f.size()) - 1; }

inline fpv fpv_from_zpoly(const zpoly& f, std::uint64_t p) {
    fpv r(f.c.size());
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        zint m = f.c[i] % static_cast<unsigned long>(p);
        if (m < 0) m += static_cast<unsigned long>(p);
        r[i] = m.get_ui();
    }
    fpv_trim(r);
    return r;
}

inline fpv fpv_add(const fpv& a, const fpv& b, std::uint64_t p) {
    fpv r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = s >= p ? s - p : s;
    }
    fpv_trim(r);
    return r;
}

inline fpv fpv_sub(const fpv& a, const fpv& b, std::uint64_t p) {
    fpv r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = x >= y ? x - y : x + p - y;
    }
    fpv_trim(r);
    return r;
}

inline fpv fpv_scale(const fpv& a, std::uint64_t k, std::uint64_t p) {
    k %= p;
    if (k == 0) return {};
    fpv r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulmod_u64(a[i], k, p);
    return r;
}

inline fpv fpv_mul(const fpv& a, const fpv& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    fpv r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p;
        }
    }
    fpv_trim(r);
    return r;
}

inline fpv fpv_monic(const fpv& a, std::uint64_t p) {
    if (a.empty()) return a;
    return fpv_scale(a, inv_mod_u64(a.back(), p), p);
}

inline std::pair<fpv, fpv> fpv_divmod(const fpv& a, const fpv& b, std::uint64_t p) {
    if (b.empty()) throw std::domain_error("F_p[x] division by zero");
    fpv q, r = a;
    if (fpv_deg(a) < fpv_deg(b)) return {q, r};
    q.assign(a.size() - b.size() + 1, 0);
    const std::uint64_t binv = inv_mod_u64(b.back(), p);
    while (!r.empty() && r.size() >= b.size()) {
        std::uint64_t t = mulmod_u64(r.back(), binv, p);
        std::size_t k = r.size() - b.size();
        q[k] = t;
        for (std::size_t i = 0; i < b.size(); ++i) {
            std::uint64_t sub = mulmod_u64(t, b[i], p);
            r[k + i] = r[k + i] >= sub ? r[k + i] - sub : r[k + i] + p - sub;
        }
        fpv_trim(r);
    }
    fpv_trim(q);
    return {q, r};
}

inline fpv fpv_rem(const fpv& a, const fpv& b, std::uint64_t p) { return fpv_divmod(a, b, p).second; }

// Monic gcd.
inline fpv fpv_gcd(fpv a, fpv b, std::uint64_t p) {
    while (!b.empty()) {
        fpv r = fpv_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return fpv_monic(a, p);
}

// base^e mod m in F_p[x].
inline fpv fpv_powmod(fpv base, zint e, const fpv& m, std::uint64_t p) {
    fpv r{1};
    base = fpv_rem(base, m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fpv_rem(fpv_mul(r, base, p), m, p);
        e >>= 1;
        if (e > 0) base = fpv_rem(fpv_mul(base, base, p), m, p);
    }
    return r;
}

inline std::uint64_t fpv_eval(const fpv& f, std::uint64_t x, std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (static_cast<unsigned __int128>(acc) * x + f[i]) % p;
    return acc;
}

inline fpv fpv_deriv(const fpv& f, std::uint64_t p) {
    if (f.size() <= 1) return {};
    fpv r(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = mulmod_u64(f[i], i % p, p);
    fpv_trim(r);
    return r;
}

// Roots in F_p of f (not identically zero): restrict to the part splitting in
// linears via gcd with x^p - x, then split deterministically. Sorted output.
inline std::vector<std::uint64_t> fpv_roots(const fpv& f, std::uint64_t p) {
    std::vector<std::uint64_t> roots;
    if (f.empty()) throw std::domain_error("root extraction from zero polynomial");
    if (fpv_deg(f) == 0) return roots;
    // g = gcd(f, x^p - x) is squarefree and splits into linears
    fpv xp = fpv_powmod(fpv{0, 1}, zint(static_cast<unsigned long>(p)), f, p);
    fpv g = fpv_gcd(fpv_sub(xp, fpv{0, 1}, p), f, p);
    if (fpv_deg(g) <= 0) return roots;

    std::vector<fpv> stack{g};
    while (!stack.empty()) {
        fpv h = std::move(stack.back());
        stack.pop_back();
        if (fpv_deg(h) == 1) {
            // monic x + c -> root -c
            std::uint64_t c = h[0];
            roots.push_back(c == 0 ? 0 : p - c);
            continue;
        }
        if (h[0] == 0) {
            roots.push_back(0);
            fpv shifted(h.begin() + 1, h.end());
            stack.push_back(fpv_monic(shifted, p));
            continue;
        }
        for (std::uint64_t a = 0;; ++a) {
            if (a >= p) throw std::logic_error("root splitting failed to progress");
            fpv w = fpv_powmod(fpv{a, 1}, zint(static_cast<unsigned long>((p - 1) / 2)), h, p);
            w = fpv_sub(w, fpv{1}, p);
            if (w.empty()) continue;  // chi constant on all roots of h, next shift
            fpv d = fpv_gcd(w, h, p);
            if (fpv_deg(d) > 0 && fpv_deg(d) < fpv_deg(h)) {
                stack.push_back(d);
                stack.push_back(fpv_monic(fpv_divmod(h, d, p).first, p));
                break;
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace mwforge
