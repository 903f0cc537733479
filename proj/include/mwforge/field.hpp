#pragma once

// The small field-interface contract the generic curve code is written
// against, implemented for the three coefficient domains: Q, Q(t), F_p.

#include "mwforge/fp.hpp"
#include "mwforge/rational.hpp"
#include "mwforge/ratfunc.hpp"

#include <optional>

namespace mwforge {

inline rational zero_like(const rational&) { return rational(0); }
inline rational one_like(const rational&) { return rational(1); }
inline ratfunc zero_like(const ratfunc&) { return ratfunc(); }
inline ratfunc one_like(const ratfunc&) { return ratfunc(rational(1)); }
inline fp_el zero_like(const fp_el& x) { return {0, x.p}; }
inline fp_el one_like(const fp_el& x) { return {1, x.p}; }

inline bool is_zero(const rational& x) { return x.is_zero(); }
inline bool is_zero(const ratfunc& x) { return x.is_zero(); }
inline bool is_zero(const fp_el& x) { return x.v == 0; }

// Canonical square roots: nonnegative over Q, positive-leading-numerator
// over Q(t), least residue in F_p.
inline std::optional<rational> field_sqrt(const rational& x) { return is_square_rational(x); }
inline std::optional<ratfunc> field_sqrt(const ratfunc& x) { return is_square_ratfunc(x); }
inline std::optional<fp_el> field_sqrt(const fp_el& x) {
    auto r = sqrt_mod_p_u64(x.v, x.p);
    if (!r) return std::nullopt;
    return fp_el{*r, x.p};
}

}  // namespace mwforge
