#pragma once

// JSON encodings: integers as decimal strings, rationals as "p/q" or "p",
// polynomials as arrays of rational strings indexed by degree, rational
// functions as {"num": [...], "den": [...]}. Bit-exact round trips.

#include "mwforge/certify.hpp"
#include "mwforge/curve.hpp"
#include "mwforge/factor.hpp"
#include "mwforge/poly.hpp"
#include "mwforge/rational.hpp"
#include "mwforge/ratfunc.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace mwforge {

using json = nlohmann::ordered_json;

// ---- rational ----
inline json to_json(const rational& q) { return q.str(); }
inline rational rational_from_json(const json& j) {
    if (!j.is_string()) throw std::invalid_argument("rational must be a decimal string");
    return rational::parse(j.get<std::string>());
}

// ---- poly ----
inline json to_json(const poly& p) {
    json arr = json::array();
    for (int i = 0; i <= p.degree(); ++i) arr.push_back(p.coeff(static_cast<std::size_t>(i)).str());
    return arr;
}
inline poly poly_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("polynomial must be an array of rationals");
    std::vector<rational> cs;
    for (const auto& e : j) cs.push_back(rational_from_json(e));
    return poly(std::move(cs));
}

inline json to_json(const zpoly& p) { return to_json(poly::from_z(p)); }
inline zpoly zpoly_from_json(const json& j) {
    auto p = poly_from_json(j);
    auto [c, pp] = p.content_split();
    if (!c.is_integer()) throw std::invalid_argument("expected an integer polynomial");
    return pp * c.num();
}

// ---- ratfunc ----
inline json to_json(const ratfunc& f) {
    return json{{"num", to_json(f.num_poly())}, {"den", to_json(f.den_poly())}};
}
inline ratfunc ratfunc_from_json(const json& j) {
    if (j.is_array()) return ratfunc(poly_from_json(j));  // bare polynomial accepted
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw std::invalid_argument("rational function must be {num, den}");
    return ratfunc(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

// ---- curves and points ----
inline json to_json(const curve_ab<rational>& c) {
    return json{{"A", to_json(c.A)}, {"B", to_json(c.B)}};
}
inline curve_ab<rational> curve_q_from_json(const json& j) {
    return curve_ab<rational>(rational_from_json(j.at("A")), rational_from_json(j.at("B")));
}
inline json to_json(const curve_ab<ratfunc>& c) {
    return json{{"A", to_json(c.A)}, {"B", to_json(c.B)}};
}
inline curve_ab<ratfunc> curve_rf_from_json(const json& j) {
    return curve_ab<ratfunc>(ratfunc_from_json(j.at("A")), ratfunc_from_json(j.at("B")));
}

inline json to_json(const ec_point<rational>& P) {
    if (P.infinite) return "inf";
    return json{{"x", to_json(P.x)}, {"y", to_json(P.y)}};
}
inline ec_point<rational> point_q_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return ec_point<rational>::infinity();
    return ec_point<rational>::affine(rational_from_json(j.at("x")), rational_from_json(j.at("y")));
}
inline json to_json(const ec_point<ratfunc>& P) {
    if (P.infinite) return "inf";
    return json{{"x", to_json(P.x)}, {"y", to_json(P.y)}};
}

// ---- factorization ----
inline json to_json(const factorization& f) {
    json factors = json::array();
    json certs = json::array();
    for (const auto& e : f.factors) {
        factors.push_back(json::array({to_json(e.f), e.exp}));
        const char* kind = e.cert == irreducibility_cert::linear ? "linear"
                           : e.cert == irreducibility_cert::mod_p_irreducible
                               ? "mod_p_irreducible"
                               : "recombination_exhaustive";
        certs.push_back(json{{"kind", kind}, {"prime", e.cert_prime}});
    }
    return json{{"unit", to_json(f.unit)}, {"factors", factors}, {"certificates", certs}};
}

// ---- certificates ----
inline json to_json(const independence_certificate& c) {
    json points = json::array();
    for (const auto& P : c.points) points.push_back(to_json(P));
    json entries = json::object();
    for (const auto& [mask, p] : c.entries) entries[std::to_string(mask)] = p;
    return json{{"type", "independence_certificate"},
                {"curve", to_json(c.curve)},
                {"points", points},
                {"torsion_gen", to_json(c.torsion_gen)},
                {"entries", entries},
                {"rank_lower_bound", c.rank_lower_bound}};
}

inline independence_certificate independence_from_json(const json& j) {
    independence_certificate cert{curve_q_from_json(j.at("curve")),
                                  {},
                                  point_q_from_json(j.at("torsion_gen")),
                                  {},
                                  j.at("rank_lower_bound").get<int>()};
    for (const auto& p : j.at("points")) cert.points.push_back(point_q_from_json(p));
    for (const auto& [k, v] : j.at("entries").items())
        cert.entries[static_cast<std::uint32_t>(std::stoul(k))] = v.get<std::uint64_t>();
    return cert;
}

inline json to_json(const gt_report& r) {
    json divisors = json::array();
    for (const auto& e : r.divisors) {
        divisors.push_back(json{{"h", to_json(e.h)},
                                {"value", to_json(e.value)},
                                {"square", e.square_plus},
                                {"neg_square", e.square_minus}});
    }
    return json{{"type", "gt_report"},
                {"A", to_json(r.A)},
                {"B", to_json(r.B)},
                {"r0", to_json(r.r0)},
                {"specialization_nonsingular", r.specialization_nonsingular},
                {"unique_two_torsion", r.unique_two_torsion},
                {"B_factorization", to_json(r.b_fact)},
                {"C_factorization", to_json(r.c_fact)},
                {"divisors", divisors},
                {"verdict", r.verdict}};
}

inline json to_json(const relation_certificate& c) {
    return json{{"type", "relation_certificate"},
                {"lhs_indices", c.lhs_indices},
                {"sign_choices", c.sign_choices},
                {"verified", c.verified},
                {"index", zint_to_string(c.index)},
                {"regulator_ratio", zint_to_string(c.regulator_ratio)}};
}

inline json to_json(const torsion_claim& t) {
    return json{{"type", "torsion_claim"},
                {"has_order4_point", t.has_order4_point},
                {"unique_two_torsion", t.unique_two_torsion},
                {"gcd_of_counts", t.gcd_of_counts.get_str()},
                {"primes_used", t.primes_used},
                {"exact_z4", t.exact_z4},
                {"note", t.note}};
}

}  // namespace mwforge
