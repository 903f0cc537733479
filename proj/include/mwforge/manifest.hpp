#pragma once

// Manifest files: a verification run as data. The schema is documented in
// docs/manifest.md; parsing is strict (unknown keys rejected) and lossless
// (reserializing reproduces the parsed JSON value exactly).

#include "mwforge/json_codec.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mwforge {

struct manifest_section {
    ratfunc candidate_x;
    poly expected_condition;
    ratfunc substitution;
};

struct manifest_relation {
    std::vector<int> lhs;  // 1-based indices into final_points
    ratfunc rhs_x;
    int replaces = 0;  // which generator the rhs point replaces in the full basis
};

struct manifest {
    std::string name;
    poly tate_a, tate_b;

    std::optional<poly> expected_A, expected_B;
    std::optional<ratfunc> expected_torsion_x, expected_torsion_y;
    std::vector<rational> torsion_check_points;
    std::vector<ratfunc> claimed_points;

    std::vector<manifest_section> sections;
    std::optional<poly> combined_condition;
    std::optional<std::pair<rational, rational>> conic_point;
    std::optional<ratfunc> u_of_r;
    std::optional<ratfunc> t_of_r;

    std::optional<poly> a6, b6;
    std::vector<ratfunc> final_points;
    std::vector<manifest_relation> relations;

    std::optional<rational> independence_at;
    std::optional<rational> gt_at;
    std::uint64_t prime_budget = 10000;
};

namespace detail {

inline void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                                const std::string& where) {
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* name : known) ok = ok || k == name;
        if (!ok) throw std::invalid_argument("manifest: unknown key '" + k + "' in " + where);
    }
}

}  // namespace detail

inline json to_json(const manifest& m) {
    json j;
    j["name"] = m.name;
    j["base_family"] = json{{"a", to_json(m.tate_a)}, {"b", to_json(m.tate_b)}};
    if (m.expected_A && m.expected_B)
        j["expected_ab"] = json{{"A", to_json(*m.expected_A)}, {"B", to_json(*m.expected_B)}};
    if (m.expected_torsion_x && m.expected_torsion_y)
        j["expected_torsion"] =
            json{{"x", to_json(*m.expected_torsion_x)}, {"y", to_json(*m.expected_torsion_y)}};
    if (!m.torsion_check_points.empty()) {
        json arr = json::array();
        for (const auto& t : m.torsion_check_points) arr.push_back(to_json(t));
        j["torsion_check_points"] = arr;
    }
    if (!m.claimed_points.empty()) {
        json arr = json::array();
        for (const auto& x : m.claimed_points) arr.push_back(to_json(x));
        j["claimed_points"] = arr;
    }
    if (!m.sections.empty()) {
        json arr = json::array();
        for (const auto& s : m.sections)
            arr.push_back(json{{"candidate_x", to_json(s.candidate_x)},
                               {"expected_condition", to_json(s.expected_condition)},
                               {"substitution", to_json(s.substitution)}});
        j["sections"] = arr;
    }
    if (m.combined_condition) {
        json comb;
        comb["expected_condition"] = to_json(*m.combined_condition);
        if (m.conic_point)
            comb["conic_point"] = json::array({to_json(m.conic_point->first), to_json(m.conic_point->second)});
        if (m.u_of_r) comb["u_of_r"] = to_json(*m.u_of_r);
        if (m.t_of_r) comb["t_of_r"] = to_json(*m.t_of_r);
        j["combined"] = comb;
    }
    if (m.a6 && m.b6) j["final_family"] = json{{"a6", to_json(*m.a6)}, {"b6", to_json(*m.b6)}};
    if (!m.final_points.empty()) {
        json arr = json::array();
        for (const auto& x : m.final_points) arr.push_back(to_json(x));
        j["final_points"] = arr;
    }
    if (!m.relations.empty()) {
        json arr = json::array();
        for (const auto& r : m.relations)
            arr.push_back(json{{"lhs", r.lhs}, {"rhs_x", to_json(r.rhs_x)}, {"replaces", r.replaces}});
        j["relations"] = arr;
    }
    json specializations_json;
    if (m.independence_at) specializations_json["independence_at"] = to_json(*m.independence_at);
    if (m.gt_at) specializations_json["gt_at"] = to_json(*m.gt_at);
    specializations_json["prime_budget"] = m.prime_budget;
    j["specializations"] = specializations_json;
    return j;
}

inline manifest manifest_from_json(const json& j) {
    detail::reject_unknown_keys(j,
                                {"name", "base_family", "expected_ab", "expected_torsion",
                                 "torsion_check_points", "claimed_points", "sections", "combined",
                                 "final_family", "final_points", "relations", "specializations"},
                                "manifest");
    manifest m;
    m.name = j.at("name").get<std::string>();
    const json& bf = j.at("base_family");
    detail::reject_unknown_keys(bf, {"a", "b"}, "base_family");
    m.tate_a = poly_from_json(bf.at("a"));
    m.tate_b = poly_from_json(bf.at("b"));
    if (j.contains("expected_ab")) {
        detail::reject_unknown_keys(j.at("expected_ab"), {"A", "B"}, "expected_ab");
        m.expected_A = poly_from_json(j.at("expected_ab").at("A"));
        m.expected_B = poly_from_json(j.at("expected_ab").at("B"));
    }
    if (j.contains("expected_torsion")) {
        detail::reject_unknown_keys(j.at("expected_torsion"), {"x", "y"}, "expected_torsion");
        m.expected_torsion_x = ratfunc_from_json(j.at("expected_torsion").at("x"));
        m.expected_torsion_y = ratfunc_from_json(j.at("expected_torsion").at("y"));
    }
    if (j.contains("torsion_check_points"))
        for (const auto& e : j.at("torsion_check_points"))
            m.torsion_check_points.push_back(rational_from_json(e));
    if (j.contains("claimed_points"))
        for (const auto& e : j.at("claimed_points")) m.claimed_points.push_back(ratfunc_from_json(e));
    if (j.contains("sections")) {
        for (const auto& e : j.at("sections")) {
            detail::reject_unknown_keys(e, {"candidate_x", "expected_condition", "substitution"},
                                        "sections[]");
            m.sections.push_back({ratfunc_from_json(e.at("candidate_x")),
                                  poly_from_json(e.at("expected_condition")),
                                  ratfunc_from_json(e.at("substitution"))});
        }
    }
    if (j.contains("combined")) {
        const json& c = j.at("combined");
        detail::reject_unknown_keys(c, {"expected_condition", "conic_point", "u_of_r", "t_of_r"},
                                    "combined");
        m.combined_condition = poly_from_json(c.at("expected_condition"));
        if (c.contains("conic_point"))
            m.conic_point = std::pair{rational_from_json(c.at("conic_point").at(0)),
                                      rational_from_json(c.at("conic_point").at(1))};
        if (c.contains("u_of_r")) m.u_of_r = ratfunc_from_json(c.at("u_of_r"));
        if (c.contains("t_of_r")) m.t_of_r = ratfunc_from_json(c.at("t_of_r"));
    }
    if (j.contains("final_family")) {
        detail::reject_unknown_keys(j.at("final_family"), {"a6", "b6"}, "final_family");
        m.a6 = poly_from_json(j.at("final_family").at("a6"));
        m.b6 = poly_from_json(j.at("final_family").at("b6"));
    }
    if (j.contains("final_points"))
        for (const auto& e : j.at("final_points")) m.final_points.push_back(ratfunc_from_json(e));
    if (j.contains("relations")) {
        for (const auto& e : j.at("relations")) {
            detail::reject_unknown_keys(e, {"lhs", "rhs_x", "replaces"}, "relations[]");
            manifest_relation r;
            r.lhs = e.at("lhs").get<std::vector<int>>();
            r.rhs_x = ratfunc_from_json(e.at("rhs_x"));
            r.replaces = e.at("replaces").get<int>();
            m.relations.push_back(std::move(r));
        }
    }
    if (j.contains("specializations")) {
        const json& s = j.at("specializations");
        detail::reject_unknown_keys(s, {"independence_at", "gt_at", "prime_budget"},
                                    "specializations");
        if (s.contains("independence_at")) m.independence_at = rational_from_json(s.at("independence_at"));
        if (s.contains("gt_at")) m.gt_at = rational_from_json(s.at("gt_at"));
        if (s.contains("prime_budget")) m.prime_budget = s.at("prime_budget").get<std::uint64_t>();
    }
    // lossless round-trip: canonical forms must reproduce the input value
    // (key order is immaterial, values must be exact)
    if (nlohmann::json::parse(to_json(m).dump()) != nlohmann::json::parse(j.dump()))
        throw std::invalid_argument("manifest: fields are not in canonical serialized form");
    return m;
}

}  // namespace mwforge
