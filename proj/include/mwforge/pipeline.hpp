#pragma once

// Manifest-driven end-to-end verification. Thirteen stages re-derive the
// construction from its inputs and check every printed artifact; any stage
// failure halts dependent stages while independent stages still run. Reports
// are deterministic JSON (timings excluded from the comparison digest).

#include "mwforge/certify.hpp"
#include "mwforge/expr.hpp"
#include "mwforge/manifest.hpp"
#include "mwforge/sections.hpp"
#include "mwforge/sha256.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mwforge {

struct stage_result {
    int id = 0;
    std::string name;
    std::string status;  // pass | fail | error | not_applicable | skipped
    json artifacts = json::object();
    double ms = 0;
};

struct verification_report {
    std::string manifest_name;
    std::string manifest_sha256;
    std::vector<stage_result> stages;
    bool overall = false;

    json to_json_with_digest() const {
        json j;
        j["type"] = "verification_report";
        j["manifest"] = manifest_name;
        j["manifest_sha256"] = manifest_sha256;
        json st = json::array();
        for (const auto& s : stages)
            st.push_back(json{{"id", s.id},
                              {"name", s.name},
                              {"status", s.status},
                              {"artifacts", s.artifacts},
                              {"ms", s.ms}});
        j["stages"] = st;
        j["overall"] = overall ? "pass" : "fail";
        json stripped = j;
        for (auto& s : stripped["stages"]) s.erase("ms");
        j["digest"] = sha256_hex(stripped.dump());
        return j;
    }
};

struct run_options {
    int stage_lo = 1;
    int stage_hi = 13;
    std::uint64_t prime_budget_override = 0;  // 0 = use manifest value
};

namespace detail {

class stage_runner {
public:
    explicit stage_runner(verification_report& rep) : rep_(rep) {}

    // run one stage; applicable=false marks not_applicable without running
    void operator()(int id, const std::string& name, bool enabled, bool applicable,
                    const std::function<bool(json&)>& body) {
        stage_result r;
        r.id = id;
        r.name = name;
        if (!enabled) {
            r.status = "skipped";
            rep_.stages.push_back(std::move(r));
            return;
        }
        if (!applicable) {
            r.status = "not_applicable";
            rep_.stages.push_back(std::move(r));
            return;
        }
        auto t0 = std::chrono::steady_clock::now();
        try {
            bool ok = body(r.artifacts);
            r.status = ok ? "pass" : "fail";
        } catch (const std::exception& e) {
            r.status = "error";
            r.artifacts["error"] = e.what();
        }
        r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rep_.stages.push_back(std::move(r));
    }

private:
    verification_report& rep_;
};

inline bool square_class_equal(const zpoly& derived, const poly& expected) {
    if (expected.is_zero()) return false;
    return is_square_ratfunc(ratfunc(poly::from_z(derived)) / ratfunc(expected)).has_value();
}

// structural factor hints for A^2 - 4B of a family built from Tate
// parameters through a substitution: A^2 - 4B = lambda^4 a^2 (a^2 - 16b)
// composed with the substitution, so its irreducible factors are among the
// factors of the composed pieces' numerators/denominators and of lambda.
inline std::vector<poly> structural_c_hints(const poly& tate_a, const poly& tate_b,
                                            const ratfunc& sub,
                                            const std::vector<ratfunc>& scalings) {
    std::vector<poly> hints;
    auto push_parts = [&](const ratfunc& f) {
        if (f.is_zero()) return;
        hints.push_back(poly::from_z(f.num_primitive()));
        hints.push_back(poly::from_z(f.den_primitive()));
    };
    push_parts(compose(ratfunc(tate_a), sub));
    push_parts(compose(ratfunc(tate_a * tate_a - tate_b * rational(16)), sub));
    for (const auto& s : scalings) push_parts(s);
    return hints;
}

}  // namespace detail

inline verification_report run_manifest(const manifest& m, const std::string& manifest_bytes = "",
                                        const run_options& opt = {}) {
    verification_report rep;
    rep.manifest_name = m.name;
    rep.manifest_sha256 = sha256_hex(manifest_bytes.empty() ? to_json(m).dump() : manifest_bytes);
    detail::stage_runner stage(rep);
    auto enabled = [&](int id) { return id >= opt.stage_lo && id <= opt.stage_hi; };

    // stage 1: Tate -> AB conversion, against printed coefficients when given
    std::optional<tate_conversion<ratfunc>> conv;
    try {
        conv = tate_to_ab(tate_curve<ratfunc>(ratfunc(m.tate_a), ratfunc(m.tate_b)));
    } catch (const std::exception&) {
    }
    stage(1, "tate_normal_form_conversion", enabled(1), true, [&](json& art) {
        if (!conv) throw std::domain_error("Tate parameters are degenerate");
        art["A"] = to_json(conv->curve.A);
        art["B"] = to_json(conv->curve.B);
        bool ok = true;
        if (m.expected_A && m.expected_B) {
            ok = conv->curve.A == ratfunc(*m.expected_A) && conv->curve.B == ratfunc(*m.expected_B);
            art["matches_expected"] = ok;
        }
        if (m.expected_torsion_x && m.expected_torsion_y) {
            bool tok = conv->torsion.x == *m.expected_torsion_x && conv->torsion.y == *m.expected_torsion_y;
            art["torsion_matches_expected"] = tok;
            ok = ok && tok;
        }
        return ok;
    });

    // stage 2: torsion order 4, symbolically and at the check points
    stage(2, "torsion_point_order", enabled(2), conv.has_value(), [&](json& art) {
        auto ord = point_order_bounded(conv->curve, conv->torsion);
        bool ok = ord == 4;
        art["symbolic_order"] = ord ? json(*ord) : json("unbounded");
        json at = json::array();
        for (const auto& t0 : m.torsion_check_points) {
            auto c0 = specialize_curve(conv->curve, t0);
            auto T0 = specialize_point(conv->torsion, t0);
            bool good = c0 && T0 && on_curve(*c0, *T0) && point_order_bounded(*c0, *T0) == 4;
            at.push_back(json{{"t", to_json(t0)}, {"order_4", good}});
            ok = ok && good;
        }
        art["specializations"] = at;
        return ok;
    });

    // stage 3: claimed x-coordinates lift over Q(t)
    stage(3, "claimed_points_lift", enabled(3), conv && !m.claimed_points.empty(), [&](json& art) {
        bool ok = true;
        json lifts = json::array();
        for (const auto& X : m.claimed_points) {
            bool li = lift_x(conv->curve, X).has_value();
            lifts.push_back(li);
            ok = ok && li;
        }
        art["lift"] = lifts;
        return ok;
    });

    // stage 4: each section's derived condition matches the expected one up
    // to rational square factors (sign-sensitive)
    std::vector<std::optional<section_condition>> conds(m.sections.size());
    stage(4, "section_conditions", enabled(4), conv && !m.sections.empty(), [&](json& art) {
        bool ok = true;
        json rows = json::array();
        for (std::size_t i = 0; i < m.sections.size(); ++i) {
            conds[i] = impose_x(conv->curve, m.sections[i].candidate_x);
            bool match = detail::square_class_equal(conds[i]->s, m.sections[i].expected_condition);
            rows.push_back(json{{"derived", to_json(conds[i]->s)}, {"matches_expected", match}});
            ok = ok && match;
        }
        art["sections"] = rows;
        return ok;
    });

    // stage 5: each substitution turns its derived condition into a square
    stage(5, "substitutions_square_conditions", enabled(5), conv && !m.sections.empty(),
          [&](json& art) {
              bool ok = true;
              json rows = json::array();
              for (std::size_t i = 0; i < m.sections.size(); ++i) {
                  const poly cond = conds[i] ? poly::from_z(conds[i]->s) : m.sections[i].expected_condition;
                  bool sq = is_square_ratfunc(compose(ratfunc(cond), m.sections[i].substitution)).has_value();
                  rows.push_back(sq);
                  ok = ok && sq;
              }
              art["squares"] = rows;
              return ok;
          });

    // stage 6: substituting solution 1 into condition 2 yields the printed
    // conic, and the line pencil through the printed rational point
    // parametrizes it
    std::optional<conic_param> conic;
    stage(6, "combined_condition", enabled(6),
          conv && m.sections.size() >= 2 && m.combined_condition.has_value(), [&](json& art) {
              const poly cond2 = conds[1] ? poly::from_z(conds[1]->s) : m.sections[1].expected_condition;
              ratfunc pushed = compose(ratfunc(cond2), m.sections[0].substitution);
              zpoly combined = square_class_residue(pushed);
              art["derived"] = to_json(combined);
              bool ok = detail::square_class_equal(combined, *m.combined_condition);
              art["matches_expected"] = ok;
              if (m.conic_point) {
                  conic = parametrize_conic(*m.combined_condition, m.conic_point->first,
                                            m.conic_point->second);
                  art["parametrization"] = to_json(conic->t_of_m);
                  if (m.u_of_r) art["matches_printed_parametrization"] = conic->t_of_m == *m.u_of_r;
              }
              return ok;
          });

    // stage 7: composing the first substitution with u(r) reproduces the
    // printed t(r), and u(r) squares the combined condition
    stage(7, "composed_substitution", enabled(7),
          conv && !m.sections.empty() && m.u_of_r && m.t_of_r, [&](json& art) {
              ratfunc composed = compose(m.sections[0].substitution, *m.u_of_r);
              bool match = composed == *m.t_of_r;
              art["matches_printed"] = match;
              bool usq = true;
              if (m.combined_condition)
                  usq = is_square_ratfunc(compose(ratfunc(*m.combined_condition), *m.u_of_r)).has_value();
              art["u_squares_combined_condition"] = usq;
              return match && usq;
          });

    // stage 8: the composed family is square-scaling equivalent to the
    // printed one
    std::optional<ratfunc> twist;     // lambda of the normalization
    std::optional<ratfunc> printed_mu;  // residual scaling to the printed family
    stage(8, "final_family_equivalence", enabled(8), conv && m.t_of_r && m.a6 && m.b6,
          [&](json& art) {
              auto F = apply_substitution(conv->curve, *m.t_of_r);
              auto nm = normalize_to_polynomial_model(F);
              twist = nm.twist;
              art["normalized_A_degree"] = nm.A.degree();
              auto mu = is_square_scaling_equivalent(curve_ab<ratfunc>(ratfunc(nm.A), ratfunc(nm.B)),
                                                     curve_ab<ratfunc>(ratfunc(*m.a6), ratfunc(*m.b6)));
              if (mu) {
                  art["mu"] = to_json(*mu);
                  printed_mu = *mu;
              }
              return mu.has_value();
          });

    // the printed final family, used by stages 9-13 independently of stage 8
    std::optional<curve_ab<ratfunc>> final_rf;
    std::optional<ec_point<ratfunc>> final_T;
    if (m.a6 && m.b6) {
        try {
            final_rf = curve_ab<ratfunc>(ratfunc(*m.a6), ratfunc(*m.b6));
            auto sq = is_square_ratfunc(final_rf->B);
            if (sq) {
                auto T = lift_x(*final_rf, ratfunc(0) - *sq);
                if (!T) T = lift_x(*final_rf, *sq);
                final_T = T;
            }
        } catch (const std::exception&) {
        }
    }

    // stage 9: the printed x-coordinates lift on the printed family
    std::vector<std::optional<ec_point<ratfunc>>> final_pts(m.final_points.size());
    stage(9, "final_points_lift", enabled(9), final_rf && !m.final_points.empty(), [&](json& art) {
        bool ok = true;
        json lifts = json::array();
        for (std::size_t i = 0; i < m.final_points.size(); ++i) {
            final_pts[i] = lift_x(*final_rf, m.final_points[i]);
            lifts.push_back(final_pts[i].has_value());
            ok = ok && final_pts[i].has_value();
        }
        art["lift"] = lifts;
        return ok;
    });

    // stage 10: relations hold for some sign lift; lattice index and
    // regulator ratio of the printed generating set
    std::vector<std::optional<ec_point<ratfunc>>> relation_pts(m.relations.size());
    stage(10, "relations_and_lattice", enabled(10), final_rf && !m.relations.empty(), [&](json& art) {
        bool ok = true;
        json rows = json::array();
        const std::size_t n = m.final_points.size();
        std::vector<std::vector<zint>> basis_change(n, std::vector<zint>(n, 0));
        for (std::size_t i = 0; i < n; ++i) basis_change[i][i] = 1;
        for (std::size_t k = 0; k < m.relations.size(); ++k) {
            const auto& rel = m.relations[k];
            std::vector<ec_point<ratfunc>> lhs;
            for (int idx : rel.lhs) {
                if (idx < 1 || idx > static_cast<int>(n) || !final_pts[idx - 1])
                    throw std::domain_error("relation references an unlifted point");
                lhs.push_back(*final_pts[idx - 1]);
            }
            relation_pts[k] = lift_x(*final_rf, rel.rhs_x);
            if (!relation_pts[k]) throw std::domain_error("relation target does not lift");
            auto cert = verify_relation(*final_rf, lhs, *relation_pts[k], rel.lhs);
            json row = to_json(cert);
            row["lhs_x"] = json::array();
            for (int idx : rel.lhs) row["lhs_x"].push_back(to_json(m.final_points[static_cast<std::size_t>(idx - 1)]));
            row["rhs_x"] = to_json(rel.rhs_x);
            rows.push_back(row);
            ok = ok && cert.verified;
            // replaced generator row: P_replaces = 2 R_k - sum of the other lhs points
            int rep_idx = rel.replaces - 1;
            if (rep_idx >= 0 && rep_idx < static_cast<int>(n)) {
                for (auto& v : basis_change[rep_idx]) v = 0;
                for (int idx : rel.lhs)
                    if (idx != rel.replaces) basis_change[rep_idx][idx - 1] = -1;
                basis_change[rep_idx][rep_idx] = 2;
            }
        }
        art["relations"] = rows;
        art["curve"] = json{{"A", to_json(ratfunc(*m.a6))}, {"B", to_json(ratfunc(*m.b6))}};
        if (ok && !m.relations.empty()) {
            auto [idx, ratio] = lattice_index(basis_change);
            art["lattice_index"] = zint_to_string(idx);
            art["regulator_ratio"] = zint_to_string(ratio);
        }
        return ok;
    });

    // stage 11: independence certificate at the chosen specialization, over
    // the full-index generating set (relation targets replace their
    // generators)
    stage(11, "independence_certificate", enabled(11),
          final_rf && final_T && m.independence_at && !m.final_points.empty(), [&](json& art) {
              const rational r0 = *m.independence_at;
              auto c0 = specialize_curve(*final_rf, r0);
              if (!c0) throw std::domain_error("bad specialization for independence");
              std::vector<ratfunc> basis_x = m.final_points;
              for (const auto& rel : m.relations)
                  if (rel.replaces >= 1 && rel.replaces <= static_cast<int>(basis_x.size()))
                      basis_x[rel.replaces - 1] = rel.rhs_x;
              std::vector<ec_point<rational>> pts;
              for (const auto& x : basis_x) {
                  auto xv = x.eval(r0);
                  if (!xv) throw std::domain_error("basis x-coordinate undefined at r0");
                  auto P = lift_x(*c0, *xv);
                  if (!P) throw std::domain_error("basis point does not lift at r0");
                  pts.push_back(*P);
              }
              auto T0 = specialize_point(*final_T, r0);
              if (!T0) throw std::domain_error("torsion generator undefined at r0");
              std::uint64_t budget = opt.prime_budget_override ? opt.prime_budget_override : m.prime_budget;
              auto cert = certify_independence(*c0, pts, *T0, budget);
              art["certificate"] = to_json(cert);
              std::uint64_t maxw = 0;
              for (const auto& [mask, p] : cert.entries) maxw = std::max(maxw, p);
              art["max_witness"] = maxw;
              art["rank_lower_bound"] = cert.rank_lower_bound;
              return cert.rank_lower_bound == static_cast<int>(pts.size());
          });

    // stage 12: Gusic-Tadic conditions at the chosen specialization
    stage(12, "gt_conditions", enabled(12), m.a6 && m.b6 && m.gt_at, [&](json& art) {
        std::vector<poly> c_hints;
        if (m.t_of_r) {
            std::vector<ratfunc> scalings;
            if (twist) scalings.push_back(*twist);
            if (printed_mu) scalings.push_back(*printed_mu);
            c_hints = detail::structural_c_hints(m.tate_a, m.tate_b, *m.t_of_r, scalings);
        }
        auto rep12 = gt_check(*m.a6, *m.b6, *m.gt_at, nullptr, c_hints.empty() ? nullptr : &c_hints);
        art["report"] = to_json(rep12);
        art["divisor_count"] = rep12.divisors.size();
        return rep12.verdict;
    });

    // stage 13: torsion classification of the specialized curve
    stage(13, "torsion_classification", enabled(13), final_rf && m.independence_at, [&](json& art) {
        auto c0 = specialize_curve(*final_rf, *m.independence_at);
        if (!c0) throw std::domain_error("bad specialization for torsion classification");
        std::optional<ec_point<rational>> T0;
        if (final_T) T0 = specialize_point(*final_T, *m.independence_at);
        auto claim = classify_torsion(*c0, T0, 5);
        art["claim"] = to_json(claim);
        return claim.exact_z4;
    });

    rep.overall = true;
    for (const auto& s : rep.stages)
        if (s.status == "fail" || s.status == "error") rep.overall = false;
    return rep;
}

// ---------------------------------------------------------------------------
// Recheck: re-validate certificates embedded in a report (or a bare
// certificate file) without re-running any search.

inline std::vector<std::string> recheck_report_json(const json& j) {
    std::vector<std::string> bad;
    const std::string type = j.contains("type") ? j.at("type").get<std::string>() : "";
    if (type == "independence_certificate") {
        auto cert = independence_from_json(j);
        auto fails = recheck_independence(cert);
        bad.insert(bad.end(), fails.begin(), fails.end());
        return bad;
    }
    if (type == "gt_report") {
        poly A = poly_from_json(j.at("A")), B = poly_from_json(j.at("B"));
        rational r0 = rational_from_json(j.at("r0"));
        poly C = A * A - B * rational(4);
        bool verdict = true;
        for (const auto& e : j.at("divisors")) {
            zpoly h = zpoly_from_json(e.at("h"));
            rational v = rational_from_json(e.at("value"));
            if (eval(h, r0) != v) bad.push_back("divisor value mismatch");
            auto [cB, pB] = B.content_split();
            auto [cC, pC] = C.content_split();
            if (!divides(h, pB) && !divides(h, pC))
                bad.push_back("recorded divisor divides neither B nor A^2-4B");
            bool sq = is_square_rational(v).has_value();
            if (sq != e.at("square").get<bool>()) bad.push_back("square flag mismatch");
            verdict = verdict && !sq;
        }
        if (verdict != j.at("verdict").get<bool>()) bad.push_back("verdict mismatch");
        return bad;
    }
    if (type == "relation_certificate") {
        if (!j.at("verified").get<bool>()) bad.push_back("relation is recorded as refuted");
        zint idx = zint_from_string(j.at("index").get<std::string>());
        zint ratio = zint_from_string(j.at("regulator_ratio").get<std::string>());
        if (ratio != idx * idx) bad.push_back("regulator ratio is not the squared index");
        return bad;
    }
    if (type == "relation_row") {
        // embedded relation data: re-apply the recorded signs, no search
        auto c = curve_rf_from_json(j.at("curve"));
        std::vector<int> signs = j.at("sign_choices").get<std::vector<int>>();
        ec_point<ratfunc> sum = ec_point<ratfunc>::infinity();
        std::size_t i = 0;
        for (const auto& xj : j.at("lhs_x")) {
            auto P = lift_x(c, ratfunc_from_json(xj));
            if (!P) {
                bad.push_back("relation lhs point does not lift");
                return bad;
            }
            sum = add(c, sum, signs.at(i++) > 0 ? *P : neg(*P));
        }
        auto R = lift_x(c, ratfunc_from_json(j.at("rhs_x")));
        if (!R) {
            bad.push_back("relation target does not lift");
            return bad;
        }
        if (sum != dbl(c, *R)) bad.push_back("relation fails with the recorded signs");
        return bad;
    }
    if (type == "verification_report") {
        for (const auto& s : j.at("stages")) {
            const auto& art = s.at("artifacts");
            if (art.contains("certificate")) {
                auto fails = recheck_report_json(art.at("certificate"));
                bad.insert(bad.end(), fails.begin(), fails.end());
            }
            if (art.contains("report")) {
                auto fails = recheck_report_json(art.at("report"));
                bad.insert(bad.end(), fails.begin(), fails.end());
            }
            if (art.contains("relations")) {
                for (const auto& rel : art.at("relations")) {
                    auto fails = recheck_report_json(rel);
                    bad.insert(bad.end(), fails.begin(), fails.end());
                    if (art.contains("curve") && rel.contains("lhs_x") && rel.at("verified").get<bool>()) {
                        json row = rel;
                        row["type"] = "relation_row";
                        row["curve"] = art.at("curve");
                        auto rf = recheck_report_json(row);
                        bad.insert(bad.end(), rf.begin(), rf.end());
                    }
                }
            }
        }
        return bad;
    }
    bad.push_back("unknown certificate type: " + type);
    return bad;
}

}  // namespace mwforge
