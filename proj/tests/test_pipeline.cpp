#include "mwforge/expr.hpp"
#include "mwforge/pipeline.hpp"

#include "helpers.hpp"

#include <catch2/catch.hpp>

#include <fstream>
#include <sstream>

using namespace mwforge;
using namespace testutil;

namespace {

json load_data(const std::string& name) {
    std::ifstream in(std::string(MWFORGE_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    return json::parse(in);
}

const manifest& elkies() {
    static manifest m = manifest_from_json(load_data("elkies_rank6.json"));
    return m;
}

std::string status_of(const verification_report& rep, int id) {
    for (const auto& s : rep.stages)
        if (s.id == id) return s.status;
    return "missing";
}

}  // namespace

TEST_CASE("expression parser") {
    CHECK(parse_poly("(8 t - 1)(32 t + 7)") == Pi({-7, 24, 256}));
    CHECK(parse_poly("-(-4 + 7 t)(4 + 17 t)") == Pi({16, 40, -119}));
    CHECK(parse_ratfunc("4 (-1 + u^2) / (17 + 7 u^2)", "u") ==
          ratfunc(Pi({-4, 0, 4}), Pi({17, 0, 7})));
    CHECK(parse_ratfunc("2 r", "r") == ratfunc(Pi({0, 2})));
    CHECK(parse_ratfunc("(t+1)^2") == ratfunc(Pi({1, 2, 1})));
    CHECK(parse_ratfunc("1/2 (t + t)") == ratfunc(Pi({0, 1})));
    CHECK_THROWS_AS(parse_ratfunc("x + y", "x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ratfunc("3 +", "t"), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly("1/t"), std::invalid_argument);
}

TEST_CASE("json codecs round-trip bit-exactly") {
    rational q = rational::parse("-123456789123456789/7");
    CHECK(rational_from_json(to_json(q)) == q);

    poly p = Pi({1, 0, -7}) * Q(1, 3);
    CHECK(poly_from_json(to_json(p)) == p);

    ratfunc f(Pi({3, 0, 2}), Pi({-5, 1}));
    CHECK(ratfunc_from_json(to_json(f)) == f);
    CHECK(to_json(f).at("den")[1] == "1");  // positive-lc primitive denominator

    auto c = curve_q_from_json(json{{"A", "-3535"}, {"B", "3211264"}});
    CHECK(c.A == Q(-3535));
    auto P = point_q_from_json(json{{"x", "1792"}, {"y", "-12544"}});
    CHECK_FALSE(P.infinite);
    CHECK(point_q_from_json(json("inf")).infinite);
}

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("manifest loading is strict and lossless") {
    json j = load_data("elkies_rank6.json");
    manifest m = manifest_from_json(j);
    CHECK(m.name == "elkies_rank6");
    CHECK(m.sections.size() == 2);
    CHECK(m.final_points.size() == 6);
    CHECK(m.relations.size() == 2);
    CHECK(nlohmann::json::parse(to_json(m).dump()) == nlohmann::json::parse(j.dump()));

    SECTION("unknown key rejected") {
        json bad = j;
        bad["surprise"] = 1;
        CHECK_THROWS_AS(manifest_from_json(bad), std::invalid_argument);
    }
    SECTION("non-canonical rational rejected") {
        json bad = j;
        bad["specializations"]["gt_at"] = "26/2";
        CHECK_THROWS_AS(manifest_from_json(bad), std::invalid_argument);
    }
}

TEST_CASE("full manifest run passes every stage") {
    static const auto rep = run_manifest(elkies());
    CHECK(rep.overall);
    for (const auto& s : rep.stages) CHECK(s.status == "pass");

    SECTION("deterministic modulo timings") {
        auto rep2 = run_manifest(elkies());
        json a = rep.to_json_with_digest(), b = rep2.to_json_with_digest();
        CHECK(a.at("digest") == b.at("digest"));
        for (auto& s : a["stages"]) s.erase("ms");
        for (auto& s : b["stages"]) s.erase("ms");
        CHECK(a == b);
    }
    SECTION("recheck of the emitted report passes without search") {
        CHECK(recheck_report_json(rep.to_json_with_digest()).empty());
    }
    SECTION("tampered embedded witness is caught") {
        json j = rep.to_json_with_digest();
        for (auto& s : j["stages"]) {
            if (s["id"] == 11) {
                auto& entries = s["artifacts"]["certificate"]["entries"];
                entries["1"] = 9;  // not a prime
            }
        }
        CHECK_FALSE(recheck_report_json(j).empty());
    }
}

TEST_CASE("stage-range selection skips the rest") {
    run_options opt;
    opt.stage_lo = 1;
    opt.stage_hi = 3;
    auto rep = run_manifest(elkies(), "", opt);
    CHECK(status_of(rep, 2) == "pass");
    CHECK(status_of(rep, 11) == "skipped");
    CHECK(rep.overall);  // skipped stages do not fail the run
}

TEST_CASE("perturbations are caught at their stage and only there") {
    SECTION("expected_ab perturbation fails exactly stage 1") {
        json j = load_data("elkies_rank6.json");
        j["expected_ab"]["A"][0] = "-3534";
        auto rep = run_manifest(manifest_from_json(j));
        CHECK(status_of(rep, 1) == "fail");
        for (int id = 2; id <= 13; ++id) CHECK(status_of(rep, id) == "pass");
        CHECK_FALSE(rep.overall);
    }
    SECTION("expected_condition perturbation fails exactly stage 4") {
        json j = load_data("elkies_rank6.json");
        j["sections"][0]["expected_condition"] = json::array({"17", "40", "-119"});
        auto rep = run_manifest(manifest_from_json(j));
        CHECK(status_of(rep, 4) == "fail");
        for (int id : {1, 2, 3, 5, 6, 7, 8, 9, 10, 11, 12, 13}) CHECK(status_of(rep, id) == "pass");
    }
    SECTION("b6 perturbation fails stage 8 and cascades to the stages that verify against it") {
        json j = load_data("elkies_rank6.json");
        j["final_family"]["b6"][0] = "7225345";
        run_options opt;
        opt.stage_hi = 9;  // the later stages all consume the perturbed curve
        auto rep = run_manifest(manifest_from_json(j), "", opt);
        for (int id = 1; id <= 7; ++id) CHECK(status_of(rep, id) == "pass");
        CHECK(status_of(rep, 8) == "fail");
        CHECK(status_of(rep, 9) == "fail");
    }
}

TEST_CASE("verified relations specialize correctly at 20 random points") {
    const manifest& m = elkies();
    curve_ab<ratfunc> c(ratfunc(*m.a6), ratfunc(*m.b6));
    const auto& rel = m.relations[0];
    std::vector<ec_point<ratfunc>> lhs;
    for (int i : rel.lhs) lhs.push_back(*lift_x(c, m.final_points[static_cast<std::size_t>(i - 1)]));
    auto R = *lift_x(c, rel.rhs_x);
    auto cert = verify_relation(c, lhs, R, rel.lhs);
    REQUIRE(cert.verified);

    // symbolic equality implies specialized equality wherever defined
    std::vector<ec_point<ratfunc>> signed_lhs;
    for (std::size_t i = 0; i < lhs.size(); ++i)
        signed_lhs.push_back(cert.sign_choices[i] > 0 ? lhs[i] : neg(lhs[i]));
    std::mt19937_64 rng(112233);
    std::uniform_int_distribution<long> dn(-60, 60);
    std::uniform_int_distribution<long> dd(1, 9);
    int checked = 0;
    while (checked < 20) {
        rational r0(mwforge::zint(dn(rng)), mwforge::zint(dd(rng)));
        auto c0 = specialize_curve(c, r0);
        if (!c0) continue;
        std::vector<ec_point<rational>> pts0;
        bool ok = true;
        for (const auto& P : signed_lhs) {
            auto P0 = specialize_point(P, r0);
            ok = ok && P0 && on_curve(*c0, *P0);
            if (P0) pts0.push_back(*P0);
        }
        auto R0 = specialize_point(R, r0);
        ok = ok && R0 && on_curve(*c0, *R0);
        if (!ok) continue;
        ec_point<rational> sum = ec_point<rational>::infinity();
        for (const auto& P : pts0) sum = add(*c0, sum, P);
        CHECK(sum == dbl(*c0, *R0));
        ++checked;
    }
}

TEST_CASE("hint-free GT factorization matches the divisor-completeness count") {
    const manifest& m = elkies();
    auto rep = gt_check(*m.a6, *m.b6, rational(13));  // no hints
    CHECK(rep.verdict);
    std::size_t k1 = rep.b_fact.factors.size(), k2 = rep.c_fact.factors.size();
    CHECK(k1 == 9);
    CHECK(k2 == 9);
    int shared = 0;
    for (const auto& eb : rep.b_fact.factors)
        for (const auto& ec : rep.c_fact.factors) shared += eb.f == ec.f;
    CHECK(shared == 0);
    CHECK(rep.divisors.size() == (1u << k1) + (1u << k2) - 2);

    SECTION("the hinted route reaches the same verdict and divisors") {
        std::vector<ratfunc> scalings;
        auto hints = detail::structural_c_hints(m.tate_a, m.tate_b, *m.t_of_r, scalings);
        auto rep2 = gt_check(*m.a6, *m.b6, rational(13), nullptr, &hints);
        CHECK(rep2.verdict == rep.verdict);
        CHECK(rep2.divisors.size() == rep.divisors.size());
    }
}

TEST_CASE("worker count follows MWFORGE_THREADS") {
    setenv("MWFORGE_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    setenv("MWFORGE_THREADS", "0", 1);
    CHECK(worker_count() >= 1);
    unsetenv("MWFORGE_THREADS");
    CHECK(worker_count() >= 1);
}

TEST_CASE("the alternative family passes its applicable stages only") {
    json j = load_data("elkl_alt.json");
    auto rep = run_manifest(manifest_from_json(j));
    CHECK(status_of(rep, 1) == "pass");
    CHECK(status_of(rep, 2) == "pass");
    for (int id = 3; id <= 13; ++id) CHECK(status_of(rep, id) == "not_applicable");
    CHECK(rep.overall);
}
