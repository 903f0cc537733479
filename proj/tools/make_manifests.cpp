// Emits the shipped manifests (data/elkies_rank6.json, data/elkl_alt.json)
// from their defining formulas.

#include "mwforge/expr.hpp"
#include "mwforge/manifest.hpp"

#include <fstream>
#include <iostream>

using namespace mwforge;

static manifest elkies_rank6() {
    manifest m;
    m.name = "elkies_rank6";
    m.tate_a = parse_poly("(8 t - 1)(32 t + 7)");
    m.tate_b = parse_poly("8 (t + 1)(15 t - 8)(31 t - 7)");
    m.expected_A = parse_poly("65536 t^4 - 17472 t^3 - 10176 t^2 + 18672 t - 3535");
    m.expected_B = parse_poly("1024 (t + 1)^2 (15 t - 8)^2 (31 t - 7)^2");
    m.expected_torsion_x = parse_ratfunc("32 (t + 1)(15 t - 8)(31 t - 7)");
    m.expected_torsion_y = parse_ratfunc("32 (1 + t)(-1 + 8 t)(-8 + 15 t)(-7 + 31 t)(7 + 32 t)");
    m.torsion_check_points = {rational(0), rational(1)};
    m.claimed_points = {
        parse_ratfunc("-361 (t + 1)(31 t - 7)"),
        parse_ratfunc("-4 (t + 1)(15 t - 8)(16 t - 7)^2"),
        parse_ratfunc("-16 (t + 1)(8 t + 7)^2 (15 t - 8)"),
        parse_ratfunc("4 (15 t - 8)(16 t + 1)^2 (31 t - 7)"),
    };
    m.sections = {
        {parse_ratfunc("-64 (1 + t)^2 (-4 + 7 t)(4 + 17 t) / (1 + 4 t)^2"),
         parse_poly("-(-4 + 7 t)(4 + 17 t)"),
         parse_ratfunc("4 (-1 + u^2) / (17 + 7 u^2)", "u")},
        {parse_ratfunc("576 (-4 + 7 t)(-8 + 15 t)^2 (-1324 + 5551 t) / (49 (-39 + 28 t)^2)"),
         parse_poly("(-4 + 7 t)(-1324 + 5551 t)"),
         parse_ratfunc("4 (-331 + u^2) / (7 (-793 + u^2))", "u")},
    };
    m.combined_condition = parse_poly("-(-1863 + 539 u^2)", "u");
    m.conic_point = std::pair{rational::parse("13/7"), rational(2)};
    m.u_of_r = parse_ratfunc("(-7007 - 28 r + 13 r^2) / (7 (539 + r^2))", "r");
    m.t_of_r = parse_ratfunc(
        "4 (3 r^2 - 14 r - 5390)(10 r^2 - 14 r - 1617) / "
        "(7 (72 r^4 - 182 r^3 - 13279 r^2 + 98098 r + 20917512))",
        "r");
    m.a6 = parse_poly(
        "3 (6637977907200 r^16 - 327957190299648 r^15 - 132939477324670464 r^14 + "
        "1334557851651990784 r^13 + 73205200037549219248 r^12 - "
        "1718125119359074284768 r^11 - 193538301177692188691736 r^10 + "
        "1905189555626165277886872 r^9 + 96624855648992854220247819 r^8 - "
        "1026897170482503084781024008 r^7 - 56226940796444312350911834456 r^6 + "
        "269042619584910197333660344992 r^5 + 6178698341397939354226782536368 r^4 - "
        "60712935351132451806093801142016 r^3 - 3259766993714464579957766495983104 r^2 + "
        "4334495070152077221968455683796992 r + 47287453161693896431461711200563200)",
        "r");
    m.b6 = parse_poly(
        "7225344 (r - 224)^2 (r + 154)^2 (2 r - 7)^2 (32 r + 77)^2 (18 r^2 + 14 r + 16709)^2 "
        "(24 r^2 - 1001 r + 14014)^2 (26 r^2 + 1001 r + 12936)^2 (31 r^2 - 14 r + 9702)^2 "
        "(72 r^4 - 182 r^3 - 13279 r^2 + 98098 r + 20917512)^2",
        "r");
    m.final_points = {
        parse_ratfunc("-53067 (r - 224)(r + 154)(2 r - 7)(32 r + 77)(24 r^2 - 1001 r + 14014)"
                      "(26 r^2 + 1001 r + 12936)(72 r^4 - 182 r^3 - 13279 r^2 + 98098 r + 20917512)^2",
                      "r"),
        parse_ratfunc("-48 (r - 224)(r + 154)(2 r - 7)(32 r + 77)(18 r^2 + 14 r + 16709)"
                      "(31 r^2 - 14 r + 9702)(2424 r^4 - 12922 r^3 - 3840473 r^2 + 6964958 r + 704222904)^2",
                      "r"),
        parse_ratfunc("144 (16709 + 14 r + 18 r^2)(14014 - 1001 r + 24 r^2)(12936 + 1001 r + 26 r^2)"
                      "(9702 - 14 r + 31 r^2)(155719256 - 490490 r + 1032283 r^2 + 910 r^3 + 536 r^4)^2",
                      "r"),
        parse_ratfunc("576 (16709 + 14 r + 18 r^2)(14014 - 1001 r + 24 r^2)(12936 + 1001 r + 26 r^2)"
                      "(9702 - 14 r + 31 r^2)(434619416 + 2648646 r - 841477 r^2 - 4914 r^3 + 1496 r^4)^2",
                      "r"),
        parse_ratfunc("(12936 + 1001 r + 26 r^2)^2 (20917512 + 98098 r - 13279 r^2 - 182 r^3 + 72 r^4)^2 "
                      "88510464 (539 + r^2)^2 (-7007 - 28 r + 13 r^2)^2 (14014 - 1001 r + 24 r^2)^2 / "
                      "(285872664 + 2256254 r - 1029833 r^2 - 4186 r^3 + 984 r^4)^2",
                      "r"),
        parse_ratfunc("(9702 - 14 r + 31 r^2)^2 (20917512 + 98098 r - 13279 r^2 - 182 r^3 + 72 r^4)^2 "
                      "260112384 (539 + r^2)^2 (-539 + 1001 r + r^2)^2 (16709 + 14 r + 18 r^2)^2 / "
                      "(676332888 + 2256254 r + 418999 r^2 - 4186 r^3 + 2328 r^4)^2",
                      "r"),
    };
    m.relations = {
        {{3, 4, 5},
         parse_ratfunc("1344 (72 r^4 - 182 r^3 - 13279 r^2 + 98098 r + 20917512)(2 r - 7)^2 "
                       "(32 r + 77)^2 (18 r^2 + 14 r + 16709)^2 (11 r^2 + 14 r + 12936)^2",
                       "r"),
         5},
        {{3, 4, 6},
         parse_ratfunc("1344 (18 r^2 + 14 r + 16709)(26 r^2 + 1001 r + 12936)(31 r^2 - 14 r + 9702) "
                       "(24 r^2 - 1001 r + 14014)(72 r^4 - 182 r^3 - 13279 r^2 + 98098 r + 20917512) "
                       "(r + 154)^2 (32 r + 77)^2 (6 r^2 - 91 r + 3332)^2 / (30 r^2 - 1001 r + 17248)^2",
                       "r"),
         6},
    };
    m.independence_at = rational(1);
    m.gt_at = rational(13);
    m.prime_budget = 10000;
    return m;
}

static manifest elkl_alt() {
    manifest m;
    m.name = "elkl_alt";
    m.tate_a = parse_poly("4 (9 + 80 t)");
    m.tate_b = parse_poly("(-2 + t)(-81 + 2 t)(-1 + 2 t)(-1 + 18 t) / 2");
    m.torsion_check_points = {rational(1), rational(3)};
    return m;
}

int main(int argc, char** argv) {
    std::string outdir = argc > 1 ? argv[1] : "data";
    auto write = [&](const std::string& name, const json& j) {
        std::string path = outdir + "/" + name;
        std::ofstream out(path);
        out << j.dump(1) << "\n";
        std::cout << "wrote " << path << "\n";
    };
    manifest rank6 = elkies_rank6();
    write(rank6.name + ".json", to_json(rank6));
    manifest alt = elkl_alt();
    write(alt.name + ".json", to_json(alt));

    // standalone family files for the point-wise CLI subcommands
    write("elkies_surface.json", json{{"A", to_json(*rank6.expected_A)}, {"B", to_json(*rank6.expected_B)}});
    write("rank6_family.json", json{{"A", to_json(*rank6.a6)}, {"B", to_json(*rank6.b6)}});

    // the t = 0 member of the base family with two certifiable points
    write("t0_curve.json", json{{"A", "-3535"}, {"B", "3211264"}});
    write("t0_points.json", json{{"points", json::array({"1568", "6272"})}, {"torsion", "1792"}});

    // the printed relations as a standalone input for the relations subcommand
    json pts = json::array();
    for (const auto& x : rank6.final_points) pts.push_back(to_json(x));
    json rels = json::array();
    for (const auto& r : rank6.relations)
        rels.push_back(json{{"lhs", r.lhs}, {"rhs_x", to_json(r.rhs_x)}, {"replaces", r.replaces}});
    write("rank6_relations.json", json{{"points", pts}, {"relations", rels}});
    return 0;
}
