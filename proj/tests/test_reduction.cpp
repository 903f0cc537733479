#include "mwforge/reduction.hpp"

#include "helpers.hpp"

#include <catch2/catch.hpp>

#include <random>
#include <set>

using namespace mwforge;
using namespace testutil;

namespace {

// every affine point of E(F_p), plus infinity
std::vector<ec_point<fp_el>> all_points(const reduced_curve& rc) {
    std::vector<ec_point<fp_el>> pts{ec_point<fp_el>::infinity()};
    for (std::uint64_t x = 0; x < rc.p; ++x) {
        std::uint64_t w = fpv_eval(fpv{0, rc.curve.B.v, rc.curve.A.v, 1}, x, rc.p);
        auto y = sqrt_mod_p_u64(w, rc.p);
        if (!y) continue;
        pts.push_back(ec_point<fp_el>::affine({x, rc.p}, {*y, rc.p}));
        if (*y != 0) pts.push_back(ec_point<fp_el>::affine({x, rc.p}, {rc.p - *y, rc.p}));
    }
    return pts;
}

std::set<std::pair<std::uint64_t, std::uint64_t>> doubled_xy(const reduced_curve& rc) {
    std::set<std::pair<std::uint64_t, std::uint64_t>> twoE;
    for (const auto& P : all_points(rc)) {
        auto D = dbl(rc.curve, P);
        twoE.insert(D.infinite ? std::pair<std::uint64_t, std::uint64_t>{~0ull, ~0ull}
                               : std::pair<std::uint64_t, std::uint64_t>{D.x.v, D.y.v});
    }
    return twoE;
}

bool halvable_brute(const reduced_curve& rc, const ec_point<fp_el>& P) {
    auto twoE = doubled_xy(rc);
    auto key = P.infinite ? std::pair<std::uint64_t, std::uint64_t>{~0ull, ~0ull}
                          : std::pair<std::uint64_t, std::uint64_t>{P.x.v, P.y.v};
    return twoE.count(key) > 0;
}

}  // namespace

TEST_CASE("prime_field validation") {
    CHECK_THROWS_AS(prime_field(2), std::domain_error);
    CHECK_THROWS_AS(prime_field(91), std::domain_error);
    CHECK(prime_field(5).p == 5);
}

TEST_CASE("reduce_curve examples") {
    curve_ab<rational> elkies(Q(-3535), Q(3211264));
    CHECK_FALSE(try_reduce_curve(elkies, prime_field(3)).has_value());  // A^2-4B = 0 mod 3
    CHECK_THROWS_AS(reduce_curve(elkies, prime_field(3)), bad_reduction);

    auto rc = reduce_curve(curve_ab<rational>(Q(9), Q(16)), prime_field(5));
    CHECK(rc.curve.A.v == 4);
    CHECK(rc.curve.B.v == 1);
}

TEST_CASE("reduce_point examples") {
    curve_ab<rational> elkies(Q(-3535), Q(3211264));
    auto rc = reduce_curve(elkies, prime_field(5));
    auto zz = reduce_point(ec_point<rational>::affine(Q(0), Q(0)), rc);
    REQUIRE(zz.has_value());
    CHECK((zz->x.v == 0 && zz->y.v == 0));

    auto T = reduce_point(ec_point<rational>::affine(Q(1792), Q(-12544)), rc);
    REQUIRE(T.has_value());
    CHECK(T->x.v == 2);
    CHECK(T->y.v == 1);

    // denominator divisible by p lands at infinity -> inconclusive
    curve_ab<rational> c2(Q(9), Q(16));
    auto rc2 = reduce_curve(c2, prime_field(5));
    auto far = lift_x(c2, rational(zint(1), zint(25)));
    if (far) CHECK_FALSE(reduce_point(*far, rc2).has_value());
    // synthetic: reduce a point with 1/25 in x built on a curve where it lifts
    auto P = ec_point<rational>::affine(rational(zint(1), zint(25)), Q(1));
    CHECK_FALSE(reduce_point(P, rc2).has_value());
}

TEST_CASE("sqrt_mod_p") {
    CHECK(sqrt_mod_p_u64(4, 7) == 2);
    SECTION("3 is a non-residue mod 7: exhaustive oracle") {
        bool residue = false;
        for (std::uint64_t r = 0; r < 7; ++r)
            if (r * r % 7 == 3) residue = true;
        CHECK_FALSE(residue);
        CHECK_FALSE(sqrt_mod_p_u64(3, 7).has_value());
    }
    CHECK(sqrt_mod_p_u64(0, 13) == 0);
    SECTION("random roundtrip with least-root convention") {
        std::mt19937_64 rng(5150);
        for (std::uint64_t p : {5ull, 97ull, 65537ull, 1000003ull}) {
            std::uniform_int_distribution<std::uint64_t> du(0, p - 1);
            for (int i = 0; i < 50; ++i) {
                std::uint64_t v = du(rng);
                std::uint64_t sq = mulmod_u64(v, v, p);
                auto r = sqrt_mod_p_u64(sq, p);
                REQUIRE(r.has_value());
                CHECK(mulmod_u64(*r, *r, p) == sq);
                CHECK(*r <= p - *r);
            }
        }
    }
}

TEST_CASE("halvability on the four-point curve y^2 = x^3 + x over F_5") {
    auto rc = reduce_curve(curve_ab<rational>(Q(0), Q(1)), prime_field(5));
    auto pts = all_points(rc);
    CHECK(pts.size() == 4);  // {inf, (0,0), (2,0), (3,0)} = Z/2 x Z/2
    CHECK(count_points_naive(rc) == 4);

    CHECK(is_halvable(rc, ec_point<fp_el>::infinity()));
    CHECK_FALSE(is_halvable(rc, ec_point<fp_el>::affine({0, 5}, {0, 5})));

    // in_double_plus_torsion with T = (0,0) of order 2
    auto T = ec_point<fp_el>::affine({0, 5}, {0, 5});
    auto P = ec_point<fp_el>::affine({2, 5}, {0, 5});
    CHECK(in_double_plus_torsion(rc, T, T));  // P = T: k = 1 reaches infinity
    CHECK(in_double_plus_torsion(rc, ec_point<fp_el>::infinity(), T));
    CHECK_FALSE(in_double_plus_torsion(rc, P, T));
}

TEST_CASE("is_halvable equals brute force for small primes") {
    std::mt19937_64 rng(24601);
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 31ull, 61ull}) {
        std::uniform_int_distribution<std::uint64_t> du(0, p - 1);
        int curves = 0;
        while (curves < 8) {
            fp_el A{du(rng), p}, B{du(rng), p};
            if (B.v == 0 || (A * A - curve_ab<fp_el>::four(B)).v == 0) continue;
            reduced_curve rc{curve_ab<fp_el>(A, B), p};
            auto twoE = doubled_xy(rc);
            for (const auto& P : all_points(rc)) {
                auto key = P.infinite ? std::pair<std::uint64_t, std::uint64_t>{~0ull, ~0ull}
                                      : std::pair<std::uint64_t, std::uint64_t>{P.x.v, P.y.v};
                CHECK(is_halvable(rc, P) == (twoE.count(key) > 0));
            }
            ++curves;
        }
    }
}

TEST_CASE("constructed doubles are always halvable") {
    std::mt19937_64 rng(31337);
    int done = 0;
    while (done < 1000) {
        std::uint64_t p = 0;
        std::uniform_int_distribution<std::uint64_t> dp(5, 2000);
        do { p = dp(rng); } while (!is_prime_u64(p) || p == 2);
        std::uniform_int_distribution<std::uint64_t> du(0, p - 1);
        fp_el A{du(rng), p}, B{du(rng), p};
        if (B.v == 0 || (A * A - curve_ab<fp_el>::four(B)).v == 0) continue;
        reduced_curve rc{curve_ab<fp_el>(A, B), p};
        auto Q = lift_x(rc.curve, fp_el{du(rng), p});
        if (!Q) continue;
        CHECK(is_halvable(rc, dbl(rc.curve, *Q)));
        ++done;
    }
}

TEST_CASE("reduction is a homomorphism on affine-defined triples") {
    curve_ab<rational> c(Q(-3535), Q(3211264));
    auto P = lift_x(c, Q(1568)).value();
    auto T = ec_point<rational>::affine(Q(1792), Q(-12544));
    std::vector<ec_point<rational>> pts{P, T, add(c, P, T), dbl(c, P), add(c, dbl(c, P), neg(T))};
    int checked = 0;
    for (std::uint64_t p = 5; checked < 25; p = next_prime_u64(p)) {
        auto rc = try_reduce_curve(c, prime_field(p));
        if (!rc) continue;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = 0; j < pts.size(); ++j) {
                auto s = add(c, pts[i], pts[j]);
                auto ri = reduce_point(pts[i], *rc), rj = reduce_point(pts[j], *rc);
                auto rs = reduce_point(s, *rc);
                if (!ri || !rj || !rs) continue;
                CHECK(add(rc->curve, *ri, *rj) == *rs);
                ++checked;
            }
        }
    }
}

TEST_CASE("count_points_naive properties") {
    // guard
    reduced_curve big{curve_ab<fp_el>({1, (1ull << 20) + 7}, {1, (1ull << 20) + 7}), (1ull << 20) + 7};
    CHECK_THROWS_AS(count_points_naive(big), std::domain_error);

    curve_ab<rational> elkies(Q(-3535), Q(3211264));
    std::mt19937_64 rng(808);
    int good = 0;
    for (std::uint64_t p = 5; good < 12; p = next_prime_u64(p)) {
        auto rc = try_reduce_curve(elkies, prime_field(p));
        if (!rc) continue;
        ++good;
        std::uint64_t n = count_points_naive(*rc);
        CHECK(n % 4 == 0);  // Z/4 torsion injects
        // Hasse interval
        double sp = 2.0 * std::sqrt(static_cast<double>(p));
        CHECK(static_cast<double>(n) >= p + 1 - sp - 1e-9);
        CHECK(static_cast<double>(n) <= p + 1 + sp + 1e-9);
        // order of any Q-torsion point divides #E(F_p)
        auto T = reduce_point(ec_point<rational>::affine(Q(1792), Q(-12544)), *rc);
        if (T) {
            auto ord = point_order_bounded(rc->curve, *T, 12);
            REQUIRE(ord.has_value());
            CHECK(n % static_cast<std::uint64_t>(*ord) == 0);
        }
    }
    (void)rng;
}
