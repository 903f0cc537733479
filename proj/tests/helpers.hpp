#pragma once

// Shared builders for the test suites.

#include "mwforge/poly.hpp"
#include "mwforge/rational.hpp"
#include "mwforge/ratfunc.hpp"

#include <initializer_list>
#include <random>
#include <vector>

namespace testutil {

using mwforge::poly;
using mwforge::rational;
using mwforge::ratfunc;

inline rational Q(long n) { return rational(n); }
inline rational Q(long n, long d) { return rational(mwforge::zint(n), mwforge::zint(d)); }

// poly from coefficients listed by ascending degree
inline poly P(std::initializer_list<rational> cs) { return poly(std::vector<rational>(cs)); }
inline poly Pi(std::initializer_list<long> cs) {
    std::vector<rational> v;
    for (long c : cs) v.emplace_back(c);
    return poly(std::move(v));
}

// linear convenience: a*t + b
inline poly lin(long a, long b) { return Pi({b, a}); }

inline mwforge::zpoly Z(std::initializer_list<long> cs) {
    std::vector<mwforge::zint> v;
    for (long c : cs) v.emplace_back(c);
    return mwforge::zpoly(std::move(v));
}

inline poly random_zpoly(std::mt19937_64& rng, int max_deg, long coeff_bound) {
    std::uniform_int_distribution<int> dd(0, max_deg);
    std::uniform_int_distribution<long> dc(-coeff_bound, coeff_bound);
    int d = dd(rng);
    std::vector<rational> v(d + 1);
    for (int i = 0; i <= d; ++i) v[i] = rational(dc(rng));
    return poly(std::move(v));
}

inline rational random_rational(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> dn(-bound, bound);
    std::uniform_int_distribution<long> dd(1, bound);
    return rational(mwforge::zint(dn(rng)), mwforge::zint(dd(rng)));
}

}  // namespace testutil
