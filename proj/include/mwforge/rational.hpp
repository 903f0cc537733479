#pragma once

// Exact rational numbers. Thin value wrapper over GMP's mpq_class that
// guarantees the canonical form everywhere: gcd(|num|, den) = 1, den >= 1,
// zero is 0/1. Serialization is "p/q", or "p" when q = 1.

#include "mwforge/integer.hpp"

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>

namespace mwforge {

class rational {
public:
    rational() : v_(0) {}
    rational(int n) : v_(n) {}
    rational(long n) : v_(static_cast<signed long>(n)) {}
    rational(const zint& n) : v_(n) {}
    rational(const zint& num, const zint& den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    zint num() const { return v_.get_num(); }
    zint den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    bool is_negative() const { return v_ < 0; }
    int sign() const { return sgn(v_); }

    rational operator-() const { return rational(mpq_class(-v_)); }
    rational operator+(const rational& o) const { return rational(mpq_class(v_ + o.v_)); }
    rational operator-(const rational& o) const { return rational(mpq_class(v_ - o.v_)); }
    rational operator*(const rational& o) const { return rational(mpq_class(v_ * o.v_)); }
    rational operator/(const rational& o) const {
        if (o.is_zero()) throw std::domain_error("rational division by zero");
        return rational(mpq_class(v_ / o.v_));
    }
    rational& operator+=(const rational& o) { v_ += o.v_; return *this; }
    rational& operator-=(const rational& o) { v_ -= o.v_; return *this; }
    rational& operator*=(const rational& o) { v_ *= o.v_; return *this; }
    rational& operator/=(const rational& o) { *this = *this / o; return *this; }

    bool operator==(const rational& o) const { return v_ == o.v_; }
    bool operator!=(const rational& o) const { return v_ != o.v_; }
    bool operator<(const rational& o) const { return v_ < o.v_; }
    bool operator<=(const rational& o) const { return v_ <= o.v_; }
    bool operator>(const rational& o) const { return v_ > o.v_; }
    bool operator>=(const rational& o) const { return v_ >= o.v_; }

    rational inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        return rational(den(), num());
    }

    rational abs() const { return is_negative() ? -*this : *this; }

    rational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        rational r(1), b(*this);
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    std::string str() const {
        std::string s = zint_to_string(num());
        if (!is_integer()) s += "/" + zint_to_string(den());
        return s;
    }

    static rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return rational(zint_from_string(s));
        zint n = zint_from_string(s.substr(0, slash));
        zint d = zint_from_string(s.substr(slash + 1));
        if (d <= 0) throw std::invalid_argument("rational literal needs positive denominator: " + s);
        return rational(n, d);
    }

private:
    mpq_class v_;
};

// Nonnegative square root when q is the square of a rational; exact integer
// square roots only, no factorization (num and den are coprime, so q is a
// square iff both are).
inline std::optional<rational> is_square_rational(const rational& q) {
    if (q.is_negative()) return std::nullopt;
    auto n = sqrt_exact(q.num());
    if (!n) return std::nullopt;
    auto d = sqrt_exact(q.den());
    if (!d) return std::nullopt;
    return rational(*n, *d);
}

}  // namespace mwforge
