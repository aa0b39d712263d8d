#pragma once

// Exact rational numbers on 64-bit integers.
//
// Every operation checks for overflow and throws ArithmeticOverflow instead of
// wrapping. Linear-algebra routines catch that exception and redo the work with
// GMP integers, so callers only see an overflow when a final result itself does
// not fit.

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mbs {

class ArithmeticOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("rational multiplication overflow");
    return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("rational addition overflow");
    return r;
}

inline std::int64_t checked_neg(std::int64_t a) {
    if (a == INT64_MIN) throw ArithmeticOverflow("rational negation overflow");
    return -a;
}

}  // namespace detail

class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit by design
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return (num_ > 0) - (num_ < 0); }

    Rational operator-() const {
        Rational r;
        r.num_ = detail::checked_neg(num_);
        r.den_ = den_;
        return r;
    }

    Rational& operator+=(const Rational& o) {
        if (den_ == 1 && o.den_ == 1) {
            num_ = detail::checked_add(num_, o.num_);
            return *this;
        }
        std::int64_t g = std::gcd(den_, o.den_);
        std::int64_t a = detail::checked_mul(num_, o.den_ / g);
        std::int64_t b = detail::checked_mul(o.num_, den_ / g);
        num_ = detail::checked_add(a, b);
        den_ = detail::checked_mul(den_ / g, o.den_);
        reduce();
        return *this;
    }

    Rational& operator-=(const Rational& o) { return *this += -o; }

    Rational& operator*=(const Rational& o) {
        if (den_ == 1 && o.den_ == 1) {
            num_ = detail::checked_mul(num_, o.num_);
            return *this;
        }
        if (num_ == 0 || o.num_ == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        std::int64_t g1 = std::gcd(num_, o.den_);
        std::int64_t g2 = std::gcd(o.num_, den_);
        num_ = detail::checked_mul(num_ / g1, o.num_ / g2);
        den_ = detail::checked_mul(den_ / g2, o.den_ / g1);
        return *this;
    }

    Rational& operator/=(const Rational& o) { return *this *= o.reciprocal(); }

    Rational reciprocal() const {
        if (num_ == 0) throw std::domain_error("division by zero rational");
        Rational r;
        r.num_ = den_;
        r.den_ = num_;
        if (r.den_ < 0) {
            r.num_ = detail::checked_neg(r.num_);
            r.den_ = detail::checked_neg(r.den_);
        }
        return r;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        // Cross multiplication in 128 bits cannot overflow for 64-bit inputs.
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }

    // Canonical text form "num/den" with den > 0; integers keep the "/1".
    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    // Accepts "n", "n/d" with optional sign; throws std::invalid_argument.
    static Rational parse(std::string_view text);

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = detail::checked_neg(num_);
            den_ = detail::checked_neg(den_);
        }
        reduce();
    }
    void reduce() {
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
    if (r.den() == 1) return os << r.num();
    return os << r.num() << '/' << r.den();
}

}  // namespace mbs
