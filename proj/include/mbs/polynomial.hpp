#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mbs {

// Polynomial in q with integer coefficients, ascending degree, trailing zeros
// stripped. The zero polynomial has no coefficients.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) { trim(); }
    static IntPolynomial constant(std::int64_t v) { return IntPolynomial({v}); }
    static IntPolynomial monomial(int degree, std::int64_t coeff = 1);

    const std::vector<std::int64_t>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    std::int64_t coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : 0; }

    std::int64_t evaluate(std::int64_t q) const;
    // Largest k with q^k dividing the polynomial (0 for a nonzero constant term).
    int q_adic_valuation() const;
    bool divisible_by_q() const { return !c_.empty() && c_[0] == 0; }
    // True iff (q - 1) divides the polynomial, i.e. its value at 1 vanishes.
    bool divisible_by_q_minus_1() const { return evaluate(1) == 0; }

    IntPolynomial shifted(int k) const;  // multiply by q^k

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

    std::string to_string() const;  // e.g. "1 + 2q + q^2"

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<std::int64_t> c_;
};

}  // namespace mbs
