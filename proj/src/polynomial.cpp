#include "mbs/polynomial.hpp"

#include <algorithm>

#include "mbs/rational.hpp"

namespace mbs {

IntPolynomial IntPolynomial::monomial(int degree, std::int64_t coeff) {
    std::vector<std::int64_t> c(degree + 1, 0);
    c[degree] = coeff;
    return IntPolynomial(std::move(c));
}

std::int64_t IntPolynomial::evaluate(std::int64_t q) const {
    std::int64_t v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = detail::checked_add(detail::checked_mul(v, q), *it);
    return v;
}

int IntPolynomial::q_adic_valuation() const {
    int k = 0;
    while (k < static_cast<int>(c_.size()) && c_[k] == 0) ++k;
    return k;
}

IntPolynomial IntPolynomial::shifted(int k) const {
    if (c_.empty()) return {};
    std::vector<std::int64_t> c(k, 0);
    c.insert(c.end(), c_.begin(), c_.end());
    return IntPolynomial(std::move(c));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<std::int64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = detail::checked_add(c[i], b.c_[i]);
    return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<std::int64_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] = detail::checked_add(c[i + j], detail::checked_mul(a.c_[i], b.c_[j]));
    return IntPolynomial(std::move(c));
}

std::string IntPolynomial::to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        std::int64_t v = c_[k];
        if (v == 0) continue;
        std::int64_t mag = v < 0 ? -v : v;
        if (out.empty()) {
            if (v < 0) out += "-";
        } else {
            out += v < 0 ? " - " : " + ";
        }
        if (k == 0 || mag != 1) out += std::to_string(mag);
        if (k >= 1) out += "q";
        if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
}

}  // namespace mbs
