#include "mbs/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace mbs {

Rational Rational::parse(std::string_view text) {
    auto parse_int = [&](std::string_view s) -> std::int64_t {
        if (s.empty()) throw std::invalid_argument("empty integer in rational");
        std::size_t i = 0;
        bool neg = false;
        if (s[0] == '-' || s[0] == '+') {
            neg = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) throw std::invalid_argument("sign without digits in rational");
        std::int64_t v = 0;
        for (; i < s.size(); ++i) {
            char c = s[i];
            if (c < '0' || c > '9') throw std::invalid_argument("bad character in rational: " + std::string(s));
            v = detail::checked_add(detail::checked_mul(v, 10), c - '0');
        }
        return neg ? -v : v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    std::int64_t n = parse_int(text.substr(0, slash));
    std::int64_t d = parse_int(text.substr(slash + 1));
    if (d <= 0) throw std::invalid_argument("rational denominator must be positive: " + std::string(text));
    return Rational(n, d);
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols_if_empty) {
    std::size_t c = rows.empty() ? cols_if_empty : rows[0].size();
    RationalMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool RationalMatrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool RationalMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != Rational(i == j ? 1 : 0)) return false;
    return true;
}

std::size_t RationalMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& x : a_) n += !x.is_zero();
    return n;
}

RationalMatrix RationalMatrix::columns(const std::vector<std::size_t>& idx) const {
    RationalMatrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
    return m;
}

RationalMatrix RationalMatrix::hconcat(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hconcat: row count mismatch");
    RationalMatrix m(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
    }
    return m;
}

void require_same_shape(const RationalMatrix& a, const RationalMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& o) {
    require_same_shape(*this, o, "matrix addition");
    for (std::size_t k = 0; k < a_.size(); ++k)
        if (!o.a_[k].is_zero()) a_[k] += o.a_[k];
    return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& o) {
    require_same_shape(*this, o, "matrix subtraction");
    for (std::size_t k = 0; k < a_.size(); ++k)
        if (!o.a_[k].is_zero()) a_[k] -= o.a_[k];
    return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& s) {
    for (auto& x : a_) x *= s;
    return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: inner dimension mismatch");
    RationalMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        Rational* crow = &c.a_[i * b.cols_];
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& x = a.a_[i * a.cols_ + k];
            if (x.is_zero()) continue;
            const Rational* brow = &b.a_[k * b.cols_];
            if (x == Rational(1)) {
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!brow[j].is_zero()) crow[j] += brow[j];
            } else {
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!brow[j].is_zero()) crow[j] += x * brow[j];
            }
        }
    }
    return c;
}

RationalMatrix RationalMatrix::kron(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix k(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) {
            const Rational& x = a(i, j);
            if (x.is_zero()) continue;
            for (std::size_t p = 0; p < b.rows_; ++p)
                for (std::size_t q = 0; q < b.cols_; ++q) k(i * b.rows_ + p, j * b.cols_ + q) = x * b(p, q);
        }
    return k;
}

std::string RationalMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
    }
    os << "]";
    return os.str();
}

}  // namespace mbs
