#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mbs/rational.hpp"

namespace mbs {

// Dense row-major matrix of exact rationals. Products skip zero entries of the
// left factor, which keeps the pushforward/pullback matrices used throughout
// cheap to multiply.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    // Builds from integer rows; every row must have the same length.
    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols_if_empty = 0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RationalMatrix transpose() const;
    bool is_zero() const;
    bool is_identity() const;
    std::size_t nonzeros() const;

    // Column subset / horizontal concatenation helpers.
    RationalMatrix columns(const std::vector<std::size_t>& idx) const;
    RationalMatrix column(std::size_t j) const { return columns({j}); }
    static RationalMatrix hconcat(const RationalMatrix& a, const RationalMatrix& b);

    RationalMatrix& operator+=(const RationalMatrix& o);
    RationalMatrix& operator-=(const RationalMatrix& o);
    RationalMatrix& operator*=(const Rational& s);

    friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
    friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
    friend RationalMatrix operator*(RationalMatrix a, const Rational& s) { return a *= s; }
    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    static RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b);

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> a_;
};

void require_same_shape(const RationalMatrix& a, const RationalMatrix& b, const char* what);

}  // namespace mbs
