#include "mbs/linalg.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>

namespace mbs {
namespace {

// Scalar adaptors so one elimination routine serves both arithmetic backends.
inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }

mpq_class to_mpq(const Rational& r) {
    mpq_class q(mpz_class(static_cast<long>(r.num())), mpz_class(static_cast<long>(r.den())));
    q.canonicalize();
    return q;
}

Rational from_mpq(const mpq_class& q) {
    if (!mpz_fits_slong_p(q.get_num_mpz_t()) || !mpz_fits_slong_p(q.get_den_mpz_t()))
        throw ArithmeticOverflow("exact result does not fit in 64-bit rationals");
    return Rational(mpz_get_si(q.get_num_mpz_t()), mpz_get_si(q.get_den_mpz_t()));
}

template <class T>
using Dense = std::vector<std::vector<T>>;

template <class T>
Dense<T> to_dense(const RationalMatrix& m);

template <>
Dense<Rational> to_dense<Rational>(const RationalMatrix& m) {
    Dense<Rational> d(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
    return d;
}

template <>
Dense<mpq_class> to_dense<mpq_class>(const RationalMatrix& m) {
    Dense<mpq_class> d(m.rows(), std::vector<mpq_class>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = to_mpq(m(i, j));
    return d;
}

RationalMatrix from_dense(const Dense<Rational>& d, std::size_t cols) {
    RationalMatrix m(d.size(), cols);
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = d[i][j];
    return m;
}

RationalMatrix from_dense(const Dense<mpq_class>& d, std::size_t cols) {
    RationalMatrix m(d.size(), cols);
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = from_mpq(d[i][j]);
    return m;
}

template <class T>
std::size_t count_nonzero(const std::vector<T>& row, std::size_t from) {
    std::size_t n = 0;
    for (std::size_t j = from; j < row.size(); ++j) n += !is_zero(row[j]);
    return n;
}

// Gauss-Jordan elimination in place. With `full` the result is the reduced
// row echelon form; otherwise only rows below each pivot are cleared, which is
// enough for rank. Pivot rows are chosen sparsest-first to limit fill-in.
template <class T>
std::vector<std::size_t> eliminate(Dense<T>& a, std::size_t cols, bool full) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    const std::size_t rows = a.size();
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = rows;
        std::size_t best_nnz = 0;
        for (std::size_t i = r; i < rows; ++i) {
            if (is_zero(a[i][c])) continue;
            std::size_t nnz = count_nonzero(a[i], c);
            if (best == rows || nnz < best_nnz) {
                best = i;
                best_nnz = nnz;
            }
        }
        if (best == rows) continue;
        std::swap(a[r], a[best]);
        T inv = T(1) / a[r][c];
        for (std::size_t j = c; j < cols; ++j)
            if (!is_zero(a[r][j])) a[r][j] *= inv;
        for (std::size_t i = full ? 0 : r + 1; i < rows; ++i) {
            if (i == r || is_zero(a[i][c])) continue;
            T f = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (!is_zero(a[r][j])) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Fraction-free rank over Z after clearing denominators row by row.
std::size_t bareiss_rank(const RationalMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < cols; ++j) {
            mpz_class d(static_cast<long>(m(i, j).den()));
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
        for (std::size_t j = 0; j < cols; ++j)
            a[i][j] = mpz_class(static_cast<long>(m(i, j).num())) * (l / mpz_class(static_cast<long>(m(i, j).den())));
    }
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sgn(a[p][c]) == 0) ++p;
        if (p == rows) continue;
        std::swap(a[r], a[p]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

template <class T>
RowEchelon rref_with(const RationalMatrix& m) {
    auto a = to_dense<T>(m);
    auto piv = eliminate(a, m.cols(), true);
    return {from_dense(a, m.cols()), piv};
}

template <class T>
std::optional<RationalMatrix> inverse_with(const RationalMatrix& m) {
    const std::size_t n = m.rows();
    auto a = to_dense<T>(RationalMatrix::hconcat(m, RationalMatrix::identity(n)));
    auto piv = eliminate(a, 2 * n, true);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    Dense<T> right(n, std::vector<T>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) right[i][j] = a[i][n + j];
    return from_dense(right, n);
}

template <class T>
Rational determinant_with(const RationalMatrix& m) {
    const std::size_t n = m.rows();
    auto a = to_dense<T>(m);
    T det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(a[p][c])) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        T inv = T(1) / a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (is_zero(a[i][c])) continue;
            T f = a[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    if constexpr (std::is_same_v<T, Rational>) {
        return det;
    } else {
        return from_mpq(det);
    }
}

}  // namespace

std::size_t rank(const RationalMatrix& m) {
    if (m.empty()) return 0;
    try {
        auto a = to_dense<Rational>(m);
        return eliminate(a, m.cols(), false).size();
    } catch (const ArithmeticOverflow&) {
        return bareiss_rank(m);
    }
}

RowEchelon rref(const RationalMatrix& m) {
    try {
        return rref_with<Rational>(m);
    } catch (const ArithmeticOverflow&) {
        return rref_with<mpq_class>(m);
    }
}

std::vector<std::size_t> column_pivots(const RationalMatrix& m) {
    if (m.empty()) return {};
    try {
        auto a = to_dense<Rational>(m);
        return eliminate(a, m.cols(), false);
    } catch (const ArithmeticOverflow&) {
        auto a = to_dense<mpq_class>(m);
        return eliminate(a, m.cols(), false);
    }
}

RationalMatrix column_space_basis(const RationalMatrix& m) { return m.columns(column_pivots(m)); }

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    if (m.rows() == 0) return RationalMatrix(0, 0);
    try {
        return inverse_with<Rational>(m);
    } catch (const ArithmeticOverflow&) {
        return inverse_with<mpq_class>(m);
    }
}

Rational determinant(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    try {
        return determinant_with<Rational>(m);
    } catch (const ArithmeticOverflow&) {
        return determinant_with<mpq_class>(m);
    }
}

std::optional<RationalMatrix> solve_in_basis(const RationalMatrix& basis, const RationalMatrix& rhs) {
    if (basis.rows() != rhs.rows()) throw std::invalid_argument("solve_in_basis: row mismatch");
    const std::size_t k = basis.cols();
    if (k == 0) {
        if (!rhs.is_zero()) return std::nullopt;
        return RationalMatrix(0, rhs.cols());
    }
    RowEchelon e = rref(RationalMatrix::hconcat(basis, rhs));
    // Full column rank of the basis means pivots 0..k-1 among the first k columns.
    if (e.pivot_columns.size() < k) throw std::invalid_argument("solve_in_basis: basis is rank deficient");
    for (std::size_t i = 0; i < k; ++i)
        if (e.pivot_columns[i] != i) throw std::invalid_argument("solve_in_basis: basis is rank deficient");
    if (e.pivot_columns.size() > k) return std::nullopt;  // rhs leaves the span
    RationalMatrix x(k, rhs.cols());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < rhs.cols(); ++j) x(i, j) = e.reduced(i, k + j);
    return x;
}

RationalMatrix nullspace(const RationalMatrix& m) {
    const std::size_t n = m.cols();
    RowEchelon e = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto c : e.pivot_columns) is_pivot[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free.push_back(c);
    RationalMatrix basis(n, free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        basis(free[k], k) = 1;
        for (std::size_t i = 0; i < e.pivot_columns.size(); ++i) basis(e.pivot_columns[i], k) = -e.reduced(i, free[k]);
    }
    return basis;
}

}  // namespace mbs
