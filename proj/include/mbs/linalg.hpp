#pragma once

// Exact linear algebra over Q.
//
// The fast path eliminates with 64-bit rationals. Whenever an intermediate value
// overflows, rank falls back to fraction-free (Bareiss) elimination on GMP
// integers and the other routines fall back to GMP rationals.

#include <optional>
#include <vector>

#include "mbs/matrix.hpp"

namespace mbs {

struct RowEchelon {
    RationalMatrix reduced;                 // reduced row echelon form
    std::vector<std::size_t> pivot_columns;  // increasing
};

std::size_t rank(const RationalMatrix& m);
RowEchelon rref(const RationalMatrix& m);

// Pivot columns of the reduced row echelon form: the lexicographically first
// set of columns forming a basis of the column space.
std::vector<std::size_t> column_pivots(const RationalMatrix& m);

// Basis of the column space, chosen as the pivot columns of m itself.
RationalMatrix column_space_basis(const RationalMatrix& m);

std::optional<RationalMatrix> inverse(const RationalMatrix& m);
Rational determinant(const RationalMatrix& m);

// Returns X with basis * X == rhs exactly, or nullopt when no solution exists.
// basis must have full column rank (the solution is then unique).
std::optional<RationalMatrix> solve_in_basis(const RationalMatrix& basis, const RationalMatrix& rhs);

// Basis (as columns) of {x : m x = 0}.
RationalMatrix nullspace(const RationalMatrix& m);

}  // namespace mbs
