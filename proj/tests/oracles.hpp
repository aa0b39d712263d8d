#pragma once

// Brute-force reference computations shared by the unit tests. None of these
// call into the library's own enumeration code beyond reading raw data.

#include <set>
#include <vector>

#include "mbs/coxeter.hpp"

namespace oracle {

// Number of nonnegative integer matrices of total sum n with no zero row or
// column, of any shape.
long contingency_count(int n);

// Positive roots from closing the simple roots under the simple reflections.
std::set<std::vector<int>> positive_roots(const mbs::CoxeterDatum& d);

// Gaussian binomial [n choose k]_q evaluated at an integer q.
long gaussian_binomial(int n, int k, long q);

}  // namespace oracle
