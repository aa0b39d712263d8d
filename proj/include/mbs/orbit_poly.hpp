#pragma once

// Point-count polynomials of Bruhat orbits, computed from the affine fibration
// of an orbit over the flag variety of its Hor (or Ver) type.

#include <string>
#include <vector>

#include "mbs/face_complex.hpp"
#include "mbs/polynomial.hpp"

namespace mbs {

class OrbitTable;

int dim_orbit(const XiPoset& xi, int m);
int dim_flag(const CoxeterDatum& d, Subset I);
bool is_compact(const XiPoset& xi, int m);

enum class Reading { Hor, Ver };
IntPolynomial orbit_poly(const XiPoset& xi, int m, Reading reading);
// The Hor reading, after checking that the Ver reading agrees.
IntPolynomial orbit_poly(const XiPoset& xi, int m);

struct PolyReport {
    std::vector<IntPolynomial> polys;
    std::vector<std::string> failures;
    std::size_t anodyne_pairs = 0;
    bool ok() const { return failures.empty(); }
};

PolyReport property_suite(const XiPoset& xi);

struct CountReport {
    std::vector<long> counts;  // enumerated |O_m(F_q)|
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

CountReport validate_counts(const OrbitTable& table);

}  // namespace mbs
