#pragma once

// Stalk complexes of the Cousin complex of a mixed Bruhat sheaf and the
// perversity checks built from their cohomology.
//
// At a cell m of type (I0, J) the stalk complex has, for every I contained in
// I0, the summands E(n) for n of type (I, J) with n >=' m, placed in degree
// |I| - r. The component E(n) -> E(n') for I' = I + {a} is dprime(n, a) times
// (-1)^{#{b in I : b > a}}.

#include <string>
#include <utility>
#include <vector>

#include "mbs/sheaf.hpp"

namespace mbs {

struct StalkComplex {
    int cell = -1;
    int r = 0;
    int lowest_degree = 0;  // degree of the first term
    std::vector<std::vector<std::pair<Subset, int>>> labels;  // per term: blocks (I, n)
    std::vector<int> dims;                                    // per term
    std::vector<RationalMatrix> differentials;                // d^k : term k -> term k+1
    std::vector<int> cohomology;                              // per term
    bool d_squared_zero = true;

    int degree(std::size_t k) const { return lowest_degree + static_cast<int>(k); }
    int euler_terms() const;
    int euler_cohomology() const;
};

StalkComplex stalk_complex(const MixedBruhatSheaf& e, int m);

struct CellPerversity {
    int cell = -1;
    int flat_dim = 0;
    int lowest_degree = 0;
    std::vector<int> term_dims;
    std::vector<int> cohomology;
    bool pass = true;
};

struct PerversityReport {
    std::vector<CellPerversity> cells;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Support condition: H^d != 0 at m forces flat_dim(m) <= -d. Also records
// d^2 != 0 and Euler mismatches as failures.
PerversityReport support_check(const MixedBruhatSheaf& e);
PerversityReport coperversity_check(const MixedBruhatSheaf& e);

struct ConstructibilityReport {
    int classes = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Graded stalk cohomology is constant along every class of equal flats.
ConstructibilityReport constructibility_check(const MixedBruhatSheaf& e);
ConstructibilityReport constructibility_check(const MixedBruhatSheaf& e, const PerversityReport& support);

// True when every stalk has cohomology only in degree -r.
bool concentrated_in_degree_minus_r(const PerversityReport& support, int r);

}  // namespace mbs
