#pragma once

// The combinatorial examples: E_1 (functions on W-orbits), explicit
// representations of W, and the multiplicity sheaves E_1^V = (E_1 (x) V)^W.

#include <memory>
#include <string>
#include <vector>

#include "mbs/sheaf.hpp"

namespace mbs {

class WRepresentation {
public:
    // generators[s] is the matrix of the simple reflection s. Throws
    // ConfigError when a Coxeter relation fails.
    WRepresentation(std::string name, std::shared_ptr<const WeylGroup> group, std::vector<RationalMatrix> generators);

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    const WeylGroup& group() const { return *group_; }
    const RationalMatrix& generator(int s) const { return generators_[s]; }
    const RationalMatrix& matrix(int w) const { return matrices_[w]; }
    Rational character(int w) const;

private:
    std::string name_;
    std::shared_ptr<const WeylGroup> group_;
    int dim_ = 0;
    std::vector<RationalMatrix> generators_;
    std::vector<RationalMatrix> matrices_;
};

// Names: trivial, sign, reflection, reflection_sign (or reflection⊗sign),
// sign_long and sign_short for types B, C, G, and specht(l1,l2,...) for type A.
WRepresentation rep_catalog(std::shared_ptr<const WeylGroup> group, const std::string& name);
std::vector<std::string> catalog_names(const WeylGroup& group);

// Action of w on Fun(m): the permutation matrix sending the indicator of the
// point p to the indicator of w.p.
RationalMatrix orbit_action(const XiPoset& xi, int m, int w);

MixedBruhatSheaf build_e1(std::shared_ptr<const XiPoset> xi);

struct E1vSheaf {
    MixedBruhatSheaf sheaf;
    std::vector<RationalMatrix> bases;  // columns: basis of the invariants inside Fun(m) (x) V
};

E1vSheaf build_e1v(std::shared_ptr<const XiPoset> xi, const WRepresentation& v);

// dim V^{W^{C,D}} from the character: (1/|Stab|) sum of chi_V over the stabilizer.
int invariant_dim_by_character(const XiPoset& xi, int m, const WRepresentation& v);

}  // namespace mbs
