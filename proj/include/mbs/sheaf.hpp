#pragma once

// Mixed Bruhat sheaves: a vector space E(m) for every Xi element, a covariant
// map dprime along covering relations of the first order and a contravariant
// map dsecond along covering relations of the second order.
//
// dprime(m, s)  : E(m) -> E(n), n = contraction of the first coordinate by s,
//                 shape dim(n) x dim(m).
// dsecond(m, s) : E(n) -> E(m), n = contraction of the second coordinate by s,
//                 shape dim(m) x dim(n).

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbs/face_complex.hpp"
#include "mbs/matrix.hpp"

namespace mbs {

class AxiomError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MixedBruhatSheaf {
public:
    MixedBruhatSheaf() = default;
    // All covering matrices start as zero matrices of the right shape.
    MixedBruhatSheaf(std::shared_ptr<const XiPoset> xi, std::vector<int> dims);
    MixedBruhatSheaf(const MixedBruhatSheaf& other);
    MixedBruhatSheaf& operator=(const MixedBruhatSheaf& other);
    MixedBruhatSheaf(MixedBruhatSheaf&&) noexcept = default;
    MixedBruhatSheaf& operator=(MixedBruhatSheaf&&) noexcept = default;

    const XiPoset& xi() const { return *xi_; }
    std::shared_ptr<const XiPoset> xi_ptr() const { return xi_; }
    int dim(int m) const { return dims_[m]; }
    const std::vector<int>& dims() const { return dims_; }
    int total_dim() const;

    const RationalMatrix& dprime(int m, int s) const { return dprime_[m][s]; }
    const RationalMatrix& dsecond(int m, int s) const { return dsecond_[m][s]; }
    void set_dprime(int m, int s, RationalMatrix a);
    void set_dsecond(int m, int s, RationalMatrix a);

    // Composite along the chain adding the missing simple roots in increasing
    // order. Identity when m == n; OrderError when m, n are not comparable.
    RationalMatrix compose_prime(int m, int n) const;
    RationalMatrix compose_second(int m, int n) const;

private:
    struct Memo {
        std::mutex mu;
        std::map<std::pair<int, int>, RationalMatrix> prime, second;
    };
    void invalidate() { memo_ = std::make_shared<Memo>(); }

    std::shared_ptr<const XiPoset> xi_;
    std::vector<int> dims_;
    std::vector<std::vector<RationalMatrix>> dprime_, dsecond_;
    std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

struct MbsFailure {
    std::string axiom;  // "shape", "MBS1", "MBS2", "MBS3"
    std::vector<int> cells;
    std::string detail;
};

struct MbsReport {
    std::vector<MbsFailure> shape, mbs1, mbs2, mbs3;
    std::size_t configurations_checked = 0;

    bool ok() const { return shape.empty() && mbs1.empty() && mbs2.empty() && mbs3.empty(); }
    std::size_t failure_count() const { return shape.size() + mbs1.size() + mbs2.size() + mbs3.size(); }
};

MbsReport check_mbs(const MixedBruhatSheaf& e);

MixedBruhatSheaf zero_sheaf(std::shared_ptr<const XiPoset> xi);
MixedBruhatSheaf dual(const MixedBruhatSheaf& e);
// E tensor k^d with every map tensored with the identity.
MixedBruhatSheaf tensor_identity(const MixedBruhatSheaf& e, int d);

// The subsheaf spanned by the columns of bases[m] at each m. Throws AxiomError
// when the family is not stable under the covering maps.
MixedBruhatSheaf restrict_to(const MixedBruhatSheaf& e, const std::vector<RationalMatrix>& bases);

struct SubsheafResult {
    MixedBruhatSheaf sheaf;
    std::vector<RationalMatrix> bases;  // columns span the subspace at each m
};

// Smallest family of subspaces containing the seeds and stable under all
// covering maps and the inverses of anodyne ones.
SubsheafResult generated_sub(const MixedBruhatSheaf& e, const std::map<int, RationalMatrix>& seeds);
// Checks every cyclic subsheaf generated by one basis vector; a zero sheaf is
// not simple.
bool is_simple(const MixedBruhatSheaf& e);

// Cells of Xi attached to the bicube: W(0, K_I), W(K_I, K_I), W(K_I, 0).
struct BicubeCells {
    int primed, middle, double_primed;
};
BicubeCells bicube_cells(const XiPoset& xi, Subset I);

struct BicubeData {
    int rank = 0;
    std::map<Subset, int> spaces;
    std::map<std::pair<Subset, Subset>, RationalMatrix> v;  // Q_I -> Q_J for I subset of J
    std::map<std::pair<Subset, Subset>, RationalMatrix> u;  // Q_J -> Q_I for I subset of J
};

BicubeData bicube(const MixedBruhatSheaf& e);
std::vector<std::string> bicube_transitivity_failures(const BicubeData& b);

struct PhiPsiResult {
    int phi_dim = 0;
    int psi_dim = 0;
    RationalMatrix u;  // Phi -> Psi
    RationalMatrix v;  // Psi -> Phi
    RationalMatrix T;  // Id_Psi - u v
    bool invertible = false;
};

// Rank-one reduction: Phi = E(W(0,0)), Psi = Q_empty.
PhiPsiResult phi_psi(const MixedBruhatSheaf& e);

struct CellPath {
    std::vector<int> cells;
};

// Generalization maps along a path of anodyne steps inside one stratum.
RationalMatrix transport(const MixedBruhatSheaf& e, const CellPath& path);
RationalMatrix monodromy(const MixedBruhatSheaf& e, const CellPath& loop);

// Loop around the hyperplane of the simple root s, based at W(K_{s}, C+):
// (K_s, C+) -> (C+, C+) -> (C+, K_s) -> (C+, sC+) -> (K_s, sC+).
CellPath generator_loop(const XiPoset& xi, int s);
// The same loop rotated to start and end at the diagonal chamber cell W(C+, C+).
CellPath chamber_loop(const XiPoset& xi, int s);

}  // namespace mbs
