#pragma once

// Type A geometry over a prime field F_q: subspaces, partial flags, relative
// position as contingency matrices, Bruhat orbits as point sets, the sheaf E_q,
// Hecke operators and B_q-invariants.
//
// A flag of type I (I a subset of {0, ..., n-2}) is the chain of subspaces of
// dimensions k in {1, ..., n-1} with k-1 not in I, followed by the full space.

#include <bitset>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbs/sheaf.hpp"

namespace mbs {

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool is_supported_prime(int p);

class ContingencyMatrix {
public:
    ContingencyMatrix() = default;
    ContingencyMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
    static ContingencyMatrix from_rows(const std::vector<std::vector<int>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    int operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    std::vector<int> row_margins() const;
    std::vector<int> col_margins() const;
    int content() const;
    bool no_zero_lines() const;
    ContingencyMatrix transpose() const;
    // Merge rows (resp. columns) k and k+1.
    ContingencyMatrix merge_rows(int k) const;
    ContingencyMatrix merge_cols(int k) const;
    std::string to_string() const;  // "[[1,0],[0,1]]"

    friend bool operator==(const ContingencyMatrix&, const ContingencyMatrix&) = default;
    friend bool operator<(const ContingencyMatrix& a, const ContingencyMatrix& b) {
        if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
        if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
        return a.a_ < b.a_;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<int> a_;
};

// Composition of n attached to a parabolic type I of A_{n-1}, and back.
std::vector<int> composition_of_type(int n, Subset I);
Subset type_of_composition(const std::vector<int>& composition);  // throws std::domain_error

// Bijection between Xi of A_{n-1} and contingency matrices of content n.
ContingencyMatrix contingency_of(const XiPoset& xi, int m);
int xi_of_contingency(const XiPoset& xi, const ContingencyMatrix& M);  // throws std::domain_error
// Ordered set partition (block index of each position) attached to a face.
std::vector<int> face_blocks(const XiPoset& xi, int face);

enum class PointOrder { Canonical, Reversed };

class FlagGeometry {
public:
    // Throws ResourceError when q^n exceeds 256 or the flag count exceeds max_flags.
    FlagGeometry(int n, int q, PointOrder order = PointOrder::Canonical, std::size_t max_flags = 1000000);

    int n() const { return n_; }
    int q() const { return q_; }
    Subset full_type() const { return n_ <= 1 ? 0u : ((Subset{1} << (n_ - 1)) - 1); }
    PointOrder order() const { return order_; }

    // Subspaces in order (dim, echelon form).
    int num_subspaces() const { return static_cast<int>(subspaces_.size()); }
    int subspace_dim(int v) const { return subspaces_[v].dim; }
    const std::vector<std::vector<int>>& echelon(int v) const { return subspaces_[v].echelon; }
    std::string echelon_string(int v) const;
    int sum(int a, int b) const { return sum_[a * num_subspaces() + b]; }
    int meet(int a, int b) const { return meet_[a * num_subspaces() + b]; }
    int zero_space() const { return 0; }
    int full_space() const { return num_subspaces() - 1; }
    // Image of subspace v under the matrix g (row-major n x n over F_q, invertible).
    int transform(const std::vector<int>& g, int v) const;

    // Flags as chains of subspace ids (without 0, ending with the full space).
    const std::vector<std::vector<int>>& flags(Subset I) const { return flags_[I]; }
    int flag_index(Subset I, const std::vector<int>& chain) const;  // -1 when absent
    int project(Subset I, int f, Subset K) const;  // forget to the coarser type K containing I
    std::string flag_string(Subset I, int f) const;

    ContingencyMatrix relative_position(Subset I, int f, Subset J, int g) const;
    // Common refinement V_{i-1} + (V_i meet V'_j) in row-major order, with its type.
    std::pair<Subset, int> hor_flag(Subset I, int f, Subset J, int g) const;

private:
    // Vectors are encoded as base-q integers; a subspace is its member set.
    struct SpaceRec {
        int dim = 0;
        std::vector<std::vector<int>> echelon;
        std::bitset<256> members;
        std::vector<int> basis;
    };

    int n_, q_;
    PointOrder order_;
    int num_vectors_ = 1;
    std::vector<SpaceRec> subspaces_;
    std::map<std::string, int> space_index_;
    std::vector<std::vector<int>> add_;  // vector addition table
    std::vector<int> sum_, meet_;
    std::vector<std::vector<std::vector<int>>> flags_;
    std::vector<std::map<std::vector<int>, int>> flag_index_;

    int lookup(const std::bitset<256>& members) const;
    std::string key(const std::bitset<256>& members) const { return members.to_string(); }
};

// Bruhat orbits on pairs of flags, indexed by Xi of A_{n-1}.
class OrbitTable {
public:
    OrbitTable(std::shared_ptr<const FlagGeometry> geom, std::shared_ptr<const XiPoset> xi);

    const FlagGeometry& geometry() const { return *geom_; }
    const XiPoset& xi() const { return *xi_; }
    const std::vector<std::pair<int, int>>& points(int m) const { return points_[m]; }
    int orbit_of(Subset I, int f, Subset J, int g) const;
    int point_index(Subset I, int f, Subset J, int g) const;

private:
    std::shared_ptr<const FlagGeometry> geom_;
    std::shared_ptr<const XiPoset> xi_;
    std::vector<std::vector<std::pair<int, int>>> points_;
    std::vector<std::vector<int>> orbit_, index_;  // per (I, J) block: f * |F_J| + g
};

struct FqMBS {
    std::shared_ptr<const FlagGeometry> geom;
    std::shared_ptr<const OrbitTable> orbits;
    MixedBruhatSheaf sheaf;
    std::vector<std::vector<int>> hor_of_point;  // r'_m as a map O_m -> F_Hor(m)

    // Pullback Fun(F_Hor(m)) -> Fun(O_m).
    RationalMatrix embedding(int m) const;
};

// n <= 3 unless allow_n4; q supported prime.
FqMBS build_eq(int n, int q, PointOrder order = PointOrder::Canonical, bool allow_n4 = false);

// sigma_s = q_s^* q_{s*} - 1 on Fun(full flags).
std::vector<RationalMatrix> hecke_generators(const FlagGeometry& geom);

struct HeckeReport {
    std::vector<std::string> failures;
    int generators = 0;
    bool ok() const { return failures.empty(); }
};
HeckeReport check_hecke(const FlagGeometry& geom);

// B_q-orbits on flags of type I.
std::vector<std::vector<int>> borel_orbits(const FlagGeometry& geom, Subset I);
MixedBruhatSheaf b_invariant_sub(const FqMBS& e);

struct PointCheckReport {
    std::vector<std::string> failures;
    std::size_t fiber_product_configs = 0;
    std::size_t anodyne_pairs = 0;
    bool ok() const { return failures.empty(); }
};
PointCheckReport orbit_point_checks(const OrbitTable& table);

// p''_* p'^*: Fun(F_I) -> Fun(F_J) through the orbit O_m.
RationalMatrix intertwiner(const OrbitTable& table, int m);

// Induction/restriction bicube built directly from flag projections.
BicubeData flag_bicube(const FlagGeometry& geom);

}  // namespace mbs
