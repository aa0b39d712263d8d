#pragma once

// Finite crystallographic root systems and their Weyl groups.
//
// Roots are integer vectors in the basis of simple roots. Group elements are
// integer matrices acting on those coordinates; they are enumerated once and
// afterwards referred to by their index in the enumeration order
// (length, then lexicographic on the matrix).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mbs/polynomial.hpp"
#include "mbs/rational.hpp"

namespace mbs {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OrderError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Subset of simple-root indices as a bitmask; bit s set means s is a member.
using Subset = std::uint32_t;

inline int subset_size(Subset I) { return __builtin_popcount(I); }
inline bool subset_contains(Subset I, int s) { return (I >> s) & 1u; }
inline bool subset_leq(Subset I, Subset J) { return (I & ~J) == 0; }
std::vector<int> subset_members(Subset I);
std::string subset_to_string(Subset I);  // "{0,2}"

struct CoxeterDatum {
    char type_label = 'A';
    int rank = 0;
    std::vector<std::vector<int>> cartan;  // cartan[i][j] = <coroot_i, root_j>
    std::vector<std::vector<int>> simple_roots;
    std::vector<std::vector<int>> positive_roots;
    // Coordinates of the fundamental coweights in the basis of simple coroots.
    std::vector<std::vector<Rational>> fundamental_coweights;
    // Squared lengths of the simple roots, scaled to coprime positive integers.
    std::vector<int> simple_root_length2;

    std::string name() const { return std::string(1, type_label) + std::to_string(rank); }
    Subset full_set() const { return rank == 0 ? 0u : ((1u << rank) - 1u); }
    int num_positive_roots() const { return static_cast<int>(positive_roots.size()); }

    // <beta, fundamental coweight i> computed from the coweight coordinates.
    Rational coweight_pairing(const std::vector<int>& beta, int i) const;
};

std::vector<std::pair<char, int>> supported_types();
CoxeterDatum build_coxeter(char type_label, int rank);

struct GroupElement {
    std::vector<int> action;  // rank x rank, row-major, acts on column vectors
    int length = 0;

    friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.action == b.action; }
};

class WeylGroup {
public:
    explicit WeylGroup(CoxeterDatum datum);

    const CoxeterDatum& datum() const { return datum_; }
    int rank() const { return datum_.rank; }
    int size() const { return static_cast<int>(elements_.size()); }
    int num_positive_roots() const { return datum_.num_positive_roots(); }

    const GroupElement& element(int w) const { return elements_[w]; }
    const std::vector<GroupElement>& elements() const { return elements_; }
    int identity() const { return 0; }
    int simple(int s) const { return simple_[s]; }
    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * size() + b]; }
    int inv(int a) const { return inv_[a]; }
    int length(int w) const { return elements_[w].length; }
    int longest() const { return size() - 1; }
    const std::vector<int>& reduced_word(int w) const { return words_[w]; }

    // Roots are coded as k (positive root k) or N + k (its negative).
    int act_on_root(int w, int code) const { return root_act_[static_cast<std::size_t>(w) * 2 * num_positive_roots() + code]; }
    std::vector<int> root_vector(int code) const;
    int root_code(const std::vector<int>& v) const;  // -1 when v is not a root
    std::vector<int> apply(int w, const std::vector<int>& v) const;
    int find(const std::vector<int>& action) const;  // -1 when not a group element

    // Bruhat order via the subword property on a fixed reduced word of w.
    bool bruhat_leq(int u, int w) const;

    const std::vector<int>& parabolic_subgroup(Subset I) const { return parabolic_[I]; }
    // Minimal length representatives of W / W_I, in enumeration order.
    const std::vector<int>& min_coset_reps(Subset I) const { return min_reps_[I]; }
    int coset_rep(int w, Subset I) const { return coset_rep_[static_cast<std::size_t>(I) * size() + w]; }
    IntPolynomial poincare_poly(Subset I) const;

    int coxeter_m(int s, int t) const;
    std::vector<std::vector<int>> conjugacy_classes() const;

private:
    CoxeterDatum datum_;
    std::vector<GroupElement> elements_;
    std::vector<int> simple_;
    std::vector<int> mul_;
    std::vector<int> inv_;
    std::vector<std::vector<int>> words_;
    std::vector<int> root_act_;
    std::vector<std::vector<std::uint64_t>> lower_interval_;  // bitset of {u <= w}
    std::vector<std::vector<int>> parabolic_;
    std::vector<std::vector<int>> min_reps_;
    std::vector<int> coset_rep_;
};

// Integer matrix helpers on row-major square matrices.
std::vector<int> int_matmul(const std::vector<int>& a, const std::vector<int>& b, int n);

}  // namespace mbs
