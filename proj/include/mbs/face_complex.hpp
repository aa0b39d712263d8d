#pragma once

// The Coxeter complex (faces of the reflection arrangement) and the two-sided
// complex Xi of W-orbits of face pairs.
//
// Faces are identified by integer ids ordered by (|I|, index of the minimal
// coset representative, I). A Xi element is stored with its canonical pair,
// the lexicographically smallest pair of face ids in the orbit; its first face
// is always the base face K_I.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mbs/coxeter.hpp"

namespace mbs {

struct SignVector {
    std::uint64_t pos = 0;  // bit k set: positive root k is positive on the face
    std::uint64_t neg = 0;  // bit k set: positive root k is negative on the face

    int sign(int k) const { return ((pos >> k) & 1u) ? 1 : (((neg >> k) & 1u) ? -1 : 0); }
    std::uint64_t zero(int num_roots) const;

    friend bool operator==(const SignVector& a, const SignVector& b) { return a.pos == b.pos && a.neg == b.neg; }
    friend bool operator<(const SignVector& a, const SignVector& b) {
        return a.pos != b.pos ? a.pos < b.pos : a.neg < b.neg;
    }
};

// Sign rule of the Tits product: signs of c win; zeros of c take the sign of d.
SignVector tits_rule(const SignVector& c, const SignVector& d);

struct Face {
    int id = -1;
    Subset type = 0;
    int rep = 0;  // minimal coset representative of wW_I
    SignVector signs;
    std::uint64_t zero_set = 0;
    int dim = 0;
};

class FaceComplex {
public:
    explicit FaceComplex(std::shared_ptr<const WeylGroup> group);

    const WeylGroup& group() const { return *group_; }
    std::shared_ptr<const WeylGroup> group_ptr() const { return group_; }
    const CoxeterDatum& datum() const { return group_->datum(); }
    int size() const { return static_cast<int>(faces_.size()); }
    const Face& face(int f) const { return faces_[f]; }
    const std::vector<int>& faces_of_type(Subset I) const { return by_type_[I]; }

    int face_of(int w, Subset I) const { return face_of_[static_cast<std::size_t>(w) * num_subsets_ + I]; }
    int base_face(Subset I) const { return face_of(0, I); }
    int act(int w, int f) const { return face_of(group_->mul(w, faces_[f].rep), faces_[f].type); }
    int tits(int c, int d) const;
    int contract(int f, Subset I2) const;
    bool leq(int f, int g) const;  // f lies in the closure of g
    int find(const SignVector& v) const;
    std::vector<int> stabilizer(int f) const;

    // Sign pattern of alpha(w rho_I) recomputed from the fundamental coweights.
    SignVector interior_point_signs(int w, Subset I) const;

    bool associated(int c, int d) const { return faces_[c].zero_set == faces_[d].zero_set; }
    int delta_faces(int c, int d) const;
    int face_distance(int c, int d) const;
    std::vector<int> facets(int f) const;

private:
    std::shared_ptr<const WeylGroup> group_;
    Subset num_subsets_ = 1;
    std::vector<Face> faces_;
    std::vector<std::vector<int>> by_type_;
    std::vector<int> face_of_;
    std::map<SignVector, int> lookup_;
};

struct FlatOrbit {
    std::uint64_t roots = 0;  // canonical span-closed root subset
    int dim = 0;
    friend bool operator==(const FlatOrbit&, const FlatOrbit&) = default;
    friend bool operator<(const FlatOrbit& a, const FlatOrbit& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.roots < b.roots;
    }
};

struct XiElement {
    int id = -1;
    Subset I = 0, J = 0;
    int C = -1, D = -1;  // canonical pair
    int orbit_size = 0;
    Subset hor = 0, ver = 0;
    FlatOrbit flat;
    std::vector<std::pair<int, int>> points;  // the orbit, sorted
};

struct XiCover {
    int s;       // simple root added to the contracted coordinate
    int target;  // the other end of the covering relation
};

struct StratificationClasses {
    std::vector<int> s0;    // flat fibers
    std::vector<int> s1;    // closure of anodyne relations of the second order
    std::vector<int> ts1;   // closure of anodyne relations of the first order
    std::vector<int> join;  // closure of s1 and ts1 together
    int count_s0 = 0, count_s1 = 0, count_ts1 = 0, count_join = 0;
};

class XiPoset {
public:
    explicit XiPoset(std::shared_ptr<const FaceComplex> faces);

    const FaceComplex& faces() const { return *faces_; }
    std::shared_ptr<const FaceComplex> faces_ptr() const { return faces_; }
    const WeylGroup& group() const { return faces_->group(); }
    const CoxeterDatum& datum() const { return faces_->datum(); }
    int rank() const { return datum().rank; }

    int size() const { return static_cast<int>(elements_.size()); }
    const XiElement& element(int m) const { return elements_[m]; }
    const std::vector<XiElement>& elements() const { return elements_; }
    const std::vector<int>& of_type(Subset I, Subset J) const { return by_type_[I * num_subsets_ + J]; }

    int find(int C, int D) const { return pair_xi_[pair_key(C, D)]; }
    int point_index(int C, int D) const { return pair_point_[pair_key(C, D)]; }
    std::string label(int m) const;
    int find_label(const std::string& label) const;  // -1 when unknown

    int prime_contract(int m, Subset I2) const;
    int second_contract(int m, Subset J2) const;
    int contract(int m, Subset I2, Subset J2) const { return second_contract(prime_contract(m, I2), J2); }

    bool geq_prime(int m, int n) const;
    bool geq_second(int m, int n) const;
    bool geq(int m, int n) const;

    const std::vector<XiCover>& prime_covers(int m) const { return prime_covers_[m]; }
    const std::vector<XiCover>& second_covers(int m) const { return second_covers_[m]; }
    const std::vector<XiCover>& prime_covered_by(int n) const { return prime_covered_by_[n]; }
    const std::vector<XiCover>& second_covered_by(int n) const { return second_covered_by_[n]; }
    const std::vector<int>& prime_fiber(int n, Subset I1) const { return prime_fiber_[n * num_subsets_ + I1]; }
    const std::vector<int>& second_fiber(int n, Subset J1) const { return second_fiber_[n * num_subsets_ + J1]; }

    std::vector<int> pi_map(int m, int n) const;
    bool is_anodyne(int m, int n) const;
    std::vector<int> sup(int m_prime, int n) const;
    int tau(int m) const { return find(elements_[m].D, elements_[m].C); }
    int flat_dim(int m) const { return elements_[m].flat.dim; }
    StratificationClasses stratification_classes() const;

    int double_coset_min_rep(int m) const { return dc_min_rep_[m]; }
    bool double_coset_leq(int m1, int m2) const;
    int stabilizer_size(int m) const;

    // Flat data for an arbitrary root subset (span closure, W-canonical form).
    FlatOrbit flat_of(std::uint64_t zero_roots) const;

private:
    std::size_t pair_key(int C, int D) const { return static_cast<std::size_t>(C) * faces_->size() + D; }

    std::shared_ptr<const FaceComplex> faces_;
    Subset num_subsets_ = 1;
    std::vector<XiElement> elements_;
    std::vector<std::vector<int>> by_type_;
    std::vector<int> pair_xi_;
    std::vector<int> pair_point_;
    std::vector<int> prime_contract_;
    std::vector<int> second_contract_;
    std::vector<std::vector<XiCover>> prime_covers_, second_covers_, prime_covered_by_, second_covered_by_;
    std::vector<std::vector<int>> prime_fiber_, second_fiber_;
    std::vector<int> dc_min_rep_;
    std::map<std::string, int> label_index_;
};

// Convenience: datum -> group -> faces -> Xi in one call.
std::shared_ptr<const XiPoset> make_xi(char type_label, int rank);

}  // namespace mbs
