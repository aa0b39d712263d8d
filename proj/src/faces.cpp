#include <algorithm>
#include <deque>
#include <stdexcept>
#include <tuple>

#include "mbs/face_complex.hpp"

namespace mbs {

std::uint64_t SignVector::zero(int num_roots) const {
    std::uint64_t all = num_roots >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << num_roots) - 1);
    return all & ~(pos | neg);
}

SignVector tits_rule(const SignVector& c, const SignVector& d) {
    std::uint64_t czero = ~(c.pos | c.neg);
    return {c.pos | (czero & d.pos), c.neg | (czero & d.neg)};
}

SignVector FaceComplex::interior_point_signs(int w, Subset I) const {
    const auto& g = *group_;
    const auto& d = g.datum();
    const int npos = d.num_positive_roots();
    SignVector v;
    int winv = g.inv(w);
    for (int k = 0; k < npos; ++k) {
        // alpha_k(w rho_I) = (w^{-1} alpha_k)(rho_I)
        auto beta = g.root_vector(g.act_on_root(winv, k));
        Rational value = 0;
        for (int i = 0; i < d.rank; ++i)
            if (!subset_contains(I, i)) value += d.coweight_pairing(beta, i);
        if (value.sign() > 0) v.pos |= std::uint64_t{1} << k;
        if (value.sign() < 0) v.neg |= std::uint64_t{1} << k;
    }
    return v;
}

FaceComplex::FaceComplex(std::shared_ptr<const WeylGroup> group) : group_(std::move(group)) {
    const auto& g = *group_;
    const int r = g.rank();
    const int npos = g.num_positive_roots();
    if (npos > 64) throw ConfigError("too many positive roots for sign-vector bitmasks");
    num_subsets_ = Subset{1} << r;

    std::vector<std::tuple<int, int, Subset>> keys;  // (|I|, rep, I)
    for (Subset I = 0; I < num_subsets_; ++I)
        for (int u : g.min_coset_reps(I)) keys.emplace_back(subset_size(I), u, I);
    std::sort(keys.begin(), keys.end());

    by_type_.assign(num_subsets_, {});
    for (const auto& [size, u, I] : keys) {
        Face f;
        f.id = static_cast<int>(faces_.size());
        f.type = I;
        f.rep = u;
        f.dim = r - size;
        f.signs = interior_point_signs(u, I);
        f.zero_set = f.signs.zero(npos);
        // Independent check of the zero set: roots u(beta) with beta supported on I.
        std::uint64_t expected = 0;
        for (int k = 0; k < npos; ++k) {
            auto beta = g.root_vector(g.act_on_root(g.inv(u), k));
            bool in_I = true;
            for (int i = 0; i < r; ++i)
                if (beta[i] != 0 && !subset_contains(I, i)) in_I = false;
            if (in_I) expected |= std::uint64_t{1} << k;
        }
        if (expected != f.zero_set) throw std::logic_error("face zero set disagrees with parabolic root subsystem");
        if (!lookup_.emplace(f.signs, f.id).second) throw std::logic_error("duplicate face sign vector");
        by_type_[I].push_back(f.id);
        faces_.push_back(f);
    }

    face_of_.assign(static_cast<std::size_t>(g.size()) * num_subsets_, -1);
    std::map<std::pair<Subset, int>, int> by_rep;
    for (const auto& f : faces_) by_rep[{f.type, f.rep}] = f.id;
    for (int w = 0; w < g.size(); ++w)
        for (Subset I = 0; I < num_subsets_; ++I)
            face_of_[static_cast<std::size_t>(w) * num_subsets_ + I] = by_rep.at({I, g.coset_rep(w, I)});
}

int FaceComplex::find(const SignVector& v) const {
    auto it = lookup_.find(v);
    return it == lookup_.end() ? -1 : it->second;
}

int FaceComplex::tits(int c, int d) const {
    int f = find(tits_rule(faces_[c].signs, faces_[d].signs));
    if (f < 0) throw std::logic_error("Tits product produced a non-realizable sign vector");
    return f;
}

int FaceComplex::contract(int f, Subset I2) const {
    if (!subset_leq(faces_[f].type, I2)) throw OrderError("contraction to a type not containing the face type");
    return face_of(faces_[f].rep, I2);
}

bool FaceComplex::leq(int f, int g) const {
    const auto& a = faces_[f].signs;
    const auto& b = faces_[g].signs;
    return (a.pos & ~b.pos) == 0 && (a.neg & ~b.neg) == 0;
}

std::vector<int> FaceComplex::stabilizer(int f) const {
    std::vector<int> out;
    for (int w = 0; w < group_->size(); ++w)
        if (act(w, f) == f) out.push_back(w);
    return out;
}

int FaceComplex::delta_faces(int c, int d) const {
    if (!associated(c, d)) throw std::domain_error("delta_faces requires associated faces");
    const auto& a = faces_[c].signs;
    const auto& b = faces_[d].signs;
    return __builtin_popcountll(a.pos & b.neg) + __builtin_popcountll(a.neg & b.pos);
}

std::vector<int> FaceComplex::facets(int f) const {
    std::vector<int> out;
    for (const auto& p : faces_)
        if (p.dim == faces_[f].dim - 1 && leq(p.id, f)) out.push_back(p.id);
    return out;
}

int FaceComplex::face_distance(int c, int d) const {
    if (!associated(c, d)) throw std::domain_error("face_distance requires associated faces");
    std::vector<int> same_span;
    for (const auto& f : faces_)
        if (f.zero_set == faces_[c].zero_set) same_span.push_back(f.id);
    std::map<int, std::vector<int>> facet_of;
    for (int f : same_span) facet_of[f] = facets(f);
    std::map<int, int> dist{{c, 0}};
    std::deque<int> queue{c};
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        if (x == d) return dist[x];
        for (int y : same_span) {
            if (dist.count(y)) continue;
            const auto& fx = facet_of[x];
            const auto& fy = facet_of[y];
            bool adjacent = std::any_of(fx.begin(), fx.end(),
                                        [&](int p) { return std::find(fy.begin(), fy.end(), p) != fy.end(); });
            if (adjacent) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    throw std::logic_error("associated faces not connected by a gallery");
}

}  // namespace mbs
