#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "mbs/face_complex.hpp"
#include "mbs/linalg.hpp"

namespace mbs {
namespace {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int root(int x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(int a, int b) {
        a = root(a);
        b = root(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }
    // Class index per element, numbered by smallest member.
    std::vector<int> classes(int& count) {
        std::vector<int> out(parent_.size(), -1), label(parent_.size(), -1);
        count = 0;
        for (std::size_t x = 0; x < parent_.size(); ++x) {
            int r = root(static_cast<int>(x));
            if (label[r] < 0) label[r] = count++;
            out[x] = label[r];
        }
        return out;
    }

private:
    std::vector<int> parent_;
};

std::size_t root_rank(const WeylGroup& g, std::uint64_t mask) {
    const int npos = g.num_positive_roots();
    std::vector<int> idx;
    for (int k = 0; k < npos; ++k)
        if ((mask >> k) & 1u) idx.push_back(k);
    if (idx.empty()) return 0;
    RationalMatrix m(idx.size(), g.rank());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (int j = 0; j < g.rank(); ++j) m(i, j) = g.datum().positive_roots[idx[i]][j];
    return rank(m);
}

}  // namespace

FlatOrbit XiPoset::flat_of(std::uint64_t zero_roots) const {
    const auto& g = group();
    const int npos = g.num_positive_roots();
    std::size_t rk = root_rank(g, zero_roots);
    std::uint64_t closed = zero_roots;
    for (int k = 0; k < npos; ++k) {
        if ((closed >> k) & 1u) continue;
        if (root_rank(g, zero_roots | (std::uint64_t{1} << k)) == rk) closed |= std::uint64_t{1} << k;
    }
    std::uint64_t best = closed;
    for (int w = 0; w < g.size(); ++w) {
        std::uint64_t image = 0;
        for (int k = 0; k < npos; ++k)
            if ((closed >> k) & 1u) image |= std::uint64_t{1} << (g.act_on_root(w, k) % npos);
        best = std::min(best, image);
    }
    return {best, g.rank() - static_cast<int>(rk)};
}

XiPoset::XiPoset(std::shared_ptr<const FaceComplex> faces) : faces_(std::move(faces)) {
    const auto& fc = *faces_;
    const auto& g = fc.group();
    const int nf = fc.size();
    num_subsets_ = Subset{1} << g.rank();
    pair_xi_.assign(static_cast<std::size_t>(nf) * nf, -1);
    pair_point_.assign(static_cast<std::size_t>(nf) * nf, -1);

    struct Raw {
        Subset I, J;
        int C, D;
        std::vector<std::pair<int, int>> points;
    };
    std::vector<Raw> raw;
    for (Subset I = 0; I < num_subsets_; ++I) {
        int K = fc.base_face(I);
        for (Subset J = 0; J < num_subsets_; ++J) {
            for (int D : fc.faces_of_type(J)) {
                if (pair_xi_[pair_key(K, D)] >= 0) continue;
                std::set<std::pair<int, int>> orbit;
                for (int w = 0; w < g.size(); ++w) orbit.emplace(fc.act(w, K), fc.act(w, D));
                int idx = static_cast<int>(raw.size());
                for (const auto& p : orbit) pair_xi_[pair_key(p.first, p.second)] = idx;
                raw.push_back({I, J, K, D, {orbit.begin(), orbit.end()}});
            }
        }
    }
    std::vector<int> order(raw.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::tie(raw[a].C, raw[a].D) < std::tie(raw[b].C, raw[b].D);
    });

    std::map<std::uint64_t, FlatOrbit> flat_cache;
    by_type_.assign(static_cast<std::size_t>(num_subsets_) * num_subsets_, {});
    for (int id = 0; id < static_cast<int>(order.size()); ++id) {
        Raw& src = raw[order[id]];
        XiElement e;
        e.id = id;
        e.I = src.I;
        e.J = src.J;
        e.C = src.C;
        e.D = src.D;
        e.points = std::move(src.points);
        e.orbit_size = static_cast<int>(e.points.size());
        e.hor = fc.face(fc.tits(e.C, e.D)).type;
        e.ver = fc.face(fc.tits(e.D, e.C)).type;
        std::uint64_t z = fc.face(e.C).zero_set & fc.face(e.D).zero_set;
        auto it = flat_cache.find(z);
        if (it == flat_cache.end()) it = flat_cache.emplace(z, flat_of(z)).first;
        e.flat = it->second;
        for (int p = 0; p < e.orbit_size; ++p) {
            auto key = pair_key(e.points[p].first, e.points[p].second);
            pair_xi_[key] = id;
            pair_point_[key] = p;
        }
        by_type_[e.I * num_subsets_ + e.J].push_back(id);
        elements_.push_back(std::move(e));
    }
    for (int m = 0; m < size(); ++m) label_index_[label(m)] = m;

    const int n = size();
    prime_contract_.assign(static_cast<std::size_t>(n) * num_subsets_, -1);
    second_contract_.assign(static_cast<std::size_t>(n) * num_subsets_, -1);
    for (int m = 0; m < n; ++m) {
        const auto& e = elements_[m];
        for (Subset K = 0; K < num_subsets_; ++K) {
            if (subset_leq(e.I, K)) prime_contract_[m * num_subsets_ + K] = find(fc.contract(e.C, K), e.D);
            if (subset_leq(e.J, K)) second_contract_[m * num_subsets_ + K] = find(e.C, fc.contract(e.D, K));
        }
    }

    prime_covers_.assign(n, {});
    second_covers_.assign(n, {});
    prime_covered_by_.assign(n, {});
    second_covered_by_.assign(n, {});
    prime_fiber_.assign(static_cast<std::size_t>(n) * num_subsets_, {});
    second_fiber_.assign(static_cast<std::size_t>(n) * num_subsets_, {});
    for (int m = 0; m < n; ++m) {
        const auto& e = elements_[m];
        for (int s = 0; s < g.rank(); ++s) {
            Subset bit = Subset{1} << s;
            if (!(e.I & bit)) {
                int t = prime_contract(m, e.I | bit);
                prime_covers_[m].push_back({s, t});
                prime_covered_by_[t].push_back({s, m});
            }
            if (!(e.J & bit)) {
                int t = second_contract(m, e.J | bit);
                second_covers_[m].push_back({s, t});
                second_covered_by_[t].push_back({s, m});
            }
        }
        for (Subset K = 0; K < num_subsets_; ++K) {
            if (subset_leq(e.I, K)) prime_fiber_[prime_contract(m, K) * num_subsets_ + e.I].push_back(m);
            if (subset_leq(e.J, K)) second_fiber_[second_contract(m, K) * num_subsets_ + e.J].push_back(m);
        }
    }

    // Minimal double coset representatives: the first w in length order with
    // (K_I, w K_J) in the orbit.
    dc_min_rep_.assign(n, -1);
    for (Subset I = 0; I < num_subsets_; ++I)
        for (Subset J = 0; J < num_subsets_; ++J)
            for (int w = 0; w < g.size(); ++w) {
                int m = find(fc.base_face(I), fc.face_of(w, J));
                if (dc_min_rep_[m] < 0) dc_min_rep_[m] = w;
            }
}

std::string XiPoset::label(int m) const {
    const auto& e = elements_[m];
    const auto& fc = *faces_;
    return subset_to_string(e.I) + ":" + std::to_string(fc.face(e.C).rep) + "|" + subset_to_string(e.J) + ":" +
           std::to_string(fc.face(e.D).rep);
}

int XiPoset::find_label(const std::string& label) const {
    auto it = label_index_.find(label);
    return it == label_index_.end() ? -1 : it->second;
}

int XiPoset::prime_contract(int m, Subset I2) const {
    int t = prime_contract_[m * num_subsets_ + I2];
    if (t < 0) throw OrderError("first-coordinate contraction to a type not containing I");
    return t;
}

int XiPoset::second_contract(int m, Subset J2) const {
    int t = second_contract_[m * num_subsets_ + J2];
    if (t < 0) throw OrderError("second-coordinate contraction to a type not containing J");
    return t;
}

bool XiPoset::geq_prime(int m, int n) const {
    const auto& a = elements_[m];
    const auto& b = elements_[n];
    return a.J == b.J && subset_leq(a.I, b.I) && prime_contract(m, b.I) == n;
}

bool XiPoset::geq_second(int m, int n) const {
    const auto& a = elements_[m];
    const auto& b = elements_[n];
    return a.I == b.I && subset_leq(a.J, b.J) && second_contract(m, b.J) == n;
}

bool XiPoset::geq(int m, int n) const {
    const auto& a = elements_[m];
    const auto& b = elements_[n];
    return subset_leq(a.I, b.I) && subset_leq(a.J, b.J) && contract(m, b.I, b.J) == n;
}

std::vector<int> XiPoset::pi_map(int m, int n) const {
    if (!geq(m, n)) throw OrderError("pi_map requires m >= n");
    const auto& fc = *faces_;
    const auto& a = elements_[m];
    const auto& b = elements_[n];
    std::vector<int> out(a.orbit_size);
    for (int p = 0; p < a.orbit_size; ++p) {
        int C = fc.contract(a.points[p].first, b.I);
        int D = fc.contract(a.points[p].second, b.J);
        if (find(C, D) != n) throw std::logic_error("pi_map left the target orbit");
        out[p] = point_index(C, D);
    }
    return out;
}

bool XiPoset::is_anodyne(int m, int n) const {
    if (!geq(m, n)) throw OrderError("is_anodyne requires comparable elements m >= n");
    return elements_[m].orbit_size == elements_[n].orbit_size;
}

std::vector<int> XiPoset::sup(int m_prime, int n) const {
    const auto& a = elements_[m_prime];
    const auto& b = elements_[n];
    const Subset I1 = a.I, J2 = a.J, I2 = b.I, J1 = b.J;
    if (!subset_leq(I1, I2) || !subset_leq(J1, J2)) return {};
    if (prime_contract(m_prime, I2) != second_contract(n, J2)) return {};
    // Points (C, D) over the canonical point of m' that also project into n.
    const auto& fc = *faces_;
    const int C = a.C, D2 = a.D;
    const int C2 = fc.contract(C, I2);
    std::set<int> out;
    for (const auto& [pc, pd] : b.points) {
        if (pc != C2 || fc.contract(pd, J2) != D2) continue;
        out.insert(find(C, pd));
    }
    return {out.begin(), out.end()};
}

StratificationClasses XiPoset::stratification_classes() const {
    const int n = size();
    StratificationClasses sc;
    UnionFind s0(n), s1(n), ts1(n), join(n);
    std::map<FlatOrbit, int> first;
    for (int m = 0; m < n; ++m) {
        auto [it, inserted] = first.emplace(elements_[m].flat, m);
        if (!inserted) s0.unite(m, it->second);
        for (const auto& c : second_covers_[m])
            if (elements_[c.target].orbit_size == elements_[m].orbit_size) {
                s1.unite(m, c.target);
                join.unite(m, c.target);
            }
        for (const auto& c : prime_covers_[m])
            if (elements_[c.target].orbit_size == elements_[m].orbit_size) {
                ts1.unite(m, c.target);
                join.unite(m, c.target);
            }
    }
    sc.s0 = s0.classes(sc.count_s0);
    sc.s1 = s1.classes(sc.count_s1);
    sc.ts1 = ts1.classes(sc.count_ts1);
    sc.join = join.classes(sc.count_join);
    return sc;
}

bool XiPoset::double_coset_leq(int m1, int m2) const {
    const auto& a = elements_[m1];
    const auto& b = elements_[m2];
    if (a.I != b.I || a.J != b.J) throw OrderError("double coset order compares elements of one Xi(I,J)");
    return group().bruhat_leq(dc_min_rep_[m1], dc_min_rep_[m2]);
}

int XiPoset::stabilizer_size(int m) const {
    const auto& fc = *faces_;
    const auto& e = elements_[m];
    int count = 0;
    for (int w = 0; w < group().size(); ++w)
        if (fc.act(w, e.C) == e.C && fc.act(w, e.D) == e.D) ++count;
    return count;
}

std::shared_ptr<const XiPoset> make_xi(char type_label, int rank) {
    auto group = std::make_shared<const WeylGroup>(build_coxeter(type_label, rank));
    auto faces = std::make_shared<const FaceComplex>(group);
    return std::make_shared<const XiPoset>(faces);
}

}  // namespace mbs
