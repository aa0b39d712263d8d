#include <algorithm>
#include <set>

#include "mbs/fq.hpp"

namespace mbs {

bool is_supported_prime(int p) {
    static const int primes[] = {2, 3, 5, 7, 11, 13};
    return std::find(std::begin(primes), std::end(primes), p) != std::end(primes);
}

namespace {

int mod(int x, int q) { return ((x % q) + q) % q; }

int inverse_mod(int x, int q) {
    for (int y = 1; y < q; ++y)
        if (mod(x * y, q) == 1) return y;
    throw std::domain_error("no inverse modulo q");
}

std::vector<int> decode(int v, int n, int q) {
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) {
        c[i] = v % q;
        v /= q;
    }
    return c;
}

int encode(const std::vector<int>& c, int q) {
    int v = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * q + c[i];
    return v;
}

// Reduced row echelon form mod q of the given rows; zero rows dropped.
std::vector<std::vector<int>> rref_mod(std::vector<std::vector<int>> rows, int n, int q) {
    std::size_t r = 0;
    for (int col = 0; col < n && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        int inv = inverse_mod(rows[r][col], q);
        for (int& x : rows[r]) x = mod(x * inv, q);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k == r || rows[k][col] == 0) continue;
            int f = rows[k][col];
            for (int j = 0; j < n; ++j) rows[k][j] = mod(rows[k][j] - f * rows[r][j], q);
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

}  // namespace

FlagGeometry::FlagGeometry(int n, int q, PointOrder order, std::size_t max_flags) : n_(n), q_(q), order_(order) {
    if (n < 1) throw ConfigError("flag geometry needs n >= 1");
    if (!is_supported_prime(q)) throw ConfigError("q must be one of 2, 3, 5, 7, 11, 13");
    for (int i = 0; i < n; ++i) {
        num_vectors_ *= q;
        if (num_vectors_ > 256) throw ResourceError("q^n exceeds the vector table limit of 256");
    }
    add_.assign(num_vectors_, std::vector<int>(num_vectors_));
    for (int a = 0; a < num_vectors_; ++a) {
        auto ca = decode(a, n, q);
        for (int b = 0; b < num_vectors_; ++b) {
            auto cb = decode(b, n, q);
            for (int i = 0; i < n; ++i) cb[i] = (ca[i] + cb[i]) % q;
            add_[a][b] = encode(cb, q);
        }
    }
    auto scale = [&](int v, int c) {
        auto cv = decode(v, n, q);
        for (int& x : cv) x = (x * c) % q;
        return encode(cv, q);
    };
    auto extend = [&](std::bitset<256> s, int v) {
        std::bitset<256> out;
        for (int x = 0; x < num_vectors_; ++x)
            if (s[x])
                for (int c = 0; c < q; ++c) out.set(add_[x][scale(v, c)]);
        return out;
    };

    // Breadth-first enumeration of all subspaces.
    std::map<std::string, std::bitset<256>> found;
    std::bitset<256> zero;
    zero.set(0);
    std::vector<std::bitset<256>> frontier{zero};
    found.emplace(key(zero), zero);
    while (!frontier.empty()) {
        std::vector<std::bitset<256>> next;
        for (const auto& s : frontier)
            for (int v = 0; v < num_vectors_; ++v) {
                if (s[v]) continue;
                auto t = extend(s, v);
                if (found.emplace(key(t), t).second) next.push_back(t);
            }
        frontier = std::move(next);
    }
    for (const auto& [k, members] : found) {
        SpaceRec rec;
        rec.members = members;
        std::vector<std::vector<int>> rows;
        for (int v = 1; v < num_vectors_; ++v)
            if (members[v]) rows.push_back(decode(v, n, q));
        rec.echelon = rref_mod(rows, n, q);
        rec.dim = static_cast<int>(rec.echelon.size());
        for (const auto& row : rec.echelon) rec.basis.push_back(encode(row, q));
        subspaces_.push_back(std::move(rec));
    }
    std::sort(subspaces_.begin(), subspaces_.end(), [](const SpaceRec& a, const SpaceRec& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.echelon < b.echelon;
    });
    for (int i = 0; i < num_subspaces(); ++i) space_index_[key(subspaces_[i].members)] = i;

    const int ns = num_subspaces();
    sum_.assign(static_cast<std::size_t>(ns) * ns, -1);
    meet_.assign(static_cast<std::size_t>(ns) * ns, -1);
    for (int a = 0; a < ns; ++a)
        for (int b = 0; b < ns; ++b) {
            meet_[a * ns + b] = lookup(subspaces_[a].members & subspaces_[b].members);
            auto s = subspaces_[a].members;
            for (int v : subspaces_[b].basis)
                if (!s[v]) s = extend(s, v);
            sum_[a * ns + b] = lookup(s);
        }

    const Subset types = Subset{1} << (n - 1 > 0 ? n - 1 : 0);
    flags_.assign(types, {});
    flag_index_.assign(types, {});
    std::size_t total = 0;
    for (Subset I = 0; I < types; ++I) {
        auto comp = composition_of_type(n, I);
        std::vector<int> dims;
        int acc = 0;
        for (std::size_t k = 0; k + 1 < comp.size(); ++k) dims.push_back(acc += comp[k]);
        std::vector<int> chain;
        auto& out = flags_[I];
        auto rec = [&](auto&& self, std::size_t level, int below) -> void {
            if (level == dims.size()) {
                chain.push_back(full_space());
                out.push_back(chain);
                chain.pop_back();
                if (++total > max_flags) throw ResourceError("flag enumeration exceeds the size guard");
                return;
            }
            for (int v = 0; v < ns; ++v) {
                if (subspaces_[v].dim != dims[level]) continue;
                if ((subspaces_[below].members & ~subspaces_[v].members).any()) continue;
                chain.push_back(v);
                self(self, level + 1, v);
                chain.pop_back();
            }
        };
        rec(rec, 0, zero_space());
        if (order_ == PointOrder::Reversed) std::reverse(out.begin(), out.end());
        for (int f = 0; f < static_cast<int>(out.size()); ++f) flag_index_[I][out[f]] = f;
    }
}

int FlagGeometry::lookup(const std::bitset<256>& members) const {
    auto it = space_index_.find(key(members));
    if (it == space_index_.end()) throw std::logic_error("subset is not a subspace");
    return it->second;
}

std::string FlagGeometry::echelon_string(int v) const {
    std::string s;
    for (const auto& row : subspaces_[v].echelon) {
        if (!s.empty()) s += "/";
        for (int x : row) s += std::to_string(x);
    }
    return s.empty() ? "0" : s;
}

int FlagGeometry::transform(const std::vector<int>& g, int v) const {
    std::bitset<256> image;
    for (int x = 0; x < num_vectors_; ++x) {
        if (!subspaces_[v].members[x]) continue;
        auto c = decode(x, n_, q_);
        std::vector<int> y(n_, 0);
        for (int r = 0; r < n_; ++r)
            for (int k = 0; k < n_; ++k) y[r] = (y[r] + g[r * n_ + k] * c[k]) % q_;
        image.set(encode(y, q_));
    }
    return lookup(image);
}

int FlagGeometry::flag_index(Subset I, const std::vector<int>& chain) const {
    auto it = flag_index_[I].find(chain);
    return it == flag_index_[I].end() ? -1 : it->second;
}

int FlagGeometry::project(Subset I, int f, Subset K) const {
    if (!subset_leq(I, K)) throw OrderError("projection to a finer flag type");
    if (I == K) return f;
    std::vector<int> chain;
    for (int v : flags_[I][f]) {
        int d = subspaces_[v].dim;
        if (d == n_ || !subset_contains(K, d - 1)) chain.push_back(v);
    }
    return flag_index(K, chain);
}

std::string FlagGeometry::flag_string(Subset I, int f) const {
    std::string s;
    for (int v : flags_[I][f]) {
        if (subspaces_[v].dim == n_) break;
        if (!s.empty()) s += " < ";
        s += echelon_string(v);
    }
    return s.empty() ? "full" : s;
}

ContingencyMatrix FlagGeometry::relative_position(Subset I, int f, Subset J, int g) const {
    std::vector<int> a{zero_space()}, b{zero_space()};
    a.insert(a.end(), flags_[I][f].begin(), flags_[I][f].end());
    b.insert(b.end(), flags_[J][g].begin(), flags_[J][g].end());
    const int ra = static_cast<int>(a.size()) - 1, rb = static_cast<int>(b.size()) - 1;
    auto d = [&](int i, int j) { return subspaces_[meet(a[i], b[j])].dim; };
    ContingencyMatrix M(ra, rb);
    for (int i = 1; i <= ra; ++i)
        for (int j = 1; j <= rb; ++j) M(i - 1, j - 1) = d(i, j) - d(i - 1, j) - d(i, j - 1) + d(i - 1, j - 1);
    return M;
}

std::pair<Subset, int> FlagGeometry::hor_flag(Subset I, int f, Subset J, int g) const {
    std::vector<int> a{zero_space()};
    a.insert(a.end(), flags_[I][f].begin(), flags_[I][f].end());
    const auto& b = flags_[J][g];
    std::vector<int> chain;
    std::vector<int> dims;
    int last = zero_space();
    for (std::size_t i = 1; i < a.size(); ++i)
        for (int bj : b) {
            int v = sum(a[i - 1], meet(a[i], bj));
            if (v == last) continue;
            chain.push_back(v);
            last = v;
        }
    int prev = 0;
    for (int v : chain) {
        dims.push_back(subspaces_[v].dim - prev);
        prev = subspaces_[v].dim;
    }
    Subset type = type_of_composition(dims);
    int idx = flag_index(type, chain);
    if (idx < 0) throw std::logic_error("common refinement is not a flag");
    return {type, idx};
}

OrbitTable::OrbitTable(std::shared_ptr<const FlagGeometry> geom, std::shared_ptr<const XiPoset> xi)
    : geom_(std::move(geom)), xi_(std::move(xi)) {
    const auto& G = *geom_;
    if (xi_->datum().type_label != 'A' || xi_->rank() != G.n() - 1)
        throw ConfigError("orbit table needs Xi of type A_{n-1}");
    const Subset types = G.full_type() + 1;
    points_.assign(xi_->size(), {});
    orbit_.assign(static_cast<std::size_t>(types) * types, {});
    index_.assign(static_cast<std::size_t>(types) * types, {});
    std::map<ContingencyMatrix, int> cache;
    for (Subset I = 0; I < types; ++I)
        for (Subset J = 0; J < types; ++J) {
            const int fi = static_cast<int>(G.flags(I).size());
            const int fj = static_cast<int>(G.flags(J).size());
            auto& orb = orbit_[I * types + J];
            auto& idx = index_[I * types + J];
            orb.resize(static_cast<std::size_t>(fi) * fj);
            idx.resize(orb.size());
            for (int f = 0; f < fi; ++f)
                for (int g = 0; g < fj; ++g) {
                    auto M = G.relative_position(I, f, J, g);
                    auto it = cache.find(M);
                    if (it == cache.end()) it = cache.emplace(M, xi_of_contingency(*xi_, M)).first;
                    int m = it->second;
                    const auto& e = xi_->element(m);
                    if (e.I != I || e.J != J) throw std::logic_error("relative position has the wrong margins");
                    orb[static_cast<std::size_t>(f) * fj + g] = m;
                    idx[static_cast<std::size_t>(f) * fj + g] = static_cast<int>(points_[m].size());
                    points_[m].emplace_back(f, g);
                }
        }
    for (int m = 0; m < xi_->size(); ++m)
        if (points_[m].empty()) throw std::logic_error("empty Bruhat orbit " + xi_->label(m));
}

int OrbitTable::orbit_of(Subset I, int f, Subset J, int g) const {
    const Subset types = geom_->full_type() + 1;
    return orbit_[I * types + J][static_cast<std::size_t>(f) * geom_->flags(J).size() + g];
}

int OrbitTable::point_index(Subset I, int f, Subset J, int g) const {
    const Subset types = geom_->full_type() + 1;
    return index_[I * types + J][static_cast<std::size_t>(f) * geom_->flags(J).size() + g];
}

}  // namespace mbs
