#include "mbs/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "mbs/linalg.hpp"

namespace mbs {

std::vector<int> subset_members(Subset I) {
    std::vector<int> out;
    for (int s = 0; s < 32; ++s)
        if (subset_contains(I, s)) out.push_back(s);
    return out;
}

std::string subset_to_string(Subset I) {
    std::string out = "{";
    bool first = true;
    for (int s : subset_members(I)) {
        if (!first) out += ",";
        out += std::to_string(s);
        first = false;
    }
    return out + "}";
}

std::vector<int> int_matmul(const std::vector<int>& a, const std::vector<int>& b, int n) {
    std::vector<int> c(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            int x = a[i * n + k];
            if (x == 0) continue;
            for (int j = 0; j < n; ++j) c[i * n + j] += x * b[k * n + j];
        }
    return c;
}

std::vector<std::pair<char, int>> supported_types() {
    return {{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'B', 2}, {'B', 3}, {'C', 3}, {'G', 2}};
}

namespace {

std::vector<std::vector<int>> cartan_matrix(char type, int r) {
    std::vector<std::vector<int>> a(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i) {
        a[i][i] = 2;
        if (i + 1 < r) a[i][i + 1] = a[i + 1][i] = -1;
    }
    switch (type) {
        case 'A':
            break;
        case 'B':  // last simple root short
            a[r - 1][r - 2] = -2;
            break;
        case 'C':  // last simple root long
            a[r - 2][r - 1] = -2;
            break;
        case 'G':  // first simple root long
            a[1][0] = -3;
            break;
        default:
            throw ConfigError(std::string("unsupported type label ") + type);
    }
    return a;
}

// Reflection s_i on simple-root coordinates: beta - <coroot_i, beta> alpha_i.
std::vector<int> reflection_matrix(const std::vector<std::vector<int>>& cartan, int i) {
    int r = static_cast<int>(cartan.size());
    std::vector<int> m(static_cast<std::size_t>(r) * r, 0);
    for (int k = 0; k < r; ++k) m[k * r + k] = 1;
    for (int j = 0; j < r; ++j) m[i * r + j] -= cartan[i][j];
    return m;
}

std::vector<int> apply_matrix(const std::vector<int>& m, const std::vector<int>& v) {
    int r = static_cast<int>(v.size());
    std::vector<int> out(r, 0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) out[i] += m[i * r + j] * v[j];
    return out;
}

bool is_nonnegative(const std::vector<int>& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
}

}  // namespace

Rational CoxeterDatum::coweight_pairing(const std::vector<int>& beta, int i) const {
    // <alpha_k, coroot_j> = cartan[j][k]
    Rational total = 0;
    for (int j = 0; j < rank; ++j) {
        if (fundamental_coweights[i][j].is_zero()) continue;
        std::int64_t s = 0;
        for (int k = 0; k < rank; ++k) s += static_cast<std::int64_t>(beta[k]) * cartan[j][k];
        total += fundamental_coweights[i][j] * Rational(s);
    }
    return total;
}

CoxeterDatum build_coxeter(char type_label, int rank) {
    auto supported = supported_types();
    if (std::find(supported.begin(), supported.end(), std::make_pair(type_label, rank)) == supported.end())
        throw ConfigError("unsupported Coxeter datum " + std::string(1, type_label) + std::to_string(rank));

    CoxeterDatum d;
    d.type_label = type_label;
    d.rank = rank;
    d.cartan = cartan_matrix(type_label, rank);
    for (int i = 0; i < rank; ++i) {
        std::vector<int> e(rank, 0);
        e[i] = 1;
        d.simple_roots.push_back(e);
    }

    // Reflection closure of the simple roots.
    std::vector<std::vector<int>> refl;
    for (int i = 0; i < rank; ++i) refl.push_back(reflection_matrix(d.cartan, i));
    std::set<std::vector<int>> roots(d.simple_roots.begin(), d.simple_roots.end());
    std::deque<std::vector<int>> queue(d.simple_roots.begin(), d.simple_roots.end());
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (const auto& s : refl) {
            auto w = apply_matrix(s, v);
            if (roots.insert(w).second) queue.push_back(w);
        }
    }
    for (const auto& v : roots)
        if (is_nonnegative(v)) d.positive_roots.push_back(v);
    std::sort(d.positive_roots.begin(), d.positive_roots.end(), [](const auto& a, const auto& b) {
        int ha = std::accumulate(a.begin(), a.end(), 0), hb = std::accumulate(b.begin(), b.end(), 0);
        if (ha != hb) return ha < hb;
        return a > b;  // simple roots come out in index order
    });

    // Fundamental coweights: rows of the inverse Cartan matrix.
    RationalMatrix c(rank, rank);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) c(i, j) = d.cartan[i][j];
    auto cinv = inverse(c);
    if (!cinv) throw ConfigError("singular Cartan matrix");
    d.fundamental_coweights.assign(rank, std::vector<Rational>(rank));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) d.fundamental_coweights[i][j] = (*cinv)(i, j);

    // Squared lengths from (a_i, a_i) cartan[i][j] = (a_j, a_j) cartan[j][i].
    std::vector<Rational> len(rank, Rational(0));
    len[0] = 1;
    for (bool changed = true; changed;) {
        changed = false;
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j)
                if (i != j && d.cartan[i][j] != 0 && !len[i].is_zero() && len[j].is_zero()) {
                    len[j] = len[i] * Rational(d.cartan[i][j], d.cartan[j][i]);
                    changed = true;
                }
    }
    std::int64_t l = 1;
    for (const auto& x : len) l = std::lcm(l, x.den());
    for (const auto& x : len) d.simple_root_length2.push_back(static_cast<int>((x * Rational(l)).num()));
    int g = 0;
    for (int x : d.simple_root_length2) g = std::gcd(g, x);
    for (int& x : d.simple_root_length2) x /= g;
    return d;
}

WeylGroup::WeylGroup(CoxeterDatum datum) : datum_(std::move(datum)) {
    const int r = datum_.rank;
    const int npos = datum_.num_positive_roots();
    std::vector<std::vector<int>> refl;
    for (int i = 0; i < r; ++i) refl.push_back(reflection_matrix(datum_.cartan, i));

    // Closure of the generators.
    std::vector<int> id(static_cast<std::size_t>(r) * r, 0);
    for (int i = 0; i < r; ++i) id[i * r + i] = 1;
    std::set<std::vector<int>> seen{id};
    std::deque<std::vector<int>> queue{id};
    while (!queue.empty()) {
        auto m = queue.front();
        queue.pop_front();
        for (const auto& s : refl) {
            auto p = int_matmul(m, s, r);
            if (seen.insert(p).second) queue.push_back(p);
        }
    }

    std::map<std::vector<int>, int> root_codes;
    for (int k = 0; k < npos; ++k) {
        root_codes[datum_.positive_roots[k]] = k;
        auto neg = datum_.positive_roots[k];
        for (auto& x : neg) x = -x;
        root_codes[neg] = npos + k;
    }
    auto length_of = [&](const std::vector<int>& m) {
        int len = 0;
        for (const auto& beta : datum_.positive_roots) {
            auto v = apply_matrix(m, beta);
            if (!is_nonnegative(v)) ++len;
        }
        return len;
    };
    for (const auto& m : seen) elements_.push_back({m, length_of(m)});
    std::sort(elements_.begin(), elements_.end(), [](const GroupElement& a, const GroupElement& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.action < b.action;
    });
    const int n = size();
    std::map<std::vector<int>, int> index;
    for (int w = 0; w < n; ++w) index[elements_[w].action] = w;

    mul_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mul_[static_cast<std::size_t>(a) * n + b] = index.at(int_matmul(elements_[a].action, elements_[b].action, r));
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (mul(a, b) == 0) inv_[a] = b;
    for (int i = 0; i < r; ++i) simple_.push_back(index.at(refl[i]));

    words_.assign(n, {});
    for (int w = 1; w < n; ++w) {
        for (int s = 0; s < r; ++s) {
            int ws = mul(w, simple_[s]);
            if (length(ws) < length(w)) {
                words_[w] = words_[ws];
                words_[w].push_back(s);
                break;
            }
        }
    }

    root_act_.assign(static_cast<std::size_t>(n) * 2 * npos, -1);
    for (int w = 0; w < n; ++w)
        for (int code = 0; code < 2 * npos; ++code) {
            auto v = apply_matrix(elements_[w].action, root_vector(code));
            root_act_[static_cast<std::size_t>(w) * 2 * npos + code] = root_codes.at(v);
        }

    // Lower Bruhat intervals as sets of subword products.
    const std::size_t words64 = (n + 63) / 64;
    lower_interval_.assign(n, std::vector<std::uint64_t>(words64, 0));
    for (int w = 0; w < n; ++w) {
        std::vector<char> in(n, 0);
        in[0] = 1;
        for (int s : words_[w]) {
            std::vector<char> next = in;
            for (int u = 0; u < n; ++u)
                if (in[u]) next[mul(u, simple_[s])] = 1;
            in.swap(next);
        }
        for (int u = 0; u < n; ++u)
            if (in[u]) lower_interval_[w][u / 64] |= (std::uint64_t{1} << (u % 64));
    }

    const Subset subsets = Subset{1} << r;
    parabolic_.assign(subsets, {});
    min_reps_.assign(subsets, {});
    coset_rep_.assign(static_cast<std::size_t>(subsets) * n, -1);
    for (Subset I = 0; I < subsets; ++I) {
        std::set<int> group{0};
        std::deque<int> q{0};
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int s : subset_members(I)) {
                int y = mul(x, simple_[s]);
                if (group.insert(y).second) q.push_back(y);
            }
        }
        parabolic_[I].assign(group.begin(), group.end());
        for (int w = 0; w < n; ++w) {
            bool minimal = true;
            for (int s : subset_members(I))
                if (length(mul(w, simple_[s])) < length(w)) minimal = false;
            if (minimal) min_reps_[I].push_back(w);
        }
        for (int u : min_reps_[I])
            for (int x : parabolic_[I]) coset_rep_[static_cast<std::size_t>(I) * n + mul(u, x)] = u;
    }
}

std::vector<int> WeylGroup::root_vector(int code) const {
    const int npos = num_positive_roots();
    if (code < npos) return datum_.positive_roots[code];
    auto v = datum_.positive_roots[code - npos];
    for (auto& x : v) x = -x;
    return v;
}

int WeylGroup::root_code(const std::vector<int>& v) const {
    const int npos = num_positive_roots();
    for (int k = 0; k < npos; ++k) {
        if (datum_.positive_roots[k] == v) return k;
        bool neg = true;
        for (int i = 0; i < rank(); ++i)
            if (datum_.positive_roots[k][i] != -v[i]) neg = false;
        if (neg) return npos + k;
    }
    return -1;
}

std::vector<int> WeylGroup::apply(int w, const std::vector<int>& v) const { return apply_matrix(elements_[w].action, v); }

int WeylGroup::find(const std::vector<int>& action) const {
    for (int w = 0; w < size(); ++w)
        if (elements_[w].action == action) return w;
    return -1;
}

bool WeylGroup::bruhat_leq(int u, int w) const { return (lower_interval_[w][u / 64] >> (u % 64)) & 1u; }

IntPolynomial WeylGroup::poincare_poly(Subset I) const {
    std::vector<std::int64_t> c;
    for (int w : min_reps_[I]) {
        if (static_cast<int>(c.size()) <= length(w)) c.resize(length(w) + 1, 0);
        ++c[length(w)];
    }
    return IntPolynomial(std::move(c));
}

int WeylGroup::coxeter_m(int s, int t) const {
    int st = mul(simple_[s], simple_[t]);
    int p = st, m = 1;
    while (p != 0) {
        p = mul(p, st);
        ++m;
    }
    return m;
}

std::vector<std::vector<int>> WeylGroup::conjugacy_classes() const {
    const int n = size();
    std::vector<int> cls(n, -1);
    std::vector<std::vector<int>> out;
    for (int w = 0; w < n; ++w) {
        if (cls[w] >= 0) continue;
        std::set<int> c;
        for (int x = 0; x < n; ++x) c.insert(mul(mul(x, w), inv(x)));
        for (int y : c) cls[y] = static_cast<int>(out.size());
        out.emplace_back(c.begin(), c.end());
    }
    return out;
}

}  // namespace mbs
