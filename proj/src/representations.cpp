#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "mbs/f1.hpp"
#include "mbs/linalg.hpp"

namespace mbs {

WRepresentation::WRepresentation(std::string name, std::shared_ptr<const WeylGroup> group,
                                 std::vector<RationalMatrix> generators)
    : name_(std::move(name)), group_(std::move(group)), generators_(std::move(generators)) {
    const auto& g = *group_;
    if (static_cast<int>(generators_.size()) != g.rank()) throw ConfigError(name_ + ": one matrix per simple reflection");
    dim_ = generators_.empty() ? 0 : static_cast<int>(generators_[0].rows());
    for (const auto& a : generators_)
        if (static_cast<int>(a.rows()) != dim_ || static_cast<int>(a.cols()) != dim_)
            throw ConfigError(name_ + ": generator matrices must be square of one size");
    const auto id = RationalMatrix::identity(dim_);
    for (int s = 0; s < g.rank(); ++s) {
        for (int t = s; t < g.rank(); ++t) {
            RationalMatrix st = generators_[s] * generators_[t];
            RationalMatrix p = id;
            for (int k = 0; k < g.coxeter_m(s, t); ++k) p = p * st;
            if (!p.is_identity())
                throw ConfigError(name_ + ": Coxeter relation fails for s" + std::to_string(s) + ", s" +
                                  std::to_string(t));
        }
    }
    matrices_.resize(g.size());
    for (int w = 0; w < g.size(); ++w) {
        RationalMatrix m = id;
        for (int s : g.reduced_word(w)) m = m * generators_[s];
        matrices_[w] = std::move(m);
    }
    // Homomorphism check on the generators: rho(w s) = rho(w) rho(s).
    for (int w = 0; w < g.size(); ++w)
        for (int s = 0; s < g.rank(); ++s)
            if (!(matrices_[g.mul(w, g.simple(s))] == matrices_[w] * generators_[s]))
                throw ConfigError(name_ + ": matrices do not define a representation");
}

Rational WRepresentation::character(int w) const {
    Rational t = 0;
    for (int i = 0; i < dim_; ++i) t += matrices_[w](i, i);
    return t;
}

namespace {

RationalMatrix scalar(Rational x) {
    RationalMatrix m(1, 1);
    m(0, 0) = x;
    return m;
}

std::vector<RationalMatrix> linear_character(const WeylGroup& g, const std::vector<int>& values) {
    std::vector<RationalMatrix> out;
    for (int s = 0; s < g.rank(); ++s) out.push_back(scalar(values[s]));
    return out;
}

std::vector<RationalMatrix> reflection_generators(const WeylGroup& g) {
    std::vector<RationalMatrix> out;
    const int r = g.rank();
    for (int s = 0; s < r; ++s) {
        const auto& a = g.element(g.simple(s)).action;
        RationalMatrix m(r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) m(i, j) = a[i * r + j];
        out.push_back(std::move(m));
    }
    return out;
}

// Specht modules of S_n via polytabloids in the permutation module on tabloids.
class SpechtBuilder {
public:
    explicit SpechtBuilder(std::vector<int> shape) : shape_(std::move(shape)) {
        n_ = std::accumulate(shape_.begin(), shape_.end(), 0);
        enumerate_tabloids();
        enumerate_standard();
        basis_ = RationalMatrix(tabloids_.size(), standard_.size());
        for (std::size_t k = 0; k < standard_.size(); ++k) {
            auto v = polytabloid(standard_[k]);
            for (std::size_t i = 0; i < v.size(); ++i) basis_(i, k) = v[i];
        }
    }

    // Matrix of the transposition (i, i+1) in the standard polytabloid basis.
    RationalMatrix transposition(int i) const {
        RationalMatrix images(tabloids_.size(), standard_.size());
        for (std::size_t k = 0; k < standard_.size(); ++k) {
            auto t = standard_[k];
            for (auto& row : t)
                for (int& x : row) x = x == i ? i + 1 : (x == i + 1 ? i : x);
            auto v = polytabloid(t);
            for (std::size_t r = 0; r < v.size(); ++r) images(r, k) = v[r];
        }
        auto x = solve_in_basis(basis_, images);
        if (!x) throw std::logic_error("polytabloid image outside the Specht module");
        return *x;
    }

private:
    using Tableau = std::vector<std::vector<int>>;

    void enumerate_tabloids() {
        std::vector<int> rows;
        for (std::size_t r = 0; r < shape_.size(); ++r) rows.insert(rows.end(), shape_[r], static_cast<int>(r));
        do {
            index_[rows] = static_cast<int>(tabloids_.size());
            tabloids_.push_back(rows);
        } while (std::next_permutation(rows.begin(), rows.end()));
    }

    void enumerate_standard() {
        std::vector<int> perm(n_);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            Tableau t;
            int k = 0;
            for (int len : shape_) {
                t.emplace_back(perm.begin() + k, perm.begin() + k + len);
                k += len;
            }
            if (is_standard(t)) standard_.push_back(t);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    static bool is_standard(const Tableau& t) {
        for (std::size_t r = 0; r < t.size(); ++r)
            for (std::size_t c = 0; c < t[r].size(); ++c) {
                if (c > 0 && t[r][c - 1] > t[r][c]) return false;
                if (r > 0 && t[r - 1][c] > t[r][c]) return false;
            }
        return true;
    }

    std::vector<Rational> polytabloid(const Tableau& t) const {
        std::vector<Rational> v(tabloids_.size());
        const int ncols = shape_.empty() ? 0 : shape_[0];
        std::vector<std::vector<int>> cols(ncols);
        for (const auto& row : t)
            for (std::size_t c = 0; c < row.size(); ++c) cols[c].push_back(row[c]);
        // Iterate over the product of the column symmetric groups.
        std::vector<std::vector<int>> perms(ncols);
        for (int c = 0; c < ncols; ++c) {
            perms[c].resize(cols[c].size());
            std::iota(perms[c].begin(), perms[c].end(), 0);
        }
        while (true) {
            int sign = 1;
            std::vector<int> row_of(n_);
            for (int c = 0; c < ncols; ++c) {
                const auto& p = perms[c];
                for (std::size_t i = 0; i < p.size(); ++i)
                    for (std::size_t j = i + 1; j < p.size(); ++j)
                        if (p[i] > p[j]) sign = -sign;
                for (std::size_t r = 0; r < p.size(); ++r) row_of[cols[c][p[r]]] = static_cast<int>(r);
            }
            v[index_.at(row_of)] += sign;
            int c = 0;
            while (c < ncols && !std::next_permutation(perms[c].begin(), perms[c].end())) ++c;
            if (c == ncols) break;
        }
        return v;
    }

    std::vector<int> shape_;
    int n_ = 0;
    std::vector<std::vector<int>> tabloids_;
    std::map<std::vector<int>, int> index_;
    std::vector<Tableau> standard_;
    RationalMatrix basis_;
};

std::vector<int> parse_partition(const std::string& body) {
    std::vector<int> parts;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int x = 0;
        try {
            x = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("malformed partition in specht(...)");
        }
        if (used != item.size() || x <= 0) throw ConfigError("malformed partition in specht(...)");
        parts.push_back(x);
    }
    if (parts.empty() || !std::is_sorted(parts.rbegin(), parts.rend()))
        throw ConfigError("partition parts must be positive and non-increasing");
    return parts;
}

}  // namespace

WRepresentation rep_catalog(std::shared_ptr<const WeylGroup> group, const std::string& name) {
    const auto& g = *group;
    const auto& d = g.datum();
    const int r = g.rank();
    if (name == "trivial") return {name, group, linear_character(g, std::vector<int>(r, 1))};
    if (name == "sign") return {name, group, linear_character(g, std::vector<int>(r, -1))};
    if (name == "reflection") return {name, group, reflection_generators(g)};
    if (name == "reflection_sign" || name == "reflection⊗sign") {
        auto gens = reflection_generators(g);
        for (auto& a : gens) a *= Rational(-1);
        return {"reflection_sign", group, gens};
    }
    if (name == "sign_long" || name == "sign_short") {
        if (d.type_label == 'A') throw ConfigError(name + " needs two root lengths (types B, C, G)");
        int longest = *std::max_element(d.simple_root_length2.begin(), d.simple_root_length2.end());
        std::vector<int> values(r);
        for (int s = 0; s < r; ++s) {
            bool is_long = d.simple_root_length2[s] == longest;
            values[s] = (is_long == (name == "sign_long")) ? -1 : 1;
        }
        return {name, group, linear_character(g, values)};
    }
    if (name.rfind("specht(", 0) == 0 && name.size() > 8 && name.back() == ')') {
        if (d.type_label != 'A') throw ConfigError("Specht modules are available for type A only");
        auto parts = parse_partition(name.substr(7, name.size() - 8));
        if (std::accumulate(parts.begin(), parts.end(), 0) != r + 1)
            throw ConfigError("partition size must be rank + 1");
        SpechtBuilder b(parts);
        std::vector<RationalMatrix> gens;
        for (int s = 0; s < r; ++s) gens.push_back(b.transposition(s));
        return {name, group, gens};
    }
    throw ConfigError("unknown representation '" + name + "'");
}

std::vector<std::string> catalog_names(const WeylGroup& group) {
    std::vector<std::string> out{"trivial", "sign", "reflection", "reflection_sign"};
    const auto& d = group.datum();
    if (d.type_label != 'A') {
        out.push_back("sign_long");
        out.push_back("sign_short");
    } else {
        // Every partition of rank + 1.
        const int n = d.rank + 1;
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        auto rec = [&](auto&& self, int left, int max_part) -> void {
            if (left == 0) {
                parts.push_back(cur);
                return;
            }
            for (int p = std::min(left, max_part); p >= 1; --p) {
                cur.push_back(p);
                self(self, left - p, p);
                cur.pop_back();
            }
        };
        rec(rec, n, n);
        for (const auto& p : parts) {
            std::string s = "specht(";
            for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
            out.push_back(s + ")");
        }
    }
    return out;
}

}  // namespace mbs
