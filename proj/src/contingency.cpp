#include <algorithm>
#include <numeric>

#include "mbs/fq.hpp"

namespace mbs {

ContingencyMatrix ContingencyMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) return {};
    ContingencyMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows_; ++i) {
        if (static_cast<int>(rows[i].size()) != m.cols_) throw std::domain_error("ragged contingency matrix");
        for (int j = 0; j < m.cols_; ++j) {
            if (rows[i][j] < 0) throw std::domain_error("negative contingency entry");
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

std::vector<int> ContingencyMatrix::row_margins() const {
    std::vector<int> out(rows_, 0);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out[i] += (*this)(i, j);
    return out;
}

std::vector<int> ContingencyMatrix::col_margins() const {
    std::vector<int> out(cols_, 0);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out[j] += (*this)(i, j);
    return out;
}

int ContingencyMatrix::content() const { return std::accumulate(a_.begin(), a_.end(), 0); }

bool ContingencyMatrix::no_zero_lines() const {
    auto r = row_margins();
    auto c = col_margins();
    return std::none_of(r.begin(), r.end(), [](int x) { return x == 0; }) &&
           std::none_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

ContingencyMatrix ContingencyMatrix::transpose() const {
    ContingencyMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

ContingencyMatrix ContingencyMatrix::merge_rows(int k) const {
    if (k < 0 || k + 1 >= rows_) throw std::out_of_range("merge_rows index");
    ContingencyMatrix out(rows_ - 1, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(i <= k ? i : i - 1, j) += (*this)(i, j);
    return out;
}

ContingencyMatrix ContingencyMatrix::merge_cols(int k) const { return transpose().merge_rows(k).transpose(); }

std::string ContingencyMatrix::to_string() const {
    std::string s = "[";
    for (int i = 0; i < rows_; ++i) {
        s += i ? ",[" : "[";
        for (int j = 0; j < cols_; ++j) s += (j ? "," : "") + std::to_string((*this)(i, j));
        s += "]";
    }
    return s + "]";
}

std::vector<int> composition_of_type(int n, Subset I) {
    std::vector<int> out;
    int last = 0;
    for (int k = 1; k < n; ++k)
        if (!subset_contains(I, k - 1)) {
            out.push_back(k - last);
            last = k;
        }
    out.push_back(n - last);
    return out;
}

Subset type_of_composition(const std::vector<int>& composition) {
    int n = 0;
    for (int part : composition) {
        if (part <= 0) throw std::domain_error("composition parts must be positive");
        n += part;
    }
    Subset I = 0;
    int pos = 0;
    std::vector<char> is_cut(n + 1, 0);
    for (int part : composition) {
        pos += part;
        is_cut[pos] = 1;
    }
    for (int k = 1; k < n; ++k)
        if (!is_cut[k]) I |= Subset{1} << (k - 1);
    return I;
}

namespace {

void require_type_a(const XiPoset& xi) {
    if (xi.datum().type_label != 'A') throw std::domain_error("contingency matrices describe type A only");
}

// Permutation of {0..n-1} attached to w: image of position k.
std::vector<int> permutation_of(const WeylGroup& g, int w) {
    const int n = g.rank() + 1;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    // w = s_{i1} ... s_{ik}; apply the rightmost letter first.
    const auto& word = g.reduced_word(w);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        int s = *it;
        for (int& x : perm) x = x == s ? s + 1 : (x == s + 1 ? s : x);
    }
    return perm;
}

SignVector signs_of_blocks(const XiPoset& xi, const std::vector<int>& block_of) {
    const auto& d = xi.datum();
    SignVector v;
    for (int k = 0; k < d.num_positive_roots(); ++k) {
        const auto& root = d.positive_roots[k];
        int a = -1, b = -1;
        for (int i = 0; i < d.rank; ++i)
            if (root[i] != 0) {
                if (a < 0) a = i;
                b = i + 1;
            }
        // root = e_a - e_b; earlier blocks carry larger coordinates.
        if (block_of[a] < block_of[b]) v.pos |= std::uint64_t{1} << k;
        if (block_of[a] > block_of[b]) v.neg |= std::uint64_t{1} << k;
    }
    return v;
}

}  // namespace

std::vector<int> face_blocks(const XiPoset& xi, int face) {
    require_type_a(xi);
    const auto& fc = xi.faces();
    const auto& f = fc.face(face);
    const int n = xi.rank() + 1;
    auto comp = composition_of_type(n, f.type);
    std::vector<int> standard;
    for (int b = 0; b < static_cast<int>(comp.size()); ++b) standard.insert(standard.end(), comp[b], b);
    auto perm = permutation_of(xi.group(), f.rep);
    std::vector<int> block_of(n);
    for (int k = 0; k < n; ++k) block_of[perm[k]] = standard[k];
    if (!(signs_of_blocks(xi, block_of) == f.signs)) throw std::logic_error("set-partition model disagrees with face signs");
    return block_of;
}

ContingencyMatrix contingency_of(const XiPoset& xi, int m) {
    require_type_a(xi);
    const auto& e = xi.element(m);
    const int n = xi.rank() + 1;
    auto bc = face_blocks(xi, e.C);
    auto bd = face_blocks(xi, e.D);
    ContingencyMatrix M(static_cast<int>(composition_of_type(n, e.I).size()),
                        static_cast<int>(composition_of_type(n, e.J).size()));
    for (int k = 0; k < n; ++k) ++M(bc[k], bd[k]);
    return M;
}

int xi_of_contingency(const XiPoset& xi, const ContingencyMatrix& M) {
    require_type_a(xi);
    const int n = xi.rank() + 1;
    if (M.content() != n) throw std::domain_error("contingency content must equal rank + 1");
    if (!M.no_zero_lines()) throw std::domain_error("contingency matrix has a zero row or column");
    Subset I = type_of_composition(M.row_margins());
    std::vector<int> block_of(n);
    int pos = 0;
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j)
            for (int c = 0; c < M(i, j); ++c) block_of[pos++] = j;
    int D = xi.faces().find(signs_of_blocks(xi, block_of));
    if (D < 0) throw std::logic_error("set partition is not a face");
    return xi.find(xi.faces().base_face(I), D);
}

}  // namespace mbs
