#include <map>

#include "mbs/cousin.hpp"
#include "mbs/linalg.hpp"

namespace mbs {

int StalkComplex::euler_terms() const {
    int x = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) x += (degree(k) % 2 == 0 ? 1 : -1) * dims[k];
    return x;
}

int StalkComplex::euler_cohomology() const {
    int x = 0;
    for (std::size_t k = 0; k < cohomology.size(); ++k) x += (degree(k) % 2 == 0 ? 1 : -1) * cohomology[k];
    return x;
}

StalkComplex stalk_complex(const MixedBruhatSheaf& e, int m) {
    const XiPoset& xi = e.xi();
    const auto& cell = xi.element(m);
    const Subset I0 = cell.I;
    StalkComplex c;
    c.cell = m;
    c.r = xi.rank();
    c.lowest_degree = -c.r;
    const int top = subset_size(I0);
    c.labels.assign(top + 1, {});
    c.dims.assign(top + 1, 0);
    std::vector<std::map<std::pair<Subset, int>, int>> offset(top + 1);
    for (Subset I = 0; I <= I0; ++I) {
        if (!subset_leq(I, I0)) continue;
        const int k = subset_size(I);
        for (int n : xi.prime_fiber(m, I)) {
            offset[k][{I, n}] = c.dims[k];
            c.labels[k].emplace_back(I, n);
            c.dims[k] += e.dim(n);
        }
    }
    for (int k = 0; k < top; ++k) {
        RationalMatrix d(c.dims[k + 1], c.dims[k]);
        for (const auto& [I1, n] : c.labels[k]) {
            const int col0 = offset[k].at({I1, n});
            for (int a : subset_members(I0 & ~I1)) {
                const Subset I2 = I1 | (Subset{1} << a);
                const int n2 = xi.prime_contract(n, I2);
                const int row0 = offset[k + 1].at({I2, n2});
                const int sign = subset_size(I1 & ~((Subset{2} << a) - 1)) % 2 == 0 ? 1 : -1;
                const auto& block = e.dprime(n, a);
                for (std::size_t i = 0; i < block.rows(); ++i)
                    for (std::size_t j = 0; j < block.cols(); ++j)
                        if (!block(i, j).is_zero()) d(row0 + i, col0 + j) += block(i, j) * Rational(sign);
            }
        }
        c.differentials.push_back(std::move(d));
    }
    for (int k = 0; k + 1 < top; ++k)
        if (!(c.differentials[k + 1] * c.differentials[k]).is_zero()) c.d_squared_zero = false;
    std::vector<int> ranks(top, 0);
    for (int k = 0; k < top; ++k) ranks[k] = static_cast<int>(rank(c.differentials[k]));
    c.cohomology.assign(top + 1, 0);
    for (int k = 0; k <= top; ++k) {
        int out = k < top ? ranks[k] : 0;
        int in = k > 0 ? ranks[k - 1] : 0;
        c.cohomology[k] = c.dims[k] - out - in;
    }
    return c;
}

PerversityReport support_check(const MixedBruhatSheaf& e) {
    const XiPoset& xi = e.xi();
    PerversityReport rep;
    for (int m = 0; m < xi.size(); ++m) {
        auto c = stalk_complex(e, m);
        CellPerversity cp;
        cp.cell = m;
        cp.flat_dim = xi.flat_dim(m);
        cp.lowest_degree = c.lowest_degree;
        cp.term_dims = c.dims;
        cp.cohomology = c.cohomology;
        if (!c.d_squared_zero) {
            cp.pass = false;
            rep.failures.push_back("d^2 != 0 at " + xi.label(m));
        }
        if (c.euler_terms() != c.euler_cohomology()) {
            cp.pass = false;
            rep.failures.push_back("Euler characteristics disagree at " + xi.label(m));
        }
        for (std::size_t k = 0; k < c.cohomology.size(); ++k) {
            int d = c.degree(k);
            if (c.cohomology[k] != 0 && cp.flat_dim > -d) {
                cp.pass = false;
                rep.failures.push_back("H^" + std::to_string(d) + " != 0 at " + xi.label(m) + " with flat dimension " +
                                       std::to_string(cp.flat_dim));
            }
        }
        rep.cells.push_back(std::move(cp));
    }
    return rep;
}

PerversityReport coperversity_check(const MixedBruhatSheaf& e) { return support_check(dual(e)); }

ConstructibilityReport constructibility_check(const MixedBruhatSheaf& e, const PerversityReport& support) {
    const XiPoset& xi = e.xi();
    ConstructibilityReport rep;
    auto classes = xi.stratification_classes();
    rep.classes = classes.count_s0;
    // Compare cohomology indexed by absolute degree.
    auto graded = [&](const CellPerversity& cp) {
        std::map<int, int> g;
        for (std::size_t k = 0; k < cp.cohomology.size(); ++k)
            if (cp.cohomology[k] != 0) g[cp.lowest_degree + static_cast<int>(k)] = cp.cohomology[k];
        return g;
    };
    std::map<int, int> first;
    for (int m = 0; m < xi.size(); ++m) {
        auto [it, inserted] = first.emplace(classes.s0[m], m);
        if (inserted) continue;
        if (graded(support.cells[m]) != graded(support.cells[it->second]))
            rep.failures.push_back("stalk cohomology differs between " + xi.label(it->second) + " and " +
                                   xi.label(m));
    }
    return rep;
}

ConstructibilityReport constructibility_check(const MixedBruhatSheaf& e) {
    return constructibility_check(e, support_check(e));
}

bool concentrated_in_degree_minus_r(const PerversityReport& support, int r) {
    for (const auto& cp : support.cells)
        for (std::size_t k = 0; k < cp.cohomology.size(); ++k)
            if (cp.cohomology[k] != 0 && cp.lowest_degree + static_cast<int>(k) != -r) return false;
    return true;
}

}  // namespace mbs
