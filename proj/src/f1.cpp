#include "mbs/f1.hpp"
#include "mbs/linalg.hpp"

namespace mbs {

RationalMatrix orbit_action(const XiPoset& xi, int m, int w) {
    const auto& e = xi.element(m);
    const auto& fc = xi.faces();
    RationalMatrix a(e.orbit_size, e.orbit_size);
    for (int p = 0; p < e.orbit_size; ++p) {
        int q = xi.point_index(fc.act(w, e.points[p].first), fc.act(w, e.points[p].second));
        a(q, p) = 1;
    }
    return a;
}

MixedBruhatSheaf build_e1(std::shared_ptr<const XiPoset> xi) {
    std::vector<int> dims(xi->size());
    for (int m = 0; m < xi->size(); ++m) dims[m] = xi->element(m).orbit_size;
    MixedBruhatSheaf e(xi, dims);
    for (int m = 0; m < xi->size(); ++m) {
        for (const auto& c : xi->prime_covers(m)) {
            auto pi = xi->pi_map(m, c.target);
            RationalMatrix push(dims[c.target], dims[m]);
            for (int p = 0; p < dims[m]; ++p) push(pi[p], p) = 1;
            e.set_dprime(m, c.s, std::move(push));
        }
        for (const auto& c : xi->second_covers(m)) {
            auto pi = xi->pi_map(m, c.target);
            RationalMatrix pull(dims[m], dims[c.target]);
            for (int p = 0; p < dims[m]; ++p) pull(p, pi[p]) = 1;
            e.set_dsecond(m, c.s, std::move(pull));
        }
    }
    return e;
}

E1vSheaf build_e1v(std::shared_ptr<const XiPoset> xi, const WRepresentation& v) {
    const auto& g = xi->group();
    if (&v.group() != &g && !(v.group().datum().name() == g.datum().name()))
        throw ConfigError("representation belongs to a different group");
    MixedBruhatSheaf big = tensor_identity(build_e1(xi), v.dim());
    std::vector<RationalMatrix> bases(xi->size());
    for (int m = 0; m < xi->size(); ++m) {
        const int n = big.dim(m);
        RationalMatrix proj(n, n);
        for (int w = 0; w < g.size(); ++w) proj += RationalMatrix::kron(orbit_action(*xi, m, w), v.matrix(w));
        proj *= Rational(1, g.size());
        bases[m] = column_space_basis(proj);
    }
    E1vSheaf out{restrict_to(big, bases), bases};
    return out;
}

int invariant_dim_by_character(const XiPoset& xi, int m, const WRepresentation& v) {
    const auto& fc = xi.faces();
    const auto& e = xi.element(m);
    Rational sum = 0;
    int count = 0;
    for (int w = 0; w < xi.group().size(); ++w) {
        if (fc.act(w, e.C) != e.C || fc.act(w, e.D) != e.D) continue;
        sum += v.character(w);
        ++count;
    }
    sum /= Rational(count);
    if (!sum.is_integer()) throw std::logic_error("character inner product is not an integer");
    return static_cast<int>(sum.num());
}

}  // namespace mbs
