#include <stdexcept>

#include "mbs/fq.hpp"
#include "mbs/orbit_poly.hpp"

namespace mbs {

int dim_orbit(const XiPoset& xi, int m) {
    const auto& e = xi.element(m);
    const auto& c = xi.faces().face(e.C).signs;
    const auto& d = xi.faces().face(e.D).signs;
    const int npos = xi.datum().num_positive_roots();
    int nonnegative = 0;
    for (int k = 0; k < npos; ++k) {
        int sc = c.sign(k), sd = d.sign(k);
        if (sc >= 0 && sd >= 0) ++nonnegative;  // the root itself
        if (sc <= 0 && sd <= 0) ++nonnegative;  // its negative
    }
    return 2 * npos - nonnegative;
}

int dim_flag(const CoxeterDatum& d, Subset I) {
    int inside = 0;
    for (const auto& root : d.positive_roots) {
        bool in_I = true;
        for (int i = 0; i < d.rank; ++i)
            if (root[i] != 0 && !subset_contains(I, i)) in_I = false;
        if (in_I) ++inside;
    }
    return d.num_positive_roots() - inside;
}

bool is_compact(const XiPoset& xi, int m) {
    const auto& e = xi.element(m);
    const auto& c = xi.faces().face(e.C).signs;
    const auto& d = xi.faces().face(e.D).signs;
    for (int k = 0; k < xi.datum().num_positive_roots(); ++k)
        if (c.sign(k) * d.sign(k) < 0) return false;
    return true;
}

IntPolynomial orbit_poly(const XiPoset& xi, int m, Reading reading) {
    const auto& e = xi.element(m);
    Subset t = reading == Reading::Hor ? e.hor : e.ver;
    int shift = dim_orbit(xi, m) - dim_flag(xi.datum(), t);
    if (shift < 0) throw std::logic_error("orbit smaller than its flag variety at " + xi.label(m));
    return xi.group().poincare_poly(t).shifted(shift);
}

IntPolynomial orbit_poly(const XiPoset& xi, int m) {
    auto h = orbit_poly(xi, m, Reading::Hor);
    if (!(h == orbit_poly(xi, m, Reading::Ver)))
        throw std::logic_error("Hor and Ver readings disagree at " + xi.label(m));
    return h;
}

PolyReport property_suite(const XiPoset& xi) {
    PolyReport rep;
    const int n = xi.size();
    for (int m = 0; m < n; ++m) {
        const std::string at = " at " + xi.label(m);
        auto h = orbit_poly(xi, m, Reading::Hor);
        auto v = orbit_poly(xi, m, Reading::Ver);
        if (!(h == v)) rep.failures.push_back("Hor/Ver disagree" + at);
        if (h.degree() != dim_orbit(xi, m)) rep.failures.push_back("degree differs from the orbit dimension" + at);
        if (h.evaluate(1) != xi.element(m).orbit_size) rep.failures.push_back("n(1) != |m|" + at);
        if (h.divisible_by_q_minus_1()) rep.failures.push_back("divisible by q - 1" + at);
        bool compact = is_compact(xi, m);
        if (h.divisible_by_q() == compact) rep.failures.push_back("q-divisibility disagrees with compactness" + at);
        if (compact && h.coeff(0) != 1) rep.failures.push_back("compact orbit with n(0) != 1" + at);
        rep.polys.push_back(std::move(h));
    }
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
            if (m == k || !xi.geq(m, k) || !xi.is_anodyne(m, k)) continue;
            ++rep.anodyne_pairs;
            int gap = dim_orbit(xi, m) - dim_orbit(xi, k);
            if (gap < 0 || !(rep.polys[m] == rep.polys[k].shifted(gap)))
                rep.failures.push_back("anodyne " + xi.label(m) + " -> " + xi.label(k) +
                                       " is not a q-power multiple with the orbit-dimension gap");
        }
    return rep;
}

CountReport validate_counts(const OrbitTable& table) {
    const auto& xi = table.xi();
    const int q = table.geometry().q();
    CountReport rep;
    for (int m = 0; m < xi.size(); ++m) {
        long count = static_cast<long>(table.points(m).size());
        rep.counts.push_back(count);
        long expected = orbit_poly(xi, m).evaluate(q);
        if (count != expected)
            rep.failures.push_back("orbit " + xi.label(m) + " has " + std::to_string(count) + " points, polynomial gives " +
                                   std::to_string(expected));
    }
    return rep;
}

}  // namespace mbs
