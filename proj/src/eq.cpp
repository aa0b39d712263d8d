#include <algorithm>
#include <numeric>
#include <set>

#include "mbs/fq.hpp"
#include "mbs/linalg.hpp"

namespace mbs {

namespace {
constexpr double kMaxSheafBytes = 1024.0 * 1024 * 1024;
}  // namespace

RationalMatrix FqMBS::embedding(int m) const {
    const auto& r = hor_of_point[m];
    RationalMatrix a(r.size(), sheaf.dim(m));
    for (std::size_t p = 0; p < r.size(); ++p) a(p, r[p]) = 1;
    return a;
}

FqMBS build_eq(int n, int q, PointOrder order, bool allow_n4) {
    if (n < 2) throw ConfigError("E_q needs n >= 2");
    if (n > 4 || (n == 4 && !allow_n4)) throw ResourceError("E_q is built for n <= 3 (n = 4 needs the resource flag)");
    auto geom = std::make_shared<const FlagGeometry>(n, q, order);
    auto xi = make_xi('A', n - 1);
    auto table = std::make_shared<const OrbitTable>(geom, xi);
    const auto& G = *geom;

    std::vector<int> dims(xi->size());
    std::vector<std::vector<int>> hor(xi->size());
    for (int m = 0; m < xi->size(); ++m) {
        const auto& e = xi->element(m);
        dims[m] = static_cast<int>(G.flags(e.hor).size());
        std::vector<int> hit(dims[m], 0);
        for (const auto& [f, g] : table->points(m)) {
            auto [type, idx] = G.hor_flag(e.I, f, e.J, g);
            if (type != e.hor) throw std::logic_error("Hor flag type disagrees with the Tits product at " + xi->label(m));
            hor[m].push_back(idx);
            ++hit[idx];
        }
        for (int c : hit)
            if (c == 0 || c != hit[0]) throw std::logic_error("r'_m is not a fibration with equal fibers at " + xi->label(m));
    }

    // Covering matrices are dense; refuse sizes that cannot fit in memory.
    double entries = 0;
    for (int m = 0; m < xi->size(); ++m) {
        for (const auto& c : xi->prime_covers(m)) entries += double(dims[m]) * dims[c.target];
        for (const auto& c : xi->second_covers(m)) entries += double(dims[m]) * dims[c.target];
    }
    const double bytes = entries * sizeof(Rational);
    if (bytes > kMaxSheafBytes)
        throw ResourceError("E_q(" + std::to_string(n) + "," + std::to_string(q) + ") needs about " +
                            std::to_string(static_cast<long long>(bytes / (1 << 20))) + " MiB of dense matrices");

    FqMBS out{geom, table, MixedBruhatSheaf(xi, dims), hor};
    for (int m = 0; m < xi->size(); ++m) {
        const auto& e = xi->element(m);
        const auto& pts = table->points(m);
        for (const auto& c : xi->second_covers(m)) {
            const Subset J2 = e.J | (Subset{1} << c.s);
            // r'_n o pi must factor through r'_m.
            std::vector<int> factor(dims[m], -1);
            for (std::size_t p = 0; p < pts.size(); ++p) {
                int g2 = G.project(e.J, pts[p].second, J2);
                int y = table->point_index(e.I, pts[p].first, J2, g2);
                int h = hor[c.target][y];
                int& slot = factor[hor[m][p]];
                if (slot >= 0 && slot != h) throw std::logic_error("pullback is not a pulled-back function");
                slot = h;
            }
            RationalMatrix a(dims[m], dims[c.target]);
            for (int k = 0; k < dims[m]; ++k) a(k, factor[k]) = 1;
            out.sheaf.set_dsecond(m, c.s, std::move(a));
        }
        for (const auto& c : xi->prime_covers(m)) {
            const Subset I2 = e.I | (Subset{1} << c.s);
            const auto& tpts = table->points(c.target);
            // counts[y][k] = #{x over y with r'_m(x) = k}
            std::vector<std::map<int, int>> counts(tpts.size());
            for (std::size_t p = 0; p < pts.size(); ++p) {
                int f2 = G.project(e.I, pts[p].first, I2);
                int y = table->point_index(I2, f2, e.J, pts[p].second);
                ++counts[y][hor[m][p]];
            }
            std::vector<const std::map<int, int>*> row(dims[c.target], nullptr);
            for (std::size_t y = 0; y < tpts.size(); ++y) {
                int h = hor[c.target][y];
                if (!row[h]) row[h] = &counts[y];
                else if (*row[h] != counts[y])
                    throw std::logic_error("pushforward of a pulled-back function is not pulled back");
            }
            RationalMatrix a(dims[c.target], dims[m]);
            for (int h = 0; h < dims[c.target]; ++h)
                for (const auto& [k, cnt] : *row[h]) a(h, k) = cnt;
            out.sheaf.set_dprime(m, c.s, std::move(a));
        }
    }
    return out;
}

std::vector<RationalMatrix> hecke_generators(const FlagGeometry& geom) {
    const auto& full = geom.flags(0);
    const int nf = static_cast<int>(full.size());
    std::vector<RationalMatrix> out;
    for (int s = 0; s + 1 < geom.n(); ++s) {
        const Subset K = Subset{1} << s;
        std::vector<int> proj(nf);
        for (int f = 0; f < nf; ++f) proj[f] = geom.project(0, f, K);
        RationalMatrix sigma(nf, nf);
        for (int f = 0; f < nf; ++f)
            for (int g = 0; g < nf; ++g)
                if (proj[f] == proj[g] && f != g) sigma(f, g) = 1;
        out.push_back(std::move(sigma));
    }
    return out;
}

HeckeReport check_hecke(const FlagGeometry& geom) {
    HeckeReport rep;
    auto sig = hecke_generators(geom);
    rep.generators = static_cast<int>(sig.size());
    const std::size_t nf = geom.flags(0).size();
    const auto id = RationalMatrix::identity(nf);
    const Rational q = geom.q();
    for (std::size_t s = 0; s < sig.size(); ++s) {
        RationalMatrix plus = sig[s] + id;
        RationalMatrix minus = sig[s] - id * q;
        if (!(plus * minus).is_zero()) rep.failures.push_back("quadratic relation fails for s" + std::to_string(s));
        if (plus.is_zero() || minus.is_zero())
            rep.failures.push_back("sigma_s" + std::to_string(s) + " misses one of the eigenvalues q, -1");
        for (std::size_t t = s + 1; t < sig.size(); ++t) {
            bool ok = t == s + 1 ? sig[s] * sig[t] * sig[s] == sig[t] * sig[s] * sig[t]
                                 : sig[s] * sig[t] == sig[t] * sig[s];
            if (!ok)
                rep.failures.push_back("braid relation fails for s" + std::to_string(s) + ", s" + std::to_string(t));
        }
    }
    return rep;
}

namespace {

int primitive_root(int p) {
    for (int g = 1; g < p; ++g) {
        int x = 1, order = 0;
        do {
            x = (x * g) % p;
            ++order;
        } while (x != 1);
        if (order == p - 1) return g;
    }
    return 1;
}

}  // namespace

std::vector<std::vector<int>> borel_orbits(const FlagGeometry& geom, Subset I) {
    const int n = geom.n();
    std::vector<std::vector<int>> gens;
    const int root = primitive_root(geom.q());
    for (int i = 0; i < n; ++i) {
        std::vector<int> g(n * n, 0);
        for (int k = 0; k < n; ++k) g[k * n + k] = 1;
        g[i * n + i] = root;
        gens.push_back(g);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<int> g(n * n, 0);
            for (int k = 0; k < n; ++k) g[k * n + k] = 1;
            g[i * n + j] = 1;
            gens.push_back(g);
        }
    const auto& flags = geom.flags(I);
    const int nf = static_cast<int>(flags.size());
    std::vector<int> parent(nf);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& g : gens) {
        std::vector<int> image(geom.num_subspaces());
        for (int v = 0; v < geom.num_subspaces(); ++v) image[v] = geom.transform(g, v);
        for (int f = 0; f < nf; ++f) {
            std::vector<int> chain;
            for (int v : flags[f]) chain.push_back(image[v]);
            int h = geom.flag_index(I, chain);
            if (h < 0) throw std::logic_error("Borel image of a flag is not a flag");
            int a = find(f), b = find(h);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::map<int, std::vector<int>> classes;
    for (int f = 0; f < nf; ++f) classes[find(f)].push_back(f);
    std::vector<std::vector<int>> out;
    for (auto& [k, v] : classes) out.push_back(std::move(v));
    return out;
}

MixedBruhatSheaf b_invariant_sub(const FqMBS& e) {
    const auto& xi = e.sheaf.xi();
    std::map<Subset, std::vector<std::vector<int>>> orbits;
    std::vector<RationalMatrix> bases(xi.size());
    for (int m = 0; m < xi.size(); ++m) {
        Subset h = xi.element(m).hor;
        auto it = orbits.find(h);
        if (it == orbits.end()) it = orbits.emplace(h, borel_orbits(*e.geom, h)).first;
        RationalMatrix b(e.sheaf.dim(m), it->second.size());
        for (std::size_t k = 0; k < it->second.size(); ++k)
            for (int f : it->second[k]) b(f, k) = 1;
        bases[m] = std::move(b);
    }
    return restrict_to(e.sheaf, bases);
}

PointCheckReport orbit_point_checks(const OrbitTable& table) {
    const auto& G = table.geometry();
    const auto& xi = table.xi();
    const Subset full = G.full_type();
    PointCheckReport rep;

    // Fiber products: every (f1, g1) in F_I1 x F_J1 lies over exactly one pair
    // (m', n); the points over (m', n) must be the union of the sup orbits.
    for (Subset I2 = 0; I2 <= full; ++I2)
        for (Subset J2 = 0; J2 <= full; ++J2)
            for (Subset I1 = 0; I1 <= full; ++I1) {
                if (!subset_leq(I1, I2)) continue;
                for (Subset J1 = 0; J1 <= full; ++J1) {
                    if (!subset_leq(J1, J2)) continue;
                    std::map<std::pair<int, int>, std::map<int, int>> over;
                    const int fi = static_cast<int>(G.flags(I1).size());
                    const int fj = static_cast<int>(G.flags(J1).size());
                    for (int f = 0; f < fi; ++f) {
                        int f2 = G.project(I1, f, I2);
                        for (int g = 0; g < fj; ++g) {
                            int g2 = G.project(J1, g, J2);
                            int mp = table.orbit_of(I1, f, J2, g2);
                            int nn = table.orbit_of(I2, f2, J1, g);
                            ++over[{mp, nn}][table.orbit_of(I1, f, J1, g)];
                        }
                    }
                    for (int np : xi.of_type(I2, J2))
                        for (int mp : xi.prime_fiber(np, I1))
                            for (int nn : xi.second_fiber(np, J1)) {
                                ++rep.fiber_product_configs;
                                auto sup = xi.sup(mp, nn);
                                std::map<int, int> expected;
                                for (int m : sup) expected[m] = static_cast<int>(table.points(m).size());
                                auto it = over.find({mp, nn});
                                std::map<int, int> seen = it == over.end() ? std::map<int, int>{} : it->second;
                                if (seen != expected)
                                    rep.failures.push_back("fiber product over " + xi.label(mp) + ", " +
                                                           xi.label(nn) + " is not the union of the sup orbits");
                            }
                }
            }

    // Anodyne projections have fibers of one size, a power of q.
    for (int m = 0; m < xi.size(); ++m)
        for (int n = 0; n < xi.size(); ++n) {
            if (!xi.geq(m, n) || !xi.is_anodyne(m, n)) continue;
            ++rep.anodyne_pairs;
            const auto& em = xi.element(m);
            const auto& en = xi.element(n);
            std::vector<long> fiber(table.points(n).size(), 0);
            for (const auto& [f, g] : table.points(m)) {
                int y = table.point_index(en.I, G.project(em.I, f, en.I), en.J, G.project(em.J, g, en.J));
                ++fiber[y];
            }
            long size = fiber.empty() ? 0 : fiber[0];
            bool constant = std::all_of(fiber.begin(), fiber.end(), [&](long x) { return x == size; });
            long p = size;
            while (p > 1 && p % G.q() == 0) p /= G.q();
            if (!constant || p != 1)
                rep.failures.push_back("anodyne projection " + xi.label(m) + " -> " + xi.label(n) +
                                       " has fibers that are not a constant power of q");
        }
    return rep;
}

RationalMatrix intertwiner(const OrbitTable& table, int m) {
    const auto& e = table.xi().element(m);
    const auto& G = table.geometry();
    RationalMatrix a(G.flags(e.J).size(), G.flags(e.I).size());
    for (const auto& [f, g] : table.points(m)) a(g, f) += 1;
    return a;
}

BicubeData flag_bicube(const FlagGeometry& geom) {
    BicubeData b;
    b.rank = geom.n() - 1;
    const Subset full = geom.full_type();
    for (Subset I = 0; I <= full; ++I) b.spaces[I] = static_cast<int>(geom.flags(I).size());
    for (Subset I = 0; I <= full; ++I)
        for (Subset J = 0; J <= full; ++J) {
            if (!subset_leq(I, J)) continue;
            const int fi = b.spaces[I], fj = b.spaces[J];
            RationalMatrix pull(fi, fj), push(fj, fi);
            for (int f = 0; f < fi; ++f) {
                int g = geom.project(I, f, J);
                pull(f, g) = 1;
                push(g, f) = 1;
            }
            b.u[{I, J}] = std::move(pull);
            b.v[{I, J}] = std::move(push);
        }
    return b;
}

}  // namespace mbs
