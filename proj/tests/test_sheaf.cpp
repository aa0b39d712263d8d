#include <doctest.h>

#include "mbs/f1.hpp"
#include "mbs/linalg.hpp"
#include "mbs/sheaf.hpp"

using namespace mbs;

namespace {

// Pushforward of functions along the face-contraction map, computed point by
// point from the faces of each orbit.
RationalMatrix pointwise_pushforward(const XiPoset& xi, int m, int n) {
    const auto& fc = xi.faces();
    const auto& a = xi.element(m);
    const auto& b = xi.element(n);
    RationalMatrix out(b.orbit_size, a.orbit_size);
    for (int p = 0; p < a.orbit_size; ++p) {
        auto [C, D] = a.points[p];
        int C2 = fc.contract(C, b.I), D2 = fc.contract(D, b.J);
        out(xi.point_index(C2, D2), p) += 1;
    }
    return out;
}

struct A1Cells {
    int cc, cminus, c0, zc, zz;  // (C+,C+), (C+,C-), (C+,0), (0,C+), (0,0)
};

A1Cells a1_cells(const XiPoset& xi) {
    const auto& fc = xi.faces();
    const int c = fc.base_face(0), z = fc.base_face(1);
    const int cm = fc.face_of(xi.group().simple(0), 0);
    return {xi.find(c, c), xi.find(c, cm), xi.find(c, z), xi.find(z, c), xi.find(z, z)};
}

RationalMatrix square(const RationalMatrix& m) { return m * m; }

}  // namespace

TEST_CASE("E_1 satisfies the axioms for every supported type of rank <= 3") {
    for (auto [type, rank] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'B', 2}, {'G', 2}, {'A', 3}}) {
        CAPTURE(type);
        CAPTURE(rank);
        auto e = build_e1(make_xi(type, rank));
        auto rep = check_mbs(e);
        CHECK(rep.ok());
        CHECK(rep.configurations_checked > 0);
        CHECK(check_mbs(dual(e)).ok());
    }
}

TEST_CASE("composites of E_1 are pointwise pushforwards and pullbacks") {
    auto xi = make_xi('A', 2);
    auto e = build_e1(xi);
    int long_chains = 0;
    for (int m = 0; m < xi->size(); ++m)
        for (int n = 0; n < xi->size(); ++n) {
            if (xi->geq_prime(m, n)) {
                CHECK(e.compose_prime(m, n) == pointwise_pushforward(*xi, m, n));
                if (subset_size(xi->element(n).I & ~xi->element(m).I) == 2) ++long_chains;
            }
            if (xi->geq_second(m, n)) CHECK(e.compose_second(m, n) == pointwise_pushforward(*xi, m, n).transpose());
        }
    CHECK(long_chains > 0);
    CHECK(e.compose_prime(0, 0).is_identity());
    CHECK_THROWS_AS(e.compose_prime(xi->size() - 1, 0), OrderError);
}

TEST_CASE("zeroing one anodyne matrix gives exactly one MBS3 failure") {
    auto xi = make_xi('A', 1);
    auto c = a1_cells(*xi);
    auto e = build_e1(xi);
    REQUIRE(xi->is_anodyne(c.cc, c.zc));
    e.set_dprime(c.cc, 0, RationalMatrix::zero(2, 2));
    auto rep = check_mbs(e);
    CHECK(rep.mbs3.size() == 1);
    CHECK_FALSE(rep.ok());
}

TEST_CASE("A1: breaking uv = ab + cd gives exactly one MBS2 failure") {
    auto xi = make_xi('A', 1);
    auto c = a1_cells(*xi);
    auto e = build_e1(xi);
    REQUIRE(check_mbs(e).ok());
    // v : E(C+,0) -> E(0,0) is the only prime cover out of (C+,0).
    REQUIRE(!xi->is_anodyne(c.c0, c.zz));
    e.set_dprime(c.c0, 0, e.dprime(c.c0, 0) * Rational(2));
    auto rep = check_mbs(e);
    CHECK(rep.mbs2.size() == 1);
    CHECK(rep.mbs1.empty());
    CHECK(rep.mbs3.empty());
    CHECK(rep.shape.empty());
}

TEST_CASE("shape mismatches are reported, not thrown") {
    auto xi = make_xi('A', 1);
    auto c = a1_cells(*xi);
    auto e = build_e1(xi);
    e.set_dsecond(c.cc, 0, RationalMatrix::zero(1, 3));
    auto rep = check_mbs(e);
    CHECK(rep.shape.size() == 1);
}

TEST_CASE("dual is an involution and exchanges dimensions along tau") {
    auto xi = make_xi('B', 2);
    auto e = build_e1v(xi, rep_catalog(xi->faces().group_ptr(), "reflection")).sheaf;
    auto d = dual(e);
    for (int m = 0; m < xi->size(); ++m) CHECK(d.dim(m) == e.dim(xi->tau(m)));
    auto dd = dual(d);
    CHECK(dd.dims() == e.dims());
    for (int m = 0; m < xi->size(); ++m) {
        for (const auto& cv : xi->prime_covers(m)) CHECK(dd.dprime(m, cv.s) == e.dprime(m, cv.s));
        for (const auto& cv : xi->second_covers(m)) CHECK(dd.dsecond(m, cv.s) == e.dsecond(m, cv.s));
    }
}

TEST_CASE("tensoring with an identity and restricting to a subsheaf") {
    auto xi = make_xi('A', 2);
    auto e = build_e1(xi);
    auto t = tensor_identity(e, 2);
    CHECK(check_mbs(t).ok());
    for (int m = 0; m < xi->size(); ++m) CHECK(t.dim(m) == 2 * e.dim(m));
    // Constant functions form a subsheaf of E_1 isomorphic to the constant sheaf.
    std::map<int, RationalMatrix> seeds;
    const int top = xi->size() - 1;
    seeds[top] = RationalMatrix::identity(1);
    auto sub = generated_sub(e, seeds);
    CHECK(check_mbs(sub.sheaf).ok());
    CHECK_FALSE(is_simple(e));
    std::vector<RationalMatrix> bad(xi->size());
    for (int m = 0; m < xi->size(); ++m) bad[m] = RationalMatrix::zero(e.dim(m), 0);
    bad[0] = RationalMatrix::identity(e.dim(0)).column(0);
    CHECK_THROWS_AS(restrict_to(e, bad), AxiomError);
}

TEST_CASE("bicube of E_1 on A2 is transitive") {
    auto e = build_e1(make_xi('A', 2));
    auto b = bicube(e);
    CHECK(b.spaces.at(0) == 6);
    CHECK(b.spaces.at(1) == 3);
    CHECK(b.spaces.at(2) == 3);
    CHECK(b.spaces.at(3) == 1);
    CHECK(bicube_transitivity_failures(b).empty());
    for (const auto& [key, v] : b.v)
        if (key.first == key.second) CHECK(v.is_identity());
}

TEST_CASE("A1 reduction for E_1 and its sign part") {
    auto xi = make_xi('A', 1);
    auto r = phi_psi(build_e1(xi));
    CHECK(r.phi_dim == 1);
    CHECK(r.psi_dim == 2);
    CHECK(r.invertible);
    CHECK(r.T == RationalMatrix::from_rows({{0, -1}, {-1, 0}}));
    auto s = phi_psi(build_e1v(xi, rep_catalog(xi->faces().group_ptr(), "sign")).sheaf);
    CHECK(s.phi_dim == 0);
    CHECK(s.invertible);
    CHECK_THROWS(phi_psi(build_e1(make_xi('A', 2))));
}

TEST_CASE("transport is invariant under path moves") {
    auto xi = make_xi('A', 2);
    auto e = build_e1(xi);
    int tested = 0;
    for (int a = 0; a < xi->size(); ++a)
        for (int c = 0; c < xi->size(); ++c) {
            if (!xi->geq_prime(a, c) || !xi->is_anodyne(a, c)) continue;
            const Subset added = xi->element(c).I & ~xi->element(a).I;
            if (subset_size(added) != 2) continue;
            auto direct = transport(e, {{c, a}});
            for (int s : subset_members(added)) {
                int b = xi->prime_contract(a, xi->element(a).I | (Subset{1} << s));
                CHECK(transport(e, {{c, b, a}}) == direct);
                CHECK(transport(e, {{c, b, c, a}}) == direct);
                CHECK(transport(e, {{c, a, b, a}}) == direct);
            }
            CHECK(transport(e, {{c, a, c}}).is_identity());
            ++tested;
        }
    CHECK(tested > 0);
}

TEST_CASE("non-anodyne steps are rejected by transport") {
    auto xi = make_xi('A', 1);
    auto c = a1_cells(*xi);
    auto e = build_e1(xi);
    CHECK_THROWS_AS(transport(e, {{c.c0, c.zz, c.c0}}), PathError);
    CHECK_THROWS_AS(transport(e, {{c.zz, c.zc}}), PathError);
    CHECK_THROWS_AS(transport(e, {{c.cc, c.cminus}}), PathError);
    CHECK_THROWS_AS(monodromy(e, {{c.cc, c.zc}}), PathError);
}

TEST_CASE("A1 monodromy of E_1 is an involution, not the identity") {
    auto xi = make_xi('A', 1);
    auto e = build_e1(xi);
    auto loop = generator_loop(*xi, 0);
    CHECK(loop.cells.front() == loop.cells.back());
    auto M = monodromy(e, loop);
    CHECK_FALSE(M.is_identity());
    CHECK(square(M).is_identity());
    auto M2 = monodromy(e, chamber_loop(*xi, 0));
    CHECK(square(M2).is_identity());
}

TEST_CASE("generator loops close in higher rank") {
    for (auto [type, rank] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 2}}) {
        auto xi = make_xi(type, rank);
        auto e = build_e1(xi);
        for (int s = 0; s < rank; ++s) {
            auto M = monodromy(e, generator_loop(*xi, s));
            CHECK(M.rows() == M.cols());
            CHECK(inverse(M).has_value());
        }
    }
}
