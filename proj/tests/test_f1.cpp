#include <doctest.h>

#include "mbs/f1.hpp"
#include "mbs/linalg.hpp"

using namespace mbs;

namespace {

RationalMatrix power(const RationalMatrix& a, int k) {
    auto r = RationalMatrix::identity(a.rows());
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

Rational trace(const RationalMatrix& a) {
    Rational t;
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

// Burnside: dim (Fun(m) (x) V)^W = (1/|W|) sum_w #fix_w(m) chi_V(w), where the
// fixed points are found by acting on the faces of each point of the orbit.
Rational burnside_dim(const XiPoset& xi, int m, const WRepresentation& v) {
    const auto& fc = xi.faces();
    const auto& g = xi.group();
    Rational sum;
    for (int w = 0; w < g.size(); ++w) {
        int fixed = 0;
        for (auto [C, D] : xi.element(m).points) fixed += (fc.act(w, C) == C && fc.act(w, D) == D) ? 1 : 0;
        sum += Rational(fixed) * trace(v.matrix(w));
    }
    return sum / Rational(g.size());
}

// Hook length formula.
int hook_dim(const std::vector<int>& shape) {
    int n = 0;
    for (int p : shape) n += p;
    long num = 1;
    for (int k = 2; k <= n; ++k) num *= k;
    long hooks = 1;
    for (std::size_t i = 0; i < shape.size(); ++i)
        for (int j = 0; j < shape[i]; ++j) {
            int below = 0;
            for (std::size_t k = i + 1; k < shape.size(); ++k) below += shape[k] > j ? 1 : 0;
            hooks *= shape[i] - j + below;
        }
    return static_cast<int>(num / hooks);
}

}  // namespace

TEST_CASE("catalog representations satisfy the Coxeter relations") {
    for (auto [type, rank] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 2}, {'G', 2}, {'A', 3}, {'C', 3}}) {
        auto xi = make_xi(type, rank);
        auto g = xi->faces().group_ptr();
        for (const auto& name : catalog_names(*g)) {
            CAPTURE(name);
            auto v = rep_catalog(g, name);
            for (int s = 0; s < rank; ++s)
                for (int t = 0; t < rank; ++t) {
                    auto st = v.generator(s) * v.generator(t);
                    CHECK(power(st, g->coxeter_m(s, t)).is_identity());
                }
            for (int a = 0; a < g->size(); a += 3)
                for (int b = 0; b < g->size(); b += 5) CHECK(v.matrix(g->mul(a, b)) == v.matrix(a) * v.matrix(b));
        }
    }
}

TEST_CASE("Specht modules have hook-length dimension and are irreducible") {
    auto g = make_xi('A', 3)->faces().group_ptr();
    int sum_squares = 0;
    for (const auto& shape : std::vector<std::vector<int>>{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}}) {
        std::string name = "specht(";
        for (std::size_t i = 0; i < shape.size(); ++i) name += (i ? "," : "") + std::to_string(shape[i]);
        name += ")";
        CAPTURE(name);
        auto v = rep_catalog(g, name);
        CHECK(v.dim() == hook_dim(shape));
        sum_squares += v.dim() * v.dim();
        Rational norm;
        for (int w = 0; w < g->size(); ++w) norm += v.character(w) * v.character(w);
        CHECK(norm == Rational(g->size()));
    }
    CHECK(sum_squares == 24);
}

TEST_CASE("named representations") {
    auto g = make_xi('B', 2)->faces().group_ptr();
    CHECK(rep_catalog(g, "reflection").dim() == 2);
    CHECK(rep_catalog(g, "reflection⊗sign").matrix(1) == rep_catalog(g, "reflection_sign").matrix(1));
    auto sl = rep_catalog(g, "sign_long"), ss = rep_catalog(g, "sign_short");
    CHECK(sl.dim() == 1);
    CHECK(sl.character(g->simple(0)) * ss.character(g->simple(0)) == Rational(-1));
    CHECK_THROWS_AS(rep_catalog(g, "specht(2,1)"), ConfigError);
    CHECK_THROWS_AS(rep_catalog(g, "nonsense"), ConfigError);
    CHECK_THROWS_AS(rep_catalog(make_xi('A', 2)->faces().group_ptr(), "specht(2,2)"), ConfigError);
}

TEST_CASE("E_1^V dimensions match Burnside counts") {
    for (auto [type, rank] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'B', 2}, {'G', 2}}) {
        auto xi = make_xi(type, rank);
        auto g = xi->faces().group_ptr();
        for (const auto& name : catalog_names(*g)) {
            CAPTURE(type);
            CAPTURE(name);
            auto v = rep_catalog(g, name);
            auto e = build_e1v(xi, v);
            for (int m = 0; m < xi->size(); ++m) {
                CHECK(Rational(e.sheaf.dim(m)) == burnside_dim(*xi, m, v));
                CHECK(e.sheaf.dim(m) == invariant_dim_by_character(*xi, m, v));
            }
            CHECK(check_mbs(e.sheaf).ok());
        }
    }
}

TEST_CASE("E_1 splits into isotypic parts") {
    auto xi = make_xi('A', 2);
    auto g = xi->faces().group_ptr();
    std::vector<int> total(xi->size(), 0);
    for (const auto& name : {"trivial", "sign", "reflection"}) {
        auto v = rep_catalog(g, name);
        auto e = build_e1v(xi, v).sheaf;
        for (int m = 0; m < xi->size(); ++m) total[m] += v.dim() * e.dim(m);
    }
    for (int m = 0; m < xi->size(); ++m) CHECK(total[m] == xi->element(m).orbit_size);
}

TEST_CASE("E_1^sign on A1") {
    auto xi = make_xi('A', 1);
    auto e = build_e1v(xi, rep_catalog(xi->faces().group_ptr(), "sign")).sheaf;
    const int origin = xi->find(xi->faces().base_face(1), xi->faces().base_face(1));
    for (int m = 0; m < xi->size(); ++m) CHECK(e.dim(m) == (m == origin ? 0 : 1));
}

TEST_CASE("orbit action is a permutation representation") {
    auto xi = make_xi('A', 2);
    const auto& g = xi->group();
    for (int m = 0; m < xi->size(); ++m)
        for (int a = 0; a < g.size(); ++a)
            for (int b = 0; b < g.size(); ++b)
                CHECK(orbit_action(*xi, m, g.mul(a, b)) == orbit_action(*xi, m, a) * orbit_action(*xi, m, b));
}
