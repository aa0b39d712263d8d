#include "mbs/io.hpp"

#include <json.hpp>

#include "mbs/fq.hpp"

namespace mbs {

using Json = nlohmann::ordered_json;

namespace {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json subset_json(Subset I) {
    Json a = Json::array();
    for (int s : subset_members(I)) a.push_back(s);
    return a;
}

Json datum_json(const XiPoset& xi) {
    return Json{{"type", std::string(1, xi.datum().type_label)}, {"rank", xi.rank()}};
}

Json matrix_json(const RationalMatrix& a) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(a(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

Json failures_json(const std::vector<std::string>& f) {
    Json a = Json::array();
    for (const auto& s : f) a.push_back(s);
    return a;
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

// Typed accessors that report the JSON pointer of the offending node.
const Json& member(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw ParseError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path + "/" + key, "missing");
    return *it;
}

void only_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys) known = known || it.key() == k;
        if (!known) throw ParseError(path + "/" + it.key(), "unexpected key");
    }
}

long long integer(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
    return j.get<long long>();
}

const std::string& string_of(const Json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path, "expected a string");
    return j.get_ref<const std::string&>();
}

Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError("/", std::string("malformed JSON: ") + e.what());
    }
}

std::shared_ptr<const XiPoset> xi_of_datum(const Json& root) {
    const Json& d = member(root, "datum", "");
    only_keys(d, {"type", "rank"}, "/datum");
    const std::string& type = string_of(member(d, "type", "/datum"), "/datum/type");
    long long rank = integer(member(d, "rank", "/datum"), "/datum/rank");
    if (type.size() != 1) throw ParseError("/datum/type", "expected a single letter");
    if (rank < 1 || rank > 8) throw ParseError("/datum/rank", "unsupported rank");
    try {
        return make_xi(type[0], static_cast<int>(rank));
    } catch (const ConfigError& e) {
        throw ParseError("/datum", e.what());
    }
}

int element_of(const XiPoset& xi, const Json& j, const std::string& path) {
    int m = xi.find_label(string_of(j, path));
    if (m < 0) throw ParseError(path, "unknown Xi element " + j.get<std::string>());
    return m;
}

RationalMatrix matrix_of(const Json& j, std::size_t cols_if_empty, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array of rows");
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string rp = path + "/" + std::to_string(i);
        if (!j[i].is_array()) throw ParseError(rp, "expected a row array");
        if (i > 0 && j[i].size() != j[0].size()) throw ParseError(rp, "ragged row");
        std::vector<Rational> row;
        for (std::size_t k = 0; k < j[i].size(); ++k) {
            const std::string ep = rp + "/" + std::to_string(k);
            try {
                row.push_back(Rational::parse(string_of(j[i][k], ep)));
            } catch (const std::invalid_argument& e) {
                throw ParseError(ep, e.what());
            } catch (const std::out_of_range& e) {
                throw ParseError(ep, e.what());
            }
        }
        rows.push_back(std::move(row));
    }
    return RationalMatrix::from_rows(rows, rows.empty() ? cols_if_empty : 0);
}

}  // namespace

std::string emit_mbs(const MixedBruhatSheaf& e) {
    const XiPoset& xi = e.xi();
    Json root;
    root["datum"] = datum_json(xi);
    Json dims = Json::object();
    for (int m = 0; m < xi.size(); ++m) dims[xi.label(m)] = e.dim(m);
    root["dims"] = std::move(dims);
    Json dp = Json::array(), ds = Json::array();
    for (int m = 0; m < xi.size(); ++m) {
        for (const auto& c : xi.prime_covers(m))
            dp.push_back({{"from", xi.label(m)}, {"to", xi.label(c.target)}, {"matrix", matrix_json(e.dprime(m, c.s))}});
        for (const auto& c : xi.second_covers(m))
            ds.push_back({{"from", xi.label(m)}, {"to", xi.label(c.target)}, {"matrix", matrix_json(e.dsecond(m, c.s))}});
    }
    root["dprime"] = std::move(dp);
    root["dsecond"] = std::move(ds);
    // Matrices make these files large, so they are written without indentation.
    return root.dump() + "\n";
}

MixedBruhatSheaf parse_mbs(const std::string& text) {
    Json root = parse_text(text);
    if (!root.is_object()) throw ParseError("/", "expected an object");
    only_keys(root, {"datum", "dims", "dprime", "dsecond"}, "");
    auto xi_ptr = xi_of_datum(root);
    const XiPoset& xi = *xi_ptr;

    const Json& jd = member(root, "dims", "");
    if (!jd.is_object()) throw ParseError("/dims", "expected an object");
    std::vector<int> dims(xi.size(), -1);
    for (auto it = jd.begin(); it != jd.end(); ++it) {
        const std::string p = "/dims/" + it.key();
        int m = xi.find_label(it.key());
        if (m < 0) throw ParseError(p, "unknown Xi element");
        long long d = integer(*it, p);
        if (d < 0 || d > 1000000) throw ParseError(p, "dimension out of range");
        dims[m] = static_cast<int>(d);
    }
    for (int m = 0; m < xi.size(); ++m)
        if (dims[m] < 0) throw ParseError("/dims/" + xi.label(m), "missing");

    MixedBruhatSheaf e(xi_ptr, dims);
    for (const bool prime : {true, false}) {
        const std::string key = prime ? "dprime" : "dsecond";
        const Json& list = member(root, key, "");
        if (!list.is_array()) throw ParseError("/" + key, "expected an array");
        std::vector<std::vector<bool>> seen(xi.size(), std::vector<bool>(xi.rank(), false));
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string p = "/" + key + "/" + std::to_string(i);
            const Json& rel = list[i];
            if (!rel.is_object()) throw ParseError(p, "expected an object");
            only_keys(rel, {"from", "to", "matrix"}, p);
            int m = element_of(xi, member(rel, "from", p), p + "/from");
            int n = element_of(xi, member(rel, "to", p), p + "/to");
            const auto& covers = prime ? xi.prime_covers(m) : xi.second_covers(m);
            int s = -1;
            for (const auto& c : covers)
                if (c.target == n) s = c.s;
            if (s < 0) throw ParseError(p, "not a covering relation of this order");
            if (seen[m][s]) throw ParseError(p, "duplicate covering relation");
            seen[m][s] = true;
            // An empty matrix has no rows; its column count is the source dimension.
            std::size_t source = static_cast<std::size_t>(prime ? dims[m] : dims[n]);
            RationalMatrix a = matrix_of(member(rel, "matrix", p), source, p + "/matrix");
            if (prime)
                e.set_dprime(m, s, std::move(a));
            else
                e.set_dsecond(m, s, std::move(a));
        }
        for (int m = 0; m < xi.size(); ++m)
            for (const auto& c : prime ? xi.prime_covers(m) : xi.second_covers(m))
                if (!seen[m][c.s])
                    throw ParseError("/" + key, "missing relation " + xi.label(m) + " -> " + xi.label(c.target));
    }
    return e;
}

std::vector<XiRelation> xi_relations(const XiPoset& xi) {
    std::vector<XiRelation> out;
    const Subset full = xi.datum().full_set();
    for (int m = 0; m < xi.size(); ++m) {
        const auto& el = xi.element(m);
        for (const auto& c : xi.prime_covers(m))
            out.push_back({"prime", m, c.target, c.s, -1, xi.is_anodyne(m, c.target)});
        for (const auto& c : xi.second_covers(m))
            out.push_back({"second", m, c.target, c.s, -1, xi.is_anodyne(m, c.target)});
        for (int a : subset_members(full & ~el.I))
            for (int b : subset_members(full & ~el.J)) {
                int n = xi.contract(m, el.I | (Subset{1} << a), el.J | (Subset{1} << b));
                out.push_back({"mixed", m, n, a, b, xi.is_anodyne(m, n)});
            }
    }
    return out;
}

namespace {

Json xi_json(const XiPoset& xi) {
    Json root;
    root["datum"] = datum_json(xi);
    Json els = Json::array();
    for (int m = 0; m < xi.size(); ++m) {
        const auto& e = xi.element(m);
        Json roots = Json::array();
        for (int k = 0; k < 64; ++k)
            if ((e.flat.roots >> k) & 1u) roots.push_back(k);
        els.push_back({{"id", xi.label(m)},
                       {"I", subset_json(e.I)},
                       {"J", subset_json(e.J)},
                       {"pair", Json::array({e.C, e.D})},
                       {"orbit_size", e.orbit_size},
                       {"hor", subset_json(e.hor)},
                       {"ver", subset_json(e.ver)},
                       {"flat", {{"dim", e.flat.dim}, {"roots", std::move(roots)}}}});
    }
    root["elements"] = std::move(els);
    Json rels = Json::array();
    for (const auto& r : xi_relations(xi)) {
        Json j = {{"order", r.order}, {"from", xi.label(r.from)}, {"to", xi.label(r.to)}};
        if (r.root2 < 0)
            j["root"] = r.root;
        else
            j["roots"] = Json::array({r.root, r.root2});
        j["anodyne"] = r.anodyne;
        rels.push_back(std::move(j));
    }
    root["relations"] = std::move(rels);
    return root;
}

// First differing JSON pointer between two documents, or "" when equal.
std::string first_difference(const Json& a, const Json& b, const std::string& path) {
    if (a.is_number() && b.is_number()) return a == b ? "" : (path.empty() ? "/" : path);
    if (a.type() != b.type()) return path.empty() ? "/" : path;
    if (a.is_object()) {
        if (a.size() != b.size()) return path.empty() ? "/" : path;
        auto ia = a.begin();
        auto ib = b.begin();
        for (; ia != a.end(); ++ia, ++ib) {
            if (ia.key() != ib.key()) return path + "/" + ia.key();
            auto d = first_difference(*ia, *ib, path + "/" + ia.key());
            if (!d.empty()) return d;
        }
        return "";
    }
    if (a.is_array()) {
        for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
            auto d = first_difference(a[i], b[i], path + "/" + std::to_string(i));
            if (!d.empty()) return d;
        }
        if (a.size() != b.size()) return path + "/" + std::to_string(std::min(a.size(), b.size()));
        return "";
    }
    return a == b ? "" : (path.empty() ? "/" : path);
}

}  // namespace

std::string emit_xi(const XiPoset& xi) { return dump(xi_json(xi)); }

std::string roundtrip_xi(const std::string& text) {
    Json root = parse_text(text);
    if (!root.is_object()) throw ParseError("/", "expected an object");
    only_keys(root, {"datum", "elements", "relations"}, "");
    auto xi = xi_of_datum(root);
    Json fresh = xi_json(*xi);
    auto diff = first_difference(root, fresh, "");
    if (!diff.empty()) throw ParseError(diff, "does not match the enumeration of Xi");
    return dump(fresh);
}

FullCheck run_full_check(const MixedBruhatSheaf& e) {
    FullCheck c;
    c.mbs = check_mbs(e);
    if (!c.mbs.ok()) return c;
    c.support = support_check(e);
    c.cosupport = coperversity_check(e);
    c.constructibility = constructibility_check(e, *c.support);
    c.pass = c.support->ok() && c.cosupport->ok() && c.constructibility->ok();
    return c;
}

std::string check_report_json(const XiPoset& xi, const FullCheck& c) {
    Json root;
    root["datum"] = datum_json(xi);
    root["verdict"] = verdict(c.pass);
    Json mbs;
    mbs["configurations_checked"] = c.mbs.configurations_checked;
    auto list = [&](const std::vector<MbsFailure>& fs) {
        Json a = Json::array();
        for (const auto& f : fs) {
            Json cells = Json::array();
            for (int m : f.cells) cells.push_back(xi.label(m));
            a.push_back({{"cells", std::move(cells)}, {"detail", f.detail}});
        }
        return a;
    };
    mbs["shape"] = list(c.mbs.shape);
    mbs["MBS1"] = list(c.mbs.mbs1);
    mbs["MBS2"] = list(c.mbs.mbs2);
    mbs["MBS3"] = list(c.mbs.mbs3);
    root["axioms"] = std::move(mbs);
    auto perv = [&](const std::optional<PerversityReport>& r) -> Json {
        if (!r) return nullptr;
        Json cells = Json::array();
        for (const auto& cp : r->cells)
            cells.push_back({{"id", xi.label(cp.cell)},
                             {"flat_dim", cp.flat_dim},
                             {"lowest_degree", cp.lowest_degree},
                             {"terms", cp.term_dims},
                             {"cohomology", cp.cohomology}});
        return {{"verdict", verdict(r->ok())}, {"failures", failures_json(r->failures)}, {"stalks", std::move(cells)}};
    };
    root["support"] = perv(c.support);
    root["cosupport"] = perv(c.cosupport);
    if (c.constructibility)
        root["constructibility"] = {{"verdict", verdict(c.constructibility->ok())},
                                    {"classes", c.constructibility->classes},
                                    {"failures", failures_json(c.constructibility->failures)}};
    else
        root["constructibility"] = nullptr;
    return dump(root);
}

std::string poly_report_json(const XiPoset& xi, const PolyReport& r) {
    Json root;
    root["datum"] = datum_json(xi);
    root["verdict"] = verdict(r.ok());
    Json polys = Json::array();
    for (std::size_t m = 0; m < r.polys.size(); ++m) {
        const auto& p = r.polys[m];
        Json coeffs = Json::array();
        for (int k = 0; k <= p.degree(); ++k) coeffs.push_back(p.coeff(k));
        polys.push_back({{"id", xi.label(static_cast<int>(m))},
                         {"poly", p.to_string()},
                         {"coeffs", std::move(coeffs)},
                         {"orbit_dim", dim_orbit(xi, static_cast<int>(m))},
                         {"compact", is_compact(xi, static_cast<int>(m))}});
    }
    root["polynomials"] = std::move(polys);
    root["anodyne_pairs"] = r.anodyne_pairs;
    root["failures"] = failures_json(r.failures);
    return dump(root);
}

std::string hecke_report_json(int n, int q, const HeckeReport& r) {
    Json root;
    root["n"] = n;
    root["q"] = q;
    root["verdict"] = verdict(r.ok());
    root["generators"] = r.generators;
    root["failures"] = failures_json(r.failures);
    return dump(root);
}

std::string orbits_report_json(const OrbitTable& table, const PointCheckReport& p, const CountReport& c) {
    const XiPoset& xi = table.xi();
    Json root;
    root["n"] = table.geometry().n();
    root["q"] = table.geometry().q();
    root["verdict"] = verdict(p.ok() && c.ok());
    Json counts = Json::array();
    for (int m = 0; m < xi.size(); ++m)
        counts.push_back({{"id", xi.label(m)},
                          {"contingency", contingency_of(xi, m).to_string()},
                          {"points", c.counts[m]},
                          {"poly", orbit_poly(xi, m).to_string()}});
    root["orbits"] = std::move(counts);
    root["fiber_product_configs"] = p.fiber_product_configs;
    root["anodyne_pairs"] = p.anodyne_pairs;
    Json f = failures_json(p.failures);
    for (const auto& s : c.failures) f.push_back(s);
    root["failures"] = std::move(f);
    return dump(root);
}

}  // namespace mbs
