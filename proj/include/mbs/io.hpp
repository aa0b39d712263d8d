#pragma once

// Canonical JSON formats.
//
// MBS file:
//   {"datum": {"type": "A", "rank": 2},
//    "dims": {"<xi-id>": d, ...},
//    "dprime": [{"from": "<xi-id>", "to": "<xi-id>", "matrix": [["p/q", ...], ...]}, ...],
//    "dsecond": [...]}
// where <xi-id> renders the canonical pair as "I:rep|J:rep" (rep = index of the
// minimal coset representative of the face) and every rational is "num/den"
// with den > 0, integers included ("1/1"). Both relation lists use "from" for
// the larger element m and "to" for its contraction n, so a dprime matrix is
// dims(to) x dims(from) and a dsecond matrix is dims(from) x dims(to).
// Elements and relations appear in canonical order, so emitting the same sheaf
// twice gives identical bytes.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbs/cousin.hpp"
#include "mbs/orbit_poly.hpp"
#include "mbs/sheaf.hpp"

namespace mbs {

struct HeckeReport;
struct PointCheckReport;
struct CountReport;
class OrbitTable;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

std::string emit_mbs(const MixedBruhatSheaf& e);
MixedBruhatSheaf parse_mbs(const std::string& text);

// Covering relations of the Xi dump: first order, second order, and "mixed"
// relations that contract each coordinate by exactly one simple root.
struct XiRelation {
    std::string order;  // "prime", "second", "mixed"
    int from = -1, to = -1;
    int root = -1, root2 = -1;  // root2 is used by mixed relations only
    bool anodyne = false;
};
std::vector<XiRelation> xi_relations(const XiPoset& xi);

std::string emit_xi(const XiPoset& xi);
// Parses a dump, checks it against a fresh enumeration and emits it again.
std::string roundtrip_xi(const std::string& text);

struct FullCheck {
    MbsReport mbs;
    std::optional<PerversityReport> support, cosupport;
    std::optional<ConstructibilityReport> constructibility;
    bool pass = false;
};
// Axioms first; the Cousin checks run only on a valid sheaf.
FullCheck run_full_check(const MixedBruhatSheaf& e);

std::string check_report_json(const XiPoset& xi, const FullCheck& c);
std::string poly_report_json(const XiPoset& xi, const PolyReport& r);
std::string hecke_report_json(int n, int q, const HeckeReport& r);
std::string orbits_report_json(const OrbitTable& table, const PointCheckReport& p, const CountReport& c);

}  // namespace mbs
