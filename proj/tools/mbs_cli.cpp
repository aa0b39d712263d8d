// mbs: command-line front end.
//
//   mbs xi --type A --rank 2 [-o FILE]
//   mbs example e1 --type G --rank 2 [-o FILE]
//   mbs example e1v:sign --type A --rank 1      (also "e1v sign")
//   mbs example eq:2:3                           (also "eq 2 3", "eq-binv 3 2")
//   mbs check FILE [--json]
//   mbs canon FILE [-o FILE]                     parse and re-emit an MBS or Xi file
//   mbs poly --type B --rank 2 [--json]
//   mbs hecke 3 2 [--json]
//   mbs orbits 2 2 [--json] [--allow-n4]
//
// Exit status: 0 pass, 1 verification failure, 2 usage or parse error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mbs/f1.hpp"
#include "mbs/fq.hpp"
#include "mbs/io.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string type = "A";
    int rank = 1;
    std::string output;
    bool json = false;
    bool allow_n4 = false;
    std::vector<std::string> args;
    std::string file;
};

std::shared_ptr<const mbs::XiPoset> datum_xi(const Options& o) {
    if (o.type.size() != 1) throw UsageError("--type expects a single letter");
    return mbs::make_xi(o.type[0], o.rank);
}

void write_out(const Options& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw UsageError("cannot open " + o.output + " for writing");
    f << text;
    if (!f) throw UsageError("write to " + o.output + " failed");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

int to_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::logic_error&) {
        throw UsageError(what + " must be an integer, got '" + s + "'");
    }
}

// "eq:2:3", "eq 2 3" and "e1v:sign" all split into the same token list.
std::vector<std::string> example_tokens(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (const auto& a : args) {
        std::size_t start = 0;
        while (true) {
            auto colon = a.find(':', start);
            // Specht names such as specht(2,1) contain no colon, so splitting is safe.
            out.push_back(a.substr(start, colon == std::string::npos ? std::string::npos : colon - start));
            if (colon == std::string::npos) break;
            start = colon + 1;
        }
    }
    return out;
}

int cmd_xi(const Options& o) {
    auto xi = datum_xi(o);
    std::string text = mbs::emit_xi(*xi);
    write_out(o, text);
    if (!o.output.empty()) {
        auto rels = mbs::xi_relations(*xi);
        std::size_t anodyne = 0;
        for (const auto& r : rels) anodyne += r.anodyne ? 1 : 0;
        std::cout << "Xi(" << xi->datum().name() << "): " << xi->size() << " elements, " << rels.size()
                  << " covering relations (" << anodyne << " anodyne)\n";
    }
    return kPass;
}

int cmd_example(const Options& o) {
    auto t = example_tokens(o.args);
    if (t.empty()) throw UsageError("example needs a name: e1, e1v:<rep>, eq:<n>:<q>, eq-binv:<n>:<q>");
    const std::string& kind = t[0];
    mbs::MixedBruhatSheaf e;
    if (kind == "e1") {
        if (t.size() != 1) throw UsageError("e1 takes no parameters");
        e = mbs::build_e1(datum_xi(o));
    } else if (kind == "e1v") {
        if (t.size() != 2) throw UsageError("e1v needs one representation name");
        auto xi = datum_xi(o);
        auto rep = mbs::rep_catalog(xi->faces().group_ptr(), t[1]);
        e = mbs::build_e1v(xi, rep).sheaf;
    } else if (kind == "eq" || kind == "eq-binv") {
        if (t.size() != 3) throw UsageError(kind + " needs n and q");
        auto fq = mbs::build_eq(to_int(t[1], "n"), to_int(t[2], "q"), mbs::PointOrder::Canonical, o.allow_n4);
        e = kind == "eq" ? fq.sheaf : mbs::b_invariant_sub(fq);
    } else {
        throw UsageError("unknown example '" + kind + "'");
    }
    write_out(o, mbs::emit_mbs(e));
    return kPass;
}

int cmd_check(const Options& o) {
    auto e = mbs::parse_mbs(read_file(o.file));
    auto c = mbs::run_full_check(e);
    std::cout << (c.pass ? "PASS" : "FAIL") << " " << e.xi().datum().name() << ": " << c.mbs.failure_count()
              << " axiom failures";
    if (c.support)
        std::cout << ", " << c.support->failures.size() + c.cosupport->failures.size() +
                                 c.constructibility->failures.size()
                  << " Cousin failures";
    std::cout << "\n";
    if (!c.pass && !o.json) {
        for (const auto* list : {&c.mbs.shape, &c.mbs.mbs1, &c.mbs.mbs2, &c.mbs.mbs3})
            for (const auto& f : *list) std::cout << "  " << f.axiom << ": " << f.detail << "\n";
    }
    if (o.json) std::cout << mbs::check_report_json(e.xi(), c);
    return c.pass ? kPass : kFail;
}

int cmd_canon(const Options& o) {
    std::string text = read_file(o.file);
    // An Xi dump carries "elements"; an MBS file carries "dims".
    std::string out = text.find("\"elements\"") != std::string::npos ? mbs::roundtrip_xi(text)
                                                                      : mbs::emit_mbs(mbs::parse_mbs(text));
    write_out(o, out);
    return kPass;
}

int cmd_poly(const Options& o) {
    auto xi = datum_xi(o);
    auto r = mbs::property_suite(*xi);
    std::cout << (r.ok() ? "PASS" : "FAIL") << " " << xi->datum().name() << ": " << r.polys.size() << " orbits, "
              << r.anodyne_pairs << " anodyne pairs\n";
    if (o.json)
        std::cout << mbs::poly_report_json(*xi, r);
    else {
        for (int m = 0; m < xi->size(); ++m) std::cout << "  " << xi->label(m) << "  " << r.polys[m].to_string() << "\n";
        for (const auto& f : r.failures) std::cout << "  failure: " << f << "\n";
    }
    return r.ok() ? kPass : kFail;
}

std::pair<int, int> n_q(const Options& o) {
    if (o.args.size() != 2) throw UsageError("expected two arguments: n q");
    return {to_int(o.args[0], "n"), to_int(o.args[1], "q")};
}

int cmd_hecke(const Options& o) {
    auto [n, q] = n_q(o);
    if (n > 3 && !o.allow_n4) throw UsageError("n > 3 needs --allow-n4");
    mbs::FlagGeometry geom(n, q);
    auto r = mbs::check_hecke(geom);
    std::cout << (r.ok() ? "PASS" : "FAIL") << " hecke n=" << n << " q=" << q << ": " << r.generators
              << " generators\n";
    if (o.json) std::cout << mbs::hecke_report_json(n, q, r);
    for (const auto& f : r.failures)
        if (!o.json) std::cout << "  failure: " << f << "\n";
    return r.ok() ? kPass : kFail;
}

int cmd_orbits(const Options& o) {
    auto [n, q] = n_q(o);
    if (n < 2) throw UsageError("n must be at least 2");
    if (n > 3 && !o.allow_n4) throw UsageError("n > 3 needs --allow-n4");
    auto geom = std::make_shared<const mbs::FlagGeometry>(n, q);
    auto table = mbs::OrbitTable(geom, mbs::make_xi('A', n - 1));
    auto p = mbs::orbit_point_checks(table);
    auto c = mbs::validate_counts(table);
    bool ok = p.ok() && c.ok();
    std::cout << (ok ? "PASS" : "FAIL") << " orbits n=" << n << " q=" << q << ": " << p.fiber_product_configs
              << " fiber-product configurations, " << p.anodyne_pairs << " anodyne pairs\n";
    if (o.json)
        std::cout << mbs::orbits_report_json(table, p, c);
    else {
        for (const auto& f : p.failures) std::cout << "  failure: " << f << "\n";
        for (const auto& f : c.failures) std::cout << "  failure: " << f << "\n";
    }
    return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mixed Bruhat sheaf toolkit"};
    app.require_subcommand(1);
    Options o;

    auto add_datum = [&](CLI::App* sub) {
        sub->add_option("--type", o.type, "Coxeter type letter (A, B, C, G)");
        sub->add_option("--rank", o.rank, "rank");
    };
    auto* xi = app.add_subcommand("xi", "dump the two-sided complex as JSON");
    add_datum(xi);
    xi->add_option("-o,--output", o.output, "output file");

    auto* ex = app.add_subcommand("example", "emit a built-in sheaf as JSON");
    add_datum(ex);
    ex->add_option("name", o.args, "e1 | e1v:<rep> | eq:<n>:<q> | eq-binv:<n>:<q>")->required();
    ex->add_option("-o,--output", o.output, "output file");
    ex->add_flag("--allow-n4", o.allow_n4, "allow n = 4 for the F_q examples");

    auto* check = app.add_subcommand("check", "verify the axioms and the Cousin conditions");
    check->add_option("file", o.file, "MBS JSON file")->required();
    check->add_flag("--json", o.json, "print the JSON report");

    auto* canon = app.add_subcommand("canon", "parse and re-emit an MBS or Xi file");
    canon->add_option("file", o.file, "input file")->required();
    canon->add_option("-o,--output", o.output, "output file");

    auto* poly = app.add_subcommand("poly", "orbit polynomials and their properties");
    add_datum(poly);
    poly->add_flag("--json", o.json, "print the JSON report");

    auto* hecke = app.add_subcommand("hecke", "Hecke relations on functions on full flags");
    hecke->add_option("n_q", o.args, "n q")->required()->expected(2);
    hecke->add_flag("--json", o.json, "print the JSON report");
    hecke->add_flag("--allow-n4", o.allow_n4, "allow n = 4");

    auto* orbits = app.add_subcommand("orbits", "point-level checks of the Bruhat orbits");
    orbits->add_option("n_q", o.args, "n q")->required()->expected(2);
    orbits->add_flag("--json", o.json, "print the JSON report");
    orbits->add_flag("--allow-n4", o.allow_n4, "allow n = 4");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (xi->parsed()) return cmd_xi(o);
        if (ex->parsed()) return cmd_example(o);
        if (check->parsed()) return cmd_check(o);
        if (canon->parsed()) return cmd_canon(o);
        if (poly->parsed()) return cmd_poly(o);
        if (hecke->parsed()) return cmd_hecke(o);
        if (orbits->parsed()) return cmd_orbits(o);
    } catch (const mbs::ParseError& e) {
        std::cerr << "parse error at " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const mbs::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kUsage;
    } catch (const mbs::ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
