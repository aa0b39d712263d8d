#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>

#include "mbs/f1.hpp"
#include "mbs/fq.hpp"
#include "mbs/io.hpp"

using namespace mbs;

namespace {

std::string parse_error_path(const std::string& text) {
    try {
        parse_mbs(text);
    } catch (const ParseError& e) {
        return e.path();
    }
    return "<no error>";
}

std::string a1_text() { return emit_mbs(build_e1(make_xi('A', 1))); }

int run_cli(const std::string& args) {
    std::string cmd = std::string(MBS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("MBS files round-trip byte for byte") {
    for (auto [type, rank] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'G', 2}}) {
        auto xi = make_xi(type, rank);
        auto e = build_e1v(xi, rep_catalog(xi->faces().group_ptr(), "reflection")).sheaf;
        auto text = emit_mbs(e);
        CHECK(emit_mbs(parse_mbs(text)) == text);
        CHECK(emit_mbs(e) == text);
    }
    auto eq = build_eq(2, 3).sheaf;
    auto text = emit_mbs(eq);
    auto back = parse_mbs(text);
    CHECK(back.dims() == eq.dims());
    CHECK(emit_mbs(back) == text);
}

TEST_CASE("empty matrices keep their column count") {
    auto xi = make_xi('A', 1);
    auto e = build_e1v(xi, rep_catalog(xi->faces().group_ptr(), "sign")).sheaf;
    auto back = parse_mbs(emit_mbs(e));
    CHECK(check_mbs(back).ok());
    for (int m = 0; m < xi->size(); ++m)
        for (const auto& c : xi->prime_covers(m)) {
            CHECK(back.dprime(m, c.s).rows() == static_cast<std::size_t>(e.dim(c.target)));
            CHECK(back.dprime(m, c.s).cols() == static_cast<std::size_t>(e.dim(m)));
        }
}

TEST_CASE("parse errors name the offending path") {
    using Json = nlohmann::ordered_json;
    const Json base = Json::parse(a1_text());

    CHECK(parse_error_path("{") == "/");
    CHECK(parse_error_path("[]") == "/");

    Json j = base;
    j["datum"]["rank"] = "one";
    CHECK(parse_error_path(j.dump()) == "/datum/rank");

    j = base;
    j["datum"]["type"] = "Z";
    CHECK(parse_error_path(j.dump()) == "/datum");

    j = base;
    j["dims"].erase(j["dims"].begin().key());
    CHECK(parse_error_path(j.dump()).rfind("/dims/", 0) == 0);

    j = base;
    j["dprime"][0]["matrix"][0][0] = "1/0";
    CHECK(parse_error_path(j.dump()) == "/dprime/0/matrix/0/0");

    j = base;
    j["dprime"][0]["matrix"][0][0] = 1;
    CHECK(parse_error_path(j.dump()) == "/dprime/0/matrix/0/0");

    j = base;
    j["dprime"][0]["matrix"] = Json::array({Json::array({"1/1", "0/1"}), Json::array({"1/1"})});
    CHECK(parse_error_path(j.dump()) == "/dprime/0/matrix/1");

    j = base;
    j["dsecond"][1]["to"] = "nowhere";
    CHECK(parse_error_path(j.dump()) == "/dsecond/1/to");

    j = base;
    j["dsecond"].push_back(j["dsecond"][0]);
    CHECK(parse_error_path(j.dump()) == "/dsecond/" + std::to_string(j["dsecond"].size() - 1));

    j = base;
    j["dprime"].erase(0);
    CHECK(parse_error_path(j.dump()) == "/dprime");

    j = base;
    j["extra"] = 1;
    CHECK(parse_error_path(j.dump()) == "/extra");

    j = base;
    std::swap(j["dprime"][0]["from"], j["dprime"][0]["to"]);
    CHECK(parse_error_path(j.dump()) == "/dprime/0");
}

TEST_CASE("shape mismatches parse and are reported by the checker") {
    using Json = nlohmann::ordered_json;
    Json j = Json::parse(a1_text());
    j["dprime"][0]["matrix"] = Json::array({Json::array({"1/1", "0/1", "0/1"})});
    auto e = parse_mbs(j.dump());
    auto rep = check_mbs(e);
    CHECK(rep.shape.size() == 1);
}

TEST_CASE("a corrupted anodyne matrix yields one MBS3 entry") {
    using Json = nlohmann::ordered_json;
    auto xi = make_xi('B', 2);
    Json j = Json::parse(emit_mbs(build_e1(xi)));
    bool done = false;
    for (auto& rel : j["dprime"]) {
        int m = xi->find_label(rel["from"]), n = xi->find_label(rel["to"]);
        if (done || !xi->is_anodyne(m, n)) continue;
        for (auto& row : rel["matrix"])
            for (auto& x : row) x = "0/1";
        done = true;
    }
    REQUIRE(done);
    auto c = run_full_check(parse_mbs(j.dump()));
    CHECK_FALSE(c.pass);
    CHECK(c.mbs.mbs3.size() == 1);
}

TEST_CASE("Xi dump: A1 relations and round trip") {
    auto xi = make_xi('A', 1);
    auto rels = xi_relations(*xi);
    CHECK(rels.size() == 8);
    int anodyne = 0, mixed = 0;
    for (const auto& r : rels) {
        anodyne += r.anodyne ? 1 : 0;
        mixed += r.order == "mixed" ? 1 : 0;
    }
    CHECK(anodyne == 4);
    CHECK(mixed == 2);
    auto text = emit_xi(*xi);
    CHECK(roundtrip_xi(text) == text);
    auto j = nlohmann::ordered_json::parse(text);
    j["elements"][2]["orbit_size"] = 7;
    try {
        roundtrip_xi(j.dump());
        FAIL("tampered dump accepted");
    } catch (const ParseError& e) {
        CHECK(e.path() == "/elements/2/orbit_size");
    }
}

TEST_CASE("reports are valid JSON with a verdict") {
    auto xi = make_xi('A', 2);
    auto c = run_full_check(build_e1(xi));
    CHECK(c.pass);
    auto j = nlohmann::json::parse(check_report_json(*xi, c));
    CHECK(j["verdict"] == "PASS");
    CHECK(j["support"]["stalks"].size() == static_cast<std::size_t>(xi->size()));
    auto p = nlohmann::json::parse(poly_report_json(*xi, property_suite(*xi)));
    CHECK(p["polynomials"].size() == static_cast<std::size_t>(xi->size()));
}

TEST_CASE("CLI exit statuses") {
    CHECK(run_cli("xi --type A --rank 1") == 0);
    CHECK(run_cli("xi --type A --rank 9") == 2);
    CHECK(run_cli("xi --type A --rank x") == 2);
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("example e1v nonsense --type A --rank 1") == 2);
    CHECK(run_cli("example eq 4 2") == 2);
    CHECK(run_cli("hecke 3 2") == 0);
    CHECK(run_cli("check /nonexistent/file.json") == 2);

    const std::string dir = std::string(MBS_TEST_TMPDIR);
    const std::string good = dir + "/io_good.json", bad = dir + "/io_bad.json";
    CHECK(run_cli("example e1 --type A --rank 2 -o " + good) == 0);
    CHECK(run_cli("check " + good) == 0);
    std::ofstream(bad) << "{\"datum\": {\"type\": \"A\", \"rank\": 1}}";
    CHECK(run_cli("check " + bad) == 2);

    using Json = nlohmann::ordered_json;
    Json j = Json::parse(a1_text());
    auto xi = make_xi('A', 1);
    for (auto& rel : j["dsecond"]) {
        int m = xi->find_label(rel["from"]), n = xi->find_label(rel["to"]);
        if (xi->is_anodyne(m, n)) {
            rel["matrix"] = Json::array({Json::array({"0/1", "0/1"}), Json::array({"0/1", "0/1"})});
            break;
        }
    }
    std::ofstream(bad) << j.dump();
    CHECK(run_cli("check " + bad) == 1);
}
