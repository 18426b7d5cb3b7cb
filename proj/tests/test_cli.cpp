#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "schurgate/cli.hpp"
#include "schurgate/error.hpp"
#include "schurgate/serialize.hpp"

using namespace schurgate;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "schurgate");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
    args.insert(args.begin(), {"--format", "json"});
    auto r = run(args);
    REQUIRE(r.code == 0);
    return Json::parse(r.out);
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("table subcommand") {
    auto r = run({"table", "-q", "7", "-p", "3", "-n", "1"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "5 characters, 2 faithful"));
    auto j = run_json({"table", "-q", "7", "-p", "3", "-n", "2"});
    CHECK(j["count"] == 15);
    CHECK(j["faithful_count"] == 4);
    CHECK(j["classes"].size() == 15);
    CHECK(j["group"]["r"] == 1);
    for (const auto& row : j["characters"]) {
        CHECK(row["values"].size() == 15);
        CHECK(row.contains("tensor") == row["faithful"].get<bool>());
    }
    // the first class is the identity
    CHECK(j["classes"][0]["rep"] == Json::array({0, 0}));

    auto bad = run({"table", "-q", "7", "-p", "3", "-n", "1", "-j", "3"});
    CHECK(bad.code == kExitInput);
    CHECK(contains(bad.err, "error:"));
    CHECK(run({"table", "-q", "7", "-p", "5", "-n", "1"}).code == kExitInput);
    CHECK(run({"table", "-q", "9", "-p", "3", "-n", "1"}).code == kExitInput);
    CHECK(run({"table", "-q", "7", "-p", "3"}).code == kExitInput);
}

TEST_CASE("schur subcommand") {
    CHECK(run_json({"schur", "-q", "19", "-p", "3", "-n", "4"})["global"] == 9);
    CHECK(run_json({"schur", "-q", "7", "-p", "3", "-n", "1"})["global"] == 1);
    auto j = run_json({"schur", "-q", "7", "-p", "3", "-n", "2"});
    CHECK(j["global"] == 3);
    std::set<std::string> places;
    for (const auto& l : j["local"]) places.insert(l["place"].get<std::string>());
    CHECK(places == std::set<std::string>{"inf", "2", "3", "7"});
    auto all = run_json({"schur", "-q", "7", "-p", "3", "-n", "2", "--all"});
    CHECK(all.size() == 4);
    for (const auto& rep : all) CHECK(rep["global"] == 3);
    CHECK(run({"schur", "-q", "7", "-p", "3", "-n", "2", "--character", "chi_0"}).code == kExitInput);
}

TEST_CASE("predict subcommand") {
    auto j = run_json({"predict", "-q", "7", "-p", "3", "-n", "2"});
    CHECK(j["schur_modulus"] == 3);
    CHECK(j["tower_modulus"] == 36);
    CHECK(j["identity_modulus"] == 36);
    CHECK(j["assuming"].size() >= 1);
    CHECK(j["assuming"][0] == "BSD-Deligne-Gross");
    for (const auto& s : j["statements"]) CHECK_FALSE(s["assuming"].empty());
    auto t = run({"predict", "-q", "7", "-p", "3", "-n", "1"});
    CHECK(t.code == 0);
    CHECK(contains(t.out, "no forced divisibility"));
    CHECK(run_json({"predict", "-q", "19", "-p", "3", "-n", "4"})["schur_modulus"] == 9);
}

TEST_CASE("euler subcommand") {
    auto t = run({"euler", "--curve", "0,0,0,-1,0", "-v", "5", "--trivial"});
    CHECK(t.code == 0);
    CHECK(contains(t.out, "1 + 2*T + 5*T^2"));
    auto j = run_json({"euler", "--curve", "0,0,0,-1,0", "-v", "5", "--trivial"});
    CHECK(j["v"] == 5);
    CHECK(j["a_v"] == -2);
    REQUIRE(j["poly"].size() == 3);
    CHECK(j["poly"][1] == Json{{"conductor", 1}, {"coeffs", {"2/1"}}});

    auto s = run({"euler", "--order7-class", "H", "-q", "7", "-p", "3", "-n", "2", "--symbolic"});
    CHECK(s.code == 0);
    CHECK(contains(s.out, "(1 - z7^1 alpha T)(1 - z7^1 beta T)(1 - z7^2 alpha T)(1 - z7^2 beta T)(1 - z7^4 alpha T)(1 - z7^4 beta T)"));
    CHECK(contains(s.out, "cube of a quadratic: no"));
    auto sj = run_json({"euler", "--order7-class", "nonH", "-q", "7", "-p", "3", "-n", "2", "--symbolic"});
    CHECK(sj["is_cube_of_quadratic"] == false);
    std::set<std::uint64_t> exps;
    for (const auto& e : sj["eigenvalues"]) {
        CHECK(e["den"] == 7);
        exps.insert(e["num"].get<std::uint64_t>());
    }
    CHECK(exps == std::set<std::uint64_t>{3, 5, 6});

    // Frobenius taken from the field polynomial
    auto f = run_json({"euler", "--curve", "0,0,0,-1,0", "-v", "13", "-q", "7", "-p", "3", "-n", "1"});
    CHECK(f["poly"].size() == 7);
    CHECK(run({"euler", "--curve", "0,0,0,-1,0", "-v", "2", "--trivial"}).code == kExitInput);
    CHECK(run({"euler", "--curve", "0,0,0,0,0", "-v", "5", "--trivial"}).code == kExitInput);
    CHECK(run({"euler", "--curve", "0,0,0,-1", "-v", "5", "--trivial"}).code == kExitInput);
    CHECK(run({"euler", "-v", "5", "--trivial"}).code == kExitInput);
}

TEST_CASE("identity, series and frobenius subcommands") {
    auto r = run({"identity", "--curve", "0,0,0,-1,0", "--field", "example-F1", "-n", "1", "-X", "500"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "identity holds to X=500 (good primes)"));
    auto j = run_json({"identity", "--curve", "0,0,0,-1,0", "--field", "example-F1", "-n", "2", "-X", "200"});
    CHECK(j["series"]["holds"] == true);
    CHECK(j["virtual"]["multiplicity"] == 3);

    auto s = run_json({"series", "--curve", "0,0,0,-1,0", "-X", "30", "--trivial"});
    CHECK(s["an"].size() == 30);
    CHECK(s["an"][4] == Json{{"conductor", 1}, {"coeffs", {"-2/1"}}});
    // the two order-7 classes are indistinguishable from the polynomial alone
    CHECK(run({"series", "--curve", "0,0,0,-1,0", "-X", "30"}).code == kExitInput);
    CHECK(run_json({"series", "--curve", "0,0,0,-1,0", "-X", "30", "--character", "chi_1"})["an"].size() == 30);

    auto fr = run_json({"frobenius", "--v-max", "20"});
    CHECK(fr.size() == 8);
    CHECK(fr[1]["skipped"].is_string());  // 3 ramifies
    auto one = run_json({"frobenius", "-v", "17"});
    CHECK(one[0]["ambiguous"] == true);
    CHECK(one[0]["pattern"] == Json::array({7}));
    CHECK(run({"frobenius", "-v", "7"}).code == kExitInput);
    CHECK(run({"frobenius", "-v", "13", "--field", "1,0,0,1"}).code == kExitInput);
}

TEST_CASE("sweep subcommand") {
    auto j = run_json({"sweep", "--max-order", "400", "--threads", "2"});
    CHECK(j["summary"]["failures"] == 0);
    CHECK(j["summary"]["groups"] == j["groups"].size());
    CHECK(j["groups"].size() > 20);
    auto idx = run_json({"sweep", "--max-order", "400", "--every-j", "--index-only"});
    CHECK(idx["groups"].size() > j["groups"].size());
}

TEST_CASE("output is deterministic and can go to a file") {
    auto a = run({"--format", "json", "table", "-q", "13", "-p", "3", "-n", "2"});
    auto b = run({"--format", "json", "table", "-q", "13", "-p", "3", "-n", "2"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto c = run({"--format", "json", "sweep", "--max-order", "300", "--threads", "1"});
    auto d = run({"--format", "json", "sweep", "--max-order", "300", "--threads", "3"});
    CHECK(c.out == d.out);

    const std::string path = "schurgate_cli_test_out.json";
    auto w = run({"--format", "json", "--out", path, "schur", "-q", "7", "-p", "3", "-n", "2"});
    CHECK(w.code == 0);
    CHECK(w.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(Json::parse(buf.str())["global"] == 3);
    std::remove(path.c_str());

    CHECK(run({"--help"}).code == 0);
    CHECK(run({"nonsense"}).code == kExitInput);
    CHECK(run({"--format", "xml", "table", "-q", "7", "-p", "3", "-n", "1"}).code == kExitInput);
}

TEST_CASE("JSON round trip of values and fields") {
    auto j = run_json({"table", "-q", "19", "-p", "3", "-n", "2"});
    for (const auto& row : j["characters"]) {
        for (const auto& v : row["values"]) {
            auto x = cyclotomic_from_json(v);
            CHECK(to_json(x).dump() == v.dump());
        }
        auto F = field_from_json(row["field"]);
        CHECK(to_json(F).dump() == row["field"].dump());
    }
    // a non-minimal conductor comes back at its minimal one
    auto x = cyclotomic_from_json(Json{{"conductor", 2}, {"coeffs", {"3/2"}}});
    CHECK(x == CyclotomicNumber(Rational(3, 2)));
    CHECK(to_json(x).dump() == R"({"conductor":1,"coeffs":["3/2"]})");
    CHECK_THROWS_AS(cyclotomic_from_json(Json{{"conductor", 7}, {"coeffs", {"1/1"}}}), InputError);
    CHECK_THROWS_AS(cyclotomic_from_json(Json{{"conductor", 3}, {"coeffs", {"1/0", "0/1"}}}), ArithmeticError);
    CHECK_THROWS_AS(cyclotomic_from_json(Json{{"coeffs", {"1/1"}}}), InputError);
    CHECK_THROWS_AS(field_from_json(Json{{"conductor", 7}, {"stabilizer", {2}}}), InputError);
}
