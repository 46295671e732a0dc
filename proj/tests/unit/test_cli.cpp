#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "../support.hpp"
#include "mertens/cli.hpp"
#include "mertens/multiple_sums.hpp"
#include "mertens/polynomials.hpp"
#include "mertens/special_functions.hpp"

using mertens::XFloat;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = mertens::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// Small sieve for commands that do not need the default one.
std::vector<std::string> small(std::vector<std::string> rest) {
    std::vector<std::string> args = {"--prime-limit", "1000000", "--b-limit", "1000000"};
    args.insert(args.end(), rest.begin(), rest.end());
    return args;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("mertens_cli_test_" + name);
}

}  // namespace

TEST_CASE("sums as json") {
    const auto r = cli(small({"--format", "json", "sums", "--k", "2", "--s", "0", "--x", "6", "--method", "enum"}));
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["term_count"] == 3);
    CHECK(j["k"] == 2);
    CHECK(j["method"] == "enum");
    CHECK(j["value"].get<double>() == doctest::Approx(7.0 / 12.0).epsilon(1e-15));
    // Every number reparses to the library's hi word.
    const auto lib = mertens::sum_enumerate(support::table_1e6(), {.k = 2, .x = 6});
    CHECK(j["value"].get<double>() == lib.value.hi());
}

TEST_CASE("sums with all methods") {
    const auto r = cli(small({"--format", "json", "sums", "--k", "3", "--x", "1000", "--method", "all"}));
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 3);
    CHECK(j[0]["value"] == j[1]["value"]);
    CHECK(j[0]["term_count"] == j[2]["term_count"]);
    const auto c = cli(small({"--format", "csv", "sums", "--k", "2", "--x", "1000", "--method", "all"}));
    REQUIRE(c.code == 0);
    const auto ls = lines(c.out);
    REQUIRE(ls.size() == 4);
    CHECK(ls[0] == "x,k,s,method,value,term_count,prediction,residual");
    CHECK(ls[3].find(",hyperbola,") != std::string::npos);
}

TEST_CASE("poly and coeffs") {
    const auto r = cli(small({"--format", "csv", "poly", "--k", "3", "--basis", "shifted"}));
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 5);
    CHECK(ls[0] == "degree,coefficient");
    const double c1 = std::stod(ls[3].substr(2)), c0 = std::stod(ls[4].substr(2));
    CHECK(ls[3].rfind("1,", 0) == 0);
    CHECK(c1 == doctest::Approx(-4.9348022).epsilon(1e-8));
    CHECK(c0 == doctest::Approx(2.4041138).epsilon(1e-8));
    CHECK(c1 == (XFloat(-3) * mertens::zeta_int(2)).hi());

    const auto plain = cli(small({"--format", "json", "poly", "--k", "2", "--basis", "plain"}));
    REQUIRE(plain.code == 0);
    CHECK(json::parse(plain.out).dump().find("coefficient") != std::string::npos);

    const auto co = cli(small({"--format", "csv", "coeffs", "--kmax", "24"}));
    REQUIRE(co.code == 0);
    const auto cl = lines(co.out);
    REQUIRE(cl.size() == 24);
    CHECK(cl[0] == "k,a_k");
    CHECK(std::stod(cl[1].substr(2)) == mertens::a_seq(2).at(2).hi());
    CHECK(cli(small({"coeffs", "--kmax", "25"})).code == 2);
}

TEST_CASE("specfun schema") {
    const auto r = cli(small({"--format", "json", "specfun", "zeta", "--n", "3"}));
    REQUIRE(r.code == 0);
    const auto j = nlohmann::ordered_json::parse(r.out);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"name", "args", "value", "abs_error_bound"});
    CHECK(j["name"] == "zeta");
    CHECK(j["args"]["n"] == 3);
    CHECK(support::abs_diff(XFloat::parse(j["value"].get<std::string>()), mertens::zeta_int(3)) < 1e-30);
    CHECK(j["abs_error_bound"].get<double>() > 0.0);
    for (const char* name : {"polylog-half", "log-integral", "log-integral-quad", "mertens-b", "euler-gamma"})
        CHECK(cli(small({"specfun", name})).code == 0);
    CHECK(cli(small({"specfun", "gamma"})).code == 2);
    CHECK(cli(small({"specfun", "zeta", "--n", "1"})).code == 2);
}

TEST_CASE("exit codes") {
    CHECK(cli({"--help"}).code == 0);
    CHECK(cli({"sums", "--help"}).code == 0);
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli(small({"sums", "--k", "2", "--x", "6", "--bogus"})).code == 2);
    CHECK(cli(small({"--bogus", "sums", "--k", "2", "--x", "6"})).code == 2);
    CHECK(cli(small({"sums", "--k", "9", "--x", "100"})).code == 2);
    CHECK(cli(small({"sums", "--k", "2", "--x", "1e7"})).code == 2);
    CHECK(cli(small({"sums", "--k", "2", "--x", "100", "--method", "fast"})).code == 2);
    CHECK(cli({"--prime-limit", "10", "sums", "--k", "2", "--x", "6"}).code == 2);
    CHECK(cli({"--format", "yaml", "coeffs"}).code == 2);
    const auto e = cli(small({"sums", "--k", "9", "--x", "100"}));
    CHECK(e.out.empty());
    CHECK_FALSE(e.err.empty());
}

TEST_CASE("residuals csv") {
    const auto args = small({"--format", "csv", "residuals", "--k", "2", "--xmin", "1000", "--xmax", "1000000", "--points", "4"});
    const auto r = cli(args);
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 5);
    CHECK(ls[0] == "k,s,x,exact,prediction,residual,scaled");
    CHECK(ls[1].rfind("2,0,1000,", 0) == 0);
    CHECK(ls[4].rfind("2,0,1000000,", 0) == 0);
    // byte-stable across runs and thread counts
    CHECK(cli(args).out == r.out);
    auto threaded = args;
    threaded.insert(threaded.begin(), {"--threads", "3"});
    CHECK(cli(threaded).out == r.out);
    const auto t = cli(small({"residuals", "--k", "1", "--xmax", "1000000", "--points", "4"}));
    REQUIRE(t.code == 0);
    CHECK(t.out.find("CONVERGENT") != std::string::npos);
    CHECK(cli(small({"residuals", "--k", "1", "--points", "1"})).code == 2);
}

TEST_CASE("verify passes") {
    const auto r = cli({"verify"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 7);
    for (const auto& l : ls) CHECK(l.rfind("PASS ", 0) == 0);
    const auto j = cli({"--format", "json", "verify"});
    REQUIRE(j.code == 0);
    const auto suites = json::parse(j.out)["suites"];
    REQUIRE(suites.size() == 7);
    for (const auto& st : suites) CHECK(st["status"] == "PASS");
}

TEST_CASE("prime cache") {
    const auto path = temp_file("cache.bin");
    std::filesystem::remove(path);
    const auto first = cli({"--prime-limit", "5000", "--b-limit", "1000", "--prime-cache", path.string(), "sums", "--k", "2", "--x", "100"});
    REQUIRE(first.code == 0);
    REQUIRE(std::filesystem::exists(path));
    CHECK(mertens::load_cache(path).limit() == 5000);
    const auto again = cli({"--prime-limit", "5000", "--b-limit", "1000", "--prime-cache", path.string(), "sums", "--k", "2", "--x", "100"});
    CHECK(again.out == first.out);
    // a cache for another limit is replaced
    CHECK(cli({"--prime-limit", "7000", "--b-limit", "1000", "--prime-cache", path.string(), "coeffs"}).code == 0);
    CHECK(cli({"--prime-limit", "7000", "--b-limit", "1000", "--prime-cache", path.string(), "sums", "--k", "1", "--x", "10"}).code == 0);
    CHECK(mertens::load_cache(path).limit() == 7000);
    // environment variable
    ::setenv("MERTENS_PRIME_CACHE", path.string().c_str(), 1);
    CHECK(cli({"--prime-limit", "6000", "--b-limit", "1000", "sums", "--k", "1", "--x", "10"}).code == 0);
    ::unsetenv("MERTENS_PRIME_CACHE");
    CHECK(mertens::load_cache(path).limit() == 6000);
    // unreadable cache
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        f << "XXXXXXXXjunkjunkjunkjunkjunkjunk";
    }
    const auto bad = cli({"--prime-limit", "6000", "--b-limit", "1000", "--prime-cache", path.string(), "sums", "--k", "1", "--x", "10"});
    CHECK(bad.code == 2);
    CHECK_FALSE(bad.err.empty());
    std::filesystem::remove(path);
}
