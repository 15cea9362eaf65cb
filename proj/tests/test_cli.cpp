#include "cli.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = expramsey::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json decimals(const nlohmann::json& elements)
{
    auto out = nlohmann::json::array();
    for (const auto& e : elements)
        out.push_back(e.is_string() ? e : e["decimal"]);
    return out;
}

std::string temp_file(const std::string& name, const std::string& contents)
{
    const auto path = std::filesystem::path(EXPRAMSEY_TEST_DIR) / name;
    std::ofstream(path) << contents;
    return path.string();
}

} // namespace

TEST_CASE("gen exp reproduces the level-3 set")
{
    const auto r = run({"gen", "exp", "--seq", "2,3,5", "--json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["count"] == 6);
    CHECK(decimals(j["elements"])
        == nlohmann::json({"5", "25", "125", "15625", "1953125", "3814697265625"}));
}

TEST_CASE("gen fs singleton")
{
    const auto r = run({"gen", "fs", "--seq", "5", "--json"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["elements"] == nlohmann::json({"5"}));
}

TEST_CASE("gen families with bounds")
{
    auto r = run({"gen", "ffam", "--seq", "3,5", "--phi", "1:tower:0"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["elements"] == nlohmann::json({"3", "5", "40"}));

    r = run({"gen", "feb", "--seq", "2,4", "--phi", "towers"});
    REQUIRE(r.code == 0);
    CHECK(decimals(nlohmann::json::parse(r.out)["elements"]) == nlohmann::json({"2", "4", "16"}));

    r = run({"gen", "fepw", "--seq", "5,3", "--weight", "const:1"});
    REQUIRE(r.code == 0);
    CHECK(decimals(nlohmann::json::parse(r.out)["elements"]) == nlohmann::json({"3", "5", "125"}));

    r = run({"gen", "tower", "--seq", "2,3,4,5", "--n", "4", "--m", "3", "--idx", "1,2"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["member"] == true);
}

TEST_CASE("CSV output")
{
    const auto r = run({"gen", "exp", "--seq", "2,3", "--csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "family,index,root,exp,decimal\nexp,0,3,1,3\nexp,1,3,2,9\n");
}

TEST_CASE("usage errors exit 1 and name the problem")
{
    auto r = run({});
    CHECK(r.code == 1);
    r = run({"gen", "exp"});
    CHECK(r.code == 1);
    CHECK(r.err.find("--seq") != std::string::npos);
    r = run({"gen", "exp", "--seq", "2,x"});
    CHECK(r.code == 1);
    r = run({"gen", "exp", "--seq", "2", "--json", "--csv"});
    CHECK(r.code == 1);
    r = run({"frobnicate"});
    CHECK(r.code == 1);
    r = run({"--help"});
    CHECK(r.code == 0);
}

TEST_CASE("caps exceeded exit 2")
{
    auto r = run({"--enumeration-budget", "3", "gen", "fe", "--seq", "2,3,5"});
    CHECK(r.code == 2);
    CHECK(r.err.find("limit exceeded") != std::string::npos);
    r = run({"search", "avoid", "--family", "schur", "--window", "40", "--colors", "2",
        "--engine", "exhaustive", "--enumeration-budget", "100"});
    CHECK(r.code == 2);
}

TEST_CASE("config file with flag override")
{
    const auto path = temp_file("budget.conf", "# tight budget\nenumeration_budget = 3\n");
    auto r = run({"--config", path, "gen", "fe", "--seq", "2,3,5"});
    CHECK(r.code == 2);
    r = run({"--config", path, "--enumeration-budget", "1000", "gen", "fe", "--seq", "2,3,5"});
    CHECK(r.code == 0);
    const auto bad = temp_file("bad.conf", "no_such_key = 1\n");
    CHECK(run({"--config", bad, "gen", "fs", "--seq", "5"}).code == 1);
    const auto zero = temp_file("zero.conf", "value_bit_cap = 0\n");
    CHECK(run({"--config", zero, "gen", "fs", "--seq", "5"}).code == 1);
}

TEST_CASE("color command")
{
    auto r = run({"color", "--spec", "mod:2", "--set", "3,9,81"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["monochromatic"] == true);
    CHECK(j["color"] == 1);

    const auto file = temp_file("values.txt", "2\n3\n");
    r = run({"color", "--spec", "mod:2", "--set", "@" + file});
    REQUIRE(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["monochromatic"] == false);
    CHECK(j["witness"][0]["decimal"] == "2");
    CHECK(j["witness"][1]["decimal"] == "3");

    r = run({"color", "--spec", "mod:10", "--set", "2^9"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["values"][0]["color"] == 2);
}

TEST_CASE("search commands")
{
    auto r = run({"search", "avoid", "--family", "schur", "--window", "4", "--colors", "2"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "WitnessColoring");
    CHECK(j["M"] == "4");
    CHECK_FALSE(j.contains("millis"));

    r = run({"search", "avoid", "--family", "schur", "--window", "5", "--colors", "2", "--csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("family,r,M,verdict,witness,nodes,millis\n", 0) == 0);
    CHECK(r.out.find("Unavoidable") != std::string::npos);

    r = run({"search", "witness", "--coloring", "mod:2", "--window", "100", "--phi", "0:const:0",
        "--length", "3"});
    REQUIRE(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "WitnessSequence");
    CHECK(j["witness"] == nlohmann::json({"2", "4", "6"}));

    r = run({"--timing", "search", "avoid", "--family", "fs:2", "--window", "9", "--colors", "2"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).contains("millis"));
}

TEST_CASE("verify exits 0 and is deterministic")
{
    const auto a = run({"verify", "lift-identity", "--json"});
    CHECK(a.code == 0);
    const auto b = run({"--workers", "4", "verify", "lift-identity", "--json"});
    CHECK(a.out == b.out);
    std::istringstream lines(a.out);
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) {
        CHECK(nlohmann::json::parse(line)["pass"] == true);
        ++count;
    }
    CHECK(count == 270);
    CHECK(run({"verify", "no-such-check"}).code == 1);

    const auto csv = run({"verify", "tower-growth", "--csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("check,instance,pass,counterexample\n", 0) == 0);
}
