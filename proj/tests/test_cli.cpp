#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "shufflecap/report.hpp"
#include "test_support.hpp"

using namespace sct;
using nlohmann::json;

namespace {

struct CliResult {
    int rc = -1;
    std::string out;
};

CliResult run_cli(const std::string& args)
{
    std::string cmd = std::string(CLI_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
    int status = pclose(pipe);
    res.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("gen emits the family instance schema")
{
    auto res = run_cli("gen --K 3 --r 2");
    REQUIRE(res.rc == 0);
    auto inst = DcInstance::from_json(json::parse(res.out));
    CHECK(inst.to_json() == gen_family(3, 2).to_json());

    CHECK(run_cli("gen --K 6 --r 4 --C 3/2").rc == 0);
    CHECK(run_cli("gen --K 5 --r 2").rc == 2);
}

TEST_CASE("gen to check round trip certifies the known examples")
{
    auto path = temp_file("sc_cli_ex1.json");
    REQUIRE(run_cli("gen --K 3 --r 2 --out " + path.string()).rc == 0);
    auto res = run_cli("check " + path.string());
    REQUIRE(res.rc == 0);
    auto j = json::parse(res.out);
    CHECK(j["verdict"] == "MATCH");
    CHECK(j["config"]["instance"] == path.string());
    CHECK(j["version"] == "0.1.0");
    std::filesystem::remove(path);
}

TEST_CASE("reports are byte identical across invocations")
{
    auto path = temp_file("sc_cli_ex2.json");
    REQUIRE(run_cli("gen --K 6 --r 4 --out " + path.string()).rc == 0);
    auto a = run_cli("check " + path.string());
    auto b = run_cli("check " + path.string());
    CHECK(a.rc == 0);
    CHECK(a.out == b.out);

    auto s1 = run_cli("simulate --K 6 --r 4 --L 8 --seeds 5");
    auto s2 = run_cli("simulate --K 6 --r 4 --L 8 --seeds 5");
    CHECK(s1.rc == 0);
    CHECK(s1.out == s2.out);
    CHECK(s1.out != run_cli("simulate --K 6 --r 4 --L 8 --seeds 5 --seed 9").out);
    std::filesystem::remove(path);
}

TEST_CASE("out flag writes the same bytes as stdout")
{
    auto inst = temp_file("sc_cli_ex1b.json");
    REQUIRE(run_cli("gen --K 3 --r 2 --out " + inst.string()).rc == 0);
    auto direct = run_cli("outer " + inst.string());
    auto path = temp_file("sc_cli_outer.json");
    REQUIRE(run_cli("outer " + inst.string() + " --out " + path.string()).rc == 0);
    CHECK(slurp(path) == direct.out);
    std::filesystem::remove(path);
    std::filesystem::remove(inst);
}

TEST_CASE("single seed simulate embeds the transcript")
{
    auto res = run_cli("simulate --K 3 --r 2 --L 8 --seeds 1");
    REQUIRE(res.rc == 0);
    auto j = json::parse(res.out);
    CHECK(j["all_ok"] == true);
    REQUIRE(j["runs"].size() == 1);
    CHECK(j["runs"][0]["messages"].size() == 3);
    CHECK(j["runs"][0]["transmissions"][0].get<std::string>().size() == 2);

    auto many = json::parse(run_cli("simulate --K 3 --r 2 --L 8 --seeds 3").out);
    CHECK(many["runs"][0].find("messages") == many["runs"][0].end());
}

TEST_CASE("family sweep reports MATCH rows")
{
    auto res = run_cli("family --Kmax 4");
    REQUIRE(res.rc == 0);
    auto j = json::parse(res.out);
    REQUIRE(j["rows"].size() == 4);
    for (const auto& row : j["rows"]) CHECK(row["check"]["verdict"] == "MATCH");
}

TEST_CASE("undecided still exits zero")
{
    auto path = temp_file("sc_cli_ex2b.json");
    REQUIRE(run_cli("gen --K 6 --r 4 --out " + path.string()).rc == 0);
    auto res = run_cli("check " + path.string() + " --budget 3");
    REQUIRE(res.rc == 0);
    auto j = json::parse(res.out);
    CHECK(j["verdict"] == "UNDECIDED");
    CHECK(j["undecided_reason"].get<std::string>().find("outer bound") == 0);
    std::filesystem::remove(path);
}

TEST_CASE("flag and input failures exit two")
{
    CHECK(run_cli("check /no/such/file.json").rc == 2);
    CHECK(run_cli("").rc == 2);                       // missing subcommand
    CHECK(run_cli("check").rc == 2);                  // missing instance
    CHECK(run_cli("gen --K 3").rc == 2);              // missing r
    CHECK(run_cli("gen --K 3 --r 2 --C -1").rc == 2); // negative capacity
    auto bad = temp_file("sc_cli_bad.json");
    std::ofstream(bad) << "{ not json";
    CHECK(run_cli("check " + bad.string()).rc == 2);
    std::filesystem::remove(bad);

    auto res = run_cli("--version");
    CHECK(res.rc == 0);
    CHECK(res.out.find("0.1.0") == 0);
}

TEST_CASE("strategy and format flags are honored")
{
    auto path = temp_file("sc_cli_ex1c.json");
    REQUIRE(run_cli("gen --K 3 --r 2 --out " + path.string()).rc == 0);
    CHECK(run_cli("check " + path.string() + " --strategy bogus").rc == 2);

    auto txt = run_cli("check " + path.string() + " --format text");
    CHECK(txt.rc == 0);
    CHECK(txt.out.find("verdict: MATCH") != std::string::npos);

    auto ex = run_cli("check " + path.string() + " --strategy exhaustive");
    REQUIRE(ex.rc == 0);
    auto j = json::parse(ex.out);
    CHECK(j["inner"]["choices"].size() == 64);
    std::filesystem::remove(path);
}
