#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shufflecap/report.hpp"
#include "test_support.hpp"

using namespace sct;
using nlohmann::json;

TEST_CASE("analyze report carries the instance profile")
{
    auto j = analyze_report(example1(), {{"source", "test"}});
    CHECK(j["version"] == "0.1.0");
    CHECK(j["command"] == "analyze");
    CHECK(j["config"]["source"] == "test");
    CHECK(j["K"] == 3);
    CHECK(j["r"] == "2");
    CHECK(j["eta1"] == 2);
    CHECK(j["eta2"] == 1);
    CHECK(j["message_bits"] == 2);
    CHECK(j["message_count"] == 3);
    CHECK(j["messages"] == json({"(0,0)", "(1,1)", "(2,2)"}));
    CHECK(j["mais"]["size"] == 1);
    CHECK(j["mais"]["witness"] == json({"(0,0)"}));
    CHECK(j["notes"].empty());

    auto j2 = analyze_report(example2(), json::object());
    CHECK(j2["r"] == "4");
    CHECK(j2["message_count"] == 6);
    CHECK(j2["mais"]["size"] == 2);
}

TEST_CASE("empty shuffle is noted")
{
    DcInstance inst;
    inst.K = 2;
    inst.F = 1;
    inst.N = 2;
    inst.Q = 2;
    inst.map_assignment = {{0}, {0}};
    inst.reduce_assignment = {{0}, {1}};
    inst.capacities = {1, 1};
    auto j = analyze_report(inst, json::object());
    CHECK(j["message_count"] == 0);
    CHECK(j["notes"] == json({"nothing to shuffle"}));
}

TEST_CASE("check report serializes verdict and regions exactly")
{
    auto p = derive_shuffle_problem(example1());
    auto rep = check_capacity(p);
    auto j = check_report(p, rep, json::object());
    CHECK(j["verdict"] == "MATCH");
    CHECK(j["containment_checked"] == true);
    CHECK(j["implementation_bug"] == false);
    CHECK(j["gap"].is_null());
    CHECK(j["inner"]["route"] == "projection");
    CHECK(j["inner"]["choices"] == json({"default"}));
    CHECK(j["vertices"].size() == 8);
    for (const auto& v : j["vertices"]) {
        CHECK(v["achieved"] == true);
        CHECK(v["certificate"]["choice"] == "default");
    }
    // rationals render as canonical strings inside regions and certificates
    bool saw_two = false;
    for (const auto& row : j["outer"]["ineqs"]) saw_two = saw_two || row["rhs"] == "2";
    CHECK(saw_two);
    CHECK(j.find("timings_ms") == j.end());
}

TEST_CASE("timings appear only when recorded, as whole milliseconds")
{
    auto p = derive_shuffle_problem(example1());
    CheckOptions opts;
    opts.record_timings = true;
    auto j = check_report(p, check_capacity(p, opts), json::object());
    REQUIRE(j.find("timings_ms") != j.end());
    CHECK(j["timings_ms"].size() == 4);
    CHECK(j["timings_ms"][0]["phase"] == "outer");
    CHECK(j["timings_ms"][0]["ms"].is_number_integer());
}

TEST_CASE("family report rows are ordered and complete")
{
    auto j = family_report(verify_family(4), json::object());
    REQUIRE(j["rows"].size() == 4);
    CHECK(j["rows"][0]["K"] == 2);
    CHECK(j["rows"][3]["r"] == 3);
    for (const auto& row : j["rows"]) {
        CHECK(row["mais_expected"] == true);
        CHECK(row["check"]["verdict"] == "MATCH");
    }
}

TEST_CASE("simulate report aggregates runs")
{
    auto s = build_scheme(3, 2, 8);
    std::vector<ShuffleTranscript> runs;
    for (uint64_t seed = 0; seed < 5; ++seed) runs.push_back(run(s, seed));
    auto rates = rate_report(s, {1, 1, 1});

    auto j = simulate_report(s, runs, rates, json::object());
    CHECK(j["scheme"]["plan"][0] ==
          json({{{"message", 1}, {"segment", 1}}, {{"message", 2}, {"segment", 2}}}));
    CHECK(j["rate"]["rate"] == "2");
    CHECK(j["seeds_run"] == 5);
    CHECK(j["seeds_ok"] == 5);
    CHECK(j["all_ok"] == true);
    CHECK(j["runs"][0].find("messages") == j["runs"][0].end());

    auto j2 = simulate_report(s, {runs[0]}, rates, json::object(), true);
    REQUIRE(j2["runs"][0]["messages"].size() == 3);
    CHECK(j2["runs"][0]["messages"][0].get<std::string>().size() == 4); // 16 bits
}

TEST_CASE("reports are byte stable")
{
    auto p = derive_shuffle_problem(example2());
    auto a = render_json(check_report(p, check_capacity(p), json::object()));
    auto b = render_json(check_report(p, check_capacity(p), json::object()));
    CHECK(a == b);
    CHECK(a.back() == '\n');

    auto s = build_scheme(6, 4, 8);
    std::vector<ShuffleTranscript> runs{run(s, 1), run(s, 2)};
    auto r1 = render_json(simulate_report(s, runs, rate_report(s, std::vector<Rational>(6, 1)),
                                          json::object(), true));
    std::vector<ShuffleTranscript> again{run(s, 1), run(s, 2)};
    auto r2 = render_json(simulate_report(s, again, rate_report(s, std::vector<Rational>(6, 1)),
                                          json::object(), true));
    CHECK(r1 == r2);
}
