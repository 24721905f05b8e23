#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "shufflecap/inner_bound.hpp"
#include "shufflecap/shuffle_sim.hpp"
#include "test_support.hpp"

using namespace sct;

namespace {

// straight-line replay oracle: recompute every decode from raw index
// arithmetic, sharing no code with the executor
bool replay_exact(const CodedShuffleScheme& s, const ShuffleTranscript& t)
{
    const int K = s.K, g = s.g, L = s.L;
    for (int k = 0; k < K; ++k)
        for (int u = 1; u < g; ++u) {
            int j = ((k - u) % K + K) % K;
            for (int b = 0; b < L; ++b) {
                uint8_t bit = t.transmissions[j][b];
                for (int i = 1; i < g; ++i)
                    if (i != u) bit ^= t.messages[(j + i) % K][(i - 1) * L + b];
                if (bit != t.messages[k][(u - 1) * L + b]) return false;
            }
        }
    return true;
}

std::vector<SegmentRef> row(std::initializer_list<SegmentRef> refs) { return refs; }

} // namespace

TEST_CASE("three node plan is the two segment rotation")
{
    auto s = build_scheme(3, 2, 8);
    CHECK(s.g == 3);
    REQUIRE(s.plan.size() == 3);
    CHECK(s.plan[0] == row({{1, 1}, {2, 2}}));
    CHECK(s.plan[1] == row({{2, 1}, {0, 2}}));
    CHECK(s.plan[2] == row({{0, 1}, {1, 2}}));
}

TEST_CASE("g equal two degenerates to uncoded forwarding")
{
    auto s = build_scheme(4, 2, 8);
    CHECK(s.g == 2);
    for (int j = 0; j < 4; ++j) CHECK(s.plan[j] == row({{(j + 1) % 4, 1}}));

    auto t = run(s, 7);
    for (int j = 0; j < 4; ++j) CHECK(t.transmissions[j] == t.messages[(j + 1) % 4]);
    CHECK(t.all_ok());
}

TEST_CASE("clique case XORs K minus one segments")
{
    auto s = build_scheme(4, 3, 2);
    CHECK(s.g == 4);
    for (int j = 0; j < 4; ++j) {
        REQUIRE(s.plan[j].size() == 3);
        for (int i = 1; i <= 3; ++i) CHECK(s.plan[j][i - 1] == SegmentRef{(j + i) % 4, i});
    }
    CHECK(run(s, 123).all_ok());
}

TEST_CASE("bad parameters are rejected")
{
    CHECK_THROWS_AS(build_scheme(5, 3, 8), DivisibilityError);
    CHECK_THROWS_AS(build_scheme(3, 2, 0), InputError);
    CHECK_THROWS_AS(build_scheme(3, 0, 8), InputError);
}

TEST_CASE("segment coverage is one of each")
{
    for (auto [K, r] : {std::pair{3, 2}, {6, 4}, {8, 6}, {6, 3}, {5, 4}}) {
        auto s = build_scheme(K, r, 1);
        std::set<std::pair<int, int>> seen;
        size_t total = 0;
        for (const auto& senders : s.plan)
            for (const auto& ref : senders) {
                seen.insert({ref.message, ref.segment});
                ++total;
            }
        CHECK(total == size_t(K) * (s.g - 1));
        CHECK(seen.size() == total);
        for (int k = 0; k < K; ++k)
            for (int i = 1; i < s.g; ++i) CHECK(seen.count({k, i}) == 1);
    }
}

TEST_CASE("transcripts decode exactly across lengths and seeds")
{
    for (auto [K, r] : {std::pair{3, 2}, {4, 2}, {6, 4}, {6, 3}, {8, 6}}) {
        for (int L : {1, 8, 64}) {
            auto s = build_scheme(K, r, L);
            for (uint64_t seed = 0; seed < 25; ++seed) {
                auto t = run(s, seed);
                CAPTURE(K);
                CAPTURE(r);
                CAPTURE(L);
                CAPTURE(seed);
                REQUIRE(t.messages.size() == size_t(K));
                for (const auto& m : t.messages) CHECK(m.size() == size_t(s.g - 1) * L);
                for (const auto& y : t.transmissions) CHECK(y.size() == size_t(L));
                for (int k = 0; k < K; ++k) CHECK(t.decoded[k].size() == t.messages[k].size());
                CHECK(t.all_ok());
                CHECK(replay_exact(s, t));
            }
        }
    }
}

TEST_CASE("runs are reproducible and seed sensitive")
{
    auto s = build_scheme(6, 4, 16);
    auto a = run(s, 42), b = run(s, 42), c = run(s, 43);
    CHECK(a.messages == b.messages);
    CHECK(a.transmissions == b.transmissions);
    CHECK(a.messages != c.messages);
}

TEST_CASE("rate report sits on the family boundary")
{
    auto s = build_scheme(3, 2, 8);
    auto rep = rate_report(s, {1, 1, 1});
    CHECK(rep.rate == 2);
    CHECK(rep.blocklength == 8);
    CHECK(rep.outer_feasible);
    CHECK(rep.group_rows_tight);
    CHECK(rep.identity_holds);

    auto rep2 = rate_report(build_scheme(6, 4, 8), std::vector<Rational>(6, 1));
    CHECK(rep2.rate == 2);
    auto rep3 = rate_report(build_scheme(6, 3, 8), std::vector<Rational>(6, 1));
    CHECK(rep3.rate == 1);
    CHECK(rep3.group_rows_tight);

    auto rep4 = rate_report(build_scheme(4, 2, 5), std::vector<Rational>(4, Rational(1, 2)));
    CHECK(rep4.rate == Rational(1, 2));
    CHECK(rep4.blocklength == 10);
    CHECK(rep4.group_rows_tight);
    CHECK(rep4.identity_holds);
}

TEST_CASE("rate report rejects bad capacities")
{
    auto s = build_scheme(3, 2, 8);
    CHECK_THROWS_AS(rate_report(s, {1, 1}), InputError);
    CHECK_THROWS_AS(rate_report(s, {1, 1, 2}), NonuniformCapacity);
    CHECK_THROWS_AS(rate_report(s, {0, 0, 0}), InputError);
}

TEST_CASE("the achieved tuple is certifiably achievable")
{
    for (auto [K, r] : {std::pair{3, 2}, {6, 4}, {6, 3}}) {
        auto s = build_scheme(K, r, 8);
        auto rep = rate_report(s, std::vector<Rational>(K, 1));
        auto p = derive_shuffle_problem(gen_family(K, r));
        std::map<VarLabel, Rational> target;
        for (const auto& m : p.messages) target[VarLabel::rate(m)] = rep.rate;
        auto cert = achievable(p, target);
        CHECK(feasible(assemble_composite_system(p, default_choice(p)).poly, cert.assignment));
    }
}

TEST_CASE("hex codec round trips")
{
    BitString bits = {1, 0, 1, 0, 0, 0, 0, 1, 1};
    CHECK(bits_to_hex(bits) == "a18");
    CHECK(hex_to_bits("a18", 9) == bits);
    CHECK(bits_to_hex({}) == "");
    CHECK(hex_to_bits("", 0).empty());
    CHECK_THROWS_AS(hex_to_bits("a1", 9), InputError);
    CHECK_THROWS_AS(hex_to_bits("zz", 8), InputError);

    auto t = run(build_scheme(3, 2, 8), 5);
    for (const auto& m : t.messages) CHECK(hex_to_bits(bits_to_hex(m), m.size()) == m);
}
