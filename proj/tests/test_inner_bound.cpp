#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "shufflecap/inner_bound.hpp"
#include "shufflecap/outer_bound.hpp"
#include "shufflecap/vertex_enum.hpp"
#include "test_support.hpp"

using namespace sct;

namespace {

VarLabel gam(std::vector<MessageId> J, int j) { return VarLabel::composite(std::move(J), j); }

LinearInequality row(const std::vector<std::pair<VarLabel, int>>& terms, Rational rhs)
{
    LinearInequality iq;
    for (const auto& [v, c] : terms) iq.coeffs[v] = c;
    iq.rhs = rhs;
    return iq;
}

HPolytope cube_region(const std::vector<MessageId>& msgs, Rational hi)
{
    HPolytope p;
    for (const auto& m : msgs) p.vars.push_back(VarLabel::rate(m));
    for (const auto& m : msgs) {
        LinearInequality iq;
        iq.coeffs[VarLabel::rate(m)] = 1;
        iq.rhs = hi;
        p.ineqs.push_back(std::move(iq));
    }
    return p;
}

std::map<VarLabel, Rational> rate_point(const std::vector<MessageId>& msgs, const std::vector<Rational>& vals)
{
    std::map<VarLabel, Rational> t;
    for (size_t i = 0; i < msgs.size(); ++i) t[VarLabel::rate(msgs[i])] = vals[i];
    return t;
}

} // namespace

TEST_CASE("default and maximal choices on the three node example")
{
    auto p = derive_shuffle_problem(example1());
    auto def = default_choice(p);
    REQUIRE(def.dsets.size() == 6);
    CHECK(def.dset({0, 0}, 1) == std::vector<MessageId>{{0, 0}, {2, 2}});
    CHECK(def.dset({0, 0}, 2) == std::vector<MessageId>{{0, 0}, {1, 1}});
    CHECK(def.dset({1, 1}, 0) == std::vector<MessageId>{{1, 1}, {2, 2}});
    CHECK_THROWS_AS(def.dset({0, 0}, 0), IncompleteChoice);

    // here every default set already fills the whole side information
    CHECK(maximal_choice(p).dsets == def.dsets);
}

TEST_CASE("strategy tiers and caps")
{
    auto p1 = derive_shuffle_problem(example1());
    CHECK(decoding_strategies(p1).size() == 1);
    CHECK(decoding_strategies(p1, {StrategyMode::Maximal}).size() == 1);

    auto ex = decoding_strategies(p1, {StrategyMode::Exhaustive});
    REQUIRE(ex.size() == 64); // two decode sets per pair, six pairs
    CHECK(ex[0].name == "default");
    CHECK(ex[1].name == "choice-0");
    for (size_t a = 0; a < ex.size(); ++a)
        for (size_t b = a + 1; b < ex.size(); ++b) CHECK(ex[a].dsets != ex[b].dsets);

    StrategyOptions capped{StrategyMode::Exhaustive, 6, 10};
    CHECK(decoding_strategies(p1, capped).size() == 10);
    StrategyOptions tight{StrategyMode::Exhaustive, 1, 4096};
    CHECK(decoding_strategies(p1, tight).size() == 1); // side info wider than the cap

    auto p2 = derive_shuffle_problem(example2());
    auto tiers = decoding_strategies(p2, {StrategyMode::Maximal});
    REQUIRE(tiers.size() == 2);
    CHECK(tiers[1].name == "maximal");
    CHECK(tiers[1].dset({0, 0}, 1) == p2.side_info[1]);
}

TEST_CASE("link constraints expand exactly on the three node example")
{
    auto p = derive_shuffle_problem(example1());
    auto rows = link_constraints(p);
    std::vector<LinearInequality> want = {
        row({{gam({{1, 1}}, 0), 1}, {gam({{1, 1}, {2, 2}}, 0), 1}}, 1),
        row({{gam({{2, 2}}, 0), 1}, {gam({{1, 1}, {2, 2}}, 0), 1}}, 1),
        row({{gam({{0, 0}}, 1), 1}, {gam({{0, 0}, {2, 2}}, 1), 1}}, 1),
        row({{gam({{2, 2}}, 1), 1}, {gam({{0, 0}, {2, 2}}, 1), 1}}, 1),
        row({{gam({{0, 0}}, 2), 1}, {gam({{0, 0}, {1, 1}}, 2), 1}}, 1),
        row({{gam({{1, 1}}, 2), 1}, {gam({{0, 0}, {1, 1}}, 2), 1}}, 1),
    };
    CHECK(rows == want);
}

TEST_CASE("link constraints merge duplicate receivers and skip covered ones")
{
    // two receivers with identical holdings produce one row
    auto p = make_shuffle_problem(3, {{1, 0}, {2, 0}}, {{{1, 0}, {2, 0}}, {}, {}}, {1, 1, 1});
    auto rows = link_constraints(p);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0] == row({{gam({{1, 0}}, 0), 1}, {gam({{2, 0}}, 0), 1}, {gam({{1, 0}, {2, 0}}, 0), 1}}, 1));

    // a receiver holding everything the sender holds contributes nothing
    auto q = make_shuffle_problem(3, {{2, 0}}, {{{2, 0}}, {{2, 0}}, {}}, {1, 1, 1});
    auto qr = link_constraints(q);
    REQUIRE(qr.size() == 2);
    CHECK(qr[0] == row({{gam({{2, 0}}, 0), 1}}, 1));
    CHECK(qr[1] == row({{gam({{2, 0}}, 1), 1}}, 1));
}

TEST_CASE("two node link constraint is a single capacity cap")
{
    auto p = make_shuffle_problem(2, {{0, 0}, {1, 1}}, {{{1, 1}}, {{0, 0}}}, {1, Rational(1) / 2});
    auto rows = link_constraints(p);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == row({{gam({{1, 1}}, 0), 1}}, 1));
    CHECK(rows[1] == row({{gam({{0, 0}}, 1), 1}}, Rational(1) / 2));
}

TEST_CASE("polymatroid constraints expand exactly under the default choice")
{
    auto p = derive_shuffle_problem(example1());
    auto rows = polymatroid_constraints(p, default_choice(p));
    std::vector<LinearInequality> want = {
        row({{VarLabel::partial({0, 0}, 1), 1}, {gam({{0, 0}}, 1), -1}, {gam({{0, 0}, {2, 2}}, 1), -1}}, 0),
        row({{VarLabel::partial({0, 0}, 2), 1}, {gam({{0, 0}}, 2), -1}, {gam({{0, 0}, {1, 1}}, 2), -1}}, 0),
        row({{VarLabel::partial({1, 1}, 0), 1}, {gam({{1, 1}}, 0), -1}, {gam({{1, 1}, {2, 2}}, 0), -1}}, 0),
        row({{VarLabel::partial({1, 1}, 2), 1}, {gam({{1, 1}}, 2), -1}, {gam({{0, 0}, {1, 1}}, 2), -1}}, 0),
        row({{VarLabel::partial({2, 2}, 0), 1}, {gam({{2, 2}}, 0), -1}, {gam({{1, 1}, {2, 2}}, 0), -1}}, 0),
        row({{VarLabel::partial({2, 2}, 1), 1}, {gam({{2, 2}}, 1), -1}, {gam({{0, 0}, {2, 2}}, 1), -1}}, 0),
    };
    CHECK(rows == want);

    DecodingChoice bad{"bad", {}};
    CHECK_THROWS_AS(polymatroid_constraints(p, bad), IncompleteChoice);

    DecodingChoice wrong = default_choice(p);
    wrong.dsets[{{0, 0}, 1}] = {{2, 2}}; // misses the message itself
    CHECK_THROWS_AS(polymatroid_constraints(p, wrong), InputError);
}

TEST_CASE("rate splitting rows cover every sender that holds the message")
{
    auto p = derive_shuffle_problem(example1());
    auto rows = rate_sum_constraints(p);
    std::vector<LinearInequality> want = {
        row({{VarLabel::rate({0, 0}), 1}, {VarLabel::partial({0, 0}, 1), -1}, {VarLabel::partial({0, 0}, 2), -1}}, 0),
        row({{VarLabel::rate({1, 1}), 1}, {VarLabel::partial({1, 1}, 0), -1}, {VarLabel::partial({1, 1}, 2), -1}}, 0),
        row({{VarLabel::rate({2, 2}), 1}, {VarLabel::partial({2, 2}, 0), -1}, {VarLabel::partial({2, 2}, 1), -1}}, 0),
    };
    CHECK(rows == want);

    // full clique: every other node holds the single message of node 0
    auto p43 = derive_shuffle_problem(gen_family(4, 3));
    auto r43 = rate_sum_constraints(p43);
    REQUIRE(r43.size() == 4);
    CHECK(r43[0] == row({{VarLabel::rate({0, 0}), 1},
                         {VarLabel::partial({0, 0}, 1), -1},
                         {VarLabel::partial({0, 0}, 2), -1},
                         {VarLabel::partial({0, 0}, 3), -1}},
                        0));
}

TEST_CASE("assembled system shape and tags")
{
    auto p = derive_shuffle_problem(example1());
    auto sys = assemble_composite_system(p, default_choice(p));
    CHECK(sys.rate_vars.size() == 3);
    CHECK(sys.partial_vars.size() == 6);
    CHECK(sys.gamma_vars.size() == 9); // three nonempty subsets per sender
    CHECK(sys.poly.vars.size() == 18);
    REQUIRE(sys.poly.ineqs.size() == 15);
    REQUIRE(sys.tags.size() == 15);
    for (int i = 0; i < 6; ++i) CHECK(sys.tags[i] == ConstraintTag::Link);
    for (int i = 6; i < 12; ++i) CHECK(sys.tags[i] == ConstraintTag::Polymatroid);
    for (int i = 12; i < 15; ++i) CHECK(sys.tags[i] == ConstraintTag::RateSum);
}

TEST_CASE("composite region of the three node example is the cube at two")
{
    auto p = derive_shuffle_problem(example1());
    HPolytope reg = composite_region(p, default_choice(p));
    CHECK(same_canonical(reg, canonicalized(cube_region(p.messages, 2))));
    CHECK(same_canonical(reg, prop1_region(p))); // inner meets outer here
}

TEST_CASE("composite region of the six node example pairs nodes three apart")
{
    auto p = derive_shuffle_problem(example2());
    HPolytope reg = composite_region(p, default_choice(p));
    CHECK(same_canonical(reg, family_outer_region(6, 4)));
}

TEST_CASE("zero capacities pin the region to the origin")
{
    std::vector<Rational> zero(3, Rational(0));
    auto p = derive_shuffle_problem(gen_family(3, 2, 2, 0, zero));
    HPolytope reg = composite_region(p, default_choice(p));
    CHECK(same_canonical(reg, canonicalized(cube_region(p.messages, 0))));
}

TEST_CASE("no messages no variables")
{
    // everyone maps everything
    DcInstance inst;
    inst.K = 2;
    inst.F = 1;
    inst.N = 2;
    inst.Q = 2;
    inst.map_assignment = {{0}, {0}};
    inst.reduce_assignment = {{0}, {1}};
    inst.capacities = {1, 1};
    REQUIRE(validate(inst).empty());
    auto p = derive_shuffle_problem(inst);
    REQUIRE(p.messages.empty());
    HPolytope reg = composite_region(p, default_choice(p));
    CHECK(reg.vars.empty());
    CHECK(reg.ineqs.empty());
    auto cert = achievable(p, {});
    CHECK(cert.choice == "default");
    CHECK(cert.assignment.empty());
}

TEST_CASE("inner region lists one polytope per distinct choice")
{
    auto p = derive_shuffle_problem(example1());
    InnerRegion inner = inner_region(p);
    REQUIRE(inner.polys.size() == 1);
    CHECK(inner.choice_names == std::vector<std::string>{"default"});
    CHECK(same_canonical(inner.polys[0], canonicalized(cube_region(p.messages, 2))));
}

TEST_CASE("every exhaustive choice stays inside the default region on the three node example")
{
    auto p = derive_shuffle_problem(example1());
    HPolytope def = composite_region(p, default_choice(p));
    InnerRegion inner = inner_region(p, {StrategyMode::Exhaustive});
    REQUIRE(inner.polys.size() == 64);
    for (const auto& reg : inner.polys) CHECK(lp_subset(reg, def));
}

TEST_CASE("the hand-built certificates satisfy the assembled systems")
{
    auto p1 = derive_shuffle_problem(example1());
    auto sys1 = assemble_composite_system(p1, default_choice(p1));
    std::map<VarLabel, Rational> a;
    for (const auto& v : sys1.poly.vars) a[v] = 0;
    for (const auto& m : p1.messages) a[VarLabel::rate(m)] = 2;
    a[gam({{1, 1}, {2, 2}}, 0)] = 1;
    a[gam({{0, 0}, {2, 2}}, 1)] = 1;
    a[gam({{0, 0}, {1, 1}}, 2)] = 1;
    for (const auto& m : p1.messages)
        for (int j = 0; j < 3; ++j)
            if (p1.in_side_info(j, m)) a[VarLabel::partial(m, j)] = 1;
    CHECK(feasible(sys1.poly, a));

    auto p2 = derive_shuffle_problem(example2());
    auto sys2 = assemble_composite_system(p2, default_choice(p2));
    std::map<VarLabel, Rational> b;
    for (const auto& v : sys2.poly.vars) b[v] = 0;
    for (const auto& m : p2.messages) b[VarLabel::rate(m)] = 2;
    for (int k = 0; k < 6; ++k) {
        MessageId m1{(k + 1) % 6, ((k + 1) % 6) % 3}, m2{(k + 2) % 6, ((k + 2) % 6) % 3};
        b[gam({std::min(m1, m2), std::max(m1, m2)}, k)] = 1;
        b[VarLabel::partial(m1, k)] = 1;
        b[VarLabel::partial(m2, k)] = 1;
    }
    CHECK(feasible(sys2.poly, b));
}

TEST_CASE("achievable certifies the corner points")
{
    auto p1 = derive_shuffle_problem(example1());
    auto cert = achievable(p1, rate_point(p1.messages, {2, 2, 2}));
    CHECK(cert.choice == "default");
    auto sys = assemble_composite_system(p1, default_choice(p1));
    CHECK(feasible(sys.poly, cert.assignment));

    auto p2 = derive_shuffle_problem(example2());
    CHECK_NOTHROW(achievable(p2, rate_point(p2.messages, {2, 2, 2, 2, 2, 2})));

    // and the restricted column shortcut agrees with the full solve
    AchieveOptions full;
    full.restricted_first = false;
    CHECK_NOTHROW(achievable(p2, rate_point(p2.messages, {2, 2, 2, 2, 2, 2}), full));
}

TEST_CASE("a point just outside is rejected by every choice")
{
    auto p = derive_shuffle_problem(example1());
    AchieveOptions opts;
    opts.strategy.mode = StrategyMode::Exhaustive;
    auto target = rate_point(p.messages, {2, 2, Rational(2) + Rational(1) / 1000});
    try {
        achievable(p, target, opts);
        FAIL("expected StrategyExhausted");
    } catch (const StrategyExhausted& e) {
        CHECK(e.failures.size() == 64);
        for (const auto& f : e.failures) CHECK(!f.reason.empty());
    }
}

TEST_CASE("achievable validates its target")
{
    auto p = derive_shuffle_problem(example1());
    std::map<VarLabel, Rational> missing;
    missing[VarLabel::rate({0, 0})] = 1;
    CHECK_THROWS_AS(achievable(p, missing), InputError);

    auto neg = rate_point(p.messages, {2, 2, -1});
    CHECK_THROWS_AS(achievable(p, neg), InputError);

    auto extra = rate_point(p.messages, {1, 1, 1});
    extra[VarLabel::partial({0, 0}, 1)] = 1;
    CHECK_THROWS_AS(achievable(p, extra), InputError);

    auto unknown = rate_point(p.messages, {1, 1, 1});
    unknown[VarLabel::rate({5, 0})] = 1;
    CHECK_THROWS_AS(achievable(p, unknown), InputError);
}

TEST_CASE("projection and feasibility queries agree on random instances")
{
    std::mt19937_64 rng(404);
    int done = 0;
    for (int it = 0; it < 60 && done < 8; ++it) {
        auto p = derive_shuffle_problem(random_instance(rng, 3, 2));
        if (p.messages.empty() || p.messages.size() > 4) continue;
        auto choice = default_choice(p);
        HPolytope reg = composite_region(p, choice);
        for (const auto& v : vertices(reg)) {
            std::map<VarLabel, Rational> t;
            for (size_t i = 0; i < reg.vars.size(); ++i) t[reg.vars[i]] = v[i];
            CHECK_NOTHROW(achievable(p, t, {choice}, {}));
            for (size_t i = 0; i < reg.vars.size(); ++i) {
                auto probe = t;
                probe[reg.vars[i]] += Rational(1) / 7;
                if (feasible(reg, probe)) continue; // still inside, not a counterexample
                CHECK_THROWS_AS(achievable(p, probe, {choice}, {}), StrategyExhausted);
            }
        }
        ++done;
    }
    CHECK(done == 8);
}

TEST_CASE("blowup and width budgets surface as budget errors")
{
    auto p2 = derive_shuffle_problem(example2());
    FmeOptions tiny;
    tiny.blowup_cap = 10;
    CHECK_THROWS_AS(composite_region(p2, default_choice(p2), tiny), BlowupBudgetExceeded);

    // 21 messages held by one sender: subset enumeration refuses
    std::vector<MessageId> msgs;
    for (int f = 1; f <= 21; ++f) msgs.push_back({1, f});
    std::vector<std::vector<MessageId>> side{msgs, {}};
    CHECK_THROWS_AS(link_constraints(make_shuffle_problem(2, msgs, side, {1, 1})), BlowupBudgetExceeded);
}
