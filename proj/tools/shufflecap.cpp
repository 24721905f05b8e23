#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "shufflecap/report.hpp"
#include "shufflecap/util.hpp"

using namespace shufflecap;
using nlohmann::json;

namespace {

struct GlobalOpts {
    std::string out;
    std::string format = "json";
    uint64_t budget = 0;
    std::string strategy = "default";
    unsigned threads = 1;
    bool timings = false;
};

StrategyOptions strategy_options(const std::string& name)
{
    StrategyOptions s;
    s.mode = name == "maximal"      ? StrategyMode::Maximal
             : name == "exhaustive" ? StrategyMode::Exhaustive
                                    : StrategyMode::Default;
    return s;
}

CheckOptions check_options(const GlobalOpts& g)
{
    CheckOptions opts;
    opts.strategy = strategy_options(g.strategy);
    opts.outer.enumerate.budget = g.budget;
    opts.threads = g.threads;
    opts.record_timings = g.timings;
    return opts;
}

json base_config(const GlobalOpts& g)
{
    return {{"format", g.format}, {"budget", g.budget}, {"strategy", g.strategy},
            {"threads", g.threads}, {"timings", g.timings}};
}

DcInstance load_instance(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open instance file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("instance file " + path + ": " + e.what());
    }
    auto inst = DcInstance::from_json(j);
    auto violations = validate(inst);
    if (!violations.empty()) {
        std::string msg = "invalid instance " + path + ":";
        for (const auto& v : violations) msg += "\n  [" + v.code + "] " + v.detail;
        throw ValidationFailed(msg);
    }
    return inst;
}

void emit(const GlobalOpts& g, const std::string& text)
{
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out, std::ios::binary);
    if (!out) throw InputError("cannot write to " + g.out);
    out << text;
}

std::string region_text(const HPolytope& region, const std::string& indent = "  ")
{
    std::string s;
    if (region.ineqs.empty()) s += indent + "(origin only)\n";
    for (const auto& iq : region.ineqs) s += indent + iq.str() + "\n";
    return s;
}

std::string point_text(const std::map<VarLabel, Rational>& pt)
{
    std::string s;
    for (const auto& [v, val] : pt) s += (s.empty() ? "" : ", ") + v.str() + "=" + rat_str(val);
    return s.empty() ? "(empty)" : s;
}

std::string check_text(const CheckReport& rep)
{
    std::ostringstream os;
    os << "verdict: " << verdict_name(rep.verdict) << "\n";
    os << "outer bound:\n" << region_text(rep.outer);
    size_t maximal = 0, achieved = 0;
    for (const auto& vr : rep.vertex_reports) {
        maximal += vr.pareto ? 1 : 0;
        achieved += vr.achieved ? 1 : 0;
    }
    os << "vertices: " << rep.vertex_reports.size() << " (" << maximal << " maximal, " << achieved
       << " achieved)\n";
    os << "inner route: " << (rep.inner_route_fme ? "projection" : "facet-lp") << "\n";
    for (size_t i = 0; i < rep.inner_polys.size(); ++i) {
        os << "inner region [" << rep.inner_choice_names[i] << "]:\n"
           << region_text(rep.inner_polys[i]);
    }
    if (rep.gap_witness)
        os << "gap (" << rep.gap_side << " side) witness: " << point_text(*rep.gap_witness) << "\n";
    if (!rep.undecided_reason.empty()) os << "undecided: " << rep.undecided_reason << "\n";
    for (const auto& n : rep.notes) os << "note: " << n << "\n";
    return os.str();
}

int cmd_gen(const GlobalOpts& g, int K, int r, int eta1, int Q, const std::string& cap)
{
    auto C = parse_rational(cap);
    if (C < 0) throw InputError("capacity must be nonnegative");
    auto inst = gen_family(K, r, eta1, Q, std::vector<Rational>(K, C));
    emit(g, render_json(inst.to_json()));
    return 0;
}

int cmd_analyze(const GlobalOpts& g, const std::string& path)
{
    auto inst = load_instance(path);
    json config = base_config(g);
    config["instance"] = path;
    json j = analyze_report(inst, config);
    if (g.format == "json") {
        emit(g, render_json(j));
        return 0;
    }
    std::ostringstream os;
    os << "K=" << j["K"] << " N=" << j["N"] << " Q=" << j["Q"] << " F=" << j["F"]
       << " r=" << j["r"].get<std::string>() << "\n";
    os << "messages: " << j["message_count"] << "\n";
    os << "mais: " << j["mais"]["size"] << " witness:";
    for (const auto& m : j["mais"]["witness"]) os << " " << m.get<std::string>();
    os << "\n";
    for (const auto& n : j["notes"]) os << "note: " << n.get<std::string>() << "\n";
    emit(g, os.str());
    return 0;
}

int cmd_outer(const GlobalOpts& g, const std::string& path)
{
    auto p = derive_shuffle_problem(load_instance(path));
    OuterOptions opts;
    opts.enumerate.budget = g.budget;
    auto region = prop1_region(p, opts);
    json config = base_config(g);
    config["instance"] = path;
    if (g.format == "json")
        emit(g, render_json(outer_report(p, region, config)));
    else
        emit(g, "outer bound:\n" + region_text(region));
    return 0;
}

int cmd_inner(const GlobalOpts& g, const std::string& path)
{
    auto p = derive_shuffle_problem(load_instance(path));
    auto region = inner_region(p, strategy_options(g.strategy));
    json config = base_config(g);
    config["instance"] = path;
    if (g.format == "json") {
        emit(g, render_json(inner_report(region, config)));
        return 0;
    }
    std::string s;
    for (size_t i = 0; i < region.polys.size(); ++i)
        s += "inner region [" + region.choice_names[i] + "]:\n" + region_text(region.polys[i]);
    emit(g, s);
    return 0;
}

int cmd_check(const GlobalOpts& g, const std::string& path)
{
    auto p = derive_shuffle_problem(load_instance(path));
    auto rep = check_capacity(p, check_options(g));
    json config = base_config(g);
    config["instance"] = path;
    if (g.format == "json")
        emit(g, render_json(check_report(p, rep, config)));
    else
        emit(g, check_text(rep));
    return 0;
}

int cmd_simulate(const GlobalOpts& g, int K, int r, int L, uint64_t seed, uint64_t seeds,
                 const std::string& cap)
{
    auto C = parse_rational(cap);
    auto scheme = build_scheme(K, r, L);
    std::vector<ShuffleTranscript> runs;
    for (uint64_t s = 0; s < seeds; ++s) runs.push_back(run(scheme, seed + s));
    auto rates = rate_report(scheme, std::vector<Rational>(K, C));

    json config = base_config(g);
    config["K"] = K;
    config["r"] = r;
    config["L"] = L;
    config["seed"] = seed;
    config["seeds"] = seeds;
    config["capacity"] = rat_str(C);
    if (g.format == "json") {
        emit(g, render_json(simulate_report(scheme, runs, rates, config, seeds == 1)));
        return 0;
    }
    std::ostringstream os;
    os << "scheme: K=" << K << " r=" << r << " g=" << scheme.g << " L=" << L << "\n";
    for (int j = 0; j < K; ++j) {
        os << "sender " << j << ":";
        for (const auto& ref : scheme.plan[j])
            os << " seg" << ref.segment << "(V" << ref.message << ")";
        os << "\n";
    }
    size_t ok = 0;
    for (const auto& t : runs) ok += t.all_ok() ? 1 : 0;
    os << "runs: " << runs.size() << ", decode-exact: " << ok << "\n";
    os << "rate per message: " << rat_str(rates.rate)
       << (rates.group_rows_tight ? " (boundary tight)" : " (off boundary)") << "\n";
    emit(g, os.str());
    return 0;
}

int cmd_family(const GlobalOpts& g, int K_max, const std::string& cap)
{
    auto C = parse_rational(cap);
    auto rows = verify_family(K_max, C, check_options(g));
    json config = base_config(g);
    config["K_max"] = K_max;
    config["capacity"] = rat_str(C);
    if (g.format == "json") {
        emit(g, render_json(family_report(rows, config)));
        return 0;
    }
    std::ostringstream os;
    for (const auto& row : rows) {
        os << "K=" << row.K << " r=" << row.r << " g=" << row.g << " mais=" << row.mais
           << (row.mais_expected ? "" : " (unexpected)")
           << " outer=" << (row.outer_matches_family ? "family" : "DIFFERS")
           << " symmetric=" << (row.symmetric_point_tight ? "tight" : "LOOSE")
           << " verdict=" << verdict_name(row.check.verdict) << "\n";
    }
    emit(g, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"shuffle-phase capacity toolkit"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--out", g.out, "write the report to this file instead of stdout");
    app.add_option("--format", g.format, "report format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_option("--budget", g.budget, "acyclic-subset enumeration budget, 0 = unlimited");
    app.add_option("--strategy", g.strategy, "decoding-set strategy")
        ->check(CLI::IsMember({"default", "maximal", "exhaustive"}))
        ->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads for vertex achievability");
    app.add_flag("--timings", g.timings, "include wall-clock phase timings in reports");

    int K = 0, r = 0, eta1 = 2, Q = 0, L = 8, K_max = 0;
    uint64_t seed = 0, seeds = 1;
    std::string cap = "1";
    std::string instance_path;

    auto* gen = app.add_subcommand("gen", "emit a uniform-replication family instance");
    gen->add_option("--K", K, "node count")->required();
    gen->add_option("--r", r, "computation load")->required();
    gen->add_option("--eta1", eta1, "files per batch")->capture_default_str();
    gen->add_option("--Q", Q, "reduce function count, 0 = K")->capture_default_str();
    gen->add_option("--C", cap, "uniform link capacity")->capture_default_str();

    auto* analyze = app.add_subcommand("analyze", "instance profile and MAIS");
    analyze->add_option("instance", instance_path, "instance JSON file")->required();
    auto* outer = app.add_subcommand("outer", "acyclic-subset outer bound");
    outer->add_option("instance", instance_path, "instance JSON file")->required();
    auto* inner = app.add_subcommand("inner", "composite-coding inner bound");
    inner->add_option("instance", instance_path, "instance JSON file")->required();
    auto* check = app.add_subcommand("check", "certify MATCH / GAP / UNDECIDED");
    check->add_option("instance", instance_path, "instance JSON file")->required();

    auto* simulate = app.add_subcommand("simulate", "run the XOR segment scheme bit-exactly");
    simulate->add_option("--K", K, "node count")->required();
    simulate->add_option("--r", r, "computation load")->required();
    simulate->add_option("--L", L, "segment bits")->capture_default_str();
    simulate->add_option("--seed", seed, "first seed")->capture_default_str();
    simulate->add_option("--seeds", seeds, "number of consecutive seeds")->capture_default_str();
    simulate->add_option("--C", cap, "uniform link capacity")->capture_default_str();

    auto* family = app.add_subcommand("family", "sweep all valid (K, r) up to K_max");
    family->add_option("--Kmax", K_max, "largest node count")->required();
    family->add_option("--C", cap, "uniform link capacity")->capture_default_str();

    for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(g, K, r, eta1, Q, cap);
        if (analyze->parsed()) return cmd_analyze(g, instance_path);
        if (outer->parsed()) return cmd_outer(g, instance_path);
        if (inner->parsed()) return cmd_inner(g, instance_path);
        if (check->parsed()) return cmd_check(g, instance_path);
        if (simulate->parsed()) return cmd_simulate(g, K, r, L, seed, seeds, cap);
        if (family->parsed()) return cmd_family(g, K_max, cap);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
