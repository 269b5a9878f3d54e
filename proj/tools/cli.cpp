#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "itlab/construct.hpp"
#include "itlab/error.hpp"
#include "itlab/eta.hpp"
#include "itlab/itp_io.hpp"
#include "itlab/itsolve.hpp"
#include "itlab/region.hpp"
#include "itlab/serialize.hpp"
#include "itlab/structure.hpp"

namespace itlab::cli {
namespace {

// Ordered key/value lines, printed aligned or as key=value.
class Report {
public:
    void add(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }
    void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
    void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
    template <class T>
        requires std::is_arithmetic_v<T>
    void add(std::string key, T value) { add(std::move(key), std::to_string(value)); }
    void add_rational(const std::string& key, const Rational& x) {
        add(key, to_string(x));
        add(key + "_decimal", to_decimal(x));
    }

    void print(std::ostream& out, bool kv) const {
        std::size_t width = 0;
        for (const auto& [k, v] : rows_) width = std::max(width, k.size());
        for (const auto& [k, v] : rows_) {
            if (kv) out << k << '=' << v << '\n';
            else out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
        }
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

std::string join_ids(const std::vector<Vertex>& vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i] + 1);
    return s;
}

std::vector<Rational> parse_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(parse_rational(item));
    if (out.empty()) throw ParseError(0, "empty list");
    return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    for (const auto& r : parse_list(text)) {
        if (r < 0 || denominator(r) != 1) throw ParseError(0, "sequence entries must be nonnegative integers");
        out.push_back(static_cast<std::size_t>(numerator(r).convert_to<long long>()));
    }
    return out;
}

void add_stats(Report& rep, const PartitionedGraph& pg) {
    auto s = block_stats(pg);
    rep.add("n", pg.graph().order());
    rep.add("m", pg.graph().size());
    rep.add("r", pg.block_count());
    rep.add("delta", s.delta);
    rep.add("thickness", s.thickness);
    rep.add_rational("b", s.b);
}

SolveLimits solve_limits(const RunConfig& cfg) {
    SolveLimits l;
    l.node_budget = cfg.node_budget;
    if (cfg.time_budget_ms) l.time_budget = std::chrono::milliseconds(*cfg.time_budget_ms);
    return l;
}

struct Options {
    RunConfig cfg;
    std::string in, out, cert, bp, graph;
    std::string t_text, alpha, beta, seq, strategy = "step", policy = "none";
    std::size_t t = 0, c = 1, k = 0, samples = 8, digits = 6;
    int depth = 12;
    std::optional<std::int64_t> target;
    std::string trace, gamma, alphas, betas;
    bool count = false, criteria = false, game_only = false;
};

int run_gen(const Options& o, bool augmented, std::ostream& out) {
    Rational alpha = parse_rational(o.alpha), beta = parse_rational(o.beta);
    std::optional<std::vector<std::size_t>> seq;
    if (!o.seq.empty()) seq = parse_sizes(o.seq);
    CertifiedInstance inst;
    if (augmented) {
        AugmentOptions ao;
        ao.c = o.c;
        ao.sequence = seq;
        if (o.strategy == "single") ao.strategy = AugmentStrategy::Single;
        else if (o.strategy != "step") throw ParseError(0, "--strategy must be step or single");
        inst = gen_augmented(o.t, alpha, beta, ao);
    } else {
        inst = gen_layered(o.t, alpha, beta, seq);
    }
    if (!o.out.empty()) save_itp(o.out, inst.pg);
    if (!o.cert.empty()) save_json(o.cert, certificate_to_json(*inst.cert));
    Report rep;
    rep.add("construction", augmented ? "augmented" : "layered");
    add_stats(rep, inst.pg);
    rep.add("certificate", check_certificate(inst.pg, *inst.cert).ok ? "valid" : "invalid");
    rep.print(out, o.cfg.kv);
    return kOk;
}

int run_solve(const Options& o, std::ostream& out) {
    auto pg = load_itp(o.in);
    Report rep;
    auto outcome = find_it(pg, solve_limits(o.cfg));
    rep.add("status", to_string(outcome.status));
    rep.add("nodes", outcome.nodes_explored);
    if (outcome.witness) rep.add("witness", join_ids(outcome.witness->choice));
    if (o.count) {
        auto c = count_it(pg, solve_limits(o.cfg));
        rep.add("count", c.complete ? c.count.str() : std::string("timeout"));
        rep.add("count_nodes", c.nodes_explored);
    }
    if (o.criteria) {
        rep.add("haxell", haxell_condition(pg));
        rep.add("ww", ww_condition(pg));
        if (static_cast<std::size_t>(pg.block_count()) <= o.cfg.subset_cap) {
            CriterionOptions co;
            co.subset_cap = o.cfg.subset_cap;
            co.eta.memo_cap = o.cfg.memo_cap;
            auto v = eta_criterion(pg, co);
            std::vector<Vertex> subset(v.subset.begin(), v.subset.end());
            rep.add("eta_criterion", to_string(v.verdict));
            if (!v.subset.empty()) rep.add("eta_criterion_subset", join_ids(subset));
        } else {
            rep.add("eta_criterion", "skipped (block count above subset cap)");
        }
    }
    rep.print(out, o.cfg.kv);
    return kOk;
}

int run_eta(const Options& o, std::ostream& out) {
    auto pg = load_itp(o.in);
    const Graph& g = pg.graph();
    EtaLimits limits;
    limits.max_depth = o.depth;
    limits.node_budget = o.cfg.node_budget;
    limits.target = o.target;
    limits.memo_cap = o.cfg.memo_cap;
    EtaRules rules;
    if (o.game_only) rules.degree = rules.density = rules.exact_at_most_one = false;
    auto bound = eta_lower_bound(g, limits, rules);
    Report rep;
    rep.add("eta_lower_bound", bound.value.str());
    rep.add("rule", std::string(rule_name(bound.trace->rule)));
    rep.add("complete", bound.complete);
    rep.add("depth_completed", bound.depth_completed);
    rep.add("budget_exhausted", bound.budget_exhausted);
    rep.add("nodes", bound.nodes);
    if (g.order() > 0 && !DenseGraph(g).has_isolated_vertex()) rep.add("eta_exactly_one", eta_at_most_one(g));
    if (o.target) rep.add("target_reached", bound.value >= EtaValue(*o.target));
    if (!o.trace.empty()) {
        auto resolved = resolve_trace(g, *bound.trace);
        if (!resolved) throw std::logic_error("trace failed to replay");
        save_json(o.trace, trace_to_json(*resolved));
    }
    rep.print(out, o.cfg.kv);
    return kOk;
}

ExtractOptions extract_options(const Options& o) {
    ExtractOptions eo;
    if (o.policy == "game") eo.policy = DeletionPolicy::Game;
    else if (o.policy != "none") throw ParseError(0, "--policy must be none or game");
    eo.eta.memo_cap = o.cfg.memo_cap;
    return eo;
}

void add_partition_checks(Report& rep, const Graph& g, const BasicPartition& bp) {
    auto basic = verify_basic(g, bp);
    auto tech = techlem_check(g, bp);
    rep.add("k", bp.k());
    rep.add("unassigned", bp.unassigned.size());
    rep.add("partition", basic.partition);
    rep.add("cond_a", basic.cond_a);
    rep.add("cond_b_slack", basic.cond_b_slack);
    rep.add("techlem_slack", tech.slack);
    rep.add("Q", tech.q);
}

int run_partition(const Options& o, const std::string& mode, std::ostream& out) {
    auto pg = load_itp(o.in);
    const Graph& g = pg.graph();
    Report rep;
    if (mode == "extract") {
        auto bp = extract_basic_partition(g, extract_options(o));
        if (!o.out.empty()) save_json(o.out, basic_partition_to_json(bp));
        add_partition_checks(rep, g, bp);
        rep.print(out, o.cfg.kv);
        return kOk;
    }
    if (mode == "check") {
        auto bp = basic_partition_from_json(load_json(o.bp));
        auto basic = verify_basic(g, bp);
        add_partition_checks(rep, g, bp);
        rep.print(out, o.cfg.kv);
        return basic.partition && basic.cond_a ? kOk : kNegative;
    }
    // key2
    auto result = key2_extract(g, o.k, parse_rational(o.gamma), extract_options(o));
    if (!o.out.empty()) {
        Json j = basic_partition_to_json(result.partition);
        Json w = Json::array();
        for (Vertex v : result.report.w) w.push_back(v + 1);
        j["w"] = std::move(w);
        save_json(o.out, j);
    }
    const auto& r = result.report;
    rep.add("k0", r.k0);
    rep.add("w", r.w.size());
    rep.add("unassigned", result.partition.unassigned.size());
    rep.add_rational("epsilon", r.epsilon);
    rep.add_rational("theta", r.theta);
    rep.add_rational("zeta", r.zeta);
    rep.add("conforming", r.conforming);
    rep.add("nonconforming", r.nonconforming);
    rep.add("zeta_le_epsilon", r.zeta_le_epsilon);
    rep.add("k_gap_ok", r.k_gap_ok);
    rep.add("w_ok", r.w_ok);
    rep.add_rational("u_bound", r.u_bound);
    rep.add("u_ok", r.u_ok);
    rep.add("cond_a", verify_basic(g, result.partition).cond_a);
    rep.print(out, o.cfg.kv);
    return kOk;
}

int run_stability(const Options& o, std::ostream& out) {
    auto pg = load_itp(o.in);
    auto bp = basic_partition_from_json(load_json(o.bp));
    auto r = stability_report(pg.graph(), o.k, bp);
    Report rep;
    rep.add("n", r.n);
    rep.add("d", r.d);
    rep.add("k", r.k);
    rep.add_rational("epsilon", r.epsilon);
    rep.add("z", r.z);
    rep.add("m", r.m);
    rep.add("Q", r.q);
    rep.add("sym_diff", r.sym_diff);
    rep.add_rational("gamma", r.gamma);
    rep.add("z_le_eps_n", r.z_ok);
    rep.add("m_le_2eps_dn", r.m_ok);
    rep.add("Q_le_eps_dn_half", r.q_ok);
    rep.add("edges_ge_dn_one_minus_eps", r.edges_ok);
    if (r.hypothesis_impossible) rep.add("note", "epsilon < 0: eta <= k is impossible for this n, d, k");
    rep.print(out, o.cfg.kv);
    return kOk;
}

int run_region(const Options& o, const std::string& mode, std::ostream& out) {
    Report rep;
    if (mode == "classify") {
        auto c = classify(parse_rational(o.alpha), parse_rational(o.beta));
        rep.add("classification", c.str());
        rep.add("good", c.good());
        rep.print(out, o.cfg.kv);
        return kOk;
    }
    if (mode == "boundary") {
        auto b = crossover_bracket(static_cast<int>(o.digits));
        if (!o.alpha.empty()) rep.add_rational("boundary_beta", boundary_beta(parse_rational(o.alpha)));
        rep.add_rational("crossover_lo", b.lo);
        rep.add_rational("crossover_hi", b.hi);
        rep.print(out, o.cfg.kv);
        return kOk;
    }
    GridOptions go;
    go.t = o.t;
    go.alphas = parse_list(o.alphas);
    go.betas = parse_list(o.betas);
    go.seed = o.cfg.seed;
    go.samples = o.samples;
    go.solve = solve_limits(o.cfg);
    auto cells = region_grid_experiment(go);
    auto csv = grid_csv(cells);
    if (o.out.empty()) {
        out << csv;
    } else {
        std::ofstream f(o.out);
        if (!f) throw Error("cannot write " + o.out);
        f << csv;
        rep.add("cells", cells.size());
        rep.add("out", o.out);
        rep.print(out, o.cfg.kv);
    }
    bool contradiction = std::any_of(cells.begin(), cells.end(),
                                     [](const GridCell& c) { return c.status == "counterexample" || c.status == "check-failed"; });
    return contradiction ? kNegative : kOk;
}

int run_stats(const Options& o, std::ostream& out) {
    Report rep;
    add_stats(rep, load_itp(o.in));
    rep.print(out, o.cfg.kv);
    return kOk;
}

int run_verify(const Options& o, std::ostream& out) {
    auto pg = load_itp(o.graph);
    auto cert = certificate_from_json(load_json(o.cert));
    auto check = check_certificate(pg, *cert);
    Report rep;
    rep.add("certificate", check.ok ? "valid" : "invalid");
    if (!check.ok) rep.add("diagnostic", check.diagnostic);
    rep.print(out, o.cfg.kv);
    return check.ok ? kOk : kNegative;
}

} // namespace

void RunConfig::validate() const {
    if (node_budget == 0) throw PreconditionError("node budget must be positive");
    if (time_budget_ms && *time_budget_ms == 0) throw PreconditionError("time budget must be positive");
    if (subset_cap == 0) throw PreconditionError("subset cap must be positive");
    if (memo_cap == 0) throw PreconditionError("memo cap must be positive");
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"itlab: independent transversals, eta bounds and no-IT constructions"};
    app.require_subcommand(1);
    Options o;
    std::string format = "text";

    auto common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output style")->check(CLI::IsMember({"text", "kv"}));
    };
    auto budgets = [&](CLI::App* cmd) {
        cmd->add_option("--node-budget", o.cfg.node_budget, "search node budget");
        cmd->add_option("--memo-cap", o.cfg.memo_cap, "memoise graphs up to this many vertices");
    };

    auto* gen = app.add_subcommand("gen", "generate a no-IT construction")->require_subcommand(1);
    CLI::App* gen_cmds[2];
    for (int i = 0; i < 2; ++i) {
        auto* c = gen_cmds[i] = gen->add_subcommand(i == 0 ? "layered" : "augmented", i == 0 ? "layered star construction" : "layered plus augmentation");
        c->add_option("--t", o.t, "thickness t")->required()->check(CLI::PositiveNumber);
        c->add_option("--alpha", o.alpha, "alpha (fraction or decimal)")->required();
        c->add_option("--beta", o.beta, "beta (fraction or decimal)")->required();
        c->add_option("--sequence", o.seq, "comma-separated d_1,...,d_k");
        c->add_option("--out", o.out, "write the instance (.itp)");
        c->add_option("--cert", o.cert, "write the certificate (.json)");
        if (i == 1) {
            c->add_option("--C", o.c, "gadget constant C")->check(CLI::PositiveNumber);
            c->add_option("--strategy", o.strategy, "step or single")->check(CLI::IsMember({"step", "single"}));
        }
        common(c);
    }

    auto* solve = app.add_subcommand("solve", "search for an independent transversal");
    solve->add_option("--in", o.in, "instance (.itp)")->required();
    solve->add_flag("--count", o.count, "also count all transversals");
    solve->add_flag("--criteria", o.criteria, "evaluate the sufficient conditions");
    solve->add_option("--time-budget-ms", o.cfg.time_budget_ms, "wall-clock budget");
    solve->add_option("--subset-cap", o.cfg.subset_cap, "largest block count for the eta criterion");
    budgets(solve);
    common(solve);

    auto* eta = app.add_subcommand("eta", "certified lower bound on eta");
    eta->add_option("--in", o.in, "graph (.itp; blocks ignored)")->required();
    eta->add_option("--target", o.target, "stop once this bound is reached");
    eta->add_option("--depth", o.depth, "maximum game depth")->check(CLI::NonNegativeNumber);
    eta->add_option("--trace", o.trace, "write the derivation (.json)");
    eta->add_flag("--game-only", o.game_only, "disable the degree, density and complete-cut rules");
    budgets(eta);
    common(eta);

    auto* part = app.add_subcommand("partition", "basic partitions")->require_subcommand(1);
    auto* extract = part->add_subcommand("extract", "extract a basic partition");
    extract->add_option("--in", o.in)->required();
    extract->add_option("--policy", o.policy, "none or game")->check(CLI::IsMember({"none", "game"}));
    extract->add_option("--out", o.out, "write the partition (.json)");
    common(extract);
    auto* check = part->add_subcommand("check", "verify a basic partition");
    check->add_option("--in", o.in)->required();
    check->add_option("--bp", o.bp)->required();
    common(check);
    auto* key2 = part->add_subcommand("key2", "junk-tolerant extraction");
    key2->add_option("--in", o.in)->required();
    key2->add_option("--k", o.k)->required()->check(CLI::PositiveNumber);
    key2->add_option("--gamma", o.gamma)->required();
    key2->add_option("--policy", o.policy, "none or game")->check(CLI::IsMember({"none", "game"}));
    key2->add_option("--out", o.out);
    common(key2);

    auto* stab = app.add_subcommand("stability", "stability report for a partition");
    stab->add_option("--in", o.in)->required();
    stab->add_option("--k", o.k)->required()->check(CLI::PositiveNumber);
    stab->add_option("--bp", o.bp)->required();
    common(stab);

    auto* region = app.add_subcommand("region", "good-pair region")->require_subcommand(1);
    auto* classify_cmd = region->add_subcommand("classify", "classify (alpha, beta)");
    classify_cmd->add_option("--alpha", o.alpha)->required();
    classify_cmd->add_option("--beta", o.beta)->required();
    common(classify_cmd);
    auto* boundary = region->add_subcommand("boundary", "boundary beta and the crossover alpha");
    boundary->add_option("--alpha", o.alpha);
    boundary->add_option("--digits", o.digits, "crossover precision in decimal digits");
    common(boundary);
    auto* grid = region->add_subcommand("grid", "grid experiment");
    grid->add_option("--t", o.t)->required()->check(CLI::PositiveNumber);
    grid->add_option("--alphas", o.alphas, "comma-separated")->required();
    grid->add_option("--betas", o.betas, "comma-separated")->required();
    grid->add_option("--seed", o.cfg.seed);
    grid->add_option("--samples", o.samples, "random instances per Good cell");
    grid->add_option("--out", o.out, "CSV path (stdout if omitted)");
    budgets(grid);
    common(grid);

    auto* stats = app.add_subcommand("stats", "instance statistics");
    stats->add_option("--in", o.in)->required();
    common(stats);

    auto* verify = app.add_subcommand("verify", "verify artifacts")->require_subcommand(1);
    auto* vcert = verify->add_subcommand("cert", "check a no-IT certificate");
    vcert->add_option("--graph", o.graph)->required();
    vcert->add_option("--cert", o.cert)->required();
    common(vcert);

    std::vector<const char*> argv{"itlab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    o.cfg.kv = format == "kv";

    try {
        o.cfg.validate();
        if (gen_cmds[0]->parsed()) return run_gen(o, false, out);
        if (gen_cmds[1]->parsed()) return run_gen(o, true, out);
        if (solve->parsed()) return run_solve(o, out);
        if (eta->parsed()) return run_eta(o, out);
        if (extract->parsed()) return run_partition(o, "extract", out);
        if (check->parsed()) return run_partition(o, "check", out);
        if (key2->parsed()) return run_partition(o, "key2", out);
        if (stab->parsed()) return run_stability(o, out);
        if (classify_cmd->parsed()) return run_region(o, "classify", out);
        if (boundary->parsed()) return run_region(o, "boundary", out);
        if (grid->parsed()) return run_region(o, "grid", out);
        if (stats->parsed()) return run_stats(o, out);
        if (vcert->parsed()) return run_verify(o, out);
    } catch (const FeasibilityError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kNegative;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

} // namespace itlab::cli
