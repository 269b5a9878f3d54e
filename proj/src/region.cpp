#include "itlab/region.hpp"

#include <random>
#include <sstream>

#include "itlab/error.hpp"
#include "itlab/parallel.hpp"

namespace itlab {
namespace {

Rational rat(std::size_t x) { return Rational(static_cast<long long>(x)); }

void run_not_good(GridCell& cell, const GridOptions& options) {
    CertifiedInstance inst;
    try {
        inst = gen_augmented(cell.t, cell.alpha, cell.beta, options.augment);
    } catch (const FeasibilityError& e) {
        cell.status = "infeasible-at-t (" + e.check() + ")";
        cell.it_status = "n/a";
        cell.cert_status = "n/a";
        return;
    }
    auto stats = block_stats(inst.pg);
    cell.n = static_cast<std::size_t>(inst.pg.graph().order());
    cell.r = static_cast<std::size_t>(inst.pg.block_count());
    cell.delta = stats.delta;
    cell.b = stats.b;
    bool cert_ok = check_certificate(inst.pg, *inst.cert).ok;
    cell.cert_status = cert_ok ? "valid" : "invalid";
    bool solver_ok = true;
    if (static_cast<std::size_t>(inst.pg.block_count()) <= options.solver_block_cap) {
        auto outcome = find_it(inst.pg, options.solve);
        cell.it_status = to_string(outcome.status);
        solver_ok = outcome.status == SolveStatus::ProvedNone;
    } else {
        cell.it_status = "certified";
    }
    const bool checks = stats.is_thick(cell.t) && rat(stats.delta) <= cell.alpha * rat(cell.t) &&
                        stats.b <= cell.beta * rat(cell.t) && cert_ok && solver_ok;
    cell.status = checks ? "generated" : "check-failed";
}

// Random t-thick instance grown edge by edge, keeping Δ ≤ ⌊αt⌋ and b ≤ βt.
PartitionedGraph sample_instance(std::mt19937_64& rng, std::size_t t, std::size_t blocks, const Rational& alpha,
                                 const Rational& beta) {
    const std::size_t n = t * blocks;
    const auto max_deg = static_cast<std::size_t>(floor_of(alpha * rat(t)).convert_to<long long>());
    const Rational cap = beta * rat(t) * rat(t); // degree-sum cap of a block of size t
    std::vector<std::size_t> degree(n, 0);
    std::vector<Rational> block_sum(blocks, Rational(0));
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    std::vector<Edge> edges;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const std::size_t attempts = 4 * n * t;
    for (std::size_t i = 0; i < attempts; ++i) {
        std::size_t u = pick(rng), v = pick(rng);
        if (u == v || adj[u][v]) continue;
        if (degree[u] + 1 > max_deg || degree[v] + 1 > max_deg) continue;
        std::size_t bu = u / t, bv = v / t;
        Rational extra_u = bu == bv ? Rational(2) : Rational(1);
        if (block_sum[bu] + extra_u > cap) continue;
        if (bu != bv && block_sum[bv] + 1 > cap) continue;
        adj[u][v] = adj[v][u] = 1;
        ++degree[u], ++degree[v];
        block_sum[bu] += 1;
        block_sum[bv] += 1;
        edges.push_back(Edge::make(static_cast<Vertex>(u), static_cast<Vertex>(v)));
    }
    std::vector<BlockId> block_of(n);
    for (std::size_t v = 0; v < n; ++v) block_of[v] = static_cast<BlockId>(v / t);
    return PartitionedGraph(Graph::from_edges(static_cast<Vertex>(n), edges), std::move(block_of));
}

void run_good(GridCell& cell, const GridOptions& options, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 rng(seq);
    std::size_t found = 0, none = 0, timeout = 0;
    std::size_t max_delta = 0;
    Rational max_b = 0;
    for (std::size_t s = 0; s < options.samples; ++s) {
        auto pg = sample_instance(rng, cell.t, options.sample_blocks, cell.alpha, cell.beta);
        auto stats = block_stats(pg);
        max_delta = std::max(max_delta, stats.delta);
        max_b = std::max(max_b, stats.b);
        auto outcome = find_it(pg, options.solve);
        if (outcome.status == SolveStatus::Found && is_transversal(pg, *outcome.witness)) ++found;
        else if (outcome.status == SolveStatus::Timeout) ++timeout;
        else ++none;
    }
    cell.n = cell.t * options.sample_blocks;
    cell.r = options.sample_blocks;
    cell.delta = max_delta;
    cell.b = max_b;
    cell.it_status = "Found " + std::to_string(found) + "/" + std::to_string(options.samples);
    cell.cert_status = "n/a";
    cell.status = none > 0 ? "counterexample" : timeout > 0 ? "sampled-timeout" : "sampled";
}

std::string opt(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : ""; }

} // namespace

Classification classify(const Rational& alpha, const Rational& beta) {
    if (!(beta > 0) || beta > alpha)
        throw PreconditionError("classify: need 0 < beta <= alpha, got alpha=" + to_string(alpha) + " beta=" + to_string(beta));
    if (alpha <= Rational(1, 2)) return {1};
    if (beta <= Rational(1, 4)) return {2};
    if (beta <= 2 * alpha * (1 - alpha)) return {3};
    return {0};
}

Rational boundary_beta(const Rational& alpha) {
    if (!(alpha > Rational(1, 2))) throw PreconditionError("boundary_beta: alpha must exceed 1/2");
    return std::max(Rational(1, 4), 2 * alpha * (1 - alpha));
}

Bracket crossover_bracket(int digits) {
    if (digits < 0) throw PreconditionError("crossover_bracket: digits must be nonnegative");
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(digits));
    Integer s = boost::multiprecision::sqrt(Integer(2) * scale * scale); // ⌊√2·10^p⌋
    // √2 is irrational so s < √2·10^p < s + 1 strictly
    Rational lo = Rational(1, 2) + Rational(s) / (4 * Rational(scale));
    Rational hi = Rational(1, 2) + Rational(s + 1) / (4 * Rational(scale));
    return {lo, hi};
}

std::vector<GridCell> region_grid_experiment(const GridOptions& options) {
    std::vector<GridCell> cells;
    for (const auto& a : options.alphas)
        for (const auto& b : options.betas) {
            if (!(b > 0) || b > a) continue;
            GridCell cell;
            cell.alpha = a;
            cell.beta = b;
            cell.t = options.t;
            cell.classification = classify(a, b);
            cells.push_back(std::move(cell));
        }
    parallel_for(cells.size(), [&](std::size_t i) {
        if (cells[i].classification.good()) run_good(cells[i], options, i);
        else run_not_good(cells[i], options);
    });
    return cells;
}

std::string grid_csv(const std::vector<GridCell>& cells) {
    std::ostringstream out;
    out << "alpha,beta,classification,t,status,n,r,delta,b,it_status,cert_status\n";
    for (const auto& c : cells)
        out << to_string(c.alpha) << ',' << to_string(c.beta) << ',' << c.classification.str() << ',' << c.t << ','
            << c.status << ',' << opt(c.n) << ',' << opt(c.r) << ',' << opt(c.delta) << ',' << (c.b ? to_string(*c.b) : "")
            << ',' << c.it_status << ',' << c.cert_status << '\n';
    return out.str();
}

} // namespace itlab
