#include "itlab/itsolve.hpp"

#include <algorithm>

#include "itlab/error.hpp"
#include "itlab/parallel.hpp"

namespace itlab {
namespace {

using Clock = std::chrono::steady_clock;

struct StopSearch {};

class Search {
public:
    Search(const PartitionedGraph& pg, const SolveLimits& limits)
        : pg_(pg), limits_(limits), rows_(pg.graph().adjacency_rows()), start_(Clock::now()) {
        const auto n = static_cast<std::size_t>(pg.graph().order());
        for (BlockId b = 0; b < pg.block_count(); ++b) {
            VertexSet mask(n);
            for (Vertex v : pg.block(b)) mask.set(static_cast<std::size_t>(v));
            masks_.push_back(std::move(mask));
        }
        choice_.assign(static_cast<std::size_t>(pg.block_count()), -1);
    }

    std::uint64_t nodes() const noexcept { return nodes_; }

    bool find(const VertexSet& available, BlockId assigned) {
        tick();
        if (assigned == pg_.block_count()) return true;
        BlockId b = pick(available);
        if (b < 0) return false;
        VertexSet live = available & masks_[static_cast<std::size_t>(b)];
        for (std::size_t v = live.first(); v != VertexSet::npos; v = live.next(v)) {
            choice_[static_cast<std::size_t>(b)] = static_cast<Vertex>(v);
            VertexSet next = available - rows_[v];
            next -= masks_[static_cast<std::size_t>(b)];
            if (find(next, assigned + 1)) return true;
        }
        choice_[static_cast<std::size_t>(b)] = -1;
        return false;
    }

    Integer count(const VertexSet& available, BlockId assigned) {
        tick();
        if (assigned == pg_.block_count()) return 1;
        if (auto product = edgeless_product(available)) return *product;
        BlockId b = pick(available);
        if (b < 0) return 0;
        Integer total = 0;
        VertexSet live = available & masks_[static_cast<std::size_t>(b)];
        choice_[static_cast<std::size_t>(b)] = 0; // marks b assigned; the value is unused
        for (std::size_t v = live.first(); v != VertexSet::npos; v = live.next(v)) {
            VertexSet next = available - rows_[v];
            next -= masks_[static_cast<std::size_t>(b)];
            total += count(next, assigned + 1);
        }
        choice_[static_cast<std::size_t>(b)] = -1;
        return total;
    }

    const std::vector<Vertex>& choice() const noexcept { return choice_; }

private:
    void tick() {
        if (nodes_ == limits_.node_budget) throw StopSearch{};
        ++nodes_;
        if (limits_.time_budget && (nodes_ & 1023) == 0 && Clock::now() - start_ > *limits_.time_budget) throw StopSearch{};
    }

    // Unassigned block with fewest live candidates, ties by id; -1 if some block is dead
    // or every block is assigned.
    BlockId pick(const VertexSet& available) const {
        BlockId best = -1;
        std::size_t best_count = 0;
        for (BlockId b = 0; b < pg_.block_count(); ++b) {
            if (choice_[static_cast<std::size_t>(b)] != -1) continue;
            std::size_t c = available.count_and(masks_[static_cast<std::size_t>(b)]);
            if (c == 0) return -1;
            if (best == -1 || c < best_count) best = b, best_count = c;
        }
        return best;
    }

    // When no edge joins two live candidates the count is a plain product.
    std::optional<Integer> edgeless_product(const VertexSet& available) const {
        VertexSet live(available.size());
        for (BlockId b = 0; b < pg_.block_count(); ++b)
            if (choice_[static_cast<std::size_t>(b)] == -1) live |= available & masks_[static_cast<std::size_t>(b)];
        for (std::size_t v = live.first(); v != VertexSet::npos; v = live.next(v))
            if (rows_[v].intersects(live)) return std::nullopt;
        Integer product = 1;
        for (BlockId b = 0; b < pg_.block_count(); ++b)
            if (choice_[static_cast<std::size_t>(b)] == -1) product *= available.count_and(masks_[static_cast<std::size_t>(b)]);
        return product;
    }

    const PartitionedGraph& pg_;
    SolveLimits limits_;
    std::vector<VertexSet> rows_;
    std::vector<VertexSet> masks_;
    std::vector<Vertex> choice_;
    std::uint64_t nodes_ = 0;
    Clock::time_point start_;
};

VertexSet all_vertices(const PartitionedGraph& pg) {
    VertexSet s(static_cast<std::size_t>(pg.graph().order()));
    s.set_all();
    return s;
}

} // namespace

const char* to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::Found: return "Found";
    case SolveStatus::ProvedNone: return "ProvedNone";
    case SolveStatus::Timeout: return "Timeout";
    }
    return "?";
}

const char* to_string(CriterionVerdict v) {
    switch (v) {
    case CriterionVerdict::AllCertified: return "AllCertified";
    case CriterionVerdict::FailedAt: return "FailedAt";
    case CriterionVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

SolveOutcome find_it(const PartitionedGraph& pg, const SolveLimits& limits) {
    Search search(pg, limits);
    SolveOutcome out;
    try {
        if (search.find(all_vertices(pg), 0)) {
            out.status = SolveStatus::Found;
            out.witness = Transversal{search.choice()};
        } else {
            out.status = SolveStatus::ProvedNone;
        }
    } catch (const StopSearch&) {
        out.status = SolveStatus::Timeout;
    }
    out.nodes_explored = search.nodes();
    return out;
}

CountOutcome count_it(const PartitionedGraph& pg, const SolveLimits& limits) {
    Search search(pg, limits);
    CountOutcome out;
    try {
        out.count = search.count(all_vertices(pg), 0);
        out.complete = true;
    } catch (const StopSearch&) {
        out.complete = false;
    }
    out.nodes_explored = search.nodes();
    return out;
}

bool is_transversal(const PartitionedGraph& pg, const Transversal& t) {
    const auto& g = pg.graph();
    if (t.choice.size() != static_cast<std::size_t>(pg.block_count())) return false;
    for (std::size_t b = 0; b < t.choice.size(); ++b) {
        Vertex v = t.choice[b];
        if (v < 0 || v >= g.order() || pg.block_of(v) != static_cast<BlockId>(b)) return false;
    }
    for (std::size_t i = 0; i < t.choice.size(); ++i)
        for (std::size_t j = i + 1; j < t.choice.size(); ++j)
            if (g.adjacent(t.choice[i], t.choice[j])) return false;
    return true;
}

bool haxell_condition(const PartitionedGraph& pg) {
    std::vector<std::size_t> sizes;
    for (BlockId b = 0; b < pg.block_count(); ++b) sizes.push_back(pg.block_size(b));
    std::sort(sizes.begin(), sizes.end());
    const auto d = pg.graph().max_degree();
    std::size_t prefix = 0;
    for (std::size_t s = 1; s <= sizes.size(); ++s) {
        prefix += sizes[s - 1];
        if (prefix < 2 * d * (s - 1) + 1) return false;
    }
    return true;
}

bool ww_condition(const PartitionedGraph& pg) {
    auto stats = block_stats(pg);
    return stats.b <= Rational(static_cast<long>(stats.thickness), 4);
}

std::vector<std::vector<BlockId>> enumerate_subsets(BlockId r) {
    std::vector<std::vector<BlockId>> out;
    for (BlockId size = 1; size <= r; ++size) {
        std::vector<BlockId> cur(static_cast<std::size_t>(size));
        for (BlockId i = 0; i < size; ++i) cur[static_cast<std::size_t>(i)] = i;
        while (true) {
            out.push_back(cur);
            // next combination in lexicographic order
            BlockId i = size - 1;
            while (i >= 0 && cur[static_cast<std::size_t>(i)] == r - size + i) --i;
            if (i < 0) break;
            ++cur[static_cast<std::size_t>(i)];
            for (BlockId j = i + 1; j < size; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

CriterionOutcome eta_criterion(const PartitionedGraph& pg, const CriterionOptions& options) {
    const auto r = static_cast<std::size_t>(pg.block_count());
    if (r > options.subset_cap)
        throw PreconditionError("eta_criterion: " + std::to_string(r) + " blocks exceeds the subset cap " +
                                std::to_string(options.subset_cap));
    auto subsets = enumerate_subsets(pg.block_count());
    enum class Cell { Certified, Uncertified, Exhausted };
    std::vector<Cell> cells(subsets.size());
    CriterionOutcome out;
    const std::size_t batch = std::max<std::size_t>(64, thread_count() * 8);
    for (std::size_t start = 0; start < subsets.size(); start += batch) {
        std::size_t end = std::min(subsets.size(), start + batch);
        parallel_for(end - start, [&](std::size_t k) {
            const auto& s = subsets[start + k];
            auto sub = induced_subsystem(pg, s);
            EtaLimits limits = options.eta;
            limits.target = static_cast<std::int64_t>(s.size());
            auto bound = eta_lower_bound(sub.pg.graph(), limits);
            if (bound.value >= EtaValue(static_cast<std::int64_t>(s.size())))
                cells[start + k] = Cell::Certified;
            else
                cells[start + k] = bound.budget_exhausted ? Cell::Exhausted : Cell::Uncertified;
        });
        for (std::size_t i = start; i < end; ++i) {
            ++out.subsets_checked;
            if (cells[i] == Cell::Certified) continue;
            out.verdict = cells[i] == Cell::Exhausted ? CriterionVerdict::Inconclusive : CriterionVerdict::FailedAt;
            out.subset = subsets[i];
            return out;
        }
    }
    out.verdict = CriterionVerdict::AllCertified;
    return out;
}

} // namespace itlab
