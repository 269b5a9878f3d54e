#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "itlab/eta.hpp"
#include "itlab/graph.hpp"
#include "itlab/rational.hpp"

namespace itlab {

/// choice[b] is the vertex picked from block b.
struct Transversal {
    std::vector<Vertex> choice;
    friend bool operator==(const Transversal&, const Transversal&) = default;
};

enum class SolveStatus { Found, ProvedNone, Timeout };

const char* to_string(SolveStatus s);

struct SolveLimits {
    std::uint64_t node_budget = std::numeric_limits<std::uint64_t>::max();
    std::optional<std::chrono::milliseconds> time_budget;
};

struct SolveOutcome {
    SolveStatus status = SolveStatus::Timeout;
    std::optional<Transversal> witness;
    std::uint64_t nodes_explored = 0;
};

/// Exhaustive backtracking: the block with the fewest live candidates goes
/// first (ties by id), candidates in increasing vertex order.
SolveOutcome find_it(const PartitionedGraph& pg, const SolveLimits& limits = {});

struct CountOutcome {
    bool complete = false; ///< false on timeout
    Integer count;
    std::uint64_t nodes_explored = 0;
};

CountOutcome count_it(const PartitionedGraph& pg, const SolveLimits& limits = {});

/// One vertex per block, each in its block, pairwise nonadjacent.
bool is_transversal(const PartitionedGraph& pg, const Transversal& t);

/// Σ_{i∈S}|U_i| ≥ 2Δ(|S|−1)+1 for every nonempty S (checked on the s smallest blocks).
bool haxell_condition(const PartitionedGraph& pg);

/// b(G,𝒫) ≤ t/4 with t the thickness.
bool ww_condition(const PartitionedGraph& pg);

enum class CriterionVerdict { AllCertified, FailedAt, Inconclusive };

const char* to_string(CriterionVerdict v);

struct CriterionOptions {
    std::size_t subset_cap = 16; ///< refuse partitions with more blocks
    EtaLimits eta;
};

struct CriterionOutcome {
    CriterionVerdict verdict = CriterionVerdict::Inconclusive;
    std::vector<BlockId> subset; ///< first subset not certified, in enumeration order
    std::size_t subsets_checked = 0;
};

/// Tries to certify η(G_S) ≥ |S| for every nonempty S, by size then
/// lexicographically. Throws PreconditionError above the subset cap.
CriterionOutcome eta_criterion(const PartitionedGraph& pg, const CriterionOptions& options = {});

/// All nonempty subsets of {0..r-1}, by size then lexicographically.
std::vector<std::vector<BlockId>> enumerate_subsets(BlockId r);

} // namespace itlab
