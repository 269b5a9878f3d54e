#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "itlab/dense_graph.hpp"
#include "itlab/graph.hpp"

namespace itlab {

/// A value of η: a natural number or infinity. Addition saturates at infinity.
class EtaValue {
public:
    constexpr EtaValue() = default;
    constexpr explicit EtaValue(std::int64_t v) : v_(v) {}

    static constexpr EtaValue infinity() { return EtaValue(kInf); }

    constexpr bool is_infinite() const noexcept { return v_ == kInf; }
    constexpr std::int64_t finite() const noexcept { return v_; }

    friend constexpr EtaValue operator+(EtaValue a, EtaValue b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return EtaValue(a.v_ + b.v_);
    }

    friend constexpr auto operator<=>(EtaValue, EtaValue) = default;

    std::string str() const { return is_infinite() ? "inf" : std::to_string(v_); }

private:
    static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
    std::int64_t v_ = 0;
};

enum class EtaRule { Empty, NonEmpty, IsolatedVertex, ExactAtMostOne, ComponentSum, DegreeRule, DensityRule, GameStep };

std::string_view rule_name(EtaRule rule);
std::optional<EtaRule> rule_from_name(std::string_view name);

/// One derivation step. GameStep edges are expressed in the canonical labelling
/// of the node's graph (see canonical_order); children of a GameStep are
/// {G - e, G ⋇ e}, children of a ComponentSum follow component order.
struct EtaTrace {
    EtaRule rule = EtaRule::Empty;
    EtaValue value;
    std::optional<Edge> edge;
    std::vector<std::shared_ptr<const EtaTrace>> children;
};
using EtaTracePtr = std::shared_ptr<const EtaTrace>;

/// The same derivation with edges given in the caller's vertex ids.
struct ResolvedTrace {
    EtaRule rule = EtaRule::Empty;
    EtaValue value;
    std::optional<Edge> edge;
    std::vector<ResolvedTrace> children;
};

struct EtaLimits {
    int max_depth = 12;                  ///< game moves below the root
    std::uint64_t node_budget = 100'000; ///< evaluator calls for depths >= 1
    std::optional<std::int64_t> target;  ///< stop once the bound reaches this
    std::size_t memo_cap = 64;           ///< memoise graphs with at most this many vertices
};

/// Switches for the closed-form rules. Empty, NonEmpty and IsolatedVertex are always on.
struct EtaRules {
    bool exact_at_most_one = true;
    bool degree = true;
    bool density = true;
    bool components = true;
    bool game = true;
};

struct EtaBound {
    EtaValue value;
    EtaTracePtr trace;
    int depth_completed = 0;       ///< deepest game level evaluated in full
    bool budget_exhausted = false; ///< a deeper level was cut off by the node budget
    bool complete = false;         ///< the value no longer depends on depth
    std::uint64_t nodes = 0;
};

/// Certified lower bound on η(G). Always sound; more budget never lowers it.
EtaBound eta_lower_bound(const Graph& g, const EtaLimits& limits = {}, const EtaRules& rules = {});

/// True iff the complement of G is disconnected, i.e. η(G) = 1 exactly.
/// Requires G nonempty without isolated vertices.
bool eta_at_most_one(const Graph& g);

/// True iff G is exactly k vertex-disjoint copies of K_{d,d}.
bool recognize_kdd_union(const Graph& g, std::size_t d, std::size_t k);

/// ⌈n / 2Δ⌉.
std::int64_t degree_rule_bound(std::size_t n, std::size_t delta);
/// ⌈(Δn − |E|) / Δ²⌉; may be nonpositive.
std::int64_t density_rule_bound(std::size_t n, std::size_t m, std::size_t delta);

/// Vertex order used to canonicalise graphs for memoisation and traces:
/// colour refinement from degrees, ties broken by current id.
std::vector<Vertex> canonical_order(const DenseGraph& g);

/// Replays a trace against g, checking every rule application. Returns the
/// resolved tree (edges in g's ids) or nullopt if any step does not hold.
std::optional<ResolvedTrace> resolve_trace(const Graph& g, const EtaTrace& trace);

} // namespace itlab
