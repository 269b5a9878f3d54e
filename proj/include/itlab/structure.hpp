#pragma once

#include <cstdint>
#include <vector>

#include "itlab/eta.hpp"
#include "itlab/graph.hpp"
#include "itlab/rational.hpp"

namespace itlab {

/// One (X, Y, Z) part with witnesses x ∈ X, y ∈ Y. Vertex lists are sorted.
struct Triple {
    std::vector<Vertex> x;
    std::vector<Vertex> y;
    std::vector<Vertex> z;
    Vertex x_witness = 0;
    Vertex y_witness = 0;

    friend bool operator==(const Triple&, const Triple&) = default;
};

struct ScheduleStep {
    enum class Op { Delete, Explode };
    Op op = Op::Explode;
    Edge edge;

    friend bool operator==(const ScheduleStep&, const ScheduleStep&) = default;
};

/// Output of the extraction procedure. Vertices left isolated when no edge
/// remains belong to no triple and are listed in `unassigned`.
struct BasicPartition {
    std::vector<Triple> triples;
    std::vector<ScheduleStep> schedule;
    std::vector<Vertex> unassigned;

    std::size_t k() const noexcept { return triples.size(); }
    friend bool operator==(const BasicPartition&, const BasicPartition&) = default;
};

enum class DeletionPolicy { None, Game };

struct ExtractOptions {
    DeletionPolicy policy = DeletionPolicy::None;
    /// Budget for the bounds compared by the game policy.
    EtaLimits eta{4, 2'000, std::nullopt, 64};
};

/// Repeatedly explodes the edge killing the fewest vertices (ties
/// lexicographic), recording Z = N(x)∩N(y), X = N(y)∖Z, Y = N(x)∖Z. Under the
/// game policy, before each explosion every edge e (in order) whose deletion
/// does not raise the bound, lb(G−e) ≤ lb(G), is deleted.
BasicPartition extract_basic_partition(const Graph& g, const ExtractOptions& options = {});

struct BasicCheck {
    bool partition = false;            ///< triples and unassigned partition V(g)
    bool cond_a = false;               ///< witness adjacency holds in g
    std::vector<std::size_t> failing;  ///< triples violating (a)
    std::int64_t cond_b_slack = 0;     ///< 2|E| + 2Σ|E(X,Y)| − 4Σ|X||Y| − Σ(|X|+|Y|)|Z|
};

BasicCheck verify_basic(const Graph& g, const BasicPartition& bp);

struct TechlemCheck {
    std::int64_t slack = 0; ///< 2|E| − (2Q + 2dn − 2d²k + Σ|Z|(2d − |X| − |Y| − 2|Z|))
    std::int64_t q = 0;     ///< Σ|X||Y| − Σ|E(X,Y)|
};

TechlemCheck techlem_check(const Graph& g, const BasicPartition& bp);

/// |E| − (Δn − Δ²k); nonnegative whenever η(g) ≤ k.
std::int64_t dense_check(const Graph& g, std::int64_t k);

struct StabilityReport {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t k = 0;
    Rational epsilon;        ///< 2dk/n − 1
    std::int64_t z = 0;      ///< Σ|Z|
    std::int64_t m = 0;      ///< |E| − Σ|E(X,Y)|
    std::int64_t q = 0;      ///< Σ|X||Y| − Σ|E(X,Y)|
    std::vector<std::pair<std::vector<Vertex>, std::vector<Vertex>>> approximant; ///< sides of J, k entries
    std::int64_t sym_diff = 0; ///< |E(G) Δ E(J)|
    Rational gamma;            ///< sym_diff / |E|, 0 for edgeless g
    bool hypothesis_impossible = false; ///< ε < 0 contradicts η ≤ k
    bool z_ok = false;      ///< z ≤ εn
    bool m_ok = false;      ///< m ≤ 2εdn
    bool q_ok = false;      ///< Q ≤ εdn/2
    bool edges_ok = false;  ///< 2|E| ≥ dn(1 − ε)
};

/// Pads bp with empty triples up to k. Requires bp.k() ≤ k and n ≥ 1.
StabilityReport stability_report(const Graph& g, std::size_t k, const BasicPartition& bp);

struct Key2Report {
    std::size_t k0 = 0;
    std::vector<Vertex> w;
    Rational epsilon; ///< 2 − n/(kd)
    Rational theta;   ///< (γ − 3)/(1 + γ)
    Rational zeta;    ///< Σ|Z|/(dk)
    std::size_t conforming = 0;
    std::size_t nonconforming = 0;
    bool zeta_le_epsilon = false;
    bool k_gap_ok = false;   ///< k − k0 ≤ (1+γ)/4 (ε − ζ) k
    bool w_ok = false;       ///< |W| ≤ γ(ε − ζ)dk
    bool u_ok = false;       ///< |U| ≤ (γ²−1)/(γ²−3γ)|W| + (1+γ)/(γ−3) εdk
    Rational u_bound;
};

struct Key2Result {
    BasicPartition partition; ///< triples, schedule and leftover isolated vertices
    Key2Report report;
};

/// Heuristic procedure from the sketch: min-kill edge; when a low vertex w ∈ X
/// (then Y) has a non-neighbour u on the other side, explode xu (yu) and then
/// wv for the lowest neighbour v of w, dumping killed vertices into W.
/// Requires γ > 3 and k ≥ 1; an edgeless g gives an empty result.
Key2Result key2_extract(const Graph& g, std::size_t k, const Rational& gamma, const ExtractOptions& options = {});

/// Lower bound on η(g) from chaining min(lb(G−e), lb(G⋇e)+1) along the schedule,
/// following the recorded branch and bounding the other with eta_lower_bound.
EtaValue schedule_bound(const Graph& g, const BasicPartition& bp, const EtaLimits& limits = {});

} // namespace itlab
