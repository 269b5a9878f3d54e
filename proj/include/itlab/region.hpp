#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "itlab/construct.hpp"
#include "itlab/itsolve.hpp"
#include "itlab/rational.hpp"

namespace itlab {

/// Good with the lowest satisfied condition (1: α ≤ 1/2, 2: β ≤ 1/4,
/// 3: β ≤ 2α(1−α)), or NotGood (condition 0).
struct Classification {
    int condition = 0;

    bool good() const noexcept { return condition != 0; }
    std::string str() const { return good() ? "Good(" + std::to_string(condition) + ")" : "NotGood"; }
    friend bool operator==(const Classification&, const Classification&) = default;
};

/// Requires 0 < β ≤ α.
Classification classify(const Rational& alpha, const Rational& beta);

/// max{1/4, 2α(1−α)} for α > 1/2.
Rational boundary_beta(const Rational& alpha);

struct Bracket {
    Rational lo;
    Rational hi;
};

/// Rationals lo < 1/2 + 1/(2√2) < hi with hi − lo = 10^−digits / 4.
Bracket crossover_bracket(int digits);

struct GridOptions {
    std::size_t t = 8;
    std::vector<Rational> alphas;
    std::vector<Rational> betas;
    std::uint64_t seed = 1;
    std::size_t samples = 8;       ///< random instances per Good cell
    std::size_t sample_blocks = 4; ///< blocks per random instance
    std::size_t solver_block_cap = 12;
    SolveLimits solve{5'000'000, std::nullopt};
    AugmentOptions augment;
};

struct GridCell {
    Rational alpha;
    Rational beta;
    Classification classification;
    std::size_t t = 0;
    std::string status;
    std::optional<std::size_t> n;
    std::optional<std::size_t> r;
    std::optional<std::size_t> delta;
    std::optional<Rational> b;
    std::string it_status;
    std::string cert_status;
};

/// One cell per (α, β) with β ≤ α, α-major. NotGood cells run gen_augmented and
/// verify it; Good cells sample random constrained instances and solve them.
std::vector<GridCell> region_grid_experiment(const GridOptions& options);

/// Header plus one line per cell.
std::string grid_csv(const std::vector<GridCell>& cells);

} // namespace itlab
