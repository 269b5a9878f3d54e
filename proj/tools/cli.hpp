#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace itlab::cli {

/// Settings shared by the subcommands. Identical configs and inputs give
/// identical output.
struct RunConfig {
    std::uint64_t seed = 1;
    std::uint64_t node_budget = 100'000'000;
    std::optional<std::uint64_t> time_budget_ms;
    std::size_t subset_cap = 16;
    std::size_t memo_cap = 64;
    bool kv = false; ///< key=value output instead of aligned text

    /// Throws PreconditionError when a budget or cap is zero.
    void validate() const;
};

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2 };

/// Runs one subcommand. args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace itlab::cli
