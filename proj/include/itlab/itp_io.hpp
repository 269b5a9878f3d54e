#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "itlab/graph.hpp"

namespace itlab {

// The .itp text format:
//
//   c <comment>          (any number, anywhere before the header)
//   p itp <n> <m> <r>
//   v <id> <block>       n lines, id in 1..n, block in 1..r
//   e <u> <w>            m lines, u < w on output
//
// Output is canonical: vertices in id order, edges sorted, no comments.

PartitionedGraph parse_itp(std::string_view text);
PartitionedGraph read_itp(std::istream& in);
PartitionedGraph load_itp(const std::filesystem::path& path);

std::string to_itp(const PartitionedGraph& pg);
void write_itp(std::ostream& out, const PartitionedGraph& pg);
void save_itp(const std::filesystem::path& path, const PartitionedGraph& pg);

} // namespace itlab
