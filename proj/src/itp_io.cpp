#include "itlab/itp_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "itlab/error.hpp"

namespace itlab {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

long long to_int(std::string_view tok, std::size_t line) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
    return value;
}

} // namespace

PartitionedGraph parse_itp(std::string_view text) {
    bool have_header = false;
    long long n = 0, m = 0, r = 0;
    std::vector<BlockId> block_of;
    std::vector<bool> seen_vertex;
    std::size_t vertex_lines = 0;
    std::set<Edge> edges;

    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        auto tok = split_ws(line);
        if (tok.empty() || tok[0] == "c") continue;

        if (tok[0] == "p") {
            if (have_header) throw ParseError(line_no, "duplicate header");
            if (tok.size() != 5 || tok[1] != "itp") throw ParseError(line_no, "header must be 'p itp <n> <m> <r>'");
            n = to_int(tok[2], line_no);
            m = to_int(tok[3], line_no);
            r = to_int(tok[4], line_no);
            if (n < 0 || m < 0 || r < 0) throw ParseError(line_no, "negative count in header");
            if (n > 100'000'000) throw ParseError(line_no, "vertex count too large");
            if ((n == 0) != (r == 0)) throw ParseError(line_no, "a graph with n vertices needs 1..n blocks");
            if (r > n) throw ParseError(line_no, "more blocks than vertices");
            block_of.assign(static_cast<std::size_t>(n), -1);
            seen_vertex.assign(static_cast<std::size_t>(n), false);
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError(line_no, "content before 'p itp' header");

        if (tok[0] == "v") {
            if (tok.size() != 3) throw ParseError(line_no, "vertex line must be 'v <id> <block>'");
            auto id = to_int(tok[1], line_no);
            auto block = to_int(tok[2], line_no);
            if (id < 1 || id > n) throw ParseError(line_no, "vertex id out of range");
            if (block < 1 || block > r) throw ParseError(line_no, "block id out of range");
            if (seen_vertex[static_cast<std::size_t>(id - 1)]) throw ParseError(line_no, "vertex listed twice");
            seen_vertex[static_cast<std::size_t>(id - 1)] = true;
            block_of[static_cast<std::size_t>(id - 1)] = static_cast<BlockId>(block - 1);
            ++vertex_lines;
        } else if (tok[0] == "e") {
            if (tok.size() != 3) throw ParseError(line_no, "edge line must be 'e <u> <w>'");
            auto u = to_int(tok[1], line_no);
            auto w = to_int(tok[2], line_no);
            if (u < 1 || u > n || w < 1 || w > n) throw ParseError(line_no, "edge endpoint out of range");
            if (u == w) throw ParseError(line_no, "self-loop");
            auto e = Edge::make(static_cast<Vertex>(u - 1), static_cast<Vertex>(w - 1));
            if (!edges.insert(e).second) throw ParseError(line_no, "duplicate edge");
        } else {
            throw ParseError(line_no, "unknown line type '" + std::string(tok[0]) + "'");
        }
    }
    if (!have_header) throw ParseError(0, "missing 'p itp' header");
    if (vertex_lines != static_cast<std::size_t>(n))
        throw ParseError(0, "expected " + std::to_string(n) + " vertex lines, found " + std::to_string(vertex_lines));
    if (edges.size() != static_cast<std::size_t>(m))
        throw ParseError(0, "expected " + std::to_string(m) + " edge lines, found " + std::to_string(edges.size()));
    std::vector<bool> used(static_cast<std::size_t>(r), false);
    for (auto b : block_of) used[static_cast<std::size_t>(b)] = true;
    for (std::size_t b = 0; b < used.size(); ++b)
        if (!used[b]) throw ParseError(0, "block " + std::to_string(b + 1) + " is empty");

    std::vector<Edge> edge_list(edges.begin(), edges.end());
    return PartitionedGraph(Graph::from_edges(static_cast<Vertex>(n), edge_list), std::move(block_of));
}

PartitionedGraph read_itp(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_itp(buf.str());
}

PartitionedGraph load_itp(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path.string());
    return read_itp(in);
}

void write_itp(std::ostream& out, const PartitionedGraph& pg) {
    const auto& g = pg.graph();
    out << "p itp " << g.order() << ' ' << g.size() << ' ' << pg.block_count() << '\n';
    for (Vertex v = 0; v < g.order(); ++v) out << "v " << v + 1 << ' ' << pg.block_of(v) + 1 << '\n';
    for (const auto& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

std::string to_itp(const PartitionedGraph& pg) {
    std::ostringstream out;
    write_itp(out, pg);
    return out.str();
}

void save_itp(const std::filesystem::path& path, const PartitionedGraph& pg) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    write_itp(out, pg);
}

} // namespace itlab
