#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chipfire/certify.hpp"
#include "chipfire/divisor.hpp"
#include "chipfire/graph.hpp"

namespace chipfire {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& msg);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

struct SourcePos {
    int line = 0;
    int column = 0;
};

struct Located {
    std::string text;
    SourcePos pos;
};

enum class SpecKind { Banana, Theta, Cycle, Graph, Chain };
std::string to_string(SpecKind k);

// Parsed, unresolved form of a spec file. Vertex names are checked by
// load_spec, which needs the built graph.
struct SpecDocument {
    SpecKind kind = SpecKind::Graph;
    SourcePos header;
    std::vector<int> lengths;  // banana, theta, cycle
    std::vector<std::string> vertices;
    std::vector<std::pair<Located, Located>> edges;
    std::optional<Located> mark_u;
    std::optional<Located> mark_v;
    std::vector<std::pair<Located, long long>> divisor;
    std::vector<SpecDocument> components;  // chain
    std::vector<int> bridges;              // chain, one per junction
};

// Grammar, one statement per line, '#' to end of line is a comment:
//   banana n0 n1 ... | theta a b c | cycle a b | graph | chain
//   vertex x y ...          (graph)
//   edge x y [mult]         (graph)
//   component <header>      (chain; marks and edges that follow belong to it)
//   bridge n                (chain; path of n edges before the next component)
//   mark u <vtx> | mark v <vtx>
//   divisor <vtx>:<int> ...
SpecDocument parse_spec(std::string_view text);

// Canonical text; parse_spec(serialize(d)) == d up to source positions.
std::string serialize(const SpecDocument& d);

struct LoadedSpec {
    SpecDocument doc;
    Graph graph;                        // glued graph for chains
    std::optional<MarkedGraph> marked;  // when both marks are known
    std::optional<ChainSpec> chain;
    std::optional<Divisor> divisor;
};

// Builds and resolves names. Cycles default to marks L and R; chains take
// u from the first component and v from the last.
LoadedSpec load_spec(std::string_view text);
LoadedSpec load_spec_file(const std::string& path);

// "s0.1:2 s2.3:-1", "R:9", bare names count once, "0" is the zero divisor.
// A leading '@' reads the text from that file.
Divisor parse_divisor(const Graph& g, std::string_view text);

// FNV-1a, 64 bit, as 16 hex digits.
std::string input_digest(std::string_view bytes);

std::string read_file(const std::string& path);

}  // namespace chipfire
