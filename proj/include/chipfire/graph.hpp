#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace chipfire {

using Vertex = int;

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Strand lengths n_0..n_g of a banana graph.
struct BananaSpec {
    std::vector<int> lengths;

    int genus() const { return static_cast<int>(lengths.size()) - 1; }
    int length(int strand) const { return lengths.at(static_cast<std::size_t>(strand)); }
    bool operator==(const BananaSpec&) const = default;
};

// Position of a vertex on a banana strand. L and R sit on every strand.
struct StrandPos {
    int strand;
    int pos;
    bool operator==(const StrandPos&) const = default;
};

class Graph {
public:
    struct Neighbor {
        Vertex to;
        int mult;
    };

    Graph() = default;

    // Validates: names unique, endpoints in range, no loops, connected.
    Graph(std::vector<std::string> names,
          const std::vector<std::pair<Vertex, Vertex>>& edges,
          std::vector<std::pair<std::string, Vertex>> aliases = {},
          std::optional<BananaSpec> banana = std::nullopt);

    std::size_t size() const { return names_.size(); }
    int genus() const { return genus_; }
    long long edge_count() const { return edge_count_; }

    const std::string& name(Vertex v) const { return names_.at(static_cast<std::size_t>(v)); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<std::pair<std::string, Vertex>>& aliases() const { return aliases_; }
    std::optional<Vertex> find(std::string_view name) const;
    Vertex vertex(std::string_view name) const;

    const std::vector<Neighbor>& neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
    int valence(Vertex v) const { return valence_[static_cast<std::size_t>(v)]; }
    int multiplicity(Vertex a, Vertex b) const;
    // Keys are ordered pairs (a < b).
    const std::map<std::pair<Vertex, Vertex>, int>& edges() const { return edges_; }

    // Lexicographically least vertex name; the global base for reduced forms.
    Vertex default_base() const { return base_; }

    const std::optional<BananaSpec>& banana() const { return banana_; }
    Vertex banana_vertex(int strand, int pos) const;
    Vertex left() const { return banana_vertex(0, 0); }
    Vertex right() const { return banana_vertex(0, banana_->length(0)); }
    // Every (strand, pos) naming v; one entry for interior vertices, g+1 for L and R.
    std::vector<StrandPos> strand_positions(Vertex v) const;

private:
    std::vector<std::string> names_;
    std::vector<std::pair<std::string, Vertex>> aliases_;
    std::unordered_map<std::string, Vertex> lookup_;
    std::map<std::pair<Vertex, Vertex>, int> edges_;
    std::vector<std::vector<Neighbor>> adj_;
    std::vector<int> valence_;
    long long edge_count_ = 0;
    int genus_ = 0;
    Vertex base_ = 0;
    std::optional<BananaSpec> banana_;
    std::vector<std::vector<Vertex>> strands_;
};

struct MarkedGraph {
    Graph graph;
    Vertex u = 0;
    Vertex v = 0;

    bool degenerate() const { return u == v; }
};

Graph build_general(const std::vector<std::string>& vertices,
                    const std::vector<std::pair<std::string, std::string>>& edges);
Graph build_banana(const std::vector<int>& lengths);

// Cycle with arcs a and b between L and R, marked at L and R.
MarkedGraph build_cycle(int a, int b);
MarkedGraph mark(Graph g, std::string_view u, std::string_view v);

// Result of gluing marked graphs end to start. Component i's vertex x is
// renamed "c<i+1>/x"; embed[i][x] gives its index in the glued graph.
struct Gluing {
    MarkedGraph glued;
    std::vector<std::vector<Vertex>> embed;
    std::vector<std::vector<Vertex>> bridge_vertices;
};

MarkedGraph vertex_glue(const MarkedGraph& a, const MarkedGraph& b);

// bridges[i] is the number of edges on the path between part i's v-mark and
// part i+1's u-mark; 0 identifies them directly.
Gluing glue_chain(const std::vector<MarkedGraph>& parts, const std::vector<int>& bridges = {});

struct Contraction {
    Graph graph;
    std::vector<Vertex> image;
    int contracted = 0;
};

Contraction contract_bridges(const Graph& g);
MarkedGraph contract_bridges(const MarkedGraph& mg, int* contracted = nullptr);

// Number of spanning trees (Bareiss elimination on the reduced Laplacian).
std::int64_t jacobian_order(const Graph& g);

// Subdivided banana recognized from structure alone. Strands are listed in
// discovery order from the lower-indexed trivalent-or-more endpoint.
struct BananaView {
    BananaSpec spec;
    std::vector<std::vector<Vertex>> strands;
};
std::optional<BananaView> recognize_banana(const Graph& g);

// Two cycles sharing one vertex.
struct TwoLoopsView {
    Vertex cut;
    std::vector<Vertex> loop_a;  // starts at cut, cyclic order
    std::vector<Vertex> loop_b;
};
std::optional<TwoLoopsView> recognize_two_loops(const Graph& g);

// Relabel a graph recognized as a banana into canonical banana form;
// returns the image of every original vertex.
struct Relabeled {
    MarkedGraph marked;
    std::vector<Vertex> image;
};
Relabeled as_banana(const MarkedGraph& mg, const BananaView& view);

}  // namespace chipfire
