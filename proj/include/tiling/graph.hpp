#pragma once

#include <tiling/rational.hpp>

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tiling {

using Vertex = int;

struct Edge {
    Vertex u, v;

    friend auto operator<=>(const Edge &, const Edge &) = default;
};

/// Finite simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
public:
    Graph() = default;

    /// Validates and canonicalizes the edge list: endpoints in range, no
    /// loops, no duplicates. Throws InputError otherwise.
    Graph(int n, std::span<const Edge> edges, std::string label = {});
    explicit Graph(int n, std::string label = {}) : Graph(n, std::span<const Edge>{}, std::move(label)) {}

    int order() const { return n_; }
    std::size_t size() const { return edges_.size(); }

    /// Sorted canonical edges (u < v), lexicographic.
    const std::vector<Edge> & edges() const { return edges_; }
    const std::string & label() const { return label_; }

    bool adjacent(Vertex u, Vertex v) const { return adj_[static_cast<std::size_t>(u) * n_ + v] != 0; }

    /// Sorted neighbour list.
    const std::vector<Vertex> & neighbours(Vertex v) const { return nbrs_[v]; }

    /// Throws InputError when v is out of range.
    int degree(Vertex v) const;

    Graph with_edge(Vertex u, Vertex v) const;
    Graph with_label(std::string label) const;
    Graph relabelled(std::span<const Vertex> permutation) const;
    Graph induced(std::span<const Vertex> vertices) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<unsigned char> adj_;
    std::vector<std::vector<Vertex>> nbrs_;
    std::string label_;
};

bool operator==(const Graph & a, const Graph & b);

/// Named vertex parts of a generated graph, in construction order.
struct LabelledGraph {
    Graph graph;
    std::vector<std::pair<std::string, std::vector<Vertex>>> parts;

    const std::vector<Vertex> & part(std::string_view name) const;
};

/// The fixed graph H together with a proper colouring whose classes are
/// numbered by non-increasing size: class 0 has size l_1, class r-1 has l_r.
class Pattern {
public:
    /// Relabels classes by (size desc, first occurrence) and checks properness.
    Pattern(Graph graph, std::vector<int> colouring, int r, std::string name = {});

    const Graph & graph() const { return graph_; }
    int r() const { return r_; }
    int order() const { return graph_.order(); }
    const std::vector<int> & colouring() const { return colouring_; }
    const std::vector<int> & class_sizes() const { return class_sizes_; }
    int smallest_class() const { return class_sizes_.back(); }
    std::vector<Vertex> colour_class(int c) const;
    const std::string & name() const { return name_; }

private:
    Graph graph_;
    int r_;
    std::vector<int> colouring_;
    std::vector<int> class_sizes_;
    std::string name_;
};

/// Vertices split at a degree threshold: high = {deg >= threshold}, low the rest.
struct DegreeProfile {
    Rational threshold;
    std::size_t count_at_or_above = 0;
    std::vector<Vertex> high;
    std::vector<Vertex> low;
};

DegreeProfile degree_profile(const Graph & g, const Rational & threshold);

bool is_proper_colouring(const Graph & h, std::span<const int> colouring);

/// Among all proper colourings of h with exactly r non-empty classes, one
/// minimizing the smallest class. Ties: smallest sorted class-size vector,
/// then smallest canonical colouring sequence.
std::optional<Pattern> optimal_r_colouring(const Graph & h, int r, std::string name = {});

/// Smallest r >= 2 admitting a colouring, with its optimal colouring.
Pattern pattern_from_graph(const Graph & h, std::string name = {});

Graph parse_graph_text(std::string_view text);
std::string write_graph_text(const Graph & g);

/// JSON form {"n":..,"edges":[[u,v],..],"label":..}; "parts" is read when present.
LabelledGraph parse_graph_json(std::string_view text);
std::string write_graph_json(const Graph & g);
std::string write_graph_json(const LabelledGraph & g);

/// Dispatches on the first non-blank character ('{' means JSON).
LabelledGraph parse_graph(std::string_view text);
LabelledGraph read_graph_file(const std::string & path);

} // namespace tiling
