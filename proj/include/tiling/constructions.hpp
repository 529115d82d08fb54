#pragma once

#include <tiling/graph.hpp>
#include <tiling/hom.hpp>
#include <tiling/tiling.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tiling {

/// Parameters of the four-part extremal graph G(x, |V(H)|, r, l_r, n).
struct ExtremalSpec {
    int r = 3;
    int h_size = 3;
    int ell_r = 1;
    Rational x;
    int n = 0;
};

/// Part sizes: V1 = x l_r n, V2 = x(|V(H)| - l_r) n/(r-1),
/// V3 = (r-2)(1 - x l_r) n/(r-1), S = (1 - x|V(H)|) n/(r-1).
struct ExtremalSizes {
    int v1 = 0, v2 = 0, v3 = 0, s = 0;
};

/// Exact part sizes; throws SpecError naming the first non-integral or
/// negative size (with nearby integral parameters as the suggestion).
ExtremalSizes extremal_sizes(const ExtremalSpec & spec);

/// Nearby (x, n) pairs whose sizes are all integral, closest n first.
std::vector<std::pair<Rational, int>> suggest_extremal_parameters(const ExtremalSpec & spec, std::size_t count = 3);

/// Parts "V1", "V2", "V3", "S" in that order.
LabelledGraph build_extremal_graph(const ExtremalSpec & spec);

struct ExtremalAudit {
    ExtremalSizes sizes;
    /// Every injective copy meets V1 in at least l_r vertices.
    bool copies_meet_v1 = true;
    std::optional<InjectiveCopy> offending_copy;
    std::size_t copies_checked = 0;
    int tiling_number = 0;
    Rational xn;
    bool tiling_equals_xn = false;
    IntegralTiling tiling;
    Rational delta;
    std::size_t high_degree_count = 0;
    bool degree_count_ok = false;
    std::optional<Vertex> offending_vertex;

    bool ok() const { return copies_meet_v1 && tiling_equals_xn && degree_count_ok; }
};

/// Throws InputError if the pattern disagrees with `spec` on |V(H)|, r or l_r.
ExtremalAudit audit_extremal_tiling(const ExtremalSpec & spec, const Pattern & h, const Limits & limits = {});

/// Sizes 3xn-2, 3xn+2, (1-3x)n/2, (1-9x)n/2 for parts V1..V4.
std::vector<int> k333_sizes(const Rational & x, int n);

/// V1, V3, V4 independent; V2 a spanning cycle in index order; V3 complete
/// to everything else; V1 complete to V2.
LabelledGraph build_k333_counterexample(const Rational & x, int n);

struct K333Audit {
    std::vector<int> sizes;
    Rational delta;
    Rational required_count;
    std::size_t high_degree_count = 0;
    int tiling_number = 0;
    bool proven = false;
    Rational xn;

    /// The degree hypothesis is met and the tiling number stays below xn.
    bool ok() const { return Rational(static_cast<long>(high_degree_count)) >= required_count && proven && Rational(tiling_number) < xn; }
};

K333Audit audit_k333_counterexample(const Rational & x, int n, const Limits & limits = {});

/// Each vertex becomes s clones; clones of u and v are adjacent iff uv is an edge.
/// Clone j of vertex v is vertex v*s + j.
Graph blow_up(const Graph & g, int s);

Graph complete_graph(int k);
Graph complete_multipartite(std::span<const int> parts);
Graph path_graph(int k);
Graph cycle_graph(int k);

/// K_k, K_{a,b,...}, P_k, C_k. Accepts "K3", "K_3", "K_{3,3,3}", "K3,3,3",
/// "P3", "C_5". Throws InputError for unknown names.
Graph standard_graph(const std::string & name);

/// The graph with its minimum-l_r colouring at the smallest feasible r, or
/// at `r` when given.
Pattern standard_pattern(const std::string & name, std::optional<int> r = {});

/// Erdos-Renyi G(n, p) with exact p in [0,1]; each pair u < v in lexicographic
/// order draws one uniform integer from a mt19937_64 seeded with `seed`.
Graph random_graph(int n, const Rational & p, std::uint64_t seed);

} // namespace tiling
