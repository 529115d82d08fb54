#pragma once

#include <tiling/graph.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace tiling {

/// mapping[i] is the image in G of pattern vertex i.
using Mapping = std::vector<Vertex>;

/// Sparse vertex -> |h^{-1}(v)|, sorted by vertex, all entries positive.
using MultiplicityVector = std::vector<std::pair<Vertex, int>>;

/// One distinct multiplicity vector and how many homomorphisms produce it.
struct HomColumn {
    MultiplicityVector multiplicities;
    std::uint64_t class_size = 0;

    int multiplicity(Vertex v) const;
    friend bool operator==(const HomColumn &, const HomColumn &) = default;
};

MultiplicityVector multiplicity_vector(std::span<const Vertex> mapping);

bool is_homomorphism(const Graph & h, const Graph & g, std::span<const Vertex> mapping);

/// Order in which the backtracking search assigns pattern vertices: each
/// vertex after the first of its component has an earlier neighbour; ties go
/// to higher degree, then lower index.
std::vector<Vertex> search_order(const Graph & h);

/// Calls visit for every homomorphism h -> g in search order (deterministic,
/// not lexicographic). Stops early when visit returns false. With
/// `injective`, only embeddings are visited.
void for_each_homomorphism(const Graph & h, const Graph & g, const std::function<bool(std::span<const Vertex>)> & visit,
    bool injective = false);

/// Like for_each_homomorphism, but only visits homomorphisms whose load
/// sum_i weights[mapping[i]] is strictly below `bound`. Branches whose partial
/// load already reaches the bound are cut. Weights must be nonnegative.
void for_each_light_homomorphism(const Graph & h, const Graph & g, std::span<const Rational> weights, const Rational & bound,
    const std::function<bool(std::span<const Vertex>, const Rational & load)> & visit);

/// Every homomorphism exactly once, lexicographic on the mapping vector.
std::vector<Mapping> enumerate_homomorphisms(const Graph & h, const Graph & g);
std::uint64_t count_homomorphisms(const Graph & h, const Graph & g);

/// Distinct multiplicity vectors, sorted lexicographically. Throws
/// ResourceError if more than max_columns distinct columns appear.
std::vector<HomColumn> enumerate_columns(const Graph & h, const Graph & g, std::optional<std::size_t> max_columns = {});
inline std::vector<HomColumn> enumerate_columns(const Pattern & h, const Graph & g, std::optional<std::size_t> max_columns = {})
{
    return enumerate_columns(h.graph(), g, max_columns);
}

/// A copy of H in G: the image of an embedding, identified by its vertex
/// set together with the image edges. Embeddings that differ by an
/// automorphism of H give the same copy.
struct InjectiveCopy {
    std::vector<Vertex> vertices;  // sorted
    std::vector<Edge> edges;       // image edges, sorted canonical
    Mapping embedding;             // lexicographically smallest realizing embedding
    std::uint64_t embedding_count = 0;
};

/// How copies are told apart. With `vertex_set`, copies on the same vertices
/// merge and `edges` belongs to the smallest embedding.
enum class CopyIdentity { subgraph, vertex_set };

/// Copies sorted by (vertices, edges).
std::vector<InjectiveCopy> enumerate_injective_copies(const Graph & h, const Graph & g,
    CopyIdentity identity = CopyIdentity::subgraph);
inline std::vector<InjectiveCopy> enumerate_injective_copies(const Pattern & h, const Graph & g,
    CopyIdentity identity = CopyIdentity::subgraph)
{
    return enumerate_injective_copies(h.graph(), g, identity);
}

/// Checks every map V(H) -> V(G). Refuses (ResourceError) when |V(G)|^|V(H)|
/// exceeds the guard.
std::uint64_t brute_force_homomorphisms(const Graph & h, const Graph & g, std::uint64_t guard = 10'000'000);

} // namespace tiling
