#pragma once

#include <tiling/graph.hpp>
#include <tiling/tiling.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tiling {

/// The median-type degree hypothesis. With eta = 0 it is exactly the
/// non-asymptotic cover-bound hypothesis.
struct MedianHypothesis {
    int r = 2;
    Rational x;
    int ell_r = 1;
    int h_size = 2;
    Rational eta;

    /// (r - 2 + x l_r) n / (r - 1)
    Rational delta(int n) const;
    /// (r - 2 + x |V(H)|) n / (r - 1)
    Rational required_count(int n) const;

    /// Throws InputError unless r >= 2, l_r >= 1, 0 < x < 1/|V(H)|, eta >= 0.
    void validate() const;

    static MedianHypothesis for_pattern(const Pattern & h, const Rational & x, const Rational & eta = {});
};

struct HypothesisReport {
    bool met = false;
    Rational degree_threshold;  // (1 + eta) delta
    Rational required;          // (1 + eta) required_count
    std::size_t count = 0;      // vertices of degree >= degree_threshold
};

HypothesisReport check_median_hypothesis(const Graph & g, const MedianHypothesis & hyp);

enum class BoundOutcome { holds, violated, hypothesis_not_met };

std::string to_string(BoundOutcome o);

struct CoverBoundReport {
    BoundOutcome outcome = BoundOutcome::hypothesis_not_met;
    HypothesisReport hypothesis;
    Rational cover_number;
    Rational xn;
    Rational slack;  // cover_number - xn
    FractionalCover cover;
};

/// Fractional cover number against x n, gated on the eta = 0 hypothesis.
CoverBoundReport check_cover_bound(const Graph & g, const Pattern & h, const Rational & x, const Limits & limits = {});

/// An (r-1)-clique inside the high-degree set with its common neighbourhood
/// split into high- and low-degree parts.
struct CliqueWitness {
    std::vector<Vertex> vertices;
    std::vector<Vertex> common_high;
    std::vector<Vertex> common_low;
};

struct GreedyCliqueResult {
    bool ok = false;
    /// 1-based step i whose set came out empty: N_L(i) for i < r-1, the
    /// whole common neighbourhood for i = r-1. Zero when L itself is empty.
    int failed_step = 0;
    CliqueWitness witness;
    std::string message;
};

/// v_1 = lowest high-degree vertex, v_{i+1} = lowest vertex of the running
/// common high-degree neighbourhood.
GreedyCliqueResult greedy_clique_in_L(const Graph & g, const Rational & delta, int r);

/// |N_L(r-1)| + |N_S(r-1)| >= (r-1) delta - (r-2) n, checked exactly.
bool intersection_bound_holds(const Graph & g, const CliqueWitness & w, const Rational & delta, int r);

struct MinCoverClique {
    CliqueWitness witness;           // vertices ordered by cover value, ties by index
    std::vector<Rational> alpha;     // alpha_1 <= ... <= alpha_{r-1}
    std::optional<Vertex> u;         // min-cover vertex of the common high neighbourhood
    std::optional<Vertex> w;         // min-cover vertex of the common low neighbourhood
    Rational alpha_high = 1;
    Rational alpha_low = 1;
    Rational alpha_r = 1;

    bool alpha_chain_holds() const;
};

/// The (r-1)-clique in L whose ascending cover vector is lexicographically
/// smallest; ties to the lowest vertex sequence. nullopt when L has none.
std::optional<MinCoverClique> min_cover_clique(const Graph & g, const Rational & delta, int r, const FractionalCover & c);

/// Same selection by scanning every (r-1)-subset of V(G); test oracle.
std::optional<MinCoverClique> min_cover_clique_brute_force(const Graph & g, const Rational & delta, int r, const FractionalCover & c);

struct CollapsedReport {
    bool vacuous = false;  // no common neighbour, nothing to check
    Mapping homomorphism;
    Rational lhs;          // sum_i l_i alpha_i
    bool holds = false;
};

/// Sends colour class i of H to v_{i+1} and the smallest class to u or w
/// (whichever attains alpha_r), validates the map, and checks
/// sum l_i alpha_i >= 1. Throws InvariantError if the map is not a
/// homomorphism.
CollapsedReport check_collapsed_constraint(const Pattern & h, const Graph & g, const MinCoverClique & m);

std::string cover_bound_json(const CoverBoundReport & r);
std::string min_cover_clique_json(const MinCoverClique & m);

} // namespace tiling
