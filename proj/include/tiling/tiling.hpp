#pragma once

#include <tiling/graph.hpp>
#include <tiling/hom.hpp>
#include <tiling/lp.hpp>

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace tiling {

/// Weights per distinct homomorphism column.
struct FractionalTiling {
    std::vector<HomColumn> columns;
    std::vector<Rational> weights;
    Rational size;
};

/// Weight per host vertex.
struct FractionalCover {
    std::vector<Rational> weights;
    Rational size;
};

struct IntegralTiling {
    std::vector<InjectiveCopy> copies;

    int size() const { return static_cast<int>(copies.size()); }
};

struct CheckReport {
    bool ok = true;
    std::string violation;

    explicit operator bool() const { return ok; }
};

/// The tiling LP together with the columns its variables stand for.
struct TilingLp {
    std::vector<HomColumn> columns;
    LpProblem problem;
};

struct Limits {
    std::optional<std::size_t> max_columns;
    std::optional<std::uint64_t> max_nodes;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::size_t max_lazy_iterations = 100'000;
};

TilingLp build_tiling_lp(const Graph & g, const Pattern & h, const Limits & limits = {});
TilingLp build_tiling_lp(const Graph & g, const Pattern & h, std::vector<HomColumn> columns);

struct TilingResult {
    Rational value;
    FractionalTiling tiling;
    /// The LP dual, i.e. an optimal cover found by the same solve.
    FractionalCover dual_cover;
};

TilingResult fractional_tiling_number(const Graph & g, const Pattern & h, const Limits & limits = {});

enum class CoverMethod { lazy, full };

struct CoverResult {
    Rational value;
    FractionalCover cover;
    std::size_t rows_used = 0;
};

CoverResult fractional_cover_number(const Graph & g, const Pattern & h, CoverMethod method = CoverMethod::lazy,
    const Limits & limits = {});

struct ViolatedColumn {
    Mapping homomorphism;
    MultiplicityVector multiplicities;
    Rational load;
};

/// First homomorphism (search order) whose weighted load is below 1.
std::optional<ViolatedColumn> find_violated_column(const Graph & g, const Pattern & h, std::span<const Rational> weights);

CheckReport check_tiling(const Graph & g, const Pattern & h, const FractionalTiling & t);
CheckReport check_cover(const Graph & g, const Pattern & h, const FractionalCover & c);

struct DualityReport {
    bool equal = false;
    Rational tiling_number;
    Rational cover_number;
    FractionalTiling tiling;
    FractionalCover cover;
    CheckReport tiling_check;
    CheckReport cover_check;

    bool ok() const { return equal && tiling_check.ok && cover_check.ok; }
};

/// Tiling number by the full LP, cover number by lazy rows, certificates
/// re-checked over the full column set.
DualityReport verify_duality(const Graph & g, const Pattern & h, const Limits & limits = {});

struct IntegralResult {
    int value = 0;
    IntegralTiling tiling;
    /// False when the search stopped early at the requested target.
    bool proven_optimal = true;
    std::uint64_t nodes = 0;
};

/// Candidate-copy count above which a node also tries the LP bound.
inline constexpr std::size_t lp_bound_threshold = 50;

IntegralResult integral_tiling_number(const Graph & g, const Pattern & h, std::optional<int> target = {},
    const Limits & limits = {});

CheckReport check_integral_tiling(const Graph & g, const Pattern & h, const IntegralTiling & t);

struct GapReport {
    int integral = 0;
    Rational fractional;
};

/// Throws InvariantError if integral > fractional.
GapReport integral_vs_fractional_gap(const Graph & g, const Pattern & h, const Limits & limits = {});

std::string tiling_json(const FractionalTiling & t);
std::string cover_json(const FractionalCover & c);

} // namespace tiling
