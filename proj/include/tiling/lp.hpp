#pragma once

#include <tiling/rational.hpp>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tiling {

enum class Sense { less_equal, greater_equal };
enum class Direction { maximize, minimize };
enum class LpStatus { optimal, infeasible, unbounded };

std::string to_string(LpStatus s);

/// Sparse row: (variable index, coefficient), indices strictly increasing.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

struct Constraint {
    SparseRow coefficients;
    Sense sense = Sense::less_equal;
    Rational rhs;
};

/// Optimize objective . x over x >= 0 subject to the rows.
struct LpProblem {
    Direction direction = Direction::maximize;
    std::vector<Rational> objective;
    std::vector<Constraint> rows;

    std::size_t num_variables() const { return objective.size(); }

    /// Throws InputError on out-of-range or unsorted row indices.
    void validate() const;
};

/// For an optimal solution, `dual` is a certificate for the dual program
/// with value rhs . dual == value. Max problems: A^T y >= c, y >= 0 on <= rows
/// and y <= 0 on >= rows. Min problems: A^T y <= c, y >= 0 on >= rows and
/// y <= 0 on <= rows.
struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Rational value;
    std::vector<Rational> primal;
    std::vector<Rational> dual;
    std::size_t pivots = 0;
};

/// Dense two-phase tableau simplex in exact arithmetic, Bland's rule on every
/// pivot.
LpSolution solve(const LpProblem & problem);

/// Returns a violated row for the point, or nothing if the point satisfies
/// every row the oracle knows about.
using SeparationOracle = std::function<std::optional<Constraint>(std::span<const Rational> point)>;

/// Solve, ask the oracle, add its row, repeat. The returned solution's dual
/// covers the rows of the final (grown) problem, available as `final_rows`.
struct LazySolution {
    LpSolution solution;
    LpProblem final_problem;
    std::size_t iterations = 0;
};

LazySolution solve_with_lazy_rows(LpProblem problem, const SeparationOracle & separate, std::size_t max_iterations = 100'000);

struct OptimalityCheck {
    bool primal_feasible = false;
    bool dual_feasible = false;
    bool values_agree = false;
    std::string detail;

    bool ok() const { return primal_feasible && dual_feasible && values_agree; }
};

/// Independent exact re-check of an optimal solution: primal feasibility,
/// dual feasibility and strong duality.
OptimalityCheck check_optimality(const LpProblem & problem, const LpSolution & solution);

/// Human-readable audit dump; see README for the format.
std::string dump_lp(const LpProblem & problem);

} // namespace tiling
