#include <tiling/errors.hpp>
#include <tiling/lp.hpp>

#include <sstream>

namespace tiling {

std::string to_string(LpStatus s)
{
    switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    }
    return "?";
}

void LpProblem::validate() const
{
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::size_t prev = 0;
        bool first = true;
        for (auto & [j, _] : rows[i].coefficients) {
            if (j >= objective.size())
                throw InputError("row " + std::to_string(i) + " references variable " + std::to_string(j) + " of "
                    + std::to_string(objective.size()));
            if (! first && j <= prev)
                throw InputError("row " + std::to_string(i) + " has unsorted or repeated variable indices");
            prev = j;
            first = false;
        }
    }
}

namespace {
    class Tableau {
    public:
        explicit Tableau(const LpProblem & p) :
            n_(p.num_variables()), m_(p.rows.size())
        {
            sign_.resize(m_);
            std::size_t artificials = 0;
            for (std::size_t i = 0; i < m_; ++i) {
                const auto & row = p.rows[i];
                sign_[i] = row.rhs.sign() < 0 ? -1 : 1;
                if (normalized_sense(row.sense, sign_[i]) == Sense::greater_equal)
                    ++artificials;
            }
            art_begin_ = n_ + m_;
            cols_ = art_begin_ + artificials;
            rhs_ = cols_;

            t_.assign(m_, std::vector<mpq_class>(cols_ + 1));
            basis_.resize(m_);
            identity_.resize(m_);
            std::size_t next_art = art_begin_;
            for (std::size_t i = 0; i < m_; ++i) {
                const auto & row = p.rows[i];
                mpq_class s = sign_[i];
                for (auto & [j, a] : row.coefficients)
                    t_[i][j] = s * a.get();
                t_[i][rhs_] = s * row.rhs.get();
                if (normalized_sense(row.sense, sign_[i]) == Sense::less_equal) {
                    t_[i][n_ + i] = 1;
                    identity_[i] = n_ + i;
                }
                else {
                    t_[i][n_ + i] = -1;
                    t_[i][next_art] = 1;
                    identity_[i] = next_art++;
                }
                basis_[i] = identity_[i];
            }
        }

        LpSolution run(const LpProblem & p)
        {
            LpSolution out;

            if (art_begin_ < cols_) {
                std::vector<mpq_class> phase1(cols_);
                for (std::size_t j = art_begin_; j < cols_; ++j)
                    phase1[j] = -1;
                price(phase1);
                iterate(cols_);
                if (-d_[rhs_] < 0) {
                    out.status = LpStatus::infeasible;
                    out.pivots = pivots_;
                    return out;
                }
                drive_out_artificials();
            }

            std::vector<mpq_class> cost(cols_);
            bool minimize = p.direction == Direction::minimize;
            for (std::size_t j = 0; j < n_; ++j)
                cost[j] = minimize ? mpq_class(-p.objective[j].get()) : p.objective[j].get();
            price(cost);
            if (! iterate(art_begin_)) {
                out.status = LpStatus::unbounded;
                out.pivots = pivots_;
                return out;
            }

            out.status = LpStatus::optimal;
            out.pivots = pivots_;
            mpq_class obj = -d_[rhs_];
            out.value = Rational(minimize ? mpq_class(-obj) : obj);
            out.primal.assign(n_, Rational{});
            for (std::size_t i = 0; i < m_; ++i)
                if (basis_[i] < n_)
                    out.primal[basis_[i]] = Rational(t_[i][rhs_]);
            out.dual.resize(m_);
            for (std::size_t i = 0; i < m_; ++i) {
                mpq_class y = -d_[identity_[i]] * sign_[i];
                out.dual[i] = Rational(minimize ? mpq_class(-y) : y);
            }
            return out;
        }

    private:
        static Sense normalized_sense(Sense s, int sign)
        {
            if (sign > 0)
                return s;
            return s == Sense::less_equal ? Sense::greater_equal : Sense::less_equal;
        }

        // d_j = c_j - c_B . T_j over every column, rhs slot holds -c_B . x_B
        void price(const std::vector<mpq_class> & cost)
        {
            d_.assign(cols_ + 1, 0);
            for (std::size_t j = 0; j < cols_; ++j)
                d_[j] = cost[j];
            for (std::size_t i = 0; i < m_; ++i) {
                const mpq_class & cb = cost[basis_[i]];
                if (cb == 0)
                    continue;
                for (std::size_t j = 0; j <= cols_; ++j)
                    if (t_[i][j] != 0)
                        d_[j] -= cb * t_[i][j];
            }
        }

        void pivot(std::size_t r, std::size_t e)
        {
            ++pivots_;
            auto & prow = t_[r];
            mpq_class inv = 1 / prow[e];
            std::vector<std::size_t> nz;
            for (std::size_t j = 0; j <= cols_; ++j)
                if (prow[j] != 0) {
                    prow[j] *= inv;
                    nz.push_back(j);
                }

            auto eliminate = [&](std::vector<mpq_class> & row) {
                if (row[e] == 0)
                    return;
                mpq_class f = row[e];
                for (std::size_t j : nz)
                    row[j] -= f * prow[j];
            };
            for (std::size_t i = 0; i < m_; ++i)
                if (i != r)
                    eliminate(t_[i]);
            eliminate(d_);
            basis_[r] = e;
        }

        // Bland's rule. Entering columns are restricted to [0, limit).
        // Returns false on unboundedness.
        bool iterate(std::size_t limit)
        {
            while (true) {
                std::size_t e = limit;
                for (std::size_t j = 0; j < limit; ++j)
                    if (d_[j] > 0) {
                        e = j;
                        break;
                    }
                if (e == limit)
                    return true;

                std::size_t r = m_;
                mpq_class best;
                for (std::size_t i = 0; i < m_; ++i) {
                    if (t_[i][e] <= 0)
                        continue;
                    mpq_class ratio = t_[i][rhs_] / t_[i][e];
                    if (r == m_ || ratio < best || (ratio == best && basis_[i] < basis_[r])) {
                        r = i;
                        best = ratio;
                    }
                }
                if (r == m_)
                    return false;
                pivot(r, e);
            }
        }

        void drive_out_artificials()
        {
            for (std::size_t i = 0; i < m_; ++i) {
                if (basis_[i] < art_begin_)
                    continue;
                for (std::size_t j = 0; j < art_begin_; ++j)
                    if (t_[i][j] != 0) {
                        pivot(i, j);
                        break;
                    }
                // otherwise the row is redundant; its artificial stays basic at zero
            }
        }

        std::size_t n_, m_;
        std::size_t art_begin_ = 0, cols_ = 0, rhs_ = 0;
        std::vector<int> sign_;
        std::vector<std::vector<mpq_class>> t_;
        std::vector<mpq_class> d_;
        std::vector<std::size_t> basis_;
        std::vector<std::size_t> identity_;
        std::size_t pivots_ = 0;
    };
}

LpSolution solve(const LpProblem & problem)
{
    problem.validate();
    Tableau t(problem);
    return t.run(problem);
}

LazySolution solve_with_lazy_rows(LpProblem problem, const SeparationOracle & separate, std::size_t max_iterations)
{
    LazySolution out;
    while (true) {
        ++out.iterations;
        if (out.iterations > max_iterations)
            throw ResourceError("lazy row generation exceeded " + std::to_string(max_iterations) + " iterations");
        out.solution = solve(problem);
        if (out.solution.status != LpStatus::optimal)
            break;
        auto row = separate(out.solution.primal);
        if (! row)
            break;
        problem.rows.push_back(std::move(*row));
    }
    out.final_problem = std::move(problem);
    return out;
}

OptimalityCheck check_optimality(const LpProblem & p, const LpSolution & s)
{
    OptimalityCheck c;
    std::ostringstream why;
    if (s.status != LpStatus::optimal) {
        c.detail = "solution is not optimal";
        return c;
    }
    if (s.primal.size() != p.num_variables() || s.dual.size() != p.rows.size()) {
        c.detail = "certificate dimensions do not match the problem";
        return c;
    }

    c.primal_feasible = true;
    for (std::size_t j = 0; j < s.primal.size(); ++j)
        if (s.primal[j] < 0) {
            c.primal_feasible = false;
            why << "x" << j << " negative; ";
        }
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        Rational lhs;
        for (auto & [j, a] : p.rows[i].coefficients)
            lhs += a * s.primal[j];
        bool ok = p.rows[i].sense == Sense::less_equal ? lhs <= p.rows[i].rhs : lhs >= p.rows[i].rhs;
        if (! ok) {
            c.primal_feasible = false;
            why << "row " << i << " violated (" << lhs << " vs " << p.rows[i].rhs << "); ";
        }
    }

    bool maximize = p.direction == Direction::maximize;
    c.dual_feasible = true;
    std::vector<Rational> aty(p.num_variables());
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        const Rational & y = s.dual[i];
        bool upper_row = p.rows[i].sense == Sense::less_equal;
        // max: y >= 0 on <= rows; min: y >= 0 on >= rows
        bool nonneg = maximize == upper_row;
        if (nonneg ? y < 0 : y > 0) {
            c.dual_feasible = false;
            why << "dual " << i << " has wrong sign; ";
        }
        for (auto & [j, a] : p.rows[i].coefficients)
            aty[j] += a * y;
    }
    for (std::size_t j = 0; j < aty.size(); ++j) {
        bool ok = maximize ? aty[j] >= p.objective[j] : aty[j] <= p.objective[j];
        if (! ok) {
            c.dual_feasible = false;
            why << "dual constraint " << j << " violated; ";
        }
    }

    Rational primal_value, dual_value;
    for (std::size_t j = 0; j < s.primal.size(); ++j)
        primal_value += p.objective[j] * s.primal[j];
    for (std::size_t i = 0; i < p.rows.size(); ++i)
        dual_value += p.rows[i].rhs * s.dual[i];
    c.values_agree = primal_value == s.value && dual_value == s.value;
    if (! c.values_agree)
        why << "values differ: reported " << s.value << ", primal " << primal_value << ", dual " << dual_value << "; ";

    c.detail = why.str();
    return c;
}

std::string dump_lp(const LpProblem & p)
{
    std::ostringstream s;
    s << "# exact lp dump v1\n";
    s << (p.direction == Direction::maximize ? "maximize" : "minimize") << "\n";
    s << "variables " << p.num_variables() << "\n";
    s << "objective";
    for (auto & c : p.objective)
        s << " " << c;
    s << "\n";
    s << "rows " << p.rows.size() << "\n";
    for (auto & row : p.rows) {
        for (auto & [j, a] : row.coefficients)
            s << a << "*x" << j << " ";
        s << (row.sense == Sense::less_equal ? "<=" : ">=") << " " << row.rhs << "\n";
    }
    return s.str();
}

} // namespace tiling
