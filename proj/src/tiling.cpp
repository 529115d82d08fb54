#include <tiling/errors.hpp>
#include <tiling/tiling.hpp>

#include <json.hpp>

#include <algorithm>
#include <map>
#include <sstream>

using json = nlohmann::ordered_json;

namespace tiling {

TilingLp build_tiling_lp(const Graph & g, const Pattern & h, std::vector<HomColumn> columns)
{
    TilingLp lp;
    lp.columns = std::move(columns);
    lp.problem.direction = Direction::maximize;
    lp.problem.objective.assign(lp.columns.size(), Rational(1));
    lp.problem.rows.resize(g.order());
    for (auto & row : lp.problem.rows) {
        row.sense = Sense::less_equal;
        row.rhs = 1;
    }
    for (std::size_t j = 0; j < lp.columns.size(); ++j)
        for (auto [v, mult] : lp.columns[j].multiplicities)
            lp.problem.rows[v].coefficients.emplace_back(j, Rational(mult));
    (void)h;
    return lp;
}

TilingLp build_tiling_lp(const Graph & g, const Pattern & h, const Limits & limits)
{
    return build_tiling_lp(g, h, enumerate_columns(h, g, limits.max_columns));
}

TilingResult fractional_tiling_number(const Graph & g, const Pattern & h, const Limits & limits)
{
    auto lp = build_tiling_lp(g, h, limits);
    auto sol = solve(lp.problem);
    if (sol.status != LpStatus::optimal)
        throw InvariantError("tiling LP reported " + to_string(sol.status));
    if (auto c = check_optimality(lp.problem, sol); ! c.ok())
        throw InvariantError("tiling LP optimality check failed: " + c.detail);

    TilingResult r;
    r.value = sol.value;
    r.tiling.columns = std::move(lp.columns);
    r.tiling.weights = std::move(sol.primal);
    r.tiling.size = sol.value;
    r.dual_cover.weights = std::move(sol.dual);
    for (auto & w : r.dual_cover.weights)
        r.dual_cover.size += w;
    return r;
}

namespace {
    Constraint cover_row(const MultiplicityVector & mv)
    {
        Constraint c;
        c.sense = Sense::greater_equal;
        c.rhs = 1;
        for (auto [v, mult] : mv)
            c.coefficients.emplace_back(static_cast<std::size_t>(v), Rational(mult));
        return c;
    }

    LpProblem empty_cover_lp(const Graph & g)
    {
        LpProblem p;
        p.direction = Direction::minimize;
        p.objective.assign(g.order(), Rational(1));
        return p;
    }
}

std::optional<ViolatedColumn> find_violated_column(const Graph & g, const Pattern & h, std::span<const Rational> weights)
{
    std::optional<ViolatedColumn> found;
    for_each_light_homomorphism(h.graph(), g, weights, Rational(1), [&](std::span<const Vertex> m, const Rational & load) {
        found = ViolatedColumn{Mapping(m.begin(), m.end()), multiplicity_vector(m), load};
        return false;
    });
    return found;
}

CoverResult fractional_cover_number(const Graph & g, const Pattern & h, CoverMethod method, const Limits & limits)
{
    LpProblem final_problem;
    LpSolution sol;
    if (method == CoverMethod::full) {
        final_problem = empty_cover_lp(g);
        for (auto & col : enumerate_columns(h, g, limits.max_columns))
            final_problem.rows.push_back(cover_row(col.multiplicities));
        sol = solve(final_problem);
    }
    else {
        auto lazy = solve_with_lazy_rows(
            empty_cover_lp(g),
            [&](std::span<const Rational> point) -> std::optional<Constraint> {
                if (limits.deadline && std::chrono::steady_clock::now() > *limits.deadline)
                    throw ResourceError("time budget exhausted during cover row generation");
                if (auto v = find_violated_column(g, h, point))
                    return cover_row(v->multiplicities);
                return std::nullopt;
            },
            limits.max_lazy_iterations);
        sol = std::move(lazy.solution);
        final_problem = std::move(lazy.final_problem);
    }

    if (sol.status != LpStatus::optimal)
        throw InvariantError("cover LP reported " + to_string(sol.status));
    if (auto c = check_optimality(final_problem, sol); ! c.ok())
        throw InvariantError("cover LP optimality check failed: " + c.detail);

    CoverResult r;
    r.value = sol.value;
    r.cover.weights = std::move(sol.primal);
    r.cover.size = sol.value;
    r.rows_used = final_problem.rows.size();
    return r;
}

CheckReport check_tiling(const Graph & g, const Pattern & h, const FractionalTiling & t)
{
    if (t.columns.size() != t.weights.size())
        throw InputError("tiling has " + std::to_string(t.columns.size()) + " columns but " + std::to_string(t.weights.size())
            + " weights");

    auto known = enumerate_columns(h, g);
    std::map<MultiplicityVector, bool> valid;
    for (auto & c : known)
        valid[c.multiplicities] = true;

    std::vector<Rational> load(g.order());
    Rational total;
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
        const auto & col = t.columns[j].multiplicities;
        if (! valid.contains(col))
            throw InputError("tiling column " + std::to_string(j) + " is not the multiplicity vector of any homomorphism");
        const Rational & w = t.weights[j];
        if (w < 0 || w > 1)
            return {false, "column " + std::to_string(j) + " has weight " + w.str() + " outside [0,1]"};
        for (auto [v, mult] : col)
            load[v] += w * Rational(mult);
        total += w;
    }
    for (Vertex v = 0; v < g.order(); ++v)
        if (load[v] > 1)
            return {false, "vertex " + std::to_string(v) + " has load " + load[v].str()};
    if (total != t.size)
        return {false, "weights sum to " + total.str() + " but size is " + t.size.str()};
    return {};
}

CheckReport check_cover(const Graph & g, const Pattern & h, const FractionalCover & c)
{
    if (static_cast<int>(c.weights.size()) != g.order())
        return {false, "cover has " + std::to_string(c.weights.size()) + " weights for " + std::to_string(g.order()) + " vertices"};
    Rational total;
    for (Vertex v = 0; v < g.order(); ++v) {
        const Rational & w = c.weights[v];
        if (w < 0 || w > 1)
            return {false, "vertex " + std::to_string(v) + " has weight " + w.str() + " outside [0,1]"};
        total += w;
    }
    for (auto & col : enumerate_columns(h, g)) {
        Rational sum;
        for (auto [v, mult] : col.multiplicities)
            sum += c.weights[v] * Rational(mult);
        if (sum < 1) {
            std::ostringstream s;
            s << "column {";
            for (auto [v, mult] : col.multiplicities)
                s << " " << v << ":" << mult;
            s << " } collects only " << sum;
            return {false, s.str()};
        }
    }
    if (total != c.size)
        return {false, "weights sum to " + total.str() + " but size is " + c.size.str()};
    return {};
}

DualityReport verify_duality(const Graph & g, const Pattern & h, const Limits & limits)
{
    DualityReport r;
    auto t = fractional_tiling_number(g, h, limits);
    auto c = fractional_cover_number(g, h, CoverMethod::lazy, limits);
    r.tiling_number = t.value;
    r.cover_number = c.value;
    r.tiling = std::move(t.tiling);
    r.cover = std::move(c.cover);
    r.equal = r.tiling_number == r.cover_number;
    r.tiling_check = check_tiling(g, h, r.tiling);
    r.cover_check = check_cover(g, h, r.cover);
    return r;
}

namespace {
    class PackingSearch {
    public:
        PackingSearch(const Graph & g, const Pattern & h, std::optional<int> target, const Limits & limits) :
            g_(g), k_(h.order()), target_(target), limits_(limits), state_(g.order(), free_)
        {
            // only the vertex set matters for disjointness
            copies_ = enumerate_injective_copies(h, g, CopyIdentity::vertex_set);
            containing_.resize(g.order());
            for (std::size_t c = 0; c < copies_.size(); ++c)
                for (Vertex v : copies_[c].vertices)
                    containing_[v].push_back(c);
        }

        IntegralResult run()
        {
            if (k_ > 0)
                search(0);
            IntegralResult r;
            r.value = best_;
            for (auto c : best_stack_)
                r.tiling.copies.push_back(copies_[c]);
            r.proven_optimal = ! stopped_;
            r.nodes = nodes_;
            return r;
        }

    private:
        static constexpr char free_ = 0, covered_ = 1, excluded_ = 2;

        bool is_candidate(std::size_t c) const
        {
            return std::ranges::all_of(copies_[c].vertices, [&](Vertex v) { return state_[v] == free_; });
        }

        int lp_bound(const std::vector<std::size_t> & candidates, const std::vector<Vertex> & usable) const
        {
            LpProblem p;
            p.direction = Direction::maximize;
            p.objective.assign(candidates.size(), Rational(1));
            std::vector<int> row_of(g_.order(), -1);
            for (std::size_t i = 0; i < usable.size(); ++i)
                row_of[usable[i]] = static_cast<int>(i);
            p.rows.resize(usable.size());
            for (auto & row : p.rows)
                row.rhs = 1;
            for (std::size_t j = 0; j < candidates.size(); ++j)
                for (Vertex v : copies_[candidates[j]].vertices)
                    p.rows[row_of[v]].coefficients.emplace_back(j, Rational(1));
            auto sol = solve(p);
            if (sol.status != LpStatus::optimal)
                throw InvariantError("packing relaxation reported " + to_string(sol.status));
            return static_cast<int>(sol.value.floor().get_si());
        }

        // Returns false once the search should stop (target reached).
        bool search(int current)
        {
            ++nodes_;
            if (limits_.max_nodes && nodes_ > *limits_.max_nodes)
                throw ResourceError("branch-and-bound exceeded " + std::to_string(*limits_.max_nodes) + " nodes");
            if (limits_.deadline && (nodes_ & 255) == 0 && std::chrono::steady_clock::now() > *limits_.deadline)
                throw ResourceError("time budget exhausted during branch-and-bound");

            if (current > best_) {
                best_ = current;
                best_stack_ = stack_;
                if (target_ && best_ >= *target_) {
                    stopped_ = true;
                    return false;
                }
            }

            std::vector<std::size_t> candidates;
            std::vector<char> in_some(g_.order(), 0);
            for (std::size_t c = 0; c < copies_.size(); ++c)
                if (is_candidate(c)) {
                    candidates.push_back(c);
                    for (Vertex v : copies_[c].vertices)
                        in_some[v] = 1;
                }
            std::vector<Vertex> usable;
            for (Vertex v = 0; v < g_.order(); ++v)
                if (in_some[v])
                    usable.push_back(v);

            if (current + static_cast<int>(usable.size()) / k_ <= best_)
                return true;
            if (candidates.size() > lp_bound_threshold && current + lp_bound(candidates, usable) <= best_)
                return true;

            Vertex v = usable.front();
            for (std::size_t c : containing_[v]) {
                if (! is_candidate(c))
                    continue;
                for (Vertex w : copies_[c].vertices)
                    state_[w] = covered_;
                stack_.push_back(c);
                bool go_on = search(current + 1);
                stack_.pop_back();
                for (Vertex w : copies_[c].vertices)
                    state_[w] = free_;
                if (! go_on)
                    return false;
            }

            state_[v] = excluded_;
            bool go_on = search(current);
            state_[v] = free_;
            return go_on;
        }

        const Graph & g_;
        int k_;
        std::optional<int> target_;
        const Limits & limits_;
        std::vector<InjectiveCopy> copies_;
        std::vector<std::vector<std::size_t>> containing_;
        std::vector<char> state_;
        std::vector<std::size_t> stack_, best_stack_;
        int best_ = 0;
        bool stopped_ = false;
        std::uint64_t nodes_ = 0;
    };
}

IntegralResult integral_tiling_number(const Graph & g, const Pattern & h, std::optional<int> target, const Limits & limits)
{
    if (target && *target <= 0)
        return IntegralResult{0, {}, false, 0};
    return PackingSearch(g, h, target, limits).run();
}

CheckReport check_integral_tiling(const Graph & g, const Pattern & h, const IntegralTiling & t)
{
    std::vector<char> used(g.order(), 0);
    for (std::size_t i = 0; i < t.copies.size(); ++i) {
        const auto & c = t.copies[i];
        if (! is_homomorphism(h.graph(), g, c.embedding))
            return {false, "copy " + std::to_string(i) + " embedding is not a homomorphism"};
        auto image = c.embedding;
        std::ranges::sort(image);
        if (std::ranges::adjacent_find(image) != image.end())
            return {false, "copy " + std::to_string(i) + " embedding is not injective"};
        if (image != c.vertices)
            return {false, "copy " + std::to_string(i) + " image does not match its vertex set"};
        for (Vertex v : image) {
            if (used[v])
                return {false, "vertex " + std::to_string(v) + " used by two copies"};
            used[v] = 1;
        }
    }
    return {};
}

GapReport integral_vs_fractional_gap(const Graph & g, const Pattern & h, const Limits & limits)
{
    GapReport r;
    r.integral = integral_tiling_number(g, h, {}, limits).value;
    r.fractional = fractional_tiling_number(g, h, limits).value;
    if (Rational(r.integral) > r.fractional)
        throw InvariantError("integral tiling number " + std::to_string(r.integral) + " exceeds fractional " + r.fractional.str());
    return r;
}

std::string tiling_json(const FractionalTiling & t)
{
    json entries = json::array();
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
        if (t.weights[j] == 0)
            continue;
        json col = json::object();
        for (auto [v, mult] : t.columns[j].multiplicities)
            col[std::to_string(v)] = mult;
        entries.push_back({{"column", col}, {"weight", t.weights[j].str()}});
    }
    return json{{"tiling", entries}, {"size", t.size.str()}}.dump();
}

std::string cover_json(const FractionalCover & c)
{
    json weights = json::object();
    for (std::size_t v = 0; v < c.weights.size(); ++v)
        weights[std::to_string(v)] = c.weights[v].str();
    return json{{"cover", weights}, {"size", c.size.str()}}.dump();
}

} // namespace tiling
