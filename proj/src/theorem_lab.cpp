#include <tiling/errors.hpp>
#include <tiling/theorem_lab.hpp>

#include <json.hpp>

#include <algorithm>

using json = nlohmann::ordered_json;

namespace tiling {

Rational MedianHypothesis::delta(int n) const
{
    return (Rational(r - 2) + x * Rational(ell_r)) * Rational(n) / Rational(r - 1);
}

Rational MedianHypothesis::required_count(int n) const
{
    return (Rational(r - 2) + x * Rational(h_size)) * Rational(n) / Rational(r - 1);
}

void MedianHypothesis::validate() const
{
    if (r < 2)
        throw InputError("hypothesis needs r >= 2");
    if (ell_r < 1 || h_size < r * ell_r)
        throw InputError("hypothesis needs l_r >= 1 and |V(H)| >= r l_r");
    if (x <= 0 || x * Rational(h_size) >= 1)
        throw InputError("x must lie in (0, 1/|V(H)|), got " + x.str());
    if (eta < 0)
        throw InputError("eta must be nonnegative");
}

MedianHypothesis MedianHypothesis::for_pattern(const Pattern & h, const Rational & x, const Rational & eta)
{
    return {h.r(), x, h.smallest_class(), h.order(), eta};
}

HypothesisReport check_median_hypothesis(const Graph & g, const MedianHypothesis & hyp)
{
    hyp.validate();
    HypothesisReport r;
    Rational scale = Rational(1) + hyp.eta;
    r.degree_threshold = scale * hyp.delta(g.order());
    r.required = scale * hyp.required_count(g.order());
    r.count = degree_profile(g, r.degree_threshold).count_at_or_above;
    r.met = Rational(static_cast<long>(r.count)) >= r.required;
    return r;
}

std::string to_string(BoundOutcome o)
{
    switch (o) {
    case BoundOutcome::holds: return "holds";
    case BoundOutcome::violated: return "violated";
    case BoundOutcome::hypothesis_not_met: return "hypothesis-not-met";
    }
    return "?";
}

CoverBoundReport check_cover_bound(const Graph & g, const Pattern & h, const Rational & x, const Limits & limits)
{
    CoverBoundReport r;
    r.hypothesis = check_median_hypothesis(g, MedianHypothesis::for_pattern(h, x));
    r.xn = x * Rational(g.order());
    if (! r.hypothesis.met) {
        r.outcome = BoundOutcome::hypothesis_not_met;
        return r;
    }
    auto cover = fractional_cover_number(g, h, CoverMethod::lazy, limits);
    r.cover_number = cover.value;
    r.cover = std::move(cover.cover);
    r.slack = r.cover_number - r.xn;
    r.outcome = r.slack >= 0 ? BoundOutcome::holds : BoundOutcome::violated;
    return r;
}

namespace {
    std::vector<char> high_mask(const Graph & g, const Rational & delta)
    {
        std::vector<char> mask(g.order(), 0);
        for (Vertex v : degree_profile(g, delta).high)
            mask[v] = 1;
        return mask;
    }

    void common_neighbourhood(const Graph & g, std::span<const Vertex> clique, const std::vector<char> & high, CliqueWitness & w)
    {
        w.common_high.clear();
        w.common_low.clear();
        for (Vertex v = 0; v < g.order(); ++v) {
            if (! std::ranges::all_of(clique, [&](Vertex c) { return g.adjacent(c, v); }))
                continue;
            (high[v] ? w.common_high : w.common_low).push_back(v);
        }
    }
}

GreedyCliqueResult greedy_clique_in_L(const Graph & g, const Rational & delta, int r)
{
    if (r < 2)
        throw InputError("greedy clique needs r >= 2");
    auto high = high_mask(g, delta);
    GreedyCliqueResult out;

    auto first = std::ranges::find(high, 1);
    if (first == high.end()) {
        out.failed_step = 0;
        out.message = "no vertex has degree >= " + delta.str();
        return out;
    }
    out.witness.vertices.push_back(static_cast<Vertex>(first - high.begin()));

    for (int i = 1; i <= r - 1; ++i) {
        common_neighbourhood(g, out.witness.vertices, high, out.witness);
        if (i < r - 1) {
            if (out.witness.common_high.empty()) {
                out.failed_step = i;
                out.message = "N_L(" + std::to_string(i) + ") is empty";
                return out;
            }
            out.witness.vertices.push_back(out.witness.common_high.front());
        }
        else if (out.witness.common_high.empty() && out.witness.common_low.empty()) {
            out.failed_step = i;
            out.message = "the " + std::to_string(r - 1) + "-clique has no common neighbour";
            return out;
        }
    }
    out.ok = true;
    return out;
}

bool intersection_bound_holds(const Graph & g, const CliqueWitness & w, const Rational & delta, int r)
{
    Rational lhs(static_cast<long>(w.common_high.size() + w.common_low.size()));
    return lhs >= Rational(r - 1) * delta - Rational(r - 2) * Rational(g.order());
}

bool MinCoverClique::alpha_chain_holds() const
{
    for (std::size_t i = 1; i < alpha.size(); ++i)
        if (alpha[i - 1] > alpha[i])
            return false;
    return alpha.empty() || alpha.back() <= alpha_high;
}

namespace {
    using Key = std::pair<std::vector<Rational>, std::vector<Vertex>>;

    Key clique_key(std::span<const Vertex> clique, const FractionalCover & c)
    {
        std::vector<Rational> values;
        for (Vertex v : clique)
            values.push_back(c.weights[v]);
        std::ranges::sort(values);
        return {values, std::vector<Vertex>(clique.begin(), clique.end())};
    }

    void require_cover(const Graph & g, const FractionalCover & c)
    {
        if (static_cast<int>(c.weights.size()) != g.order())
            throw InputError("cover weights do not match host order");
    }

    MinCoverClique finish(const Graph & g, const std::vector<char> & high, std::vector<Vertex> clique, const FractionalCover & c)
    {
        MinCoverClique m;
        std::ranges::sort(clique, [&](Vertex a, Vertex b) {
            return c.weights[a] != c.weights[b] ? c.weights[a] < c.weights[b] : a < b;
        });
        m.witness.vertices = clique;
        for (Vertex v : clique)
            m.alpha.push_back(c.weights[v]);
        common_neighbourhood(g, clique, high, m.witness);

        auto lightest = [&](const std::vector<Vertex> & vs) -> std::optional<Vertex> {
            if (vs.empty())
                return std::nullopt;
            return *std::ranges::min_element(vs, [&](Vertex a, Vertex b) {
                return c.weights[a] != c.weights[b] ? c.weights[a] < c.weights[b] : a < b;
            });
        };
        m.u = lightest(m.witness.common_high);
        m.w = lightest(m.witness.common_low);
        m.alpha_high = m.u ? c.weights[*m.u] : Rational(1);
        m.alpha_low = m.w ? c.weights[*m.w] : Rational(1);
        m.alpha_r = std::min(m.alpha_high, m.alpha_low);
        return m;
    }

    struct CliqueScan {
        const Graph & g;
        const std::vector<char> & high;
        const FractionalCover & c;
        std::size_t size;
        std::vector<Vertex> current;
        std::optional<Key> best;

        void offer()
        {
            auto key = clique_key(current, c);
            if (! best || key < *best)
                best = std::move(key);
        }

        void extend(Vertex from)
        {
            if (current.size() == size) {
                offer();
                return;
            }
            for (Vertex v = from; v < g.order(); ++v) {
                if (! high[v])
                    continue;
                if (! std::ranges::all_of(current, [&](Vertex u) { return g.adjacent(u, v); }))
                    continue;
                current.push_back(v);
                extend(v + 1);
                current.pop_back();
            }
        }
    };
}

std::optional<MinCoverClique> min_cover_clique(const Graph & g, const Rational & delta, int r, const FractionalCover & c)
{
    if (r < 2)
        throw InputError("min_cover_clique needs r >= 2");
    require_cover(g, c);
    auto high = high_mask(g, delta);
    CliqueScan scan{g, high, c, static_cast<std::size_t>(r - 1), {}, {}};
    scan.extend(0);
    if (! scan.best)
        return std::nullopt;
    return finish(g, high, scan.best->second, c);
}

std::optional<MinCoverClique> min_cover_clique_brute_force(const Graph & g, const Rational & delta, int r, const FractionalCover & c)
{
    require_cover(g, c);
    auto high = high_mask(g, delta);
    int k = r - 1, n = g.order();
    if (k > n)
        return std::nullopt;

    std::optional<Key> best;
    std::vector<Vertex> subset(k);
    for (int i = 0; i < k; ++i)
        subset[i] = i;
    while (true) {
        bool ok = std::ranges::all_of(subset, [&](Vertex v) { return high[v] != 0; });
        for (int i = 0; ok && i < k; ++i)
            for (int j = i + 1; ok && j < k; ++j)
                ok = g.adjacent(subset[i], subset[j]);
        if (ok) {
            auto key = clique_key(subset, c);
            if (! best || key < *best)
                best = key;
        }
        int i = k - 1;
        while (i >= 0 && subset[i] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++subset[i];
        for (int j = i + 1; j < k; ++j)
            subset[j] = subset[j - 1] + 1;
    }
    if (! best)
        return std::nullopt;
    return finish(g, high, best->second, c);
}

CollapsedReport check_collapsed_constraint(const Pattern & h, const Graph & g, const MinCoverClique & m)
{
    CollapsedReport out;
    if (static_cast<int>(m.witness.vertices.size()) != h.r() - 1)
        throw InputError("witness clique size does not match pattern r - 1");
    if (! m.u && ! m.w) {
        out.vacuous = true;
        out.holds = true;
        return out;
    }
    Vertex target = (m.u && (! m.w || m.alpha_high <= m.alpha_low)) ? *m.u : *m.w;

    out.homomorphism.resize(h.order());
    for (Vertex p = 0; p < h.order(); ++p) {
        int cls = h.colouring()[p];
        out.homomorphism[p] = cls < h.r() - 1 ? m.witness.vertices[cls] : target;
    }
    if (! is_homomorphism(h.graph(), g, out.homomorphism))
        throw InvariantError("collapsing map is not a homomorphism; clique or neighbourhood is corrupt");

    for (int i = 0; i < h.r() - 1; ++i)
        out.lhs += Rational(h.class_sizes()[i]) * m.alpha[i];
    out.lhs += Rational(h.smallest_class()) * m.alpha_r;
    out.holds = out.lhs >= 1;
    return out;
}

std::string cover_bound_json(const CoverBoundReport & r)
{
    json j;
    j["outcome"] = to_string(r.outcome);
    j["hypothesis"] = {{"met", r.hypothesis.met}, {"degree_threshold", r.hypothesis.degree_threshold.str()},
        {"required", r.hypothesis.required.str()}, {"count", r.hypothesis.count}};
    j["xn"] = r.xn.str();
    if (r.outcome != BoundOutcome::hypothesis_not_met) {
        j["cover_number"] = r.cover_number.str();
        j["slack"] = r.slack.str();
        json w = json::object();
        for (std::size_t v = 0; v < r.cover.weights.size(); ++v)
            w[std::to_string(v)] = r.cover.weights[v].str();
        j["cover"] = w;
    }
    return j.dump();
}

std::string min_cover_clique_json(const MinCoverClique & m)
{
    json j;
    j["clique"] = m.witness.vertices;
    j["common_high"] = m.witness.common_high;
    j["common_low"] = m.witness.common_low;
    json alpha = json::array();
    for (auto & a : m.alpha)
        alpha.push_back(a.str());
    j["alpha"] = alpha;
    j["u"] = m.u ? json(*m.u) : json(nullptr);
    j["w"] = m.w ? json(*m.w) : json(nullptr);
    j["alpha_L"] = m.alpha_high.str();
    j["alpha_S"] = m.alpha_low.str();
    j["alpha_r"] = m.alpha_r.str();
    return j.dump();
}

} // namespace tiling
