#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tiling/constructions.hpp>
#include <tiling/errors.hpp>
#include <tiling/theorem_lab.hpp>

#include <random>

using namespace tiling;

namespace {

FractionalCover uniform_cover(int n, const Rational & w)
{
    FractionalCover c;
    c.weights.assign(static_cast<std::size_t>(n), w);
    c.size = w * n;
    return c;
}

bool is_clique(const Graph & g, const std::vector<Vertex> & vs)
{
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (! g.adjacent(vs[i], vs[j]))
                return false;
    return true;
}

} // namespace

TEST_CASE("median hypothesis")
{
    auto k333 = build_k333_counterexample(Rational(1, 10), 20);
    MedianHypothesis hyp{3, Rational(1, 10), 3, 9, 0};
    CHECK(hyp.delta(20) == 13);
    CHECK(hyp.required_count(20) == 19);
    auto rep = check_median_hypothesis(k333.graph, hyp);
    CHECK(rep.met);
    CHECK(rep.count == 19);
    CHECK(rep.required == 19);

    auto from_pattern = MedianHypothesis::for_pattern(standard_pattern("K_3,3,3"), Rational(1, 10));
    CHECK(from_pattern.r == 3);
    CHECK(from_pattern.ell_r == 3);
    CHECK(from_pattern.h_size == 9);

    MedianHypothesis k3{3, Rational(1, 6), 1, 3, 0};
    CHECK_FALSE(check_median_hypothesis(Graph(12), k3).met);
    CHECK(check_median_hypothesis(complete_graph(12), k3).met);

    MedianHypothesis with_eta = k3;
    with_eta.eta = Rational(1, 2);
    auto r2 = check_median_hypothesis(complete_graph(12), with_eta);
    CHECK(r2.degree_threshold == Rational(3, 2) * k3.delta(12));

    MedianHypothesis bad = k3;
    bad.x = Rational(1, 3);
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = k3;
    bad.eta = -1;
    CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("cover bound")
{
    auto ext = build_extremal_graph({3, 3, 1, Rational(1, 6), 12});
    auto a = check_cover_bound(ext.graph, standard_pattern("K3"), Rational(1, 6));
    CHECK(a.outcome == BoundOutcome::holds);
    CHECK(a.cover_number == 2);
    CHECK(a.slack == 0);
    CHECK(check_cover(ext.graph, standard_pattern("K3"), a.cover).ok);

    auto b = check_cover_bound(complete_graph(9), standard_pattern("K3"), Rational(1, 9));
    CHECK(b.outcome == BoundOutcome::holds);
    CHECK(b.cover_number >= 1);

    auto c = check_cover_bound(cycle_graph(9), standard_pattern("K3"), Rational(1, 9));
    CHECK(c.outcome == BoundOutcome::hypothesis_not_met);

    CHECK(to_string(BoundOutcome::holds) == "holds");
    auto j = cover_bound_json(a);
    CHECK(j.find("\"slack\"") != std::string::npos);
}

TEST_CASE("greedy clique")
{
    auto a = greedy_clique_in_L(complete_graph(4), 3, 3);
    REQUIRE(a.ok);
    CHECK(a.witness.vertices == std::vector<Vertex>{0, 1});
    CHECK(a.witness.common_high == std::vector<Vertex>{2, 3});
    CHECK(a.witness.common_low.empty());

    auto ext = build_extremal_graph({3, 3, 1, Rational(1, 6), 12});
    auto b = greedy_clique_in_L(ext.graph, 7, 3);
    REQUIRE(b.ok);
    CHECK(is_clique(ext.graph, b.witness.vertices));
    CHECK(b.witness.common_high.size() + b.witness.common_low.size() >= 2);
    CHECK(intersection_bound_holds(ext.graph, b.witness, 7, 3));

    // C5: v1 = 0, v2 = 1, and the edge 01 has no common neighbour
    auto c = greedy_clique_in_L(cycle_graph(5), 2, 3);
    CHECK_FALSE(c.ok);
    CHECK(c.failed_step == 2);

    auto d = greedy_clique_in_L(Graph(4), 1, 3);
    CHECK_FALSE(d.ok);
    CHECK(d.failed_step == 0);
}

TEST_CASE("greedy clique on hypothesis-satisfying random graphs")
{
    std::mt19937_64 rng(6);
    int tested = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int n = 6 + static_cast<int>(rng() % 5);
        auto g = random_graph(n, Rational(3, 4), rng());
        for (int r = 2; r <= 4; ++r) {
            MedianHypothesis hyp{r, Rational(1, 4 * r), 1, r, 0};
            if (! check_median_hypothesis(g, hyp).met)
                continue;
            ++tested;
            auto delta = hyp.delta(n);
            auto res = greedy_clique_in_L(g, delta, r);
            if (! res.ok) {
                CHECK(res.failed_step == r - 1);
                continue;
            }
            CHECK(is_clique(g, res.witness.vertices));
            CHECK(res.witness.vertices.size() == static_cast<std::size_t>(r - 1));
            if ((r - 1) * delta - (r - 2) * n > 0)
                CHECK(intersection_bound_holds(g, res.witness, delta, r));
        }
    }
    CHECK(tested > 50);
}

TEST_CASE("min cover clique")
{
    auto g = complete_graph(4);
    auto m = min_cover_clique(g, 3, 3, uniform_cover(4, Rational(1, 3)));
    REQUIRE(m);
    CHECK(m->witness.vertices == std::vector<Vertex>{0, 1});
    CHECK(m->alpha == std::vector<Rational>{Rational(1, 3), Rational(1, 3)});
    CHECK(m->alpha_high == Rational(1, 3));
    CHECK(m->u == 2);
    CHECK(m->alpha_low == 1);
    CHECK(m->alpha_r == Rational(1, 3));
    CHECK(m->alpha_chain_holds());

    CHECK_FALSE(min_cover_clique(cycle_graph(5), 2, 4, uniform_cover(5, Rational(1, 2))));

    // non-uniform weights steer the choice to the cheapest edge
    FractionalCover c{{Rational(1, 2), Rational(1, 5), Rational(1, 2), Rational(1, 10)}, Rational(13, 10)};
    auto k = min_cover_clique(g, 3, 3, c);
    REQUIRE(k);
    CHECK(k->witness.vertices == std::vector<Vertex>{3, 1});
    CHECK(k->alpha == std::vector<Rational>{Rational(1, 10), Rational(1, 5)});

    auto j = min_cover_clique_json(*m);
    CHECK(j.find("\"alpha\"") != std::string::npos);
}

TEST_CASE("extremal instance with its optimal cover")
{
    auto ext = build_extremal_graph({3, 3, 1, Rational(1, 6), 12});
    auto h = standard_pattern("K3");
    auto cover = fractional_cover_number(ext.graph, h).cover;
    auto m = min_cover_clique(ext.graph, 7, 3, cover);
    REQUIRE(m);
    CHECK(m->alpha_chain_holds());
    auto rep = check_collapsed_constraint(h, ext.graph, *m);
    CHECK_FALSE(rep.vacuous);
    CHECK(rep.holds);
    CHECK(rep.lhs >= 1);
}

TEST_CASE("collapsed constraint")
{
    auto g = complete_graph(4);
    auto m = min_cover_clique(g, 3, 3, uniform_cover(4, Rational(1, 3)));
    REQUIRE(m);
    auto k3 = check_collapsed_constraint(standard_pattern("K3"), g, *m);
    CHECK(k3.holds);
    CHECK(k3.lhs == 1);
    CHECK(is_homomorphism(complete_graph(3), g, k3.homomorphism));

    auto k333 = standard_pattern("K_3,3,3");
    auto r = check_collapsed_constraint(k333, g, *m);
    CHECK(r.holds);
    auto mult = multiplicity_vector(r.homomorphism);
    REQUIRE(mult.size() == 3);
    for (auto [v, count] : mult)
        CHECK(count == 3);

    // P3 with r = 2: the clique is a single L-vertex, l = (2, 1)
    auto p3 = standard_pattern("P3");
    auto path = path_graph(4);
    FractionalCover pc{{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}, 2};
    auto pm = min_cover_clique(path, 1, 2, pc);
    REQUIRE(pm);
    auto pr = check_collapsed_constraint(p3, path, *pm);
    CHECK_FALSE(pr.vacuous);
    CHECK(pr.lhs == 2 * pm->alpha[0] + pm->alpha_r);
    CHECK(pr.holds);

    MinCoverClique lonely;
    lonely.witness.vertices = {0, 1};
    lonely.alpha = {Rational(1, 3), Rational(1, 3)};
    CHECK(check_collapsed_constraint(standard_pattern("K3"), g, lonely).vacuous);

    MinCoverClique corrupt = *m;
    corrupt.witness.vertices = {0, 0};
    CHECK_THROWS_AS(check_collapsed_constraint(standard_pattern("K3"), g, corrupt), InvariantError);
}

TEST_CASE("min cover clique agrees with brute force and keeps its invariants")
{
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 4 + static_cast<int>(rng() % 7);
        auto g = random_graph(n, Rational(static_cast<long>(2 + rng() % 2), 4), rng());
        int r = 2 + static_cast<int>(rng() % 3);
        auto h = standard_pattern("K" + std::to_string(r));
        auto cover = fractional_cover_number(g, h).cover;
        Rational delta(static_cast<long>(rng() % static_cast<unsigned>(n)));
        auto fast = min_cover_clique(g, delta, r, cover);
        auto slow = min_cover_clique_brute_force(g, delta, r, cover);
        REQUIRE(fast.has_value() == slow.has_value());
        if (! fast)
            continue;
        CHECK(fast->witness.vertices == slow->witness.vertices);
        CHECK(fast->alpha == slow->alpha);
        CHECK(fast->u == slow->u);
        CHECK(fast->w == slow->w);
        CHECK(fast->alpha_chain_holds());
        auto rep = check_collapsed_constraint(h, g, *fast);
        if (! rep.vacuous)
            CHECK(rep.holds);
    }
}
