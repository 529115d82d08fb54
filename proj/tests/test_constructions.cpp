#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tiling/constructions.hpp>
#include <tiling/errors.hpp>

#include <algorithm>
#include <set>

using namespace tiling;

namespace {

void check_partition(const LabelledGraph & lg)
{
    std::vector<int> seen(static_cast<std::size_t>(lg.graph.order()), 0);
    for (auto & [name, vs] : lg.parts)
        for (Vertex v : vs)
            ++seen[static_cast<std::size_t>(v)];
    CHECK(std::ranges::all_of(seen, [](int c) { return c == 1; }));
}

bool independent(const Graph & g, const std::vector<Vertex> & a)
{
    for (Vertex u : a)
        for (Vertex v : a)
            if (g.adjacent(u, v))
                return false;
    return true;
}

bool complete_between(const Graph & g, const std::vector<Vertex> & a, const std::vector<Vertex> & b)
{
    for (Vertex u : a)
        for (Vertex v : b)
            if (! g.adjacent(u, v))
                return false;
    return true;
}

bool none_between(const Graph & g, const std::vector<Vertex> & a, const std::vector<Vertex> & b)
{
    for (Vertex u : a)
        for (Vertex v : b)
            if (g.adjacent(u, v))
                return false;
    return true;
}

} // namespace

TEST_CASE("extremal sizes")
{
    auto a = extremal_sizes({3, 3, 1, Rational(1, 6), 12});
    CHECK(a.v1 == 2);
    CHECK(a.v2 == 2);
    CHECK(a.v3 == 5);
    CHECK(a.s == 3);

    auto b = extremal_sizes({2, 2, 1, Rational(1, 5), 10});
    CHECK(b.v1 == 2);
    CHECK(b.v2 == 2);
    CHECK(b.v3 == 0);
    CHECK(b.s == 6);

    CHECK_THROWS_AS(extremal_sizes({3, 3, 1, Rational(1, 7), 12}), SpecError);
    CHECK_THROWS_AS(extremal_sizes({3, 3, 1, Rational(1, 2), 12}), SpecError);
    // s3 = 14 must split evenly across r-2 = 2 classes; n = 12 gives s3 = 7
    CHECK_THROWS_AS(extremal_sizes({4, 4, 1, Rational(1, 8), 12}), SpecError);

    try {
        extremal_sizes({3, 3, 1, Rational(1, 7), 12});
    } catch (const SpecError & e) {
        CHECK(! e.suggestion().empty());
    }
    for (auto [x, n] : suggest_extremal_parameters({3, 3, 1, Rational(1, 7), 12}))
        CHECK_NOTHROW(extremal_sizes({3, 3, 1, x, n}));
}

TEST_CASE("extremal structure and degree formulas")
{
    std::vector<ExtremalSpec> specs{
        {3, 3, 1, Rational(1, 6), 12},
        {2, 2, 1, Rational(1, 5), 10},
        {2, 3, 1, Rational(1, 6), 12},
        {4, 4, 1, Rational(1, 8), 24},
        {3, 9, 3, Rational(1, 18), 36},
    };
    for (auto & spec : specs) {
        auto sz = extremal_sizes(spec);
        CHECK(sz.v1 + sz.v2 + sz.v3 + sz.s == spec.n);
        auto lg = build_extremal_graph(spec);
        auto & g = lg.graph;
        CHECK(g.order() == spec.n);
        check_partition(lg);
        auto & v1 = lg.part("V1");
        auto & v2 = lg.part("V2");
        auto & v3 = lg.part("V3");
        auto & s = lg.part("S");
        CHECK(independent(g, v1));
        CHECK(independent(g, v2));
        CHECK(independent(g, s));
        CHECK(complete_between(g, v1, v2));
        CHECK(complete_between(g, v3, v1));
        CHECK(complete_between(g, v3, v2));
        CHECK(complete_between(g, v3, s));
        CHECK(none_between(g, v1, s));
        CHECK(none_between(g, v2, s));

        for (Vertex v : v1)
            CHECK(g.degree(v) == sz.v2 + sz.v3);
        for (Vertex v : v2)
            CHECK(g.degree(v) == sz.v1 + sz.v3);
        for (Vertex v : s)
            CHECK(g.degree(v) == sz.v3);
        if (spec.r > 2)
            for (Vertex v : v3)
                CHECK(g.degree(v) == spec.n - sz.v3 / (spec.r - 2));
    }

    // V2 degree for the K3 instance: (r-2+x l_r) n/(r-1) = 7
    auto lg = build_extremal_graph({3, 3, 1, Rational(1, 6), 12});
    for (Vertex v : lg.part("V2"))
        CHECK(lg.graph.degree(v) == 7);
}

TEST_CASE("extremal audits")
{
    auto a = audit_extremal_tiling({3, 3, 1, Rational(1, 6), 12}, standard_pattern("K3"));
    CHECK(a.ok());
    CHECK(a.tiling_number == 2);
    CHECK(a.high_degree_count == 9);

    auto b = audit_extremal_tiling({2, 2, 1, Rational(1, 5), 10}, standard_pattern("K2"));
    CHECK(b.ok());
    CHECK(b.tiling_number == 2);

    CHECK_THROWS_AS(audit_extremal_tiling({3, 3, 1, Rational(1, 6), 12}, standard_pattern("K2")), InputError);
}

TEST_CASE("k333 counterexample")
{
    CHECK(k333_sizes(Rational(1, 10), 20) == std::vector<int>{4, 8, 7, 1});
    CHECK_THROWS_AS(k333_sizes(Rational(1, 7), 20), SpecError);

    auto lg = build_k333_counterexample(Rational(1, 10), 20);
    auto & g = lg.graph;
    check_partition(lg);
    auto & v1 = lg.part("V1");
    auto & v2 = lg.part("V2");
    auto & v3 = lg.part("V3");
    auto & v4 = lg.part("V4");
    CHECK(independent(g, v1));
    CHECK(independent(g, v3));
    CHECK(independent(g, v4));
    CHECK(complete_between(g, v1, v2));
    CHECK(complete_between(g, v3, v1));
    CHECK(complete_between(g, v3, v2));
    CHECK(complete_between(g, v3, v4));
    CHECK(none_between(g, v1, v4));
    CHECK(none_between(g, v2, v4));
    for (std::size_t i = 0; i < v2.size(); ++i)
        CHECK(g.adjacent(v2[i], v2[(i + 1) % v2.size()]));
    for (Vertex v : v2)
        CHECK(g.degree(v) == 4 + 7 + 2);
    for (Vertex v : v1)
        CHECK(g.degree(v) == 15);
    for (Vertex v : v3)
        CHECK(g.degree(v) == 13);
    for (Vertex v : v4)
        CHECK(g.degree(v) == 7);
    CHECK(degree_profile(g, 13).count_at_or_above == 19);
}

TEST_CASE("blow-up")
{
    std::vector<int> parts{3, 3};
    CHECK(blow_up(complete_graph(2), 3) == complete_multipartite(parts));
    CHECK(blow_up(cycle_graph(5), 1) == cycle_graph(5));
    CHECK_THROWS_AS(blow_up(cycle_graph(5), 0), InputError);

    for (auto & g : {cycle_graph(5), path_graph(4), random_graph(6, Rational(1, 2), 3)}) {
        for (int s = 1; s <= 3; ++s) {
            auto b = blow_up(g, s);
            CHECK(b.order() == g.order() * s);
            CHECK(b.size() == static_cast<std::size_t>(s * s) * g.size());
            for (Vertex v = 0; v < g.order(); ++v)
                for (int i = 0; i < s; ++i)
                    for (int j = 0; j < s; ++j)
                        CHECK_FALSE(b.adjacent(v * s + i, v * s + j));
        }
        // clone j of clone i of v is v*ab + i*b + j, exactly clone (i*b + j) of v
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 3; ++b)
                CHECK(blow_up(blow_up(g, a), b) == blow_up(g, a * b));
    }
}

TEST_CASE("standard graphs and patterns")
{
    auto k333 = standard_pattern("K_3,3,3");
    CHECK(k333.order() == 9);
    CHECK(k333.class_sizes() == std::vector<int>{3, 3, 3});
    CHECK(standard_graph("K_{3,3,3}") == standard_graph("K3,3,3"));
    CHECK(standard_graph("K3") == complete_graph(3));
    CHECK(standard_graph("K_3") == complete_graph(3));
    CHECK(standard_graph("P3").size() == 2);
    CHECK(standard_graph("C_5") == cycle_graph(5));
    CHECK_THROWS_AS(standard_graph("Q7"), InputError);
    CHECK_THROWS_AS(standard_pattern("K3", 2), InputError);

    auto p3 = standard_pattern("P3");
    CHECK(p3.r() == 2);
    CHECK(p3.class_sizes() == std::vector<int>{2, 1});
    auto p3r3 = standard_pattern("P3", 3);
    CHECK(p3r3.class_sizes() == std::vector<int>{1, 1, 1});
    auto c5 = standard_pattern("C5");
    CHECK(c5.r() == 3);
    CHECK(c5.smallest_class() == 1);
}

TEST_CASE("random graphs")
{
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL})
        CHECK(random_graph(8, 1, seed) == complete_graph(8));
    CHECK(random_graph(8, 0, 5).size() == 0);
    CHECK(random_graph(10, Rational(1, 2), 7) == random_graph(10, Rational(1, 2), 7));
    std::set<std::size_t> sizes;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
        sizes.insert(random_graph(10, Rational(1, 2), seed).size());
    CHECK(sizes.size() > 1);
    CHECK_THROWS_AS(random_graph(5, Rational(3, 2), 0), InputError);
    CHECK_THROWS_AS(random_graph(-1, Rational(1, 2), 0), InputError);
}
