#include <tiling/constructions.hpp>
#include <tiling/errors.hpp>

#include <algorithm>
#include <random>
#include <sstream>

namespace tiling {

namespace {
    struct ExactSizes {
        Rational v1, v2, v3, s;
    };

    ExactSizes exact_extremal_sizes(const ExtremalSpec & spec)
    {
        Rational n(spec.n), x = spec.x, rm1(spec.r - 1);
        return {
            x * Rational(spec.ell_r) * n,
            x * Rational(spec.h_size - spec.ell_r) * n / rm1,
            Rational(spec.r - 2) * (Rational(1) - x * Rational(spec.ell_r)) * n / rm1,
            (Rational(1) - x * Rational(spec.h_size)) * n / rm1,
        };
    }

    // first offending size, empty when all sizes are usable
    std::string extremal_size_problem(const ExtremalSpec & spec)
    {
        auto e = exact_extremal_sizes(spec);
        std::pair<const char *, const Rational *> named[] = {{"|V1|", &e.v1}, {"|V2|", &e.v2}, {"|V3|", &e.v3}, {"|S|", &e.s}};
        for (auto [name, value] : named) {
            if (! value->is_integer())
                return std::string(name) + " = " + value->str() + " is not an integer";
            if (*value < 0)
                return std::string(name) + " = " + value->str() + " is negative";
        }
        if (spec.r > 2 && e.v3.numerator() % (spec.r - 2) != 0)
            return "|V3| = " + e.v3.str() + " is not divisible by r-2 = " + std::to_string(spec.r - 2);
        return {};
    }

    void check_extremal_parameters(const ExtremalSpec & spec)
    {
        if (spec.r < 2)
            throw SpecError("extremal graph needs r >= 2");
        if (spec.ell_r < 1 || spec.h_size < spec.r * spec.ell_r)
            throw SpecError("need l_r >= 1 and |V(H)| >= r l_r");
        if (spec.n < 1)
            throw SpecError("extremal graph needs n >= 1");
        if (spec.x <= 0 || spec.x * Rational(spec.h_size) >= 1)
            throw SpecError("x must lie in (0, 1/|V(H)|), got " + spec.x.str());
    }

    std::string format_suggestions(const std::vector<std::pair<Rational, int>> & s)
    {
        std::ostringstream out;
        out << "try";
        for (std::size_t i = 0; i < s.size(); ++i)
            out << (i ? "," : "") << " --x " << s[i].first << " --n " << s[i].second;
        return s.empty() ? std::string{} : out.str();
    }
}

std::vector<std::pair<Rational, int>> suggest_extremal_parameters(const ExtremalSpec & spec, std::size_t count)
{
    std::vector<std::pair<Rational, int>> out;
    auto consider = [&](int n) {
        if (n < 1 || out.size() >= count)
            return;
        ExtremalSpec probe = spec;
        probe.n = n;
        if (extremal_size_problem(probe).empty())
            out.emplace_back(spec.x, n);
    };
    consider(spec.n);
    for (int d = 1; d <= 100'000 && out.size() < count; ++d) {
        consider(spec.n - d);
        consider(spec.n + d);
    }
    return out;
}

ExtremalSizes extremal_sizes(const ExtremalSpec & spec)
{
    check_extremal_parameters(spec);
    if (auto problem = extremal_size_problem(spec); ! problem.empty())
        throw SpecError(problem, format_suggestions(suggest_extremal_parameters(spec)));
    auto e = exact_extremal_sizes(spec);
    ExtremalSizes s{static_cast<int>(e.v1.floor().get_si()), static_cast<int>(e.v2.floor().get_si()),
        static_cast<int>(e.v3.floor().get_si()), static_cast<int>(e.s.floor().get_si())};
    if (s.v1 + s.v2 + s.v3 + s.s != spec.n)
        throw InvariantError("extremal part sizes do not sum to n");
    return s;
}

namespace {
    std::vector<Vertex> range_of(int begin, int count)
    {
        std::vector<Vertex> out(count);
        for (int i = 0; i < count; ++i)
            out[i] = begin + i;
        return out;
    }

    void connect_all(std::vector<Edge> & edges, std::span<const Vertex> a, std::span<const Vertex> b)
    {
        for (Vertex u : a)
            for (Vertex v : b)
                edges.push_back({u, v});
    }
}

LabelledGraph build_extremal_graph(const ExtremalSpec & spec)
{
    auto s = extremal_sizes(spec);
    auto v1 = range_of(0, s.v1), v2 = range_of(s.v1, s.v2), v3 = range_of(s.v1 + s.v2, s.v3),
         rest = range_of(s.v1 + s.v2 + s.v3, s.s);

    std::vector<Edge> edges;
    connect_all(edges, v1, v2);
    // V3 is a balanced complete (r-2)-partite graph
    if (spec.r > 2) {
        int part = s.v3 / (spec.r - 2);
        for (int i = 0; i < s.v3; ++i)
            for (int j = i + 1; j < s.v3; ++j)
                if (i / part != j / part)
                    edges.push_back({v3[i], v3[j]});
    }
    std::vector<Vertex> outside;
    outside.insert(outside.end(), v1.begin(), v1.end());
    outside.insert(outside.end(), v2.begin(), v2.end());
    outside.insert(outside.end(), rest.begin(), rest.end());
    connect_all(edges, v3, outside);

    std::ostringstream label;
    label << "extremal r=" << spec.r << " h=" << spec.h_size << " l_r=" << spec.ell_r << " x=" << spec.x << " n=" << spec.n;
    return {Graph(spec.n, edges, label.str()), {{"V1", v1}, {"V2", v2}, {"V3", v3}, {"S", rest}}};
}

ExtremalAudit audit_extremal_tiling(const ExtremalSpec & spec, const Pattern & h, const Limits & limits)
{
    if (h.order() != spec.h_size || h.r() != spec.r || h.smallest_class() != spec.ell_r)
        throw InputError("pattern (|V(H)| = " + std::to_string(h.order()) + ", r = " + std::to_string(h.r()) + ", l_r = "
            + std::to_string(h.smallest_class()) + ") does not match the extremal parameters");

    auto lg = build_extremal_graph(spec);
    const Graph & g = lg.graph;
    ExtremalAudit a;
    a.sizes = extremal_sizes(spec);

    std::vector<char> in_v1(g.order(), 0);
    for (Vertex v : lg.part("V1"))
        in_v1[v] = 1;
    for (auto & copy : enumerate_injective_copies(h, g)) {
        ++a.copies_checked;
        auto hits = std::ranges::count_if(copy.vertices, [&](Vertex v) { return in_v1[v] != 0; });
        if (hits < spec.ell_r && a.copies_meet_v1) {
            a.copies_meet_v1 = false;
            a.offending_copy = copy;
        }
    }

    auto integral = integral_tiling_number(g, h, {}, limits);
    a.tiling_number = integral.value;
    a.tiling = std::move(integral.tiling);
    a.xn = spec.x * Rational(spec.n);
    a.tiling_equals_xn = Rational(a.tiling_number) == a.xn;

    a.delta = (Rational(spec.r - 2) + spec.x * Rational(spec.ell_r)) * Rational(spec.n) / Rational(spec.r - 1);
    auto profile = degree_profile(g, a.delta);
    a.high_degree_count = profile.count_at_or_above;
    a.degree_count_ok = a.high_degree_count == static_cast<std::size_t>(a.sizes.v1 + a.sizes.v2 + a.sizes.v3);
    std::vector<char> high(g.order(), 0);
    for (Vertex v : profile.high)
        high[v] = 1;
    for (Vertex v : lg.part("S"))
        if (high[v] && ! a.offending_vertex)
            a.offending_vertex = v;
    for (auto name : {"V1", "V2", "V3"})
        for (Vertex v : lg.part(name))
            if (! high[v] && ! a.offending_vertex)
                a.offending_vertex = v;
    return a;
}

std::vector<int> k333_sizes(const Rational & x, int n)
{
    if (x <= 0 || n < 1)
        throw SpecError("k333 construction needs x > 0 and n >= 1");
    Rational xn = x * Rational(n);
    Rational sizes[] = {Rational(3) * xn - Rational(2), Rational(3) * xn + Rational(2),
        (Rational(1) - Rational(3) * x) * Rational(n) / Rational(2), (Rational(1) - Rational(9) * x) * Rational(n) / Rational(2)};
    std::vector<int> out;
    for (std::size_t i = 0; i < 4; ++i) {
        std::string name = "|V" + std::to_string(i + 1) + "|";
        if (! sizes[i].is_integer())
            throw SpecError(name + " = " + sizes[i].str() + " is not an integer");
        if (sizes[i] < 0)
            throw SpecError(name + " = " + sizes[i].str() + " is negative");
        out.push_back(static_cast<int>(sizes[i].floor().get_si()));
    }
    if (out[1] < 3)
        throw SpecError("|V2| = " + std::to_string(out[1]) + " is too small for a simple spanning cycle");
    return out;
}

LabelledGraph build_k333_counterexample(const Rational & x, int n)
{
    auto s = k333_sizes(x, n);
    auto v1 = range_of(0, s[0]), v2 = range_of(s[0], s[1]), v3 = range_of(s[0] + s[1], s[2]),
         v4 = range_of(s[0] + s[1] + s[2], s[3]);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < v2.size(); ++i)
        edges.push_back({v2[i], v2[(i + 1) % v2.size()]});
    connect_all(edges, v1, v2);
    connect_all(edges, v3, v1);
    connect_all(edges, v3, v2);
    connect_all(edges, v3, v4);
    std::ostringstream label;
    label << "k333 counterexample x=" << x << " n=" << n;
    return {Graph(n, edges, label.str()), {{"V1", v1}, {"V2", v2}, {"V3", v3}, {"V4", v4}}};
}

K333Audit audit_k333_counterexample(const Rational & x, int n, const Limits & limits)
{
    K333Audit a;
    a.sizes = k333_sizes(x, n);
    auto lg = build_k333_counterexample(x, n);
    a.delta = (Rational(1) + Rational(3) * x) * Rational(n) / Rational(2);
    a.required_count = (Rational(1) + Rational(9) * x) * Rational(n) / Rational(2);
    a.high_degree_count = degree_profile(lg.graph, a.delta).count_at_or_above;
    a.xn = x * Rational(n);

    auto pattern = standard_pattern("K_{3,3,3}");
    auto target = static_cast<int>(a.xn.ceil().get_si());
    auto result = integral_tiling_number(lg.graph, pattern, target, limits);
    a.tiling_number = result.value;
    a.proven = result.proven_optimal;
    return a;
}

Graph blow_up(const Graph & g, int s)
{
    if (s < 1)
        throw InputError("blow-up factor must be at least 1");
    std::vector<Edge> edges;
    edges.reserve(g.size() * s * s);
    for (auto [u, v] : g.edges())
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j)
                edges.push_back({u * s + i, v * s + j});
    std::string label = g.label().empty() ? std::string{} : g.label() + " blown up x" + std::to_string(s);
    return Graph(g.order() * s, edges, label);
}

Graph complete_graph(int k)
{
    std::vector<Edge> e;
    for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v)
            e.push_back({u, v});
    return Graph(k, e, "K" + std::to_string(k));
}

Graph complete_multipartite(std::span<const int> parts)
{
    std::vector<int> owner;
    for (std::size_t p = 0; p < parts.size(); ++p)
        owner.insert(owner.end(), parts[p], static_cast<int>(p));
    int n = static_cast<int>(owner.size());
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (owner[u] != owner[v])
                e.push_back({u, v});
    std::string label = "K";
    for (std::size_t p = 0; p < parts.size(); ++p)
        label += (p ? "," : "_{") + std::to_string(parts[p]);
    return Graph(n, e, label + "}");
}

Graph path_graph(int k)
{
    std::vector<Edge> e;
    for (int v = 0; v + 1 < k; ++v)
        e.push_back({v, v + 1});
    return Graph(k, e, "P" + std::to_string(k));
}

Graph cycle_graph(int k)
{
    if (k < 3)
        throw InputError("cycle needs at least 3 vertices");
    std::vector<Edge> e;
    for (int v = 0; v < k; ++v)
        e.push_back({v, (v + 1) % k});
    return Graph(k, e, "C" + std::to_string(k));
}

Graph standard_graph(const std::string & name)
{
    std::string body;
    for (char c : name)
        if (c != '_' && c != '{' && c != '}' && c != ' ')
            body.push_back(c);
    if (body.size() < 2)
        throw InputError("unknown pattern name '" + name + "'");

    std::vector<int> numbers;
    std::string digits = body.substr(1);
    std::size_t pos = 0;
    while (pos <= digits.size()) {
        auto comma = digits.find(',', pos);
        auto tok = digits.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty() || tok.size() > 4 || ! std::ranges::all_of(tok, [](char c) { return c >= '0' && c <= '9'; }))
            throw InputError("unknown pattern name '" + name + "'");
        numbers.push_back(std::stoi(tok));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    if (std::ranges::any_of(numbers, [](int v) { return v < 1; }))
        throw InputError("pattern '" + name + "' needs positive sizes");

    char kind = body.front();
    if (kind == 'K' && numbers.size() == 1)
        return complete_graph(numbers[0]);
    if (kind == 'K')
        return complete_multipartite(numbers);
    if (numbers.size() == 1 && kind == 'P')
        return path_graph(numbers[0]);
    if (numbers.size() == 1 && kind == 'C')
        return cycle_graph(numbers[0]);
    throw InputError("unknown pattern name '" + name + "'");
}

Pattern standard_pattern(const std::string & name, std::optional<int> r)
{
    auto g = standard_graph(name);
    if (! r)
        return pattern_from_graph(g, name);
    auto p = optimal_r_colouring(g, *r, name);
    if (! p)
        throw InputError("pattern '" + name + "' has no proper colouring with exactly " + std::to_string(*r) + " classes");
    return *p;
}

Graph random_graph(int n, const Rational & p, std::uint64_t seed)
{
    if (n < 0)
        throw InputError("random graph needs n >= 0");
    if (p < 0 || p > 1)
        throw InputError("edge probability must lie in [0,1]");
    if (! p.denominator().fits_ulong_p())
        throw InputError("edge probability denominator too large");
    auto num = p.numerator().get_ui(), den = p.denominator().get_ui();

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> draw(0, den - 1);
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (draw(rng) < num)
                e.push_back({u, v});
    return Graph(n, e, "G(" + std::to_string(n) + "," + p.str() + ") seed " + std::to_string(seed));
}

} // namespace tiling
