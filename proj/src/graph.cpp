#include <tiling/errors.hpp>
#include <tiling/graph.hpp>

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

using json = nlohmann::ordered_json;

namespace tiling {

Graph::Graph(int n, std::span<const Edge> edges, std::string label) :
    n_(n), label_(std::move(label))
{
    if (n < 0)
        throw InputError("negative vertex count");
    adj_.assign(static_cast<std::size_t>(n) * n, 0);
    nbrs_.resize(n);
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw InputError("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
        if (u == v)
            throw InputError("self-loop at vertex " + std::to_string(u));
        if (u > v)
            std::swap(u, v);
        auto & cell = adj_[static_cast<std::size_t>(u) * n + v];
        if (cell)
            throw InputError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        cell = 1;
        adj_[static_cast<std::size_t>(v) * n + u] = 1;
        edges_.push_back({u, v});
        nbrs_[u].push_back(v);
        nbrs_[v].push_back(u);
    }
    std::ranges::sort(edges_);
    for (auto & l : nbrs_)
        std::ranges::sort(l);
}

int Graph::degree(Vertex v) const
{
    if (v < 0 || v >= n_)
        throw InputError("vertex " + std::to_string(v) + " out of range for graph of order " + std::to_string(n_));
    return static_cast<int>(nbrs_[v].size());
}

Graph Graph::with_edge(Vertex u, Vertex v) const
{
    auto e = edges_;
    e.push_back({u, v});
    return Graph(n_, e, label_);
}

Graph Graph::with_label(std::string label) const
{
    Graph g = *this;
    g.label_ = std::move(label);
    return g;
}

Graph Graph::relabelled(std::span<const Vertex> permutation) const
{
    if (static_cast<int>(permutation.size()) != n_)
        throw InputError("permutation size does not match graph order");
    std::vector<Edge> e;
    e.reserve(edges_.size());
    for (auto [u, v] : edges_)
        e.push_back({permutation[u], permutation[v]});
    return Graph(n_, e, label_);
}

Graph Graph::induced(std::span<const Vertex> vertices) const
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (adjacent(vertices[i], vertices[j]))
                e.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
    return Graph(static_cast<int>(vertices.size()), e);
}

bool operator==(const Graph & a, const Graph & b)
{
    return a.order() == b.order() && a.edges() == b.edges();
}

const std::vector<Vertex> & LabelledGraph::part(std::string_view name) const
{
    for (auto & [n, vs] : parts)
        if (n == name)
            return vs;
    throw InputError("no part named " + std::string(name));
}

Pattern::Pattern(Graph graph, std::vector<int> colouring, int r, std::string name) :
    graph_(std::move(graph)), r_(r), name_(std::move(name))
{
    if (r < 2)
        throw InputError("pattern needs r >= 2");
    if (static_cast<int>(colouring.size()) != graph_.order())
        throw InputError("colouring length does not match pattern order");
    if (! is_proper_colouring(graph_, colouring))
        throw InputError("colouring is not proper");

    std::vector<int> sizes(r, 0), first(r, graph_.order());
    for (int v = 0; v < graph_.order(); ++v) {
        int c = colouring[v];
        if (c < 0 || c >= r)
            throw InputError("colour index out of range");
        ++sizes[c];
        first[c] = std::min(first[c], v);
    }
    std::vector<int> order(r);
    for (int c = 0; c < r; ++c)
        order[c] = c;
    std::ranges::sort(order, [&](int a, int b) { return sizes[a] != sizes[b] ? sizes[a] > sizes[b] : first[a] < first[b]; });
    std::vector<int> rank(r);
    for (int i = 0; i < r; ++i)
        rank[order[i]] = i;

    colouring_.resize(colouring.size());
    for (std::size_t v = 0; v < colouring.size(); ++v)
        colouring_[v] = rank[colouring[v]];
    for (int i = 0; i < r; ++i)
        class_sizes_.push_back(sizes[order[i]]);
    if (class_sizes_.back() == 0)
        throw InputError("pattern colouring has an empty class");
}

std::vector<Vertex> Pattern::colour_class(int c) const
{
    std::vector<Vertex> out;
    for (int v = 0; v < order(); ++v)
        if (colouring_[v] == c)
            out.push_back(v);
    return out;
}

DegreeProfile degree_profile(const Graph & g, const Rational & threshold)
{
    DegreeProfile p{threshold, 0, {}, {}};
    for (Vertex v = 0; v < g.order(); ++v) {
        if (Rational(g.degree(v)) >= threshold)
            p.high.push_back(v);
        else
            p.low.push_back(v);
    }
    p.count_at_or_above = p.high.size();
    return p;
}

bool is_proper_colouring(const Graph & h, std::span<const int> colouring)
{
    if (static_cast<int>(colouring.size()) != h.order())
        return false;
    return std::ranges::none_of(h.edges(), [&](const Edge & e) { return colouring[e.u] == colouring[e.v]; });
}

namespace {
    struct ColouringSearch {
        const Graph & h;
        int r;
        std::vector<int> colour;
        std::vector<int> sizes;
        int used = 0;

        bool found = false;
        int best_smallest = 0;
        std::vector<int> best_sizes;
        std::vector<int> best_canonical;

        void leaf()
        {
            Pattern p(h, colour, r);
            int smallest = p.smallest_class();
            auto key = std::tie(smallest, p.class_sizes(), p.colouring());
            if (! found || key < std::tie(best_smallest, best_sizes, best_canonical)) {
                found = true;
                best_smallest = smallest;
                best_sizes = p.class_sizes();
                best_canonical = p.colouring();
            }
        }

        void assign(int v)
        {
            int n = h.order();
            if (n - v < r - used)
                return;
            if (found && used == r && *std::ranges::min_element(sizes) > best_smallest)
                return;
            if (v == n) {
                leaf();
                return;
            }
            for (int c = 0; c < std::min(used + 1, r); ++c) {
                bool ok = true;
                for (Vertex u : h.neighbours(v))
                    if (u < v && colour[u] == c) {
                        ok = false;
                        break;
                    }
                if (! ok)
                    continue;
                colour[v] = c;
                ++sizes[c];
                bool opened = c == used;
                if (opened)
                    ++used;
                assign(v + 1);
                if (opened)
                    --used;
                --sizes[c];
                colour[v] = -1;
            }
        }
    };
}

std::optional<Pattern> optimal_r_colouring(const Graph & h, int r, std::string name)
{
    if (r < 2)
        throw InputError("optimal_r_colouring needs r >= 2");
    ColouringSearch s{h, r, std::vector<int>(h.order(), -1), std::vector<int>(r, 0), 0, false, 0, {}, {}};
    s.assign(0);
    if (! s.found)
        return std::nullopt;
    return Pattern(h, s.best_canonical, r, std::move(name));
}

Pattern pattern_from_graph(const Graph & h, std::string name)
{
    for (int r = 2; r <= std::max(2, h.order()); ++r)
        if (auto p = optimal_r_colouring(h, r, name))
            return *p;
    throw InputError("pattern graph needs at least two vertices");
}

namespace {
    std::string_view trim(std::string_view s)
    {
        while (! s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (! s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    }

    [[noreturn]] void line_error(int line, const std::string & what)
    {
        throw InputError("line " + std::to_string(line) + ": " + what);
    }

    bool parse_int(std::string_view tok, long & out)
    {
        if (tok.empty() || tok.size() > 9)
            return false;
        out = 0;
        for (char c : tok) {
            if (! std::isdigit(static_cast<unsigned char>(c)))
                return false;
            out = out * 10 + (c - '0');
        }
        return true;
    }
}

Graph parse_graph_text(std::string_view text)
{
    std::optional<long> n;
    std::string label;
    std::vector<Edge> edges;
    std::set<std::pair<int, int>> seen;

    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++lineno;

        if (line.empty())
            continue;
        if (line.front() == '#') {
            auto rest = trim(line.substr(1));
            if (rest.starts_with("label:"))
                label = std::string(trim(rest.substr(6)));
            continue;
        }

        std::vector<std::string_view> tokens;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
                ++i;
            auto j = i;
            while (j < line.size() && ! std::isspace(static_cast<unsigned char>(line[j])))
                ++j;
            if (j > i)
                tokens.push_back(line.substr(i, j - i));
            i = j;
        }

        if (! n) {
            long value;
            if (tokens.size() != 1 || ! parse_int(tokens[0], value))
                line_error(lineno, "expected vertex count");
            n = value;
            continue;
        }

        long u, v;
        if (tokens.size() != 2 || ! parse_int(tokens[0], u) || ! parse_int(tokens[1], v))
            line_error(lineno, "malformed edge line '" + std::string(line) + "'");
        if (u >= *n || v >= *n)
            line_error(lineno, "endpoint out of range (n = " + std::to_string(*n) + ")");
        if (u == v)
            line_error(lineno, "self-loop");
        std::pair<int, int> key{static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v))};
        if (! seen.insert(key).second)
            line_error(lineno, "duplicate edge");
        edges.push_back({key.first, key.second});
    }
    if (! n)
        throw InputError("empty graph file: missing vertex count");
    return Graph(static_cast<int>(*n), edges, label);
}

std::string write_graph_text(const Graph & g)
{
    std::ostringstream s;
    if (! g.label().empty())
        s << "# label: " << g.label() << "\n";
    s << g.order() << "\n";
    for (auto [u, v] : g.edges())
        s << u << " " << v << "\n";
    return s.str();
}

namespace {
    json to_json(const Graph & g)
    {
        json j;
        j["n"] = g.order();
        json edges = json::array();
        for (auto [u, v] : g.edges())
            edges.push_back({u, v});
        j["edges"] = edges;
        if (! g.label().empty())
            j["label"] = g.label();
        return j;
    }
}

LabelledGraph parse_graph_json(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    }
    catch (const json::parse_error & e) {
        throw InputError(std::string("graph JSON: ") + e.what());
    }
    try {
        int n = j.at("n").get<int>();
        std::vector<Edge> edges;
        for (auto & e : j.at("edges")) {
            if (! e.is_array() || e.size() != 2)
                throw InputError("graph JSON: edge must be a pair");
            edges.push_back({e[0].get<int>(), e[1].get<int>()});
        }
        LabelledGraph out{Graph(n, edges, j.value("label", std::string{})), {}};
        if (j.contains("parts"))
            for (auto & [name, vs] : j["parts"].items()) {
                auto verts = vs.get<std::vector<Vertex>>();
                for (Vertex v : verts)
                    if (v < 0 || v >= n)
                        throw InputError("graph JSON: part vertex out of range");
                out.parts.emplace_back(name, std::move(verts));
            }
        return out;
    }
    catch (const json::exception & e) {
        throw InputError(std::string("graph JSON: ") + e.what());
    }
}

std::string write_graph_json(const Graph & g)
{
    return to_json(g).dump() + "\n";
}

std::string write_graph_json(const LabelledGraph & g)
{
    auto j = to_json(g.graph);
    if (! g.parts.empty()) {
        json parts = json::object();
        for (auto & [name, vs] : g.parts)
            parts[name] = vs;
        j["parts"] = parts;
    }
    return j.dump() + "\n";
}

LabelledGraph parse_graph(std::string_view text)
{
    auto t = trim(text);
    if (! t.empty() && t.front() == '{')
        return parse_graph_json(t);
    return LabelledGraph{parse_graph_text(text), {}};
}

LabelledGraph read_graph_file(const std::string & path)
{
    std::ifstream in(path);
    if (! in)
        throw InputError("cannot open graph file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

} // namespace tiling
