#include <tiling/errors.hpp>
#include <tiling/hom.hpp>

#include <algorithm>
#include <map>

namespace tiling {

int HomColumn::multiplicity(Vertex v) const
{
    auto it = std::ranges::lower_bound(multiplicities, v, {}, &std::pair<Vertex, int>::first);
    return it != multiplicities.end() && it->first == v ? it->second : 0;
}

MultiplicityVector multiplicity_vector(std::span<const Vertex> mapping)
{
    std::vector<Vertex> images(mapping.begin(), mapping.end());
    std::ranges::sort(images);
    MultiplicityVector out;
    for (Vertex v : images) {
        if (! out.empty() && out.back().first == v)
            ++out.back().second;
        else
            out.emplace_back(v, 1);
    }
    return out;
}

bool is_homomorphism(const Graph & h, const Graph & g, std::span<const Vertex> mapping)
{
    if (static_cast<int>(mapping.size()) != h.order())
        return false;
    for (Vertex v : mapping)
        if (v < 0 || v >= g.order())
            return false;
    return std::ranges::all_of(h.edges(), [&](const Edge & e) { return g.adjacent(mapping[e.u], mapping[e.v]); });
}

std::vector<Vertex> search_order(const Graph & h)
{
    int k = h.order();
    std::vector<Vertex> order;
    std::vector<char> placed(k, 0);
    std::vector<int> placed_nbrs(k, 0);

    auto better = [&](Vertex a, Vertex b) {
        if (placed_nbrs[a] != placed_nbrs[b])
            return placed_nbrs[a] > placed_nbrs[b];
        if (h.degree(a) != h.degree(b))
            return h.degree(a) > h.degree(b);
        return a < b;
    };

    while (static_cast<int>(order.size()) < k) {
        Vertex pick = -1;
        for (Vertex v = 0; v < k; ++v)
            if (! placed[v] && (pick == -1 || better(v, pick)))
                pick = v;
        placed[pick] = 1;
        order.push_back(pick);
        for (Vertex w : h.neighbours(pick))
            ++placed_nbrs[w];
    }
    return order;
}

namespace {
    class Searcher {
    public:
        Searcher(const Graph & h, const Graph & g, const std::function<bool(std::span<const Vertex>)> & visit, bool injective,
            std::span<const Rational> weights = {}, const Rational * bound = nullptr) :
            h_(h), g_(g), visit_(visit), injective_(injective), weights_(weights), bound_(bound), order_(search_order(h)),
            mapping_(h.order(), -1), used_(g.order(), 0)
        {
            // for each position, the already-placed pattern neighbours of that vertex
            std::vector<int> position(h.order());
            for (int i = 0; i < h.order(); ++i)
                position[order_[i]] = i;
            earlier_.resize(h.order());
            for (int i = 0; i < h.order(); ++i)
                for (Vertex w : h.neighbours(order_[i]))
                    if (position[w] < i)
                        earlier_[i].push_back(w);
        }

        void run()
        {
            if (h_.order() == 0) {
                visit_(mapping_);
                return;
            }
            if (g_.order() == 0)
                return;
            recurse(0);
        }

    private:
        bool recurse(int depth)
        {
            if (depth == h_.order())
                return visit_(mapping_);

            Vertex hv = order_[depth];
            const auto & back = earlier_[depth];

            auto try_image = [&](Vertex gv) -> bool {
                if (injective_ && used_[gv])
                    return true;
                for (std::size_t i = 1; i < back.size(); ++i)
                    if (! g_.adjacent(mapping_[back[i]], gv))
                        return true;
                if (bound_) {
                    load_ += weights_[gv].get();
                    if (load_ >= bound_->get()) {
                        load_ -= weights_[gv].get();
                        return true;
                    }
                }
                mapping_[hv] = gv;
                ++used_[gv];
                bool keep_going = recurse(depth + 1);
                --used_[gv];
                mapping_[hv] = -1;
                if (bound_)
                    load_ -= weights_[gv].get();
                return keep_going;
            };

            if (back.empty()) {
                for (Vertex gv = 0; gv < g_.order(); ++gv)
                    if (! try_image(gv))
                        return false;
            }
            else {
                for (Vertex gv : g_.neighbours(mapping_[back.front()]))
                    if (! try_image(gv))
                        return false;
            }
            return true;
        }

        const Graph & h_;
        const Graph & g_;
        const std::function<bool(std::span<const Vertex>)> & visit_;
        bool injective_;
        std::span<const Rational> weights_;
        const Rational * bound_;
        std::vector<Vertex> order_;
        std::vector<std::vector<Vertex>> earlier_;
        Mapping mapping_;
        std::vector<int> used_;

    public:
        mpq_class load_;
    };
}

void for_each_homomorphism(const Graph & h, const Graph & g, const std::function<bool(std::span<const Vertex>)> & visit, bool injective)
{
    Searcher(h, g, visit, injective).run();
}

void for_each_light_homomorphism(const Graph & h, const Graph & g, std::span<const Rational> weights, const Rational & bound,
    const std::function<bool(std::span<const Vertex>, const Rational & load)> & visit)
{
    if (static_cast<int>(weights.size()) != g.order())
        throw InputError("weight vector length does not match host order");
    for (auto & w : weights)
        if (w < 0)
            throw InputError("negative vertex weight");
    if (bound <= 0)
        return;

    Searcher * self = nullptr;
    std::function<bool(std::span<const Vertex>)> inner = [&](std::span<const Vertex> m) {
        return visit(m, Rational(self->load_));
    };
    Searcher s(h, g, inner, false, weights, &bound);
    self = &s;
    s.run();
}

std::vector<Mapping> enumerate_homomorphisms(const Graph & h, const Graph & g)
{
    std::vector<Mapping> out;
    for_each_homomorphism(h, g, [&](std::span<const Vertex> m) {
        out.emplace_back(m.begin(), m.end());
        return true;
    });
    std::ranges::sort(out);
    return out;
}

std::uint64_t count_homomorphisms(const Graph & h, const Graph & g)
{
    std::uint64_t count = 0;
    for_each_homomorphism(h, g, [&](std::span<const Vertex>) {
        ++count;
        return true;
    });
    return count;
}

std::vector<HomColumn> enumerate_columns(const Graph & h, const Graph & g, std::optional<std::size_t> max_columns)
{
    std::map<MultiplicityVector, std::uint64_t> classes;
    for_each_homomorphism(h, g, [&](std::span<const Vertex> m) {
        auto [it, inserted] = classes.try_emplace(multiplicity_vector(m), 0);
        ++it->second;
        if (inserted && max_columns && classes.size() > *max_columns)
            throw ResourceError("more than " + std::to_string(*max_columns) + " distinct homomorphism columns");
        return true;
    });

    std::vector<HomColumn> out;
    out.reserve(classes.size());
    for (auto & [vec, count] : classes)
        out.push_back({vec, count});
    return out;
}

std::vector<InjectiveCopy> enumerate_injective_copies(const Graph & h, const Graph & g, CopyIdentity identity)
{
    auto image_edges = [&](std::span<const Vertex> m) {
        std::vector<Edge> e;
        e.reserve(h.size());
        for (auto [u, v] : h.edges())
            e.push_back({std::min(m[u], m[v]), std::max(m[u], m[v])});
        std::ranges::sort(e);
        return e;
    };

    using Key = std::pair<std::vector<Vertex>, std::vector<Edge>>;
    std::map<Key, InjectiveCopy> copies;
    for_each_homomorphism(
        h, g,
        [&](std::span<const Vertex> m) {
            Key key;
            key.first.assign(m.begin(), m.end());
            std::ranges::sort(key.first);
            if (identity == CopyIdentity::subgraph)
                key.second = image_edges(m);

            auto [it, inserted] = copies.try_emplace(std::move(key));
            auto & c = it->second;
            Mapping mapping(m.begin(), m.end());
            if (inserted) {
                c.vertices = it->first.first;
                c.embedding = std::move(mapping);
            }
            else if (mapping < c.embedding)
                c.embedding = std::move(mapping);
            ++c.embedding_count;
            return true;
        },
        true);

    std::vector<InjectiveCopy> out;
    out.reserve(copies.size());
    for (auto & [_, c] : copies) {
        c.edges = image_edges(c.embedding);
        out.push_back(std::move(c));
    }
    return out;
}

std::uint64_t brute_force_homomorphisms(const Graph & h, const Graph & g, std::uint64_t guard)
{
    int k = h.order(), n = g.order();
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) {
        total *= static_cast<std::uint64_t>(n);
        if (total > guard)
            throw ResourceError("brute force would check more than " + std::to_string(guard) + " maps");
    }
    if (k == 0)
        return 1;
    if (n == 0)
        return 0;

    std::uint64_t count = 0;
    Mapping m(k, 0);
    while (true) {
        bool ok = true;
        for (auto [u, v] : h.edges())
            if (! g.adjacent(m[u], m[v])) {
                ok = false;
                break;
            }
        if (ok)
            ++count;

        int i = k - 1;
        while (i >= 0 && m[i] == n - 1)
            m[i--] = 0;
        if (i < 0)
            break;
        ++m[i];
    }
    return count;
}

} // namespace tiling
