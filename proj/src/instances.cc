#include <nibbler/instances.hh>
#include <nibbler/errors.hh>

#include <algorithm>

using std::vector;

namespace nibbler
{
    namespace
    {
        auto check_probability(double p) -> void
        {
            if (! (p >= 0.0 && p <= 1.0))
                throw PreconditionViolated{ "edge probability must lie in [0, 1]" };
        }
    }

    auto gnp(int n, double p, Seed seed) -> Graph
    {
        check_probability(p);
        if (n < 0)
            throw PreconditionViolated{ "n must be non-negative" };
        Rng rng{ seed };
        vector<Edge> edges;
        for (Vertex u = 0 ; u < n ; ++u)
            for (Vertex v = u + 1 ; v < n ; ++v)
                if (rng.bernoulli(p))
                    edges.emplace_back(u, v);
        return Graph{ n, edges };
    }

    auto random_bipartite(int a, int b, double p, Seed seed) -> Graph
    {
        check_probability(p);
        if (a < 1 || b < 1)
            throw PreconditionViolated{ "both parts need at least one vertex" };
        Rng rng{ seed };
        vector<Edge> edges;
        for (Vertex u = 0 ; u < a ; ++u)
            for (Vertex v = a ; v < a + b ; ++v)
                if (rng.bernoulli(p))
                    edges.emplace_back(u, v);
        return Graph{ a + b, edges };
    }

    namespace
    {
        class GrowingGraph
        {
            public:
                explicit GrowingGraph(int n) : _adjacent(std::size_t(n) * n, 0), _neighbours(n), _n(n) { }

                auto adjacent(Vertex u, Vertex v) const -> bool { return _adjacent[std::size_t(u) * _n + v]; }
                auto degree(Vertex v) const -> int { return static_cast<int>(_neighbours[v].size()); }
                auto neighbours(Vertex v) const -> const vector<Vertex> & { return _neighbours[v]; }

                auto add(Vertex u, Vertex v) -> void
                {
                    _adjacent[std::size_t(u) * _n + v] = _adjacent[std::size_t(v) * _n + u] = 1;
                    _neighbours[u].insert(std::upper_bound(_neighbours[u].begin(), _neighbours[u].end(), v), v);
                    _neighbours[v].insert(std::upper_bound(_neighbours[v].begin(), _neighbours[v].end(), u), u);
                }

                auto remove(Vertex u, Vertex v) -> void
                {
                    _adjacent[std::size_t(u) * _n + v] = _adjacent[std::size_t(v) * _n + u] = 0;
                    std::erase(_neighbours[u], v);
                    std::erase(_neighbours[v], u);
                }

                /// G[N(w)] with local indices in ascending order.
                auto neighbourhood(Vertex w) const -> Graph
                {
                    auto & nw = _neighbours[w];
                    vector<Edge> edges;
                    for (std::size_t i = 0 ; i < nw.size() ; ++i)
                        for (std::size_t j = i + 1 ; j < nw.size() ; ++j)
                            if (adjacent(nw[i], nw[j]))
                                edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
                    return Graph{ static_cast<int>(nw.size()), edges };
                }

                auto edges() const -> vector<Edge>
                {
                    vector<Edge> result;
                    for (Vertex u = 0 ; u < _n ; ++u)
                        for (auto v : _neighbours[u])
                            if (u < v)
                                result.emplace_back(u, v);
                    return result;
                }

            private:
                vector<char> _adjacent;
                vector<vector<Vertex>> _neighbours;
                int _n;
        };
    }

    auto planted_sparse(int n, double target_k, const PatternGraph & f, int degree_budget, Seed seed) -> Graph
    {
        if (! (target_k >= 0.0))
            throw PreconditionViolated{ "target_k must be non-negative" };
        if (n < 0 || degree_budget < 0)
            throw PreconditionViolated{ "n and degree_budget must be non-negative" };
        auto threshold = floor_threshold(target_k);
        if (n < 2)
            return Graph{ std::max(n, 0) };

        GrowingGraph g{ n };
        Rng rng{ seed };
        int open = degree_budget > 0 ? n : 0;       // vertices still below the degree budget
        std::uint64_t proposals = 20ULL * n * (n - 1) / 2;

        for (std::uint64_t p = 0 ; p < proposals && open >= 2 ; ++p) {
            auto u = static_cast<Vertex>(rng.uniform_index(n));
            auto v = static_cast<Vertex>(rng.uniform_index(n));
            if (u == v || g.adjacent(u, v) || g.degree(u) >= degree_budget || g.degree(v) >= degree_budget)
                continue;

            g.add(u, v);
            // adding uv changes G[N(w)] only for w in {u, v} and their common neighbours
            vector<Vertex> affected{ u, v };
            for (auto w : g.neighbours(u))
                if (w != v && g.adjacent(w, v))
                    affected.push_back(w);

            bool ok = true;
            for (auto w : affected)
                if (count_copies(g.neighbourhood(w), f) > threshold) {
                    ok = false;
                    break;
                }

            if (! ok) {
                g.remove(u, v);
                continue;
            }
            open -= (g.degree(u) == degree_budget) + (g.degree(v) == degree_budget);
        }

        return Graph{ n, g.edges() };
    }
}
