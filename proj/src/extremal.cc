#include <nibbler/extremal.hh>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

using std::pair;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace nibbler
{
    auto kst_edge_bound(uint64_t m, uint64_t n, int s, int t) -> double
    {
        if (n < 1 || m < n)
            throw PreconditionViolated{ "kst_edge_bound needs m >= n >= 1, got m = " + to_string(m) + ", n = " + to_string(n) };
        if (t < 1 || s < t)
            throw PreconditionViolated{ "kst_edge_bound needs s >= t >= 1, got s = " + to_string(s) + ", t = " + to_string(t) };

        double md = static_cast<double>(m), nd = static_cast<double>(n);
        return std::pow(s, 1.0 / t) * std::pow(md, 1.0 - 1.0 / t) * nd + t * md;
    }

    auto alon_sparse_edge_bound(uint64_t n, double k, int s, int t) -> double
    {
        if (n < 1)
            throw PreconditionViolated{ "alon_sparse_edge_bound needs n >= 1" };
        if (! (k >= 0.0))
            throw PreconditionViolated{ "alon_sparse_edge_bound needs k >= 0" };
        if (t < 1 || s < t)
            throw PreconditionViolated{ "alon_sparse_edge_bound needs s >= t >= 1, got s = " + to_string(s) + ", t = " + to_string(t) };

        double nd = static_cast<double>(n);
        return 0.5 * std::pow(s, 1.0 / t) * std::pow(t, 1.0 / s) * std::pow(k, 1.0 / (static_cast<double>(s) * t))
            * std::pow(nd, 2.0 - 1.0 / s - 1.0 / t);
    }

    namespace
    {
        using Mask = std::uint32_t;

        struct AnchoredOrder
        {
            int a, b;
            vector<int> rest;
            vector<vector<int>> back;       // for rest[i], the pattern neighbours placed before it
        };

        /// Searches for F in small bitmask graphs, anchored at a newly added edge.
        class EdgeAnchoredSearch
        {
            public:
                explicit EdgeAnchoredSearch(const Graph & f) :
                    _f(f), _image(f.size(), -1)
                {
                    for (auto [a, b] : f.edges()) {
                        _orders.push_back(make_order(a, b));
                        _orders.push_back(make_order(b, a));
                    }
                }

                /// Does the graph (with edge uv present) contain F through uv?
                auto creates_copy(const vector<Mask> & adj, int n, int u, int v) -> bool
                {
                    _adj = &adj;
                    _all = (Mask{ 1 } << n) - 1;
                    for (auto & o : _orders) {
                        _image.assign(_f.size(), -1);
                        _image[o.a] = u;
                        _image[o.b] = v;
                        if (extend(o, 0, (Mask{ 1 } << u) | (Mask{ 1 } << v)))
                            return true;
                    }
                    return false;
                }

            private:
                auto make_order(int a, int b) const -> AnchoredOrder
                {
                    AnchoredOrder o{ a, b, {}, {} };
                    vector<char> placed(_f.size(), 0);
                    placed[a] = placed[b] = 1;
                    for (int step = 2 ; step < _f.size() ; ++step) {
                        int best = -1, best_score = -1;
                        for (int x = 0 ; x < _f.size() ; ++x) {
                            if (placed[x])
                                continue;
                            int score = 0;
                            for (auto y : _f.neighbours(x))
                                score += placed[y];
                            if (score > best_score) {
                                best = x;
                                best_score = score;
                            }
                        }
                        vector<int> back;
                        for (auto y : _f.neighbours(best))
                            if (placed[y])
                                back.push_back(y);
                        o.rest.push_back(best);
                        o.back.push_back(std::move(back));
                        placed[best] = 1;
                    }
                    return o;
                }

                auto extend(const AnchoredOrder & o, std::size_t depth, Mask used) -> bool
                {
                    if (depth == o.rest.size())
                        return true;
                    Mask candidates = _all & ~used;
                    for (auto y : o.back[depth])
                        candidates &= (*_adj)[_image[y]];
                    while (candidates) {
                        int c = __builtin_ctz(candidates);
                        candidates &= candidates - 1;
                        _image[o.rest[depth]] = c;
                        if (extend(o, depth + 1, used | (Mask{ 1 } << c)))
                            return true;
                    }
                    _image[o.rest[depth]] = -1;
                    return false;
                }

                const Graph & _f;
                vector<AnchoredOrder> _orders;
                vector<int> _image;
                const vector<Mask> * _adj = nullptr;
                Mask _all = 0;
        };

        struct BranchAndBound
        {
            int n;
            vector<pair<int, int>> slots;
            vector<Mask> adj;
            EdgeAnchoredSearch & search;
            uint64_t best;
            uint64_t ceiling;

            auto run(std::size_t index, uint64_t edges) -> void
            {
                if (best >= ceiling)
                    return;
                if (edges > best)
                    best = edges;
                if (edges + (slots.size() - index) <= best)
                    return;

                auto [u, v] = slots[index];
                adj[u] |= Mask{ 1 } << v;
                adj[v] |= Mask{ 1 } << u;
                if (! search.creates_copy(adj, n, u, v))
                    run(index + 1, edges + 1);
                adj[u] &= ~(Mask{ 1 } << v);
                adj[v] &= ~(Mask{ 1 } << u);

                run(index + 1, edges);
            }
        };

        auto exact(int n, EdgeAnchoredSearch & search, uint64_t ceiling) -> uint64_t
        {
            BranchAndBound bb{ n, {}, vector<Mask>(n, 0), search, 0, ceiling };
            for (int u = 0 ; u < n ; ++u)
                for (int v = u + 1 ; v < n ; ++v)
                    bb.slots.emplace_back(u, v);

            // greedy fill in slot order gives the starting incumbent
            vector<Mask> greedy(n, 0);
            uint64_t greedy_edges = 0;
            for (auto [u, v] : bb.slots) {
                greedy[u] |= Mask{ 1 } << v;
                greedy[v] |= Mask{ 1 } << u;
                if (search.creates_copy(greedy, n, u, v)) {
                    greedy[u] &= ~(Mask{ 1 } << v);
                    greedy[v] &= ~(Mask{ 1 } << u);
                }
                else
                    ++greedy_edges;
            }
            bb.best = greedy_edges;
            bb.run(0, 0);
            return bb.best;
        }

        std::mutex cache_mutex;
        using CacheKey = std::tuple<int, int, vector<Edge>>;
        std::map<CacheKey, uint64_t> cache;
    }

    auto ex_brute(int n, const PatternGraph & f) -> uint64_t
    {
        if (n < 0 || n > max_exact_extremal_n)
            throw PreconditionViolated{ "ex_brute supports 0 <= n <= " + to_string(max_exact_extremal_n) + ", got " + to_string(n) };

        auto all_pairs = [] (int m) { return static_cast<uint64_t>(m) * (m > 0 ? m - 1 : 0) / 2; };
        if (n < f.size())
            return all_pairs(n);
        if (f.graph().number_of_edges() == 0)
            throw PreconditionViolated{ "every graph on " + to_string(n) + " vertices contains the edgeless pattern " + f.name() };

        CacheKey key{ n, f.size(), f.graph().edges() };
        {
            std::lock_guard<std::mutex> lock{ cache_mutex };
            if (auto it = cache.find(key) ; it != cache.end())
                return it->second;
        }

        EdgeAnchoredSearch search{ f.graph() };

        // ex(m) for m = |V(F)| .. n, each bounded above by averaging over vertex-deleted subgraphs
        uint64_t previous = all_pairs(f.size() - 1);
        uint64_t result = 0;
        for (int m = std::max(f.size(), 2) ; m <= n ; ++m) {
            uint64_t ceiling = all_pairs(m);
            if (m >= 3)
                ceiling = std::min(ceiling, (static_cast<uint64_t>(m) * previous) / (m - 2));
            result = exact(m, search, ceiling);
            previous = result;
        }

        std::lock_guard<std::mutex> lock{ cache_mutex };
        cache.emplace(std::move(key), result);
        return result;
    }

    auto local_edge_bound(int degree, double k, const PatternGraph & f) -> double
    {
        if (degree < 0)
            throw PreconditionViolated{ "degree must be non-negative" };
        if (degree <= max_exact_extremal_n)
            return k + static_cast<double>(ex_brute(degree, f));
        if (auto st = f.s_t())
            return k + alon_sparse_edge_bound(static_cast<uint64_t>(degree), 1.0, st->first, st->second);
        throw PreconditionViolated{ "no closed-form extremal bound for pattern " + f.name() + " at degree " + to_string(degree) };
    }
}
