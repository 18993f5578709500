#include <nibbler/patterns.hh>

#include "matcher.hh"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

using std::optional;
using std::pair;
using std::set;
using std::span;
using std::string;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace nibbler
{
    namespace
    {
        auto two_colour(const Graph & g) -> optional<vector<int>>
        {
            vector<int> side(g.size(), -1);
            for (Vertex root = 0 ; root < g.size() ; ++root) {
                if (side[root] != -1)
                    continue;
                side[root] = 0;
                vector<Vertex> stack{ root };
                while (! stack.empty()) {
                    auto v = stack.back();
                    stack.pop_back();
                    for (auto w : g.neighbours(v)) {
                        if (side[w] == -1) {
                            side[w] = 1 - side[v];
                            stack.push_back(w);
                        }
                        else if (side[w] == side[v])
                            return std::nullopt;
                    }
                }
            }
            return side;
        }

        auto is_connected(const Graph & g) -> bool
        {
            if (g.size() == 0)
                return true;
            vector<char> seen(g.size(), 0);
            vector<Vertex> stack{ 0 };
            seen[0] = 1;
            int reached = 1;
            while (! stack.empty()) {
                auto v = stack.back();
                stack.pop_back();
                for (auto w : g.neighbours(v))
                    if (! seen[w]) {
                        seen[w] = 1;
                        ++reached;
                        stack.push_back(w);
                    }
            }
            return reached == g.size();
        }

        auto copy_from_image(const Graph & f, span<const Vertex> image) -> Copy
        {
            Copy c;
            c.vertices.assign(image.begin(), image.end());
            std::sort(c.vertices.begin(), c.vertices.end());
            for (auto [a, b] : f.edges())
                c.edges.emplace_back(std::min(image[a], image[b]), std::max(image[a], image[b]));
            std::sort(c.edges.begin(), c.edges.end());
            return c;
        }

        auto counts_for_vertex(const Graph & g, Vertex v, const PatternGraph & f) -> uint64_t
        {
            auto sub = induced_subgraph(g, g.neighbours(v));
            return count_copies(sub.graph, f);
        }
    }

    auto check_pattern_size(const Graph & f) -> void
    {
        if (f.size() > max_pattern_vertices)
            throw PreconditionViolated{ "pattern has " + to_string(f.size()) + " vertices, the cap is " + to_string(max_pattern_vertices) };
    }

    PatternGraph::PatternGraph(Graph graph, string name) :
        _graph(std::move(graph)),
        _name(std::move(name))
    {
        check_pattern_size(_graph);
        _aut_count = automorphism_count(_graph);

        auto sides = two_colour(_graph);
        _bipartite = sides.has_value();
        if (_bipartite && _graph.number_of_edges() > 0 && is_connected(_graph)) {
            auto a = static_cast<int>(std::count(sides->begin(), sides->end(), 0));
            auto b = _graph.size() - a;
            if (static_cast<std::size_t>(a) * b == _graph.number_of_edges())
                _s_t = pair{ std::max(a, b), std::min(a, b) };
        }
    }

    auto PatternGraph::complete(int n) -> PatternGraph
    {
        return PatternGraph{ Graph::complete(n), "K" + to_string(n) };
    }

    auto PatternGraph::path(int n) -> PatternGraph
    {
        vector<Edge> edges;
        for (int i = 0 ; i + 1 < n ; ++i)
            edges.emplace_back(i, i + 1);
        return PatternGraph{ Graph{ n, edges }, "P" + to_string(n) };
    }

    auto PatternGraph::cycle(int n) -> PatternGraph
    {
        if (n < 3)
            throw PreconditionViolated{ "cycle needs at least 3 vertices" };
        vector<Edge> edges;
        for (int i = 0 ; i < n ; ++i)
            edges.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
        return PatternGraph{ Graph{ n, edges }, "C" + to_string(n) };
    }

    auto PatternGraph::complete_bipartite(int s, int t) -> PatternGraph
    {
        if (t < 1 || s < t)
            throw PreconditionViolated{ "K_{s,t} needs s >= t >= 1" };
        vector<Edge> edges;
        for (int a = 0 ; a < s ; ++a)
            for (int b = 0 ; b < t ; ++b)
                edges.emplace_back(a, s + b);
        return PatternGraph{ Graph{ s + t, edges }, "K" + to_string(s) + "," + to_string(t) };
    }

    auto automorphism_count(const Graph & f) -> uint64_t
    {
        check_pattern_size(f);
        // an injective homomorphism F -> F is a bijection mapping E(F) into E(F), hence onto it
        detail::Matcher m{ f, f };
        return m.count();
    }

    auto automorphism_count(const PatternGraph & f) -> uint64_t
    {
        return f.aut_count();
    }

    auto count_injective_homomorphisms(const Graph & g, const PatternGraph & f) -> uint64_t
    {
        detail::Matcher m{ f.graph(), g };
        return m.count();
    }

    auto count_copies(const Graph & g, const PatternGraph & f) -> uint64_t
    {
        return count_injective_homomorphisms(g, f) / f.aut_count();
    }

    auto contains_copy(const Graph & g, const PatternGraph & f) -> bool
    {
        detail::Matcher m{ f.graph(), g };
        return m.exists_with({});
    }

    auto find_copies(const Graph & g, const PatternGraph & f, uint64_t limit) -> vector<Copy>
    {
        vector<Copy> result;
        if (limit == 0)
            return result;
        set<Copy> seen;
        detail::Matcher m{ f.graph(), g };
        m.enumerate([&] (span<const Vertex> image) {
                auto c = copy_from_image(f.graph(), image);
                if (seen.insert(c).second) {
                    result.push_back(std::move(c));
                    if (result.size() >= limit)
                        return false;
                }
                return true;
                });
        return result;
    }

    auto count_copies_in_neighbourhood(const Graph & g, Vertex v, const PatternGraph & f) -> uint64_t
    {
        return counts_for_vertex(g, v, f);
    }

    auto neighbourhood_copy_counts_serial(const Graph & g, const PatternGraph & f) -> vector<uint64_t>
    {
        vector<uint64_t> counts(g.size(), 0);
        for (Vertex v = 0 ; v < g.size() ; ++v)
            counts[v] = counts_for_vertex(g, v, f);
        return counts;
    }

    auto neighbourhood_copy_counts_parallel(const Graph & g, const PatternGraph & f) -> vector<uint64_t>
    {
        vector<uint64_t> counts(g.size(), 0);
        int n = g.size();
#pragma omp parallel for schedule(dynamic, 4)
        for (Vertex v = 0 ; v < n ; ++v)
            counts[v] = counts_for_vertex(g, v, f);
        return counts;
    }

    auto floor_threshold(double k) -> uint64_t
    {
        if (! (k >= 0.0))
            throw PreconditionViolated{ "sparsity threshold must be non-negative" };
        auto f = std::floor(k);
        if (f >= 1.8e19)
            return std::numeric_limits<uint64_t>::max();
        return static_cast<uint64_t>(f);
    }

    auto certify_local_sparsity(const Graph & g, double k, const PatternGraph & f, Execution execution) -> SparsityReport
    {
        auto threshold = floor_threshold(k);

        SparsityReport report;
        report.k = k;
        report.per_vertex_counts = execution == Execution::parallel
            ? neighbourhood_copy_counts_parallel(g, f)
            : neighbourhood_copy_counts_serial(g, f);

        for (Vertex v = 0 ; v < g.size() ; ++v)
            if (report.argmax_vertex == -1 || report.per_vertex_counts[v] > report.max_count) {
                report.max_count = report.per_vertex_counts[v];
                report.argmax_vertex = v;
            }

        for (Vertex v = 0 ; v < g.size() ; ++v)
            if (report.per_vertex_counts[v] > threshold) {
                auto sub = induced_subgraph(g, g.neighbours(v));
                auto copies = find_copies(sub.graph, f, threshold + 1);
                for (auto & c : copies) {
                    for (auto & x : c.vertices)
                        x = sub.original[x];
                    for (auto & [a, b] : c.edges) {
                        a = sub.original[a];
                        b = sub.original[b];
                    }
                }
                report.witness = SparsityWitness{ v, std::move(copies) };
                break;
            }

        return report;
    }

    auto verify_witness(const Graph & g, const PatternGraph & f, const SparsityWitness & witness) -> bool
    {
        if (witness.vertex < 0 || witness.vertex >= g.size())
            return false;
        auto nbhd = g.neighbours(witness.vertex);

        set<Copy> distinct;
        for (auto & c : witness.copies) {
            if (static_cast<int>(c.vertices.size()) != f.size() || c.edges.size() != f.graph().number_of_edges())
                return false;
            for (auto v : c.vertices)
                if (! std::binary_search(nbhd.begin(), nbhd.end(), v))
                    return false;

            vector<Edge> local;
            for (auto [a, b] : c.edges) {
                auto ia = std::lower_bound(c.vertices.begin(), c.vertices.end(), a);
                auto ib = std::lower_bound(c.vertices.begin(), c.vertices.end(), b);
                if (ia == c.vertices.end() || *ia != a || ib == c.vertices.end() || *ib != b)
                    return false;
                if (! g.adjacent(a, b))
                    return false;
                local.emplace_back(ia - c.vertices.begin(), ib - c.vertices.begin());
            }

            Graph x;
            try {
                x = Graph{ static_cast<int>(c.vertices.size()), local };
            }
            catch (const InvalidInput &) {
                return false;
            }
            // same vertex and edge counts, so an injective homomorphism is an isomorphism
            if (! contains_copy(x, f))
                return false;
            distinct.insert(c);
        }
        return distinct.size() == witness.copies.size();
    }
}
