#include <nibbler/lifting.hh>

#include <algorithm>
#include <string>

using std::string;
using std::to_string;
using std::vector;

namespace nibbler
{
    auto s2_lift_condition(const PatternGraph & f) -> bool
    {
        auto & g = f.graph();
        for (Vertex u = 0 ; u < g.size() ; ++u)
            for (Vertex v = u + 1 ; v < g.size() ; ++v) {
                if (g.adjacent(u, v))
                    continue;
                auto a = g.neighbours(u), b = g.neighbours(v);
                vector<Vertex> common;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
                if (common.empty())
                    return false;
            }
        return true;
    }

    namespace
    {
        /// First proper colouring with at most q colours in lexicographic order, colours introduced in order.
        auto colour_with(const Graph & g, int q, vector<int> & colours, int v, int used) -> bool
        {
            if (v == g.size())
                return true;
            for (int c = 0 ; c < std::min(q, used + 1) ; ++c) {
                bool ok = true;
                for (auto w : g.neighbours(v))
                    if (w < v && colours[w] == c) {
                        ok = false;
                        break;
                    }
                if (! ok)
                    continue;
                colours[v] = c;
                if (colour_with(g, q, colours, v + 1, std::max(used, c + 1)))
                    return true;
            }
            colours[v] = -1;
            return false;
        }
    }

    auto first_optimal_colouring(const PatternGraph & f) -> vector<int>
    {
        auto & g = f.graph();
        for (int q = g.size() == 0 ? 0 : 1 ; q <= g.size() ; ++q) {
            vector<int> colours(g.size(), -1);
            if (colour_with(g, q, colours, 0, 0))
                return colours;
        }
        return {};
    }

    auto chromatic_number_exact(const PatternGraph & f) -> int
    {
        auto colours = first_optimal_colouring(f);
        return colours.empty() ? 0 : *std::max_element(colours.begin(), colours.end()) + 1;
    }

    auto complete_multipartite(const vector<int> & part_sizes) -> PatternGraph
    {
        vector<int> part;
        for (std::size_t i = 0 ; i < part_sizes.size() ; ++i)
            for (int j = 0 ; j < part_sizes[i] ; ++j)
                part.push_back(static_cast<int>(i));

        vector<Edge> edges;
        for (std::size_t u = 0 ; u < part.size() ; ++u)
            for (std::size_t v = u + 1 ; v < part.size() ; ++v)
                if (part[u] != part[v])
                    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));

        string name = "K";
        for (std::size_t i = 0 ; i < part_sizes.size() ; ++i)
            name += (i ? "," : "") + to_string(part_sizes[i]);
        return PatternGraph{ Graph{ static_cast<int>(part.size()), edges }, name };
    }

    auto multipartite_envelope(const PatternGraph & f, const vector<int> & colouring) -> PatternGraph
    {
        auto & g = f.graph();
        if (g.number_of_edges() == 0)
            throw PreconditionViolated{ "multipartite envelope needs a pattern with at least one edge" };
        if (static_cast<int>(colouring.size()) != g.size())
            throw PreconditionViolated{ "colouring has the wrong length" };
        for (auto [u, v] : g.edges())
            if (colouring[u] == colouring[v])
                throw PreconditionViolated{ "colouring is not proper on edge " + to_string(u) + "-" + to_string(v) };

        int q = *std::max_element(colouring.begin(), colouring.end()) + 1;
        vector<int> sizes(q, 0);
        for (auto c : colouring) {
            if (c < 0)
                throw PreconditionViolated{ "negative colour in colouring" };
            ++sizes[c];
        }
        if (std::count(sizes.begin(), sizes.end(), 0) > 0)
            throw PreconditionViolated{ "colouring skips a colour" };
        return complete_multipartite(sizes);
    }

    auto multipartite_envelope(const PatternGraph & f) -> PatternGraph
    {
        if (f.graph().number_of_edges() == 0)
            throw PreconditionViolated{ "multipartite envelope needs a pattern with at least one edge" };
        return multipartite_envelope(f, first_optimal_colouring(f));
    }
}
