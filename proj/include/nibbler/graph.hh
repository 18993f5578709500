#ifndef NIBBLER_GUARD_GRAPH_HH
#define NIBBLER_GUARD_GRAPH_HH 1

#include <nibbler/errors.hh>

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nibbler
{
    using Vertex = int;
    using Edge = std::pair<Vertex, Vertex>;

    /**
     * Simple undirected graph on vertices 0..n-1. Neighbour lists are sorted
     * and duplicate-free, adjacency is symmetric, and there are no loops.
     * Immutable once built.
     */
    class Graph
    {
        public:
            Graph() = default;
            explicit Graph(int n);

            /// Throws InvalidInput on loops, duplicate edges or out-of-range endpoints.
            Graph(int n, std::span<const Edge> edges);

            static auto complete(int n) -> Graph;
            static auto empty(int n) -> Graph;

            auto size() const -> int { return static_cast<int>(_adj.size()); }
            auto number_of_edges() const -> std::size_t { return _edge_count; }

            auto neighbours(Vertex v) const -> std::span<const Vertex>;
            auto adjacent(Vertex u, Vertex v) const -> bool;
            auto degree(Vertex v) const -> int;
            auto max_degree() const -> int;

            /// Edges (u, v) with u < v in lexicographic order.
            auto edges() const -> std::vector<Edge>;

            auto operator== (const Graph &) const -> bool = default;

        private:
            auto check_vertex(Vertex v) const -> void;

            std::vector<std::vector<Vertex>> _adj;
            std::size_t _edge_count = 0;
    };

    /// Result of restricting a graph to a vertex set.
    struct InducedSubgraph
    {
        Graph graph;
        std::vector<Vertex> original;   // local index -> original vertex, ascending
    };

    /**
     * G[S]. The subset may be given in any order; local indices follow the
     * ascending order of the original indices. Duplicates are ignored.
     */
    auto induced_subgraph(const Graph & g, std::span<const Vertex> subset) -> InducedSubgraph;

    /// Graph plus the optional label table from the JSON format.
    struct LabelledGraph
    {
        Graph graph;
        std::vector<std::string> labels;
    };

    auto parse_graph_json(const std::string & text) -> LabelledGraph;
    auto parse_graph_dimacs(const std::string & text) -> Graph;

    /// Detects the format from the first non-blank character ('{' means JSON).
    auto parse_graph(const std::string & text) -> LabelledGraph;
    auto read_graph_file(const std::string & path) -> LabelledGraph;

    /// Canonical JSON: {"n":..,"edges":[[u,v],..]} with sorted edges, plus labels when present.
    auto graph_to_json_text(const Graph & g, std::span<const std::string> labels = {}) -> std::string;
}

#endif
