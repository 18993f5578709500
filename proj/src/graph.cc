#include <nibbler/graph.hh>

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

using std::span;
using std::string;
using std::to_string;
using std::vector;

namespace nibbler
{
    Graph::Graph(int n)
    {
        if (n < 0)
            throw InvalidInput{ "negative vertex count " + to_string(n) };
        _adj.resize(n);
    }

    Graph::Graph(int n, span<const Edge> edges) :
        Graph(n)
    {
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw InvalidInput{ "edge (" + to_string(u) + ", " + to_string(v) + ") out of range for n = " + to_string(n) };
            if (u == v)
                throw InvalidInput{ "self-loop at vertex " + to_string(u) };
            _adj[u].push_back(v);
            _adj[v].push_back(u);
        }

        for (Vertex v = 0 ; v < n ; ++v) {
            auto & a = _adj[v];
            std::sort(a.begin(), a.end());
            auto dup = std::adjacent_find(a.begin(), a.end());
            if (dup != a.end())
                throw InvalidInput{ "duplicate edge (" + to_string(v) + ", " + to_string(*dup) + ")" };
        }

        _edge_count = edges.size();
    }

    auto Graph::complete(int n) -> Graph
    {
        vector<Edge> edges;
        for (Vertex u = 0 ; u < n ; ++u)
            for (Vertex v = u + 1 ; v < n ; ++v)
                edges.emplace_back(u, v);
        return Graph{ n, edges };
    }

    auto Graph::empty(int n) -> Graph
    {
        return Graph{ n };
    }

    auto Graph::check_vertex(Vertex v) const -> void
    {
        if (v < 0 || v >= size())
            throw InvalidInput{ "vertex " + to_string(v) + " out of range for n = " + to_string(size()) };
    }

    auto Graph::neighbours(Vertex v) const -> span<const Vertex>
    {
        check_vertex(v);
        return _adj[v];
    }

    auto Graph::adjacent(Vertex u, Vertex v) const -> bool
    {
        check_vertex(u);
        check_vertex(v);
        const auto & a = _adj[u].size() <= _adj[v].size() ? _adj[u] : _adj[v];
        return std::binary_search(a.begin(), a.end(), &a == &_adj[u] ? v : u);
    }

    auto Graph::degree(Vertex v) const -> int
    {
        check_vertex(v);
        return static_cast<int>(_adj[v].size());
    }

    auto Graph::max_degree() const -> int
    {
        std::size_t result = 0;
        for (auto & a : _adj)
            result = std::max(result, a.size());
        return static_cast<int>(result);
    }

    auto Graph::edges() const -> vector<Edge>
    {
        vector<Edge> result;
        result.reserve(_edge_count);
        for (Vertex u = 0 ; u < size() ; ++u)
            for (auto v : _adj[u])
                if (u < v)
                    result.emplace_back(u, v);
        return result;
    }

    auto induced_subgraph(const Graph & g, span<const Vertex> subset) -> InducedSubgraph
    {
        vector<Vertex> original{ subset.begin(), subset.end() };
        for (auto v : original)
            if (v < 0 || v >= g.size())
                throw InvalidInput{ "vertex " + to_string(v) + " out of range for n = " + to_string(g.size()) };
        std::sort(original.begin(), original.end());
        original.erase(std::unique(original.begin(), original.end()), original.end());

        vector<int> local(g.size(), -1);
        for (std::size_t i = 0 ; i < original.size() ; ++i)
            local[original[i]] = static_cast<int>(i);

        vector<Edge> edges;
        for (std::size_t i = 0 ; i < original.size() ; ++i)
            for (auto w : g.neighbours(original[i]))
                if (local[w] > static_cast<int>(i))
                    edges.emplace_back(static_cast<int>(i), local[w]);

        return InducedSubgraph{ Graph{ static_cast<int>(original.size()), edges }, std::move(original) };
    }

    auto parse_graph_json(const string & text) -> LabelledGraph
    {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::exception & e) {
            throw InvalidInput{ string{ "graph JSON: " } + e.what() };
        }

        if (! j.is_object() || ! j.contains("n") || ! j.contains("edges"))
            throw InvalidInput{ "graph JSON must be an object with \"n\" and \"edges\"" };

        LabelledGraph result;
        try {
            auto n = j.at("n").get<int>();
            vector<Edge> edges;
            for (auto & e : j.at("edges")) {
                if (! e.is_array() || e.size() != 2)
                    throw InvalidInput{ "graph JSON: each edge must be a pair" };
                edges.emplace_back(e[0].get<int>(), e[1].get<int>());
            }
            result.graph = Graph{ n, edges };
            if (j.contains("labels") && ! j["labels"].is_null()) {
                result.labels = j["labels"].get<vector<string>>();
                if (static_cast<int>(result.labels.size()) != n)
                    throw InvalidInput{ "graph JSON: label table has " + to_string(result.labels.size()) + " entries, expected " + to_string(n) };
            }
        }
        catch (const nlohmann::json::exception & e) {
            throw InvalidInput{ string{ "graph JSON: " } + e.what() };
        }
        return result;
    }

    auto parse_graph_dimacs(const string & text) -> Graph
    {
        std::istringstream in{ text };
        string line;
        int n = -1;
        long declared_edges = -1;
        vector<Edge> edges;
        int line_number = 0;

        while (std::getline(in, line)) {
            ++line_number;
            std::istringstream fields{ line };
            string kind;
            if (! (fields >> kind) || kind == "c")
                continue;

            if (kind == "p") {
                string format;
                if (! (fields >> format >> n >> declared_edges) || n < 0 || declared_edges < 0)
                    throw InvalidInput{ "DIMACS line " + to_string(line_number) + ": bad problem line" };
            }
            else if (kind == "e") {
                int u, v;
                if (n < 0)
                    throw InvalidInput{ "DIMACS line " + to_string(line_number) + ": edge before problem line" };
                if (! (fields >> u >> v))
                    throw InvalidInput{ "DIMACS line " + to_string(line_number) + ": bad edge line" };
                edges.emplace_back(u - 1, v - 1);
            }
            else
                throw InvalidInput{ "DIMACS line " + to_string(line_number) + ": unknown line type '" + kind + "'" };
        }

        if (n < 0)
            throw InvalidInput{ "DIMACS: missing problem line" };
        if (static_cast<long>(edges.size()) != declared_edges)
            throw InvalidInput{ "DIMACS: header declares " + to_string(declared_edges) + " edges, found " + to_string(edges.size()) };

        return Graph{ n, edges };
    }

    auto parse_graph(const string & text) -> LabelledGraph
    {
        auto first = text.find_first_not_of(" \t\r\n");
        if (first != string::npos && text[first] == '{')
            return parse_graph_json(text);
        return LabelledGraph{ parse_graph_dimacs(text), {} };
    }

    auto read_graph_file(const string & path) -> LabelledGraph
    {
        std::ifstream in{ path };
        if (! in)
            throw IoError{ "cannot open " + path };
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_graph(buffer.str());
    }

    auto graph_to_json_text(const Graph & g, span<const string> labels) -> string
    {
        nlohmann::ordered_json j;
        j["n"] = g.size();
        auto edges = nlohmann::ordered_json::array();
        for (auto [u, v] : g.edges())
            edges.push_back({ u, v });
        j["edges"] = std::move(edges);
        if (! labels.empty())
            j["labels"] = vector<string>{ labels.begin(), labels.end() };
        return j.dump();
    }
}
