#ifndef NIBBLER_GUARD_PATTERNS_HH
#define NIBBLER_GUARD_PATTERNS_HH 1

#include <nibbler/graph.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nibbler
{
    inline constexpr int max_pattern_vertices = 8;

    /**
     * A small pattern F (at most max_pattern_vertices vertices) with its
     * automorphism count, bipartiteness, and the (s, t) shape when it is
     * exactly a complete bipartite graph K_{s,t} with s >= t >= 1.
     */
    class PatternGraph
    {
        public:
            explicit PatternGraph(Graph graph, std::string name = "");

            static auto complete(int n) -> PatternGraph;
            static auto path(int n) -> PatternGraph;
            static auto cycle(int n) -> PatternGraph;
            static auto complete_bipartite(int s, int t) -> PatternGraph;

            auto graph() const -> const Graph & { return _graph; }
            auto size() const -> int { return _graph.size(); }
            auto name() const -> const std::string & { return _name; }
            auto aut_count() const -> std::uint64_t { return _aut_count; }
            auto is_bipartite() const -> bool { return _bipartite; }
            auto s_t() const -> std::optional<std::pair<int, int>> { return _s_t; }

        private:
            Graph _graph;
            std::string _name;
            std::uint64_t _aut_count = 1;
            bool _bipartite = true;
            std::optional<std::pair<int, int>> _s_t;
    };

    /// Throws PreconditionViolated past the size cap.
    auto check_pattern_size(const Graph & f) -> void;

    auto automorphism_count(const Graph & f) -> std::uint64_t;
    auto automorphism_count(const PatternGraph & f) -> std::uint64_t;

    /// Number of injective maps V(F) -> V(G) sending edges to edges.
    auto count_injective_homomorphisms(const Graph & g, const PatternGraph & f) -> std::uint64_t;

    /// Distinct (not necessarily induced) subgraphs of G isomorphic to F.
    auto count_copies(const Graph & g, const PatternGraph & f) -> std::uint64_t;

    auto contains_copy(const Graph & g, const PatternGraph & f) -> bool;

    /// A copy of F in G: its vertex set and edge set, both sorted.
    struct Copy
    {
        std::vector<Vertex> vertices;
        std::vector<Edge> edges;

        auto operator<=> (const Copy &) const = default;
    };

    /// Up to `limit` distinct copies of F in G, in enumeration order.
    auto find_copies(const Graph & g, const PatternGraph & f, std::uint64_t limit) -> std::vector<Copy>;

    auto count_copies_in_neighbourhood(const Graph & g, Vertex v, const PatternGraph & f) -> std::uint64_t;

    /// Per-vertex copy counts of F in G[N(v)]. Reference implementation.
    auto neighbourhood_copy_counts_serial(const Graph & g, const PatternGraph & f) -> std::vector<std::uint64_t>;

    /// Same result as the serial version, one OpenMP task per vertex.
    auto neighbourhood_copy_counts_parallel(const Graph & g, const PatternGraph & f) -> std::vector<std::uint64_t>;

    /// floor(k) as a count, saturating.
    auto floor_threshold(double k) -> std::uint64_t;

    struct SparsityWitness
    {
        Vertex vertex;
        std::vector<Copy> copies;   // floor(k) + 1 distinct copies inside G[N(vertex)], in G's indices
    };

    struct SparsityReport
    {
        double k = 0.0;
        std::vector<std::uint64_t> per_vertex_counts;
        std::uint64_t max_count = 0;
        Vertex argmax_vertex = -1;  // lowest-index vertex attaining max_count, -1 for the empty graph
        std::optional<SparsityWitness> witness;

        auto holds() const -> bool { return ! witness.has_value(); }
    };

    enum class Execution
    {
        serial,
        parallel
    };

    /// (k, F)-local sparsity: every G[N(v)] has at most floor(k) copies of F.
    auto certify_local_sparsity(const Graph & g, double k, const PatternGraph & f,
            Execution execution = Execution::parallel) -> SparsityReport;

    /// Checks that the witness copies are distinct copies of F living in G[N(v)].
    auto verify_witness(const Graph & g, const PatternGraph & f, const SparsityWitness & witness) -> bool;
}

#endif
