#ifndef NIBBLER_GUARD_COVER_HH
#define NIBBLER_GUARD_COVER_HH 1

#include <nibbler/graph.hh>
#include <nibbler/patterns.hh>
#include <nibbler/random.hh>

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nibbler
{
    /// A colour is a vertex of the cover graph H.
    using Colour = int;

    /**
     * A correspondence cover (L, H) of a base graph G. Colours are global
     * indices into H; `owner` is the inverse of the list assignment, with -1
     * for colours in no list. Nothing about CC1-CC3 is assumed on
     * construction: run validate_cover.
     */
    struct CorrespondenceCover
    {
        Graph base;
        Graph cover;
        std::vector<std::vector<Colour>> lists;
        std::vector<Vertex> owner;

        /// Colour names of list covers, empty for general covers. Metadata only.
        std::vector<int> colour_names;

        static auto make(Graph base, Graph cover, std::vector<std::vector<Colour>> lists) -> CorrespondenceCover;

        auto list(Vertex v) const -> std::span<const Colour> { return lists.at(v); }
        auto colour_degree(Colour c) const -> int { return cover.degree(c); }
        auto min_list_size() const -> std::size_t;
    };

    struct CoverViolation
    {
        enum class Clause { shape, cc1, cc2, cc3 };

        Clause clause;
        std::vector<int> items;     // offending vertices or colours, meaning given by the message
        std::string message;
    };

    auto clause_name(CoverViolation::Clause c) -> std::string;

    /// Empty iff CC1-CC3 hold. Reference implementation.
    auto validate_cover_serial(const CorrespondenceCover & c) -> std::vector<CoverViolation>;

    /// Same violations in the same order, with the per-colour scan run under OpenMP.
    auto validate_cover_parallel(const CorrespondenceCover & c) -> std::vector<CoverViolation>;

    auto validate_cover(const CorrespondenceCover & c) -> std::vector<CoverViolation>;

    /// (u, x) ~ (v, y) iff uv is an edge and x = y. Colour names must be distinct within a list.
    auto list_cover(const Graph & g, const std::vector<std::vector<int>> & colour_names) -> CorrespondenceCover;

    /// Every vertex gets the names 0..q-1.
    auto identity_list_cover(const Graph & g, int q) -> CorrespondenceCover;

    /**
     * q-fold cover, colour v*q + i is the i-th colour of v. Each base edge
     * gets an independent uniform perfect matching; with drop_probability > 0
     * each matched pair is then removed independently.
     */
    auto random_cover(const Graph & g, int q, Seed seed, double drop_probability = 0.0) -> CorrespondenceCover;

    /// Partial map base vertex -> colour, blank encoded as -1.
    class PartialColouring
    {
        public:
            PartialColouring() = default;
            explicit PartialColouring(int n) : _assignment(n, -1) { }
            explicit PartialColouring(std::vector<Colour> assignment) : _assignment(std::move(assignment)) { }

            auto size() const -> int { return static_cast<int>(_assignment.size()); }
            auto coloured(Vertex v) const -> bool { return _assignment.at(v) != -1; }
            auto colour(Vertex v) const -> Colour { return _assignment.at(v); }
            auto assign(Vertex v, Colour c) -> void { _assignment.at(v) = c; }
            auto clear(Vertex v) -> void { _assignment.at(v) = -1; }

            auto domain() const -> std::vector<Vertex>;
            auto image() const -> std::vector<Colour>;
            auto total() const -> bool;
            auto assignment() const -> const std::vector<Colour> & { return _assignment; }

            auto operator== (const PartialColouring &) const -> bool = default;

        private:
            std::vector<Colour> _assignment;
    };

    struct ProperCheck
    {
        bool proper = true;
        std::optional<std::pair<Colour, Colour>> conflict;     // first adjacent pair in im(phi), smaller colour first
    };

    /// Throws InvalidInput if some phi(v) is not in L(v).
    auto is_proper(const CorrespondenceCover & c, const PartialColouring & phi) -> ProperCheck;

    /// L_phi(v): colours of L(v) with no H-neighbour in im(phi). v must be uncoloured.
    auto available_list(const CorrespondenceCover & c, const PartialColouring & phi, Vertex v) -> std::vector<Colour>;

    /// A cover restricted to some base vertices and colours, with maps back to the parent's indices.
    struct SubCover
    {
        CorrespondenceCover cover;
        std::vector<Vertex> base_origin;
        std::vector<Colour> colour_origin;
    };

    /**
     * G[keep_vertices] with H induced on the union of the new lists.
     * new_lists[i] are parent colours for keep_vertices[i] and must lie in
     * the parent's list of that vertex.
     */
    auto restrict_cover(const CorrespondenceCover & c, std::span<const Vertex> keep_vertices,
            const std::vector<std::vector<Colour>> & new_lists) -> SubCover;

    /// Drops base edges whose matching in H is empty.
    auto drop_unmatched_edges(const CorrespondenceCover & c) -> CorrespondenceCover;

    /// Average cover-degree over L(v). Throws PreconditionViolated on an empty list.
    auto avg_colour_degree(const CorrespondenceCover & c, Vertex v) -> double;
}

#endif
