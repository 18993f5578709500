#ifndef NIBBLER_GUARD_SRC_MATCHER_HH
#define NIBBLER_GUARD_SRC_MATCHER_HH 1

#include <nibbler/graph.hh>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace nibbler::detail
{
    /**
     * Backtracking enumerator of injective homomorphisms pattern -> target.
     * Pattern vertices are visited in a static order: highest degree first,
     * then repeatedly the vertex with most already-placed neighbours (ties
     * by degree, then index). Candidates for a vertex with a placed
     * neighbour come from that neighbour's image's adjacency list.
     */
    class Matcher
    {
        public:
            Matcher(const Graph & pattern, const Graph & target);

            /// Visitor receives the image of each pattern vertex; return false to stop.
            using Visitor = std::function<auto (std::span<const Vertex>) -> bool>;

            auto count() -> std::uint64_t;

            /// Returns false if the visitor stopped the enumeration.
            auto enumerate(const Visitor & visitor) -> bool;

            /// Is there an injective homomorphism extending pattern_vertex[i] -> target_vertex[i]?
            auto exists_with(std::span<const std::pair<Vertex, Vertex>> fixed) -> bool;

        private:
            auto adjacent(Vertex u, Vertex v) const -> bool;
            auto search(std::size_t depth) -> bool;

            const Graph & _pattern;
            const Graph & _target;
            std::vector<std::uint64_t> _dense;      // row-major bit matrix when the target is small
            std::size_t _words = 0;

            std::vector<Vertex> _order;
            std::vector<std::vector<Vertex>> _back;  // placed neighbours at each depth, as pattern vertices
            std::vector<Vertex> _image;             // pattern vertex -> target vertex or -1
            std::vector<char> _used;
            std::vector<char> _preassigned;

            std::uint64_t _count = 0;
            const Visitor * _visitor = nullptr;
            bool _stop_at_first = false;
    };
}

#endif
