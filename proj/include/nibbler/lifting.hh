#ifndef NIBBLER_GUARD_LIFTING_HH
#define NIBBLER_GUARD_LIFTING_HH 1

#include <nibbler/patterns.hh>

#include <vector>

namespace nibbler
{
    /// Every non-adjacent pair of pattern vertices has a common neighbour.
    auto s2_lift_condition(const PatternGraph & f) -> bool;

    auto chromatic_number_exact(const PatternGraph & f) -> int;

    /**
     * The lexicographically first optimal colouring, colours 0..chi-1,
     * comparing colour vectors in vertex order.
     */
    auto first_optimal_colouring(const PatternGraph & f) -> std::vector<int>;

    auto complete_multipartite(const std::vector<int> & part_sizes) -> PatternGraph;

    /// Complete chi(F)-partite graph whose parts have the class sizes of first_optimal_colouring.
    auto multipartite_envelope(const PatternGraph & f) -> PatternGraph;

    /// Same, from a caller-chosen proper colouring (colours 0..q-1, all used).
    auto multipartite_envelope(const PatternGraph & f, const std::vector<int> & colouring) -> PatternGraph;
}

#endif
