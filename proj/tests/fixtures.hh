#ifndef NIBBLER_GUARD_TESTS_FIXTURES_HH
#define NIBBLER_GUARD_TESTS_FIXTURES_HH 1

#include <nibbler/cover.hh>

#include <vector>

namespace fixtures
{
    /**
     * Base graph on a=0, b=1, c=2, d=3, e=4: triangles abc and cde sharing c.
     * 2-fold cover, colour 2v+i is the i-th colour of v, one H-edge per base
     * edge threading a single 6-cycle a1 c0 e1 d0 c1 b0.
     */
    inline auto bowtie_cover() -> nibbler::CorrespondenceCover
    {
        using nibbler::Edge;
        nibbler::Graph base{ 5, std::vector<Edge>{ { 0, 1 }, { 0, 2 }, { 1, 2 }, { 2, 3 }, { 2, 4 }, { 3, 4 } } };
        nibbler::Graph cover{ 10, std::vector<Edge>{ { 1, 4 }, { 4, 9 }, { 6, 9 }, { 5, 6 }, { 2, 5 }, { 1, 2 } } };
        std::vector<std::vector<nibbler::Colour>> lists{ { 0, 1 }, { 2, 3 }, { 4, 5 }, { 6, 7 }, { 8, 9 } };
        return nibbler::CorrespondenceCover::make(base, cover, lists);
    }
}

#endif
