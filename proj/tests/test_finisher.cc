#include <doctest.h>

#include <nibbler/errors.hh>
#include <nibbler/finisher.hh>

#include "oracles.hh"

using namespace nibbler;
using std::vector;

TEST_CASE("local lemma margin")
{
    CHECK(lll_margin(0.0, 5.0) == 0.0);
    CHECK(lll_margin(0.125, 2.0) == 1.0);
    CHECK(lll_margin(1e-50, 1e10) == doctest::Approx(4e-40));
    CHECK_THROWS_AS(lll_margin(1.0, 1.0), PreconditionViolated);
    CHECK_THROWS_AS(lll_margin(-0.1, 1.0), PreconditionViolated);
    CHECK_THROWS_AS(lll_margin(0.1, -1.0), PreconditionViolated);
}

TEST_CASE("edgeless cover is accepted without resampling")
{
    auto c = identity_list_cover(Graph{ 6 }, 3);
    auto r = final_blow(c, 3, 1);
    CHECK(r.success);
    CHECK(r.trace.rounds == 0);
    CHECK(r.trace.final_proper);
    CHECK(oracle::proper_total(c, r.colouring));
}

TEST_CASE("single matched pair on an edge")
{
    auto g = Graph{ 2, vector<Edge>{ { 0, 1 } } };
    auto c = CorrespondenceCover::make(g, Graph{ 16, vector<Edge>{ { 0, 8 } } },
            { { 0, 1, 2, 3, 4, 5, 6, 7 }, { 8, 9, 10, 11, 12, 13, 14, 15 } });
    std::uint64_t total_rounds = 0;
    for (Seed seed = 0 ; seed < 2000 ; ++seed) {
        auto r = final_blow(c, 8, seed);
        REQUIRE(r.success);
        CHECK(oracle::proper_total(c, r.colouring));
        total_rounds += r.trace.rounds;
    }
    // geometric: expected rounds 1/63 per run
    CHECK(double(total_rounds) / 2000 < 2.0);
}

TEST_CASE("preconditions are checked exactly")
{
    auto g = Graph::complete(3);
    auto c = identity_list_cover(g, 16);      // colour degree 2
    CHECK_NOTHROW(final_blow(c, 16, 1));
    CHECK_THROWS_AS(final_blow(c, 15, 1), PreconditionViolated);     // floor(15/8) = 1 < 2
    CHECK_THROWS_AS(final_blow(c, 17, 1), PreconditionViolated);     // list shorter than ell
    CHECK_THROWS_AS(final_blow(c, 0, 1), PreconditionViolated);
    try {
        final_blow(c, 15, 1);
    }
    catch (const PreconditionViolated & e) {
        CHECK(std::string{ e.what() }.find("max colour degree 2") != std::string::npos);
    }
}

TEST_CASE("random dominated instances complete, deterministically")
{
    oracle::Gen gen{ 41 };
    for (int trial = 0 ; trial < 30 ; ++trial) {
        int ell = gen.chance(0.5) ? 16 : 32;
        auto g = gen.graph(gen.between(5, 60), gen.real(0.05, 0.5));
        auto c = random_cover(g, ell, trial, 0.0);
        // thin to the degree bound by dropping matched pairs until every colour degree <= ell/8
        auto bound = ell / 8;
        vector<Edge> kept;
        vector<int> degree(c.cover.size(), 0);
        for (auto [x, y] : c.cover.edges())
            if (degree[x] < bound && degree[y] < bound) {
                kept.emplace_back(x, y);
                ++degree[x];
                ++degree[y];
            }
        c.cover = Graph{ c.cover.size(), kept };
        auto r = final_blow(c, ell, trial);
        REQUIRE(r.success);
        CHECK(oracle::proper_total(c, r.colouring));
        CHECK(r.trace.resampled_events == r.trace.rounds);
        auto again = final_blow(c, ell, trial);
        CHECK(again.colouring == r.colouring);
        CHECK(again.trace.rounds == r.trace.rounds);
    }
}

TEST_CASE("round cap stops the loop and reports failure")
{
    auto g = Graph{ 2, vector<Edge>{ { 0, 1 } } };
    auto c = CorrespondenceCover::make(g, Graph{ 16, vector<Edge>{ { 0, 8 } } },
            { { 0, 1, 2, 3, 4, 5, 6, 7 }, { 8, 9, 10, 11, 12, 13, 14, 15 } });
    Seed seed = 0;
    while (final_blow(c, 8, seed).trace.rounds == 0)
        ++seed;
    auto capped = final_blow(c, 8, seed, 0);
    CHECK(! capped.success);
    CHECK(! capped.trace.final_proper);
    CHECK(capped.trace.rounds == 0);
}
