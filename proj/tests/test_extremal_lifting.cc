#include <doctest.h>

#include <nibbler/errors.hh>
#include <nibbler/extremal.hh>
#include <nibbler/lifting.hh>

#include "oracles.hh"

#include <cmath>

using namespace nibbler;
using std::vector;

TEST_CASE("ex(5, C4) against exhaustive edge-set enumeration")
{
    auto c4 = PatternGraph::cycle(4);
    CHECK(oracle::extremal_number(5, c4.graph()) == 6);
    CHECK(ex_brute(5, c4) == 6);
}

TEST_CASE("exact extremal numbers against the oracle for small n")
{
    vector<PatternGraph> patterns{ PatternGraph::complete(3), PatternGraph::path(3), PatternGraph::path(4),
        PatternGraph::cycle(4), PatternGraph::complete(4) };
    for (auto & f : patterns)
        for (int n = 1 ; n <= 6 ; ++n) {
            INFO(f.name() << " n=" << n);
            CHECK(ex_brute(n, f) == oracle::extremal_number(n, f.graph()));
        }
}

TEST_CASE("triangle-free extremal numbers are floor(n^2/4)")
{
    for (int n = 1 ; n <= max_exact_extremal_n ; ++n)
        CHECK(ex_brute(n, PatternGraph::complete(3)) == std::uint64_t(n * n / 4));
}

TEST_CASE("extremal input errors")
{
    CHECK_THROWS_AS(ex_brute(max_exact_extremal_n + 1, PatternGraph::complete(3)), PreconditionViolated);
    CHECK_THROWS_AS(ex_brute(4, PatternGraph{ Graph{ 2 } }), PreconditionViolated);
    CHECK(ex_brute(2, PatternGraph::complete(3)) == 1);
}

TEST_CASE("closed-form edge bounds")
{
    CHECK(kst_edge_bound(4, 4, 2, 2) == doctest::Approx(8.0 * std::sqrt(2.0) + 8.0));
    CHECK(kst_edge_bound(9, 9, 1, 1) == doctest::Approx(9.0 + 9.0));
    CHECK_THROWS_AS(kst_edge_bound(3, 4, 2, 2), PreconditionViolated);
    CHECK_THROWS_AS(kst_edge_bound(4, 4, 2, 3), PreconditionViolated);
    CHECK(alon_sparse_edge_bound(16, 1.0, 2, 2) == doctest::Approx(16.0));
    CHECK(local_edge_bound(5, 2.0, PatternGraph::cycle(4)) == doctest::Approx(8.0));
    CHECK(local_edge_bound(20, 2.0, PatternGraph::complete_bipartite(2, 2)) == doctest::Approx(22.0));
    CHECK_THROWS_AS(local_edge_bound(20, 2.0, PatternGraph::complete(3)), PreconditionViolated);
}

TEST_CASE("second lifting condition")
{
    CHECK(! s2_lift_condition(PatternGraph::cycle(6)));
    CHECK(! s2_lift_condition(PatternGraph::path(4)));
    CHECK(s2_lift_condition(PatternGraph::cycle(4)));
    CHECK(s2_lift_condition(PatternGraph::complete(3)));
    CHECK(s2_lift_condition(PatternGraph::path(3)));
    CHECK(s2_lift_condition(PatternGraph::complete_bipartite(3, 2)));
}

TEST_CASE("chromatic numbers against assignment enumeration")
{
    for (int n = 1 ; n <= 5 ; ++n)
        for (auto & f : oracle::all_graphs(n)) {
            PatternGraph p{ f };
            CHECK(chromatic_number_exact(p) == oracle::chromatic_number(f));
            auto colours = first_optimal_colouring(p);
            for (auto [u, v] : f.edges())
                CHECK(colours[u] != colours[v]);
        }
}

TEST_CASE("multipartite envelope")
{
    auto c5 = multipartite_envelope(PatternGraph::cycle(5));
    CHECK(c5.name() == "K2,2,1");
    CHECK(c5.size() == 5);
    CHECK(c5.graph().number_of_edges() == 8);

    CHECK(multipartite_envelope(PatternGraph::cycle(6)).name() == "K3,3");
    CHECK(multipartite_envelope(PatternGraph::complete(3)).name() == "K1,1,1");

    auto p3 = PatternGraph::path(3);
    CHECK(multipartite_envelope(p3, { 1, 0, 1 }).name() == "K1,2");
    CHECK_THROWS_AS(multipartite_envelope(p3, { 0, 0, 1 }), PreconditionViolated);
    CHECK_THROWS_AS(multipartite_envelope(p3, { 0, 2, 0 }), PreconditionViolated);
    CHECK_THROWS_AS(multipartite_envelope(PatternGraph{ Graph{ 3 } }), PreconditionViolated);

    // F sits inside its envelope
    for (int n = 2 ; n <= 5 ; ++n)
        for (auto & f : oracle::all_graphs(n)) {
            if (f.number_of_edges() == 0)
                continue;
            PatternGraph p{ f };
            CHECK(contains_copy(multipartite_envelope(p).graph(), p));
        }
}
