#include <doctest.h>

#include <nibbler/errors.hh>
#include <nibbler/instances.hh>
#include <nibbler/patterns.hh>

#include "oracles.hh"

#include <cmath>

using namespace nibbler;

TEST_CASE("gnp extremes")
{
    CHECK(gnp(10, 0.0, 1).number_of_edges() == 0);
    CHECK(gnp(10, 1.0, 1) == Graph::complete(10));
    CHECK(gnp(0, 0.5, 1).size() == 0);
    CHECK_THROWS_AS(gnp(5, 1.5, 1), PreconditionViolated);
}

TEST_CASE("gnp edge counts follow the binomial law")
{
    const int samples = 1000;
    const double mean = 435.0 / 2.0, sigma = std::sqrt(435.0 * 0.25);
    double total = 0.0;
    for (Seed seed = 0 ; seed < samples ; ++seed) {
        auto m = double(gnp(30, 0.5, seed).number_of_edges());
        CHECK(std::fabs(m - mean) <= 4.0 * sigma);
        total += m;
    }
    CHECK(std::fabs(total / samples - mean) <= 4.0 * sigma / std::sqrt(double(samples)));
}

TEST_CASE("random bipartite graphs")
{
    auto full = random_bipartite(3, 4, 1.0, 1);
    CHECK(full.number_of_edges() == 12);
    CHECK(count_copies(full, PatternGraph::complete_bipartite(4, 3)) == 1);
    CHECK_THROWS_AS(random_bipartite(0, 4, 0.5, 1), PreconditionViolated);

    for (Seed seed = 0 ; seed < 20 ; ++seed) {
        auto g = random_bipartite(20, 20, 0.3, seed);
        CHECK(certify_local_sparsity(g, 0.0, PatternGraph::complete(2)).holds());
        CHECK(count_copies(g, PatternGraph::complete(3)) == 0);
    }

    auto g = random_bipartite(20, 20, 0.3, 7);
    auto c4 = PatternGraph::complete_bipartite(2, 2);
    CHECK(count_copies(g, c4) == oracle::count_copies(g, c4.graph()));
    auto counts = neighbourhood_copy_counts_parallel(g, c4);
    for (Vertex v = 0 ; v < g.size() ; ++v)
        CHECK(counts[v] == oracle::count_in_neighbourhood(g, v, c4.graph()));
}

TEST_CASE("planted sparse graphs respect their own rule")
{
    SUBCASE("k = 0 with an edge pattern gives triangle-free graphs")
    {
        for (Seed seed = 0 ; seed < 10 ; ++seed) {
            auto g = planted_sparse(60, 0.0, PatternGraph::complete(2), 8, seed);
            CHECK(count_copies(g, PatternGraph::complete(3)) == 0);
            CHECK(g.max_degree() <= 8);
            CHECK(g.number_of_edges() > 0);
        }
    }

    SUBCASE("four-cycle sparsity re-certified")
    {
        auto f = PatternGraph::complete_bipartite(2, 2);
        for (Seed seed = 0 ; seed < 50 ; ++seed) {
            auto g = planted_sparse(200, 10.0, f, 20, seed);
            auto report = certify_local_sparsity(g, 10.0, f);
            CHECK(report.holds());
            CHECK(g.max_degree() <= 20);
        }
    }

    CHECK(planted_sparse(1, 0.0, PatternGraph::complete(2), 3, 1).size() == 1);
    CHECK(planted_sparse(10, 0.0, PatternGraph::complete(2), 0, 1).number_of_edges() == 0);
    CHECK_THROWS_AS(planted_sparse(10, -1.0, PatternGraph::complete(2), 3, 1), PreconditionViolated);
}

TEST_CASE("generators are reproducible to the byte")
{
    CHECK(graph_to_json_text(gnp(40, 0.2, 9)) == graph_to_json_text(gnp(40, 0.2, 9)));
    CHECK(graph_to_json_text(random_bipartite(9, 11, 0.4, 9)) == graph_to_json_text(random_bipartite(9, 11, 0.4, 9)));
    auto f = PatternGraph::cycle(4);
    CHECK(graph_to_json_text(planted_sparse(50, 2.0, f, 6, 9)) == graph_to_json_text(planted_sparse(50, 2.0, f, 6, 9)));
    CHECK(graph_to_json_text(gnp(40, 0.2, 9)) != graph_to_json_text(gnp(40, 0.2, 10)));
}
