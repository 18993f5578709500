#ifndef NIBBLER_GUARD_INSTANCES_HH
#define NIBBLER_GUARD_INSTANCES_HH 1

#include <nibbler/graph.hh>
#include <nibbler/patterns.hh>
#include <nibbler/random.hh>

namespace nibbler
{
    /// Erdos-Renyi G(n, p). Pairs are visited in lexicographic order, one draw each.
    auto gnp(int n, double p, Seed seed) -> Graph;

    /// Parts 0..a-1 and a..a+b-1, each cross pair present with probability p.
    auto random_bipartite(int a, int b, double p, Seed seed) -> Graph;

    /**
     * Greedy random construction: up to 20 C(n,2) uniform pair proposals, an
     * edge kept only if degrees stay within degree_budget and every
     * neighbourhood still has at most floor(target_k) copies of F.
     */
    auto planted_sparse(int n, double target_k, const PatternGraph & f, int degree_budget, Seed seed) -> Graph;
}

#endif
