#ifndef NIBBLER_GUARD_EXTREMAL_HH
#define NIBBLER_GUARD_EXTREMAL_HH 1

#include <nibbler/patterns.hh>

#include <cstdint>

namespace nibbler
{
    inline constexpr int max_exact_extremal_n = 9;

    /// Kővári–Sós–Turán: s^{1/t} m^{1-1/t} n + t m, for K_{s,t}-free bipartite graphs with parts m >= n.
    auto kst_edge_bound(std::uint64_t m, std::uint64_t n, int s, int t) -> double;

    /// Edge bound for n-vertex (k, K_{s,t})-sparse graphs: ½ s^{1/t} t^{1/s} k^{1/(st)} n^{2-1/s-1/t}.
    auto alon_sparse_edge_bound(std::uint64_t n, double k, int s, int t) -> double;

    /// ex(n, F) by exhaustive branch and bound, n <= max_exact_extremal_n.
    auto ex_brute(int n, const PatternGraph & f) -> std::uint64_t;

    /// k + ex(deg, F), with the K_{s,t} closed form standing in for ex beyond the exact cutoff.
    auto local_edge_bound(int degree, double k, const PatternGraph & f) -> double;
}

#endif
