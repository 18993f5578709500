#include <nibbler/cover.hh>
#include <nibbler/instances.hh>
#include <nibbler/nibble.hh>
#include <nibbler/patterns.hh>

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

using namespace nibbler;

namespace
{
    template <typename F_>
    auto best_of(int repeats, F_ && f) -> double
    {
        double best = 1e300;
        for (int r = 0 ; r < repeats ; ++r) {
            auto start = std::chrono::steady_clock::now();
            f();
            best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
        }
        return best;
    }

    auto report(const std::string & name, double serial_ms, double parallel_ms, bool same) -> void
    {
        std::printf("%-28s serial %10.2f ms   parallel %10.2f ms   speedup %5.2fx   %s\n", name.c_str(), serial_ms,
                parallel_ms, serial_ms / parallel_ms, same ? "identical" : "MISMATCH");
    }
}

auto main(int argc, char * argv[]) -> int
{
    int scale = argc > 1 ? std::atoi(argv[1]) : 1;
    int repeats = 3;
    std::printf("threads: %d, scale: %d\n", omp_get_max_threads(), scale);

    {
        auto g = gnp(300 * scale, 0.08, 1);
        auto f = PatternGraph::complete_bipartite(2, 2);
        std::vector<std::uint64_t> a, b;
        auto ts = best_of(repeats, [&] { a = neighbourhood_copy_counts_serial(g, f); });
        auto tp = best_of(repeats, [&] { b = neighbourhood_copy_counts_parallel(g, f); });
        report("neighbourhood K2,2 counts", ts, tp, a == b);
    }

    auto g = gnp(2000 * scale, 0.01, 2);
    auto c = random_cover(g, 64, 3);

    {
        std::vector<CoverViolation> a, b;
        auto ts = best_of(repeats, [&] { a = validate_cover_serial(c); });
        auto tp = best_of(repeats, [&] { b = validate_cover_parallel(c); });
        report("validate_cover", ts, tp, a.size() == b.size());
    }

    {
        auto d = static_cast<double>(c.cover.max_degree());
        auto params = derived_params(0.05, 64.0, d, 0.1);
        NibbleOutcome a, b;
        auto ts = best_of(repeats, [&] { a = wasteful_step_serial(c, params, 4); });
        auto tp = best_of(repeats, [&] { b = wasteful_step_parallel(c, params, 4); });
        report("wasteful_step", ts, tp, a == b);
    }
}
