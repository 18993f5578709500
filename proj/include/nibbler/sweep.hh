#ifndef NIBBLER_GUARD_SWEEP_HH
#define NIBBLER_GUARD_SWEEP_HH 1

#include <nibbler/random.hh>
#include <nibbler/serialize.hh>

#include <optional>
#include <string>
#include <vector>

namespace nibbler
{
    /// One run of a sweep: an instance recipe plus pipeline parameters and a seed.
    struct SweepRun
    {
        std::size_t point = 0;          // index of the grid point (entry, epsilon, k) this run belongs to
        Json generator;                 // {"generator": ..., parameters}
        std::string cover_type = "identity";
        std::optional<int> q;           // absent: ceil(ell_0) at d = max(3, Delta(G))
        double drop_probability = 0.0;
        double epsilon = 0.5;
        double k = 1.0;
        int s = 1, t = 1;
        Seed seed = 0;
        int retries = 200;
        bool best_effort = false;
    };

    struct SweepConfig
    {
        std::string output_dir;
        int threads = 1;
        std::vector<SweepRun> runs;
    };

    /**
     * {"output_dir": str, "threads": int, "grid": [entry, ...]}. An entry has
     * "generator" (gnp | bipartite | planted | edgeless | file) with its
     * parameters, "cover" (identity | random), optional "q", "s", "t",
     * "retries", "best_effort", and lists "epsilon", "k", "seeds".
     * Throws InvalidInput on a schema violation.
     */
    auto parse_sweep_config(const std::string & text) -> SweepConfig;

    struct SweepRow
    {
        std::string run_id;
        std::string instance_hash;
        std::size_t point = 0;
        int n = 0;
        int delta_h = 0;
        std::uint64_t measured_k = 0;
        double epsilon = 0.0, k = 0.0;
        int s = 0, t = 0;
        Seed seed = 0;
        int ell0 = 0;
        std::size_t stages = 0;
        std::optional<std::size_t> i_star;
        std::string status;
        bool success = false;           // pipeline finished and the stored colouring passed the file verifier
        double point_success_rate = 0.0;
        double wall_ms = 0.0;
    };

    auto sweep_csv_header() -> std::string;
    auto sweep_csv_row(const SweepRow & row, bool with_time = true) -> std::string;

    /// Runs every grid point, writes summary.csv and runs/<run_id>.{cover,colouring,trace}.json under output_dir.
    auto run_sweep(const SweepConfig & config) -> std::vector<SweepRow>;

    auto fnv1a_hex(const std::string & text) -> std::string;
}

#endif
