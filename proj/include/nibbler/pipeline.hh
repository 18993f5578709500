#ifndef NIBBLER_GUARD_PIPELINE_HH
#define NIBBLER_GUARD_PIPELINE_HH 1

#include <nibbler/cover.hh>
#include <nibbler/finisher.hh>
#include <nibbler/random.hh>
#include <nibbler/schedule.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nibbler
{
    struct PipelineOptions
    {
        double epsilon = 0.5;
        double k = 1.0;                     // values below 1/2 are scheduled as 1/2, same floor
        int s = 1;
        int t = 1;
        Seed seed = 0;
        int retry_budget = 200;
        bool best_effort = false;
        std::optional<double> d;            // defaults to the max colour degree, at least 3
        std::uint64_t round_cap = 1'000'000;
    };

    struct StageRecord
    {
        std::size_t stage = 0;
        double ell = 0.0, d = 0.0, beta = 0.0;
        std::size_t vertices = 0;
        std::size_t min_list = 0;
        int max_colour_degree = 0;
        int attempts = 0;
        bool accepted = false;
        std::size_t coloured = 0;
        std::vector<std::string> failed;     // acceptance conditions of the last attempt
        std::vector<std::string> details;
    };

    enum class PipelineStatus { success, budget_exhausted, finisher_precondition, finisher_round_cap };

    auto status_name(PipelineStatus s) -> std::string;

    struct PipelineResult
    {
        PipelineStatus status = PipelineStatus::success;
        PartialColouring colouring;         // on the input cover's base and colour indices
        std::vector<StageRecord> stages;
        std::optional<Schedule> schedule;   // absent on a short-circuit to the finisher
        double scheduled_k = 0.0;
        double d = 0.0;
        int ell0 = 0;                       // ceil(ell_0), the trimmed list size
        bool short_circuit = false;
        bool early_handover = false;        // lists dominated colour degrees before i*
        std::optional<std::size_t> failed_stage;
        std::string message;
        ResampleTrace finisher;
        int finisher_ell = 0;

        auto success() const -> bool { return status == PipelineStatus::success; }
    };

    /**
     * Colours a cover by iterated nibbles along the schedule, then finishes by
     * resampling. Throws PreconditionViolated on an invalid cover, lists
     * shorter than ceil(ell_0), or eta >= ell_i at some stage. Any colouring
     * returned with success has been checked proper and total.
     */
    auto run_pipeline(const CorrespondenceCover & c, const PipelineOptions & options) -> PipelineResult;
}

#endif
