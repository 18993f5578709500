#ifndef NIBBLER_GUARD_FINISHER_HH
#define NIBBLER_GUARD_FINISHER_HH 1

#include <nibbler/cover.hh>
#include <nibbler/random.hh>

#include <cstdint>

namespace nibbler
{
    /// 4 p dep; at most 1 satisfies the symmetric local lemma. Throws PreconditionViolated unless 0 <= p < 1, dep >= 0.
    auto lll_margin(double p, double dep) -> double;

    struct ResampleTrace
    {
        std::uint64_t rounds = 0;               // loop iterations, one violated event each
        std::uint64_t resampled_events = 0;
        std::uint64_t resampled_vertices = 0;   // base vertices redrawn, two per event unless both ends share one
        bool final_proper = false;
    };

    struct FinishResult
    {
        bool success = false;
        PartialColouring colouring;
        ResampleTrace trace;
    };

    /// Throws PreconditionViolated unless every |L(v)| >= ell >= 1 and every colour degree <= floor(ell / 8).
    auto check_finisher_preconditions(const CorrespondenceCover & c, int ell) -> void;

    /**
     * Completes to a total proper colouring by Moser-Tardos resampling: the
     * lowest violated H-edge has both base vertices redrawn. Gives up with
     * success = false after round_cap rounds.
     */
    auto final_blow(const CorrespondenceCover & c, int ell, Seed seed, std::uint64_t round_cap = 1'000'000) -> FinishResult;
}

#endif
