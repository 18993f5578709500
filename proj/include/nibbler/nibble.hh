#ifndef NIBBLER_GUARD_NIBBLE_HH
#define NIBBLER_GUARD_NIBBLE_HH 1

#include <nibbler/cover.hh>
#include <nibbler/patterns.hh>
#include <nibbler/random.hh>

#include <optional>
#include <string>
#include <vector>

namespace nibbler
{
    /// Parameters of one nibble round and the quantities derived from them.
    struct NibbleParams
    {
        double eta = 0.0;
        double ell = 0.0;
        double d = 0.0;
        double beta = 0.0;

        double keep = 1.0;          // (1 - eta/ell)^{2d}
        double uncolour = 1.0;      // (1 - eta/ell)^{keep ell / 2}
        double ell_next = 0.0;      // keep ell
        double d_next = 0.0;        // keep uncolour d
        double beta_next = 0.0;     // (1 + 36 eta) beta
    };

    /// Throws PreconditionViolated unless 0 < eta < ell, d > 0, beta >= 0.
    auto derived_params(double eta, double ell, double d, double beta) -> NibbleParams;

    /// Probability that colour c survives the equalizing flip: keep / (1 - eta/ell)^{deg c}.
    auto equalizing_probability(const NibbleParams & p, int colour_degree) -> double;

    struct HypothesisItem
    {
        std::string id;
        std::string description;
        bool pass = true;
        bool enforced = true;       // false for items whose threshold is existential and only reported
        std::string measured;
        std::optional<Vertex> offender;
    };

    struct HypothesisReport
    {
        std::vector<HypothesisItem> items;

        auto all_pass() const -> bool;
        auto find(const std::string & id) const -> const HypothesisItem *;
    };

    struct HypothesisThresholds
    {
        double d_min = 0.0;                     // stands in for the unknown "d sufficiently large"
        std::optional<double> alpha_tilde;      // t <= alpha log d / log log d, unchecked when absent
        bool check_sparsity = true;
    };

    /// Evaluates the nibble lemma's hypotheses on an instance. Reports, never throws on failure.
    auto check_hypotheses(const CorrespondenceCover & c, const NibbleParams & p, double k, int s, int t,
            const HypothesisThresholds & thresholds = {}) -> HypothesisReport;

    struct NibbleTrace
    {
        std::size_t activated = 0;
        std::size_t kept = 0;
        std::size_t coloured = 0;
        std::size_t uncoloured = 0;
        std::vector<int> kept_per_vertex;                   // |K(v)|
        std::vector<long> kept_uncoloured_edges;            // |E_K(v) ∩ E_U(v)|
    };

    struct NibbleOutcome
    {
        PartialColouring phi;
        std::vector<char> activated;                        // per colour
        std::vector<char> kept;                             // per colour
        std::vector<std::vector<Colour>> pruned_lists;      // L'(v) for uncoloured v, empty for coloured v
        NibbleTrace trace;

        auto operator== (const NibbleOutcome &) const -> bool;
    };

    /// One round of the Wasteful Colouring Procedure. Direct transcription, kept as the reference.
    auto wasteful_step_serial(const CorrespondenceCover & c, const NibbleParams & p, Seed seed) -> NibbleOutcome;

    /// Same draws and same outcome as the serial version, phases run under OpenMP.
    auto wasteful_step_parallel(const CorrespondenceCover & c, const NibbleParams & p, Seed seed) -> NibbleOutcome;

    auto wasteful_step(const CorrespondenceCover & c, const NibbleParams & p, Seed seed) -> NibbleOutcome;

    /// Cover of the uncoloured vertices with lists L'(v); H' induced on their union.
    auto next_cover(const CorrespondenceCover & c, const NibbleOutcome & outcome) -> SubCover;

    struct AcceptReport
    {
        bool accepted = true;
        std::vector<std::string> failed;                    // "i" .. "iv", each at most once
        std::vector<std::string> details;
    };

    /// Checks the round's conclusions (i)-(iv) on the residual cover against target parameters.
    auto iteration_accept(const CorrespondenceCover & next, double ell_next, double d_next, double beta_next) -> AcceptReport;
    auto iteration_accept(const CorrespondenceCover & next, const NibbleParams & p) -> AcceptReport;

    /// Structural invariants of an outcome: phi proper and in K, L'(v) ⊆ K(v) ⊆ L_phi(v), pruning threshold.
    auto outcome_violations(const CorrespondenceCover & c, const NibbleParams & p, const NibbleOutcome & outcome)
        -> std::vector<std::string>;
}

#endif
