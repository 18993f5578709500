#ifndef NIBBLER_GUARD_SCHEDULE_HH
#define NIBBLER_GUARD_SCHEDULE_HH 1

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nibbler
{
    /// The iterated parameter sequences stop short of d_i <= ell_i / 100 within the cap.
    class ScheduleDiverged : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    struct ScheduleInputs
    {
        double epsilon = 0.5;
        double d = 0.0;
        double k = 1.0;
        int s = 1;
        int t = 1;
    };

    /**
     * Parameter schedule for the iterated nibble. Sequences ell, d, beta run
     * over indices 0..i_star; keep and uncolour over 0..i_star-1 (they take
     * index i to i+1).
     */
    template <typename Real_>
    struct BasicSchedule
    {
        ScheduleInputs inputs;
        Real_ C = 0;
        Real_ mu = 0;
        Real_ eta = 0;
        Real_ log_arg = 0;          // log(d k^{-1/(s+t)})
        std::uint64_t cap = 0;      // ceil((16/mu) log(..) log log(..))

        std::vector<Real_> ell, d, beta, keep, uncolour;
        std::size_t i_star = 0;
    };

    using Schedule = BasicSchedule<double>;
    using ExtendedSchedule = BasicSchedule<long double>;

    /// C per the sparsity branch: 4 + eps when k <= d^{eps (s+t)/200}, else 8.
    auto select_C(double epsilon, double d, double k, int s, int t) -> double;

    /// Throws PreconditionViolated on bad inputs and ScheduleDiverged when i* is not found by the cap.
    auto build_schedule(const ScheduleInputs & in) -> Schedule;
    auto build_schedule_extended(const ScheduleInputs & in) -> ExtendedSchedule;

    /// Largest relative difference between the double and extended sequences over common indices.
    auto precision_drift(const Schedule & s, const ExtendedSchedule & x) -> double;

    /// True when NIBBLER_PRECISION=extended is set.
    auto extended_precision_requested() -> bool;

    struct ScheduleSanity
    {
        bool i1_ratio_monotone = true;
        std::optional<std::size_t> i1_first_failure;

        double i2_lower_bound = 0.0;                // d (d k^{-1/(s+t)})^{-4/(C - 7 eps/8)}
        double i2_exponent = 0.0;                   // 4 / (C - 7 eps / 8)
        bool i2_exponent_in_unit_interval = true;
        bool i2_lower_bound_holds = true;
        std::optional<std::size_t> i2_first_failure;
        std::size_t i2_failures = 0;

        bool i3_within_cap = true;
        bool endpoint_reached = true;               // d_{i*} <= ell_{i*} / 100
        bool i_star_minimal = true;                 // d_{i*-1} > ell_{i*-1} / 100

        bool recurrences_consistent = true;         // ell_{i+1} = keep_i ell_i, d_{i+1} = keep_i u_i d_i
        double max_recurrence_error = 0.0;

        /// Per-stage hypotheses of the nibble lemma at (d_i, ell_i, beta_i), first failing index each; reported only.
        std::optional<std::size_t> k_cap_first_failure, ell_window_first_failure, s_bound_first_failure,
            eta_window_first_failure, beta_small_first_failure;

        auto all_pass() const -> bool
        {
            return i1_ratio_monotone && i2_exponent_in_unit_interval && i2_lower_bound_holds && i3_within_cap
                && endpoint_reached && i_star_minimal && recurrences_consistent;
        }
    };

    auto check_schedule_sanity(const Schedule & s) -> ScheduleSanity;
}

#endif
