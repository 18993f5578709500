#include <nibbler/schedule.hh>
#include <nibbler/errors.hh>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

using std::string;
using std::to_string;

namespace nibbler
{
    auto select_C(double epsilon, double d, double k, int s, int t) -> double
    {
        return k <= std::pow(d, epsilon * (s + t) / 200.0) ? 4.0 + epsilon : 8.0;
    }

    namespace
    {
        template <typename Real_>
        auto build(const ScheduleInputs & in) -> BasicSchedule<Real_>
        {
            if (! (in.epsilon > 0.0))
                throw PreconditionViolated{ "epsilon must be positive" };
            if (! (in.d >= 3.0))
                throw PreconditionViolated{ "d must be at least 3" };
            if (! (in.k >= 0.5))
                throw PreconditionViolated{ "k must be at least 1/2" };
            if (in.t < 1 || in.s < in.t)
                throw PreconditionViolated{ "need s >= t >= 1" };

            BasicSchedule<Real_> r;
            r.inputs = in;

            Real_ d = in.d, k = in.k, eps = in.epsilon;
            Real_ st = in.s + in.t;
            Real_ arg = d * std::pow(k, -1 / st);
            if (! (arg > 1))
                throw PreconditionViolated{ "d k^{-1/(s+t)} must exceed 1 for its logarithm to be positive" };
            r.log_arg = std::log(arg);

            r.C = select_C(in.epsilon, in.d, in.k, in.s, in.t);
            r.mu = (r.C - eps) / 2 * std::log1p(eps / (8 * r.C));
            r.eta = r.mu / r.log_arg;

            auto log_log = std::log(r.log_arg);
            auto cap = std::ceil(16 / r.mu * r.log_arg * std::max(log_log, Real_{ 0 }));
            r.cap = cap > 0 ? static_cast<std::uint64_t>(cap) : 0;

            Real_ beta_exponent = Real_{ -1 } / (200 * in.t);
            r.ell.push_back(r.C * d / r.log_arg);
            r.d.push_back(d);
            r.beta.push_back(std::pow(d, beta_exponent));

            for (std::size_t i = 0 ; ; ++i) {
                if (r.d[i] <= r.ell[i] / 100) {
                    r.i_star = i;
                    return r;
                }
                if (i >= r.cap)
                    throw ScheduleDiverged{ "no index with d_i <= ell_i / 100 up to the cap " + to_string(r.cap) };
                if (! (r.eta < r.ell[i]))
                    throw ScheduleDiverged{ "eta reached ell_" + to_string(i) + " before d_i <= ell_i / 100" };

                auto log_step = std::log1p(-r.eta / r.ell[i]);
                Real_ keep = std::exp(2 * r.d[i] * log_step);
                Real_ uncolour = std::exp(keep * r.ell[i] / 2 * log_step);
                r.keep.push_back(keep);
                r.uncolour.push_back(uncolour);
                r.ell.push_back(keep * r.ell[i]);
                r.d.push_back(keep * uncolour * r.d[i]);
                r.beta.push_back(std::max((1 + 36 * r.eta) * r.beta[i], std::pow(r.d[i + 1], beta_exponent)));
            }
        }
    }

    auto build_schedule(const ScheduleInputs & in) -> Schedule
    {
        return build<double>(in);
    }

    auto build_schedule_extended(const ScheduleInputs & in) -> ExtendedSchedule
    {
        return build<long double>(in);
    }

    auto precision_drift(const Schedule & s, const ExtendedSchedule & x) -> double
    {
        long double worst = 0;
        auto compare = [&] (const auto & a, const auto & b) {
            auto n = std::min(a.size(), b.size());
            for (std::size_t i = 0 ; i < n ; ++i) {
                long double scale = std::max(std::fabs(b[i]), 1e-300L);
                worst = std::max(worst, std::fabs(static_cast<long double>(a[i]) - b[i]) / scale);
            }
        };
        compare(s.ell, x.ell);
        compare(s.d, x.d);
        compare(s.beta, x.beta);
        compare(s.keep, x.keep);
        compare(s.uncolour, x.uncolour);
        if (s.i_star != x.i_star)
            return std::numeric_limits<double>::infinity();
        return static_cast<double>(worst);
    }

    auto extended_precision_requested() -> bool
    {
        auto value = std::getenv("NIBBLER_PRECISION");
        return value && string{ value } == "extended";
    }

    auto check_schedule_sanity(const Schedule & s) -> ScheduleSanity
    {
        ScheduleSanity r;
        auto & in = s.inputs;
        auto eps = in.epsilon;
        double st = in.s + in.t;
        double arg = in.d * std::pow(in.k, -1.0 / st);

        for (std::size_t i = 0 ; i + 1 <= s.i_star ; ++i)
            if (s.d[i + 1] / s.ell[i + 1] > s.d[i] / s.ell[i]) {
                r.i1_ratio_monotone = false;
                r.i1_first_failure = i + 1;
                break;
            }

        r.i2_exponent = 4.0 / (s.C - 7.0 * eps / 8.0);
        r.i2_exponent_in_unit_interval = 0.0 < r.i2_exponent && r.i2_exponent < 1.0;
        r.i2_lower_bound = in.d * std::pow(arg, -r.i2_exponent);
        for (std::size_t i = 0 ; i <= s.i_star ; ++i)
            if (s.ell[i] < r.i2_lower_bound) {
                if (! r.i2_first_failure)
                    r.i2_first_failure = i;
                ++r.i2_failures;
            }
        r.i2_lower_bound_holds = r.i2_failures == 0;

        r.i3_within_cap = s.i_star <= s.cap;
        r.endpoint_reached = s.d[s.i_star] <= s.ell[s.i_star] / 100.0;
        r.i_star_minimal = s.i_star == 0 || s.d[s.i_star - 1] > s.ell[s.i_star - 1] / 100.0;

        for (std::size_t i = 0 ; i < s.i_star ; ++i) {
            auto e1 = std::fabs(s.ell[i + 1] - s.keep[i] * s.ell[i]) / s.ell[i + 1];
            auto e2 = std::fabs(s.d[i + 1] - s.keep[i] * s.uncolour[i] * s.d[i]) / s.d[i + 1];
            r.max_recurrence_error = std::max({ r.max_recurrence_error, e1, e2 });
        }
        r.recurrences_consistent = r.max_recurrence_error <= 4 * std::numeric_limits<double>::epsilon();

        auto note = [] (std::optional<std::size_t> & slot, std::size_t i, bool ok) {
            if (! ok && ! slot)
                slot = i;
        };
        for (std::size_t i = 0 ; i < s.i_star ; ++i) {
            auto di = s.d[i], li = s.ell[i];
            note(r.k_cap_first_failure, i, in.k <= std::pow(di, st / 5.0));
            note(r.ell_window_first_failure, i, 4.0 * s.eta * di < li && li < 100.0 * di);
            note(r.s_bound_first_failure, i, in.s <= std::pow(di, 2.0 / 25.0));
            auto log_di = std::log(di);
            auto upper = 1.0 / std::log(di * std::pow(in.k, -1.0 / st));
            note(r.eta_window_first_failure, i, 1.0 / std::pow(log_di, 5.0) < s.eta && s.eta < upper);
            note(r.beta_small_first_failure, i, s.beta[i] <= 0.1);
        }
        return r;
    }
}
