#include <nibbler/pipeline.hh>
#include <nibbler/errors.hh>
#include <nibbler/nibble.hh>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

using std::string;
using std::to_string;
using std::vector;

namespace nibbler
{
    auto status_name(PipelineStatus s) -> string
    {
        switch (s) {
            case PipelineStatus::success: return "success";
            case PipelineStatus::budget_exhausted: return "budget_exhausted";
            case PipelineStatus::finisher_precondition: return "finisher_precondition";
            case PipelineStatus::finisher_round_cap: return "finisher_round_cap";
        }
        throw std::logic_error{ "unknown pipeline status" };
    }

    namespace
    {
        constexpr std::uint64_t finisher_stream = ~std::uint64_t{ 0 };

        /// Maps a residual cover's indices back through its parent's maps.
        auto compose(const SubCover & parent, SubCover child) -> SubCover
        {
            for (auto & v : child.base_origin)
                v = parent.base_origin[v];
            for (auto & x : child.colour_origin)
                x = parent.colour_origin[x];
            child.cover = drop_unmatched_edges(child.cover);
            return child;
        }

        auto identity_sub_cover(const CorrespondenceCover & c) -> SubCover
        {
            SubCover r{ c, vector<Vertex>(c.base.size()), vector<Colour>(c.cover.size()) };
            std::iota(r.base_origin.begin(), r.base_origin.end(), 0);
            std::iota(r.colour_origin.begin(), r.colour_origin.end(), 0);
            return r;
        }

        auto finish(const SubCover & residual, const PipelineOptions & options, PipelineResult & result) -> void
        {
            auto & c = residual.cover;
            result.finisher_ell = c.base.size() == 0 ? 1 : static_cast<int>(c.min_list_size());
            try {
                check_finisher_preconditions(c, result.finisher_ell);
            }
            catch (const PreconditionViolated & e) {
                result.status = PipelineStatus::finisher_precondition;
                result.message = "residual min list size " + to_string(c.base.size() == 0 ? 0 : c.min_list_size())
                    + " vs 8 * max colour degree = " + to_string(8 * c.cover.max_degree()) + ": " + e.what();
                return;
            }

            auto done = final_blow(c, result.finisher_ell, derive_seed(options.seed, finisher_stream), options.round_cap);
            result.finisher = done.trace;
            if (! done.success) {
                result.status = PipelineStatus::finisher_round_cap;
                result.message = "finisher stopped at the round cap " + to_string(options.round_cap);
                return;
            }
            for (Vertex v = 0 ; v < c.base.size() ; ++v)
                result.colouring.assign(residual.base_origin[v], residual.colour_origin[done.colouring.colour(v)]);
        }

        auto dominated(const CorrespondenceCover & c) -> bool
        {
            if (c.base.size() == 0)
                return true;
            auto min_list = c.min_list_size();
            return min_list >= 1 && min_list >= 8 * std::size_t(c.cover.max_degree());
        }
    }

    auto run_pipeline(const CorrespondenceCover & c, const PipelineOptions & options) -> PipelineResult
    {
        if (auto violations = validate_cover(c) ; ! violations.empty())
            throw PreconditionViolated{ "invalid cover: " + clause_name(violations.front().clause) + ": " + violations.front().message };
        if (options.retry_budget < 1)
            throw PreconditionViolated{ "retry budget must be at least 1" };

        PipelineResult result;
        result.colouring = PartialColouring{ c.base.size() };
        result.scheduled_k = std::max(options.k, 0.5);
        result.d = options.d ? *options.d : std::max(3.0, double(c.cover.max_degree()));
        if (c.cover.max_degree() > result.d)
            throw PreconditionViolated{ "max colour degree " + to_string(c.cover.max_degree()) + " exceeds d" };

        auto current = identity_sub_cover(c);
        current.cover = drop_unmatched_edges(current.cover);

        if (dominated(current.cover)) {
            result.short_circuit = true;
            finish(current, options, result);
        }
        else {
            result.schedule = build_schedule({ options.epsilon, result.d, result.scheduled_k, options.s, options.t });
            auto & schedule = *result.schedule;
            result.ell0 = static_cast<int>(std::ceil(schedule.ell[0]));
            auto min_list = c.min_list_size();
            if (min_list < std::size_t(result.ell0))
                throw PreconditionViolated{ "min list size " + to_string(min_list) + " is below ceil(ell_0) = " + to_string(result.ell0) };

            // keep the ceil(ell_0) lowest-index colours of every list
            vector<Vertex> everyone(c.base.size());
            std::iota(everyone.begin(), everyone.end(), 0);
            vector<vector<Colour>> trimmed(c.base.size());
            for (Vertex v = 0 ; v < c.base.size() ; ++v) {
                trimmed[v].assign(c.list(v).begin(), c.list(v).end());
                std::sort(trimmed[v].begin(), trimmed[v].end());
                trimmed[v].resize(result.ell0);
            }
            current = compose(identity_sub_cover(c), restrict_cover(c, everyone, trimmed));

            double d_stage = schedule.d[0];
            for (std::size_t i = 0 ; i < schedule.i_star ; ++i) {
                auto & cur = current.cover;
                if (cur.base.size() == 0)
                    break;
                if (dominated(cur)) {
                    result.early_handover = true;
                    break;
                }

                StageRecord record;
                record.stage = i;
                record.ell = schedule.ell[i];
                record.d = d_stage;
                record.beta = schedule.beta[i];
                record.vertices = cur.base.size();
                record.min_list = cur.min_list_size();
                record.max_colour_degree = cur.cover.max_degree();

                auto params = derived_params(schedule.eta, schedule.ell[i], d_stage, schedule.beta[i]);

                NibbleOutcome outcome;
                SubCover next;
                for (int attempt = 0 ; attempt < options.retry_budget ; ++attempt) {
                    record.attempts = attempt + 1;
                    outcome = wasteful_step(cur, params, derive_seed(options.seed, i, attempt));
                    next = next_cover(cur, outcome);
                    auto accept = iteration_accept(next.cover, schedule.ell[i + 1], schedule.d[i + 1], schedule.beta[i + 1]);
                    record.accepted = accept.accepted;
                    record.failed = accept.failed;
                    record.details = accept.details;
                    if (accept.accepted)
                        break;
                }

                if (! record.accepted && ! options.best_effort) {
                    result.stages.push_back(std::move(record));
                    result.status = PipelineStatus::budget_exhausted;
                    result.failed_stage = i;
                    string failed;
                    for (auto & f : result.stages.back().failed)
                        failed += (failed.empty() ? "" : ",") + f;
                    result.message = "stage " + to_string(i) + " not accepted after " + to_string(options.retry_budget)
                        + " attempts, last failing conditions (" + failed + ")";
                    return result;
                }

                for (Vertex v = 0 ; v < cur.base.size() ; ++v)
                    if (outcome.phi.coloured(v)) {
                        result.colouring.assign(current.base_origin[v], current.colour_origin[outcome.phi.colour(v)]);
                        ++record.coloured;
                    }
                result.stages.push_back(std::move(record));

                current = compose(current, std::move(next));
                d_stage = schedule.d[i + 1];
                if (options.best_effort)
                    d_stage = std::max(d_stage, current.cover.cover.max_degree() / 2.0);
            }
            finish(current, options, result);
        }

        if (result.status != PipelineStatus::success)
            return result;

        auto check = is_proper(c, result.colouring);
        if (! check.proper || ! result.colouring.total())
            throw std::logic_error{ "pipeline produced a colouring that is not proper and total" };
        return result;
    }
}
