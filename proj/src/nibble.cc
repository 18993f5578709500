#include <nibbler/nibble.hh>

#include <algorithm>
#include <cmath>
#include <sstream>

using std::string;
using std::to_string;
using std::vector;

namespace nibbler
{
    namespace
    {
        auto fmt(double x) -> string
        {
            std::ostringstream s;
            s.precision(6);
            s << x;
            return s.str();
        }

        constexpr std::uint64_t activation_stream = 1, equalizing_stream = 2;

        auto check_step_preconditions(const CorrespondenceCover & c, const NibbleParams & p) -> void
        {
            if (! (p.eta < p.ell))
                throw PreconditionViolated{ "eta = " + fmt(p.eta) + " must be below ell = " + fmt(p.ell) };
            auto delta = c.cover.max_degree();
            if (delta > 2.0 * p.d)
                throw PreconditionViolated{ "max colour degree " + to_string(delta) + " exceeds 2d = " + fmt(2.0 * p.d)
                    + ", the equalizing flip would need probability above 1" };
        }
    }

    auto derived_params(double eta, double ell, double d, double beta) -> NibbleParams
    {
        if (! (eta > 0.0))
            throw PreconditionViolated{ "eta must be positive, got " + fmt(eta) };
        if (! (eta < ell))
            throw PreconditionViolated{ "eta = " + fmt(eta) + " must be below ell = " + fmt(ell) };
        if (! (d > 0.0))
            throw PreconditionViolated{ "d must be positive, got " + fmt(d) };
        if (! (beta >= 0.0))
            throw PreconditionViolated{ "beta must be non-negative, got " + fmt(beta) };

        NibbleParams p{ eta, ell, d, beta };
        auto log_step = std::log1p(-eta / ell);
        p.keep = std::exp(2.0 * d * log_step);
        p.uncolour = std::exp(p.keep * ell / 2.0 * log_step);
        p.ell_next = p.keep * ell;
        p.d_next = p.keep * p.uncolour * d;
        p.beta_next = (1.0 + 36.0 * eta) * beta;
        return p;
    }

    auto equalizing_probability(const NibbleParams & p, int colour_degree) -> double
    {
        return std::exp((2.0 * p.d - colour_degree) * std::log1p(-p.eta / p.ell));
    }

    auto HypothesisReport::all_pass() const -> bool
    {
        return std::all_of(items.begin(), items.end(), [] (const HypothesisItem & i) { return i.pass; });
    }

    auto HypothesisReport::find(const string & id) const -> const HypothesisItem *
    {
        for (auto & i : items)
            if (i.id == id)
                return &i;
        return nullptr;
    }

    auto check_hypotheses(const CorrespondenceCover & c, const NibbleParams & p, double k, int s, int t,
            const HypothesisThresholds & thresholds) -> HypothesisReport
    {
        HypothesisReport report;
        auto d = p.d, ell = p.ell, eta = p.eta, beta = p.beta;
        auto log_d = std::log(d);

        report.items.push_back({ "1", "d >= d_min (stand-in for d sufficiently large)", d >= thresholds.d_min,
                thresholds.d_min > 0.0, "d = " + fmt(d) + ", d_min = " + fmt(thresholds.d_min), std::nullopt });

        auto k_cap = std::pow(d, (s + t) / 5.0);
        report.items.push_back({ "2", "1/2 <= k <= d^{(s+t)/5}", k >= 0.5 && k <= k_cap, true,
                "k = " + fmt(k) + ", cap = " + fmt(k_cap), std::nullopt });

        report.items.push_back({ "3", "4 eta d < ell < 100 d", 4.0 * eta * d < ell && ell < 100.0 * d, true,
                "4 eta d = " + fmt(4.0 * eta * d) + ", ell = " + fmt(ell) + ", 100 d = " + fmt(100.0 * d), std::nullopt });

        bool st_ok = s <= std::pow(d, 2.0 / 25.0) && 1 <= t && t <= s;
        string st_measured = "s = " + to_string(s) + ", d^{2/25} = " + fmt(std::pow(d, 2.0 / 25.0)) + ", t = " + to_string(t);
        if (thresholds.alpha_tilde) {
            auto t_cap = *thresholds.alpha_tilde * log_d / std::log(log_d);
            st_ok = st_ok && t <= t_cap;
            st_measured += ", t cap = " + fmt(t_cap);
        }
        report.items.push_back({ "4", "s <= d^{2/25}, 1 <= t <= s (t <= alpha log d / log log d when alpha given)", st_ok, true,
                st_measured, std::nullopt });

        auto eta_low = 1.0 / std::pow(log_d, 5.0);
        auto eta_high = 1.0 / std::log(d * std::pow(k, -1.0 / (s + t)));
        report.items.push_back({ "5", "1/log^5 d < eta < 1/log(d k^{-1/(s+t)})", eta_low < eta && eta < eta_high, true,
                "eta = " + fmt(eta) + ", window = (" + fmt(eta_low) + ", " + fmt(eta_high) + ")", std::nullopt });

        auto beta_low = std::pow(d, -1.0 / (200.0 * t));
        report.items.push_back({ "beta", "d^{-1/(200t)} <= beta <= 1/10", beta_low <= beta && beta <= 0.1, true,
                "beta = " + fmt(beta) + ", lower = " + fmt(beta_low), std::nullopt });

        if (thresholds.check_sparsity) {
            auto sparsity = certify_local_sparsity(c.cover, k, PatternGraph::complete_bipartite(s, t));
            HypothesisItem item{ "6", "H is (k, K_{s,t})-locally-sparse", sparsity.holds(), true,
                "max neighbourhood count = " + to_string(sparsity.max_count), std::nullopt };
            if (sparsity.witness)
                item.offender = sparsity.witness->vertex;
            report.items.push_back(item);
        }
        else
            report.items.push_back({ "6", "H is (k, K_{s,t})-locally-sparse", true, false, "not checked", std::nullopt });

        auto delta = c.cover.max_degree();
        report.items.push_back({ "7", "Delta(H) <= 2d", delta <= 2.0 * d, true,
                "Delta(H) = " + to_string(delta) + ", 2d = " + fmt(2.0 * d), std::nullopt });

        HypothesisItem lists{ "8", "(1 - beta) ell / 2 <= |L(v)| <= (1 + beta) ell", true, true, "", std::nullopt };
        HypothesisItem averages{ "9", "avg colour degree <= (2 - (1 - beta) ell / |L(v)|) d", true, true, "", std::nullopt };
        for (Vertex v = 0 ; v < c.base.size() ; ++v) {
            double size = static_cast<double>(c.list(v).size());
            if (lists.pass && ! ((1.0 - beta) * ell / 2.0 <= size && size <= (1.0 + beta) * ell)) {
                lists.pass = false;
                lists.offender = v;
                lists.measured = "|L(" + to_string(v) + ")| = " + fmt(size) + ", window = [" + fmt((1.0 - beta) * ell / 2.0)
                    + ", " + fmt((1.0 + beta) * ell) + "]";
            }
            if (averages.pass) {
                if (size == 0.0) {
                    averages.pass = false;
                    averages.offender = v;
                    averages.measured = "vertex " + to_string(v) + " has an empty list";
                }
                else {
                    auto avg = avg_colour_degree(c, v);
                    auto bound = (2.0 - (1.0 - beta) * ell / size) * d;
                    if (avg > bound) {
                        averages.pass = false;
                        averages.offender = v;
                        averages.measured = "vertex " + to_string(v) + ": average " + fmt(avg) + " > " + fmt(bound);
                    }
                }
            }
        }
        if (lists.pass)
            lists.measured = "all " + to_string(c.base.size()) + " lists in range";
        if (averages.pass)
            averages.measured = "all " + to_string(c.base.size()) + " vertices in range";
        report.items.push_back(lists);
        report.items.push_back(averages);

        return report;
    }

    auto NibbleOutcome::operator== (const NibbleOutcome & o) const -> bool
    {
        return phi == o.phi && activated == o.activated && kept == o.kept && pruned_lists == o.pruned_lists
            && trace.activated == o.trace.activated && trace.kept == o.trace.kept
            && trace.coloured == o.trace.coloured && trace.uncoloured == o.trace.uncoloured
            && trace.kept_per_vertex == o.trace.kept_per_vertex
            && trace.kept_uncoloured_edges == o.trace.kept_uncoloured_edges;
    }

    auto wasteful_step_serial(const CorrespondenceCover & c, const NibbleParams & p, Seed seed) -> NibbleOutcome
    {
        check_step_preconditions(c, p);

        auto & h = c.cover;
        int colours = h.size(), n = c.base.size();
        auto activation_key = derive_seed(seed, activation_stream);
        auto equalizing_key = derive_seed(seed, equalizing_stream);

        NibbleOutcome out;

        // 1. activation, 2. equalizing flips
        out.activated.assign(colours, 0);
        vector<char> eq(colours, 0);
        for (Colour x = 0 ; x < colours ; ++x) {
            out.activated[x] = counter_uniform(activation_key, x) < p.eta / p.ell;
            eq[x] = counter_uniform(equalizing_key, x) < equalizing_probability(p, h.degree(x));
        }

        // 3. kept colours
        out.kept.assign(colours, 0);
        for (Colour x = 0 ; x < colours ; ++x) {
            bool blocked = false;
            for (auto y : h.neighbours(x))
                blocked = blocked || out.activated[y];
            out.kept[x] = eq[x] && ! blocked;
        }

        // 4. colour v with the smallest activated kept colour of its list
        out.phi = PartialColouring{ n };
        for (Vertex v = 0 ; v < n ; ++v)
            for (auto x : c.list(v))
                if (out.activated[x] && out.kept[x] && (! out.phi.coloured(v) || x < out.phi.colour(v)))
                    out.phi.assign(v, x);

        // 5. colours of uncoloured vertices
        vector<char> in_u(colours, 0);
        for (Colour x = 0 ; x < colours ; ++x)
            in_u[x] = c.owner[x] != -1 && ! out.phi.coloured(c.owner[x]);

        // 6. prune colours with too many kept uncoloured neighbours
        out.pruned_lists.assign(n, {});
        out.trace.kept_per_vertex.assign(n, 0);
        out.trace.kept_uncoloured_edges.assign(n, 0);
        for (Vertex v = 0 ; v < n ; ++v) {
            for (auto x : c.list(v)) {
                if (! out.kept[x])
                    continue;
                ++out.trace.kept_per_vertex[v];
                long heavy = 0;
                for (auto y : h.neighbours(x))
                    if (out.kept[y] && in_u[y])
                        ++heavy;
                out.trace.kept_uncoloured_edges[v] += heavy;
                if (! out.phi.coloured(v) && heavy <= 2.0 * p.d_next)
                    out.pruned_lists[v].push_back(x);
            }
            std::sort(out.pruned_lists[v].begin(), out.pruned_lists[v].end());
        }

        for (Colour x = 0 ; x < colours ; ++x) {
            out.trace.activated += out.activated[x];
            out.trace.kept += out.kept[x];
        }
        for (Vertex v = 0 ; v < n ; ++v)
            (out.phi.coloured(v) ? out.trace.coloured : out.trace.uncoloured)++;

        return out;
    }

    auto wasteful_step_parallel(const CorrespondenceCover & c, const NibbleParams & p, Seed seed) -> NibbleOutcome
    {
        check_step_preconditions(c, p);

        auto & h = c.cover;
        int colours = h.size(), n = c.base.size();
        auto activation_key = derive_seed(seed, activation_stream);
        auto equalizing_key = derive_seed(seed, equalizing_stream);
        auto activation_probability = p.eta / p.ell;
        auto prune_threshold = 2.0 * p.d_next;

        NibbleOutcome out;
        out.activated.assign(colours, 0);
        out.kept.assign(colours, 0);
        vector<char> eq(colours, 0), in_u(colours, 0);
        vector<int> heavy(colours, 0);
        vector<Colour> assignment(n, -1);

#pragma omp parallel
        {
#pragma omp for schedule(static)
            for (Colour x = 0 ; x < colours ; ++x) {
                out.activated[x] = counter_uniform(activation_key, x) < activation_probability;
                eq[x] = counter_uniform(equalizing_key, x) < equalizing_probability(p, h.degree(x));
            }

#pragma omp for schedule(dynamic, 256)
            for (Colour x = 0 ; x < colours ; ++x) {
                if (! eq[x])
                    continue;
                auto nbrs = h.neighbours(x);
                out.kept[x] = std::none_of(nbrs.begin(), nbrs.end(), [&] (Colour y) { return out.activated[y]; });
            }

#pragma omp for schedule(dynamic, 64)
            for (Vertex v = 0 ; v < n ; ++v) {
                Colour best = -1;
                for (auto x : c.lists[v])
                    if (out.activated[x] && out.kept[x] && (best == -1 || x < best))
                        best = x;
                assignment[v] = best;
            }

#pragma omp for schedule(static)
            for (Colour x = 0 ; x < colours ; ++x)
                in_u[x] = c.owner[x] != -1 && assignment[c.owner[x]] == -1;

#pragma omp for schedule(dynamic, 256)
            for (Colour x = 0 ; x < colours ; ++x) {
                if (! out.kept[x])
                    continue;
                int count = 0;
                for (auto y : h.neighbours(x))
                    count += out.kept[y] && in_u[y];
                heavy[x] = count;
            }
        }

        out.phi = PartialColouring{ std::move(assignment) };
        out.pruned_lists.assign(n, {});
        out.trace.kept_per_vertex.assign(n, 0);
        out.trace.kept_uncoloured_edges.assign(n, 0);

#pragma omp parallel for schedule(dynamic, 64)
        for (Vertex v = 0 ; v < n ; ++v) {
            bool uncoloured = ! out.phi.coloured(v);
            for (auto x : c.lists[v]) {
                if (! out.kept[x])
                    continue;
                ++out.trace.kept_per_vertex[v];
                out.trace.kept_uncoloured_edges[v] += heavy[x];
                if (uncoloured && heavy[x] <= prune_threshold)
                    out.pruned_lists[v].push_back(x);
            }
            std::sort(out.pruned_lists[v].begin(), out.pruned_lists[v].end());
        }

        for (Colour x = 0 ; x < colours ; ++x) {
            out.trace.activated += out.activated[x];
            out.trace.kept += out.kept[x];
        }
        for (Vertex v = 0 ; v < n ; ++v)
            (out.phi.coloured(v) ? out.trace.coloured : out.trace.uncoloured)++;

        return out;
    }

    auto wasteful_step(const CorrespondenceCover & c, const NibbleParams & p, Seed seed) -> NibbleOutcome
    {
        return wasteful_step_parallel(c, p, seed);
    }

    auto next_cover(const CorrespondenceCover & c, const NibbleOutcome & outcome) -> SubCover
    {
        vector<Vertex> keep;
        vector<vector<Colour>> lists;
        for (Vertex v = 0 ; v < c.base.size() ; ++v)
            if (! outcome.phi.coloured(v)) {
                keep.push_back(v);
                lists.push_back(outcome.pruned_lists[v]);
            }
        return restrict_cover(c, keep, lists);
    }

    auto iteration_accept(const CorrespondenceCover & next, double ell_next, double d_next, double beta_next) -> AcceptReport
    {
        AcceptReport report;
        auto fail = [&] (const string & which, const string & detail) {
            if (std::find(report.failed.begin(), report.failed.end(), which) == report.failed.end())
                report.failed.push_back(which);
            report.details.push_back("(" + which + ") " + detail);
            report.accepted = false;
        };

        for (Vertex v = 0 ; v < next.base.size() ; ++v) {
            double size = static_cast<double>(next.list(v).size());
            if (size > (1.0 + beta_next) * ell_next)
                fail("i", "|L'(" + to_string(v) + ")| = " + fmt(size) + " > " + fmt((1.0 + beta_next) * ell_next));
            if (size == 0.0 || size < (1.0 - beta_next) * ell_next / 2.0)
                fail("ii", "|L'(" + to_string(v) + ")| = " + fmt(size) + " < " + fmt(std::max(0.0, (1.0 - beta_next) * ell_next / 2.0))
                        + (size == 0.0 ? " (empty list)" : ""));
            if (size > 0.0) {
                auto avg = avg_colour_degree(next, v);
                auto bound = (2.0 - (1.0 - beta_next) * ell_next / size) * d_next;
                if (avg > bound)
                    fail("iv", "average colour degree of " + to_string(v) + " is " + fmt(avg) + " > " + fmt(bound));
            }
        }

        auto delta = next.cover.max_degree();
        if (delta > 2.0 * d_next)
            fail("iii", "Delta(H') = " + to_string(delta) + " > 2d' = " + fmt(2.0 * d_next));

        std::sort(report.failed.begin(), report.failed.end(), [] (const string & a, const string & b) {
                auto rank = [] (const string & s) { return s == "i" ? 1 : s == "ii" ? 2 : s == "iii" ? 3 : 4; };
                return rank(a) < rank(b); });
        return report;
    }

    auto iteration_accept(const CorrespondenceCover & next, const NibbleParams & p) -> AcceptReport
    {
        return iteration_accept(next, p.ell_next, p.d_next, p.beta_next);
    }

    auto outcome_violations(const CorrespondenceCover & c, const NibbleParams & p, const NibbleOutcome & outcome) -> vector<string>
    {
        vector<string> result;
        auto check = is_proper(c, outcome.phi);
        if (! check.proper)
            result.push_back("phi is not proper: colours " + to_string(check.conflict->first) + " and "
                    + to_string(check.conflict->second) + " are adjacent");

        for (Vertex v = 0 ; v < c.base.size() ; ++v) {
            if (outcome.phi.coloured(v)) {
                auto x = outcome.phi.colour(v);
                if (! outcome.activated[x] || ! outcome.kept[x])
                    result.push_back("vertex " + to_string(v) + " got a colour outside A ∩ K");
                if (! outcome.pruned_lists[v].empty())
                    result.push_back("coloured vertex " + to_string(v) + " has a pruned list");
                continue;
            }

            auto available = available_list(c, outcome.phi, v);
            std::sort(available.begin(), available.end());
            vector<Colour> kept_here;
            for (auto x : c.list(v))
                if (outcome.kept[x])
                    kept_here.push_back(x);
            std::sort(kept_here.begin(), kept_here.end());

            auto & pruned = outcome.pruned_lists[v];
            if (! std::includes(kept_here.begin(), kept_here.end(), pruned.begin(), pruned.end()))
                result.push_back("L'(" + to_string(v) + ") is not inside K(" + to_string(v) + ")");
            if (! std::includes(available.begin(), available.end(), kept_here.begin(), kept_here.end()))
                result.push_back("K(" + to_string(v) + ") is not inside L_phi(" + to_string(v) + ")");

            for (auto x : pruned) {
                int heavy = 0;
                for (auto y : c.cover.neighbours(x)) {
                    auto w = c.owner[y];
                    if (outcome.kept[y] && w != -1 && ! outcome.phi.coloured(w))
                        ++heavy;
                }
                if (heavy > 2.0 * p.d_next)
                    result.push_back("colour " + to_string(x) + " in L'(" + to_string(v) + ") has " + to_string(heavy)
                            + " kept uncoloured neighbours, above 2d'");
            }
        }
        return result;
    }
}
