#include <nibbler/finisher.hh>
#include <nibbler/errors.hh>

#include <set>
#include <string>

using std::set;
using std::string;
using std::to_string;
using std::vector;

namespace nibbler
{
    auto lll_margin(double p, double dep) -> double
    {
        if (! (p >= 0.0 && p < 1.0))
            throw PreconditionViolated{ "probability must lie in [0, 1)" };
        if (! (dep >= 0.0))
            throw PreconditionViolated{ "dependency count must be non-negative" };
        return 4.0 * p * dep;
    }

    auto check_finisher_preconditions(const CorrespondenceCover & c, int ell) -> void
    {
        if (ell < 1)
            throw PreconditionViolated{ "ell must be at least 1" };
        auto min_list = c.base.size() == 0 ? std::size_t(ell) : c.min_list_size();
        auto max_degree = c.cover.max_degree();
        if (min_list < std::size_t(ell))
            throw PreconditionViolated{ "min list size " + to_string(min_list) + " is below ell = " + to_string(ell)
                + " (max colour degree " + to_string(max_degree) + ")" };
        if (max_degree > ell / 8)
            throw PreconditionViolated{ "max colour degree " + to_string(max_degree) + " exceeds floor(ell/8) = "
                + to_string(ell / 8) + " (min list " + to_string(min_list) + ", 8 * max degree "
                + to_string(8 * max_degree) + ")" };
    }

    auto final_blow(const CorrespondenceCover & c, int ell, Seed seed, std::uint64_t round_cap) -> FinishResult
    {
        check_finisher_preconditions(c, ell);

        auto & h = c.cover;
        Rng rng{ seed };
        FinishResult result;
        result.colouring = PartialColouring{ c.base.size() };
        auto & phi = result.colouring;

        vector<char> chosen(h.size(), 0);
        auto draw = [&] (Vertex v) {
            auto l = c.list(v);
            auto x = l[rng.uniform_index(l.size())];
            phi.assign(v, x);
            chosen[x] = 1;
        };

        for (Vertex v = 0 ; v < c.base.size() ; ++v)
            draw(v);

        // violated H-edges, (smaller, larger), so begin() is the lowest-indexed one
        set<Edge> violated;
        auto touch = [&] (Colour x, bool now_chosen) {
            for (auto y : h.neighbours(x))
                if (chosen[y]) {
                    Edge e{ std::min(x, y), std::max(x, y) };
                    if (now_chosen)
                        violated.insert(e);
                    else
                        violated.erase(e);
                }
        };
        for (auto [x, y] : h.edges())
            if (chosen[x] && chosen[y])
                violated.emplace(x, y);

        auto release = [&] (Vertex v) {
            auto x = phi.colour(v);
            chosen[x] = 0;
            touch(x, false);
        };
        auto redraw = [&] (Vertex v) {
            draw(v);
            touch(phi.colour(v), true);
        };

        while (! violated.empty()) {
            if (result.trace.rounds >= round_cap)
                return result;
            auto [x, y] = *violated.begin();
            Vertex u = c.owner[x], w = c.owner[y];
            ++result.trace.rounds;
            ++result.trace.resampled_events;

            release(u);
            if (w != u)
                release(w);
            redraw(u);
            ++result.trace.resampled_vertices;
            if (w != u) {
                redraw(w);
                ++result.trace.resampled_vertices;
            }
        }

        result.trace.final_proper = is_proper(c, phi).proper && phi.total();
        result.success = result.trace.final_proper;
        return result;
    }
}
