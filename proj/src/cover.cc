#include <nibbler/cover.hh>

#include <algorithm>
#include <set>

using std::pair;
using std::span;
using std::string;
using std::to_string;
using std::vector;

namespace nibbler
{
    auto CorrespondenceCover::make(Graph base, Graph cover, vector<vector<Colour>> lists) -> CorrespondenceCover
    {
        CorrespondenceCover c;
        c.owner.assign(cover.size(), -1);
        for (std::size_t v = 0 ; v < lists.size() ; ++v)
            for (auto x : lists[v])
                if (x >= 0 && x < cover.size() && c.owner[x] == -1)
                    c.owner[x] = static_cast<Vertex>(v);
        c.base = std::move(base);
        c.cover = std::move(cover);
        c.lists = std::move(lists);
        return c;
    }

    auto CorrespondenceCover::min_list_size() const -> std::size_t
    {
        std::size_t result = 0;
        bool first = true;
        for (auto & l : lists) {
            if (first || l.size() < result)
                result = l.size();
            first = false;
        }
        return result;
    }

    auto clause_name(CoverViolation::Clause c) -> string
    {
        switch (c) {
            case CoverViolation::Clause::shape: return "shape";
            case CoverViolation::Clause::cc1:   return "CC1";
            case CoverViolation::Clause::cc2:   return "CC2";
            case CoverViolation::Clause::cc3:   return "CC3";
        }
        return "?";
    }

    namespace
    {
        using Clause = CoverViolation::Clause;

        /// List-level checks: shape and the partition property.
        auto partition_violations(const CorrespondenceCover & c) -> vector<CoverViolation>
        {
            vector<CoverViolation> result;
            if (static_cast<int>(c.lists.size()) != c.base.size()) {
                result.push_back({ Clause::shape, {}, "there are " + to_string(c.lists.size()) + " lists for "
                        + to_string(c.base.size()) + " base vertices" });
                return result;
            }

            vector<int> times_listed(c.cover.size(), 0);
            for (Vertex v = 0 ; v < c.base.size() ; ++v)
                for (auto x : c.lists[v]) {
                    if (x < 0 || x >= c.cover.size())
                        result.push_back({ Clause::cc1, { v, x }, "list of vertex " + to_string(v) + " names colour "
                                + to_string(x) + " outside V(H)" });
                    else
                        ++times_listed[x];
                }

            for (Colour x = 0 ; x < c.cover.size() ; ++x) {
                if (times_listed[x] == 0)
                    result.push_back({ Clause::cc1, { x }, "colour " + to_string(x) + " belongs to no list" });
                else if (times_listed[x] > 1)
                    result.push_back({ Clause::cc1, { x }, "colour " + to_string(x) + " appears " + to_string(times_listed[x]) + " times in the lists" });
            }
            return result;
        }

        /// Edge-level checks for one colour; only reports each H-edge from its smaller end.
        auto colour_violations(const CorrespondenceCover & c, Colour x) -> vector<CoverViolation>
        {
            vector<CoverViolation> result;
            auto u = c.owner[x];
            if (u == -1)
                return result;

            vector<pair<Vertex, Colour>> by_owner;
            for (auto y : c.cover.neighbours(x)) {
                auto v = c.owner[y];
                if (v == -1)
                    continue;
                by_owner.emplace_back(v, y);
                if (x > y)
                    continue;
                if (u == v)
                    result.push_back({ Clause::cc2, { x, y }, "colours " + to_string(x) + " and " + to_string(y)
                            + " of vertex " + to_string(u) + "'s list are adjacent in H" });
                else if (! c.base.adjacent(u, v))
                    result.push_back({ Clause::cc3, { x, y }, "H-edge " + to_string(x) + "-" + to_string(y)
                            + " joins the lists of non-adjacent vertices " + to_string(u) + " and " + to_string(v) });
            }

            std::sort(by_owner.begin(), by_owner.end());
            for (std::size_t i = 0 ; i + 1 < by_owner.size() ; ++i)
                if (by_owner[i].first == by_owner[i + 1].first && by_owner[i].first != u
                        && (i == 0 || by_owner[i - 1].first != by_owner[i].first)) {
                    vector<int> items{ x };
                    for (std::size_t j = i ; j < by_owner.size() && by_owner[j].first == by_owner[i].first ; ++j)
                        items.push_back(by_owner[j].second);
                    result.push_back({ Clause::cc3, items, "colour " + to_string(x) + " has " + to_string(items.size() - 1)
                            + " H-neighbours in the list of vertex " + to_string(by_owner[i].first) + ", not a matching" });
                }
            return result;
        }
    }

    auto validate_cover_serial(const CorrespondenceCover & c) -> vector<CoverViolation>
    {
        auto result = partition_violations(c);
        if (! result.empty() && result.front().clause == Clause::shape)
            return result;

        for (Colour x = 0 ; x < c.cover.size() ; ++x) {
            auto more = colour_violations(c, x);
            result.insert(result.end(), more.begin(), more.end());
        }
        return result;
    }

    auto validate_cover_parallel(const CorrespondenceCover & c) -> vector<CoverViolation>
    {
        auto result = partition_violations(c);
        if (! result.empty() && result.front().clause == Clause::shape)
            return result;

        int n = c.cover.size();
        vector<vector<CoverViolation>> per_colour(n);
#pragma omp parallel for schedule(dynamic, 64)
        for (Colour x = 0 ; x < n ; ++x)
            per_colour[x] = colour_violations(c, x);

        for (auto & more : per_colour)
            result.insert(result.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
        return result;
    }

    auto validate_cover(const CorrespondenceCover & c) -> vector<CoverViolation>
    {
        return validate_cover_parallel(c);
    }

    auto list_cover(const Graph & g, const vector<vector<int>> & colour_names) -> CorrespondenceCover
    {
        if (static_cast<int>(colour_names.size()) != g.size())
            throw PreconditionViolated{ "list_cover needs one list per vertex" };

        vector<vector<Colour>> lists(g.size());
        vector<int> names;
        vector<vector<pair<int, Colour>>> by_name(g.size());
        for (Vertex v = 0 ; v < g.size() ; ++v) {
            if (colour_names[v].empty())
                throw PreconditionViolated{ "empty list at vertex " + to_string(v) };
            auto sorted = colour_names[v];
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw PreconditionViolated{ "repeated colour name in the list of vertex " + to_string(v) };
            for (auto name : sorted) {
                Colour x = static_cast<Colour>(names.size());
                names.push_back(name);
                lists[v].push_back(x);
                by_name[v].emplace_back(name, x);
            }
        }

        vector<Edge> cover_edges;
        for (auto [u, v] : g.edges()) {
            auto & a = by_name[u];
            auto & b = by_name[v];
            std::size_t i = 0, j = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i].first < b[j].first)
                    ++i;
                else if (b[j].first < a[i].first)
                    ++j;
                else
                    cover_edges.emplace_back(a[i++].second, b[j++].second);
            }
        }

        auto result = CorrespondenceCover::make(g, Graph{ static_cast<int>(names.size()), cover_edges }, std::move(lists));
        result.colour_names = std::move(names);
        return result;
    }

    auto identity_list_cover(const Graph & g, int q) -> CorrespondenceCover
    {
        if (q < 1)
            throw PreconditionViolated{ "identity_list_cover needs q >= 1" };
        vector<int> names(q);
        for (int i = 0 ; i < q ; ++i)
            names[i] = i;
        return list_cover(g, vector<vector<int>>(g.size(), names));
    }

    auto random_cover(const Graph & g, int q, Seed seed, double drop_probability) -> CorrespondenceCover
    {
        if (q < 1)
            throw PreconditionViolated{ "random_cover needs q >= 1" };
        if (! (drop_probability >= 0.0 && drop_probability <= 1.0))
            throw PreconditionViolated{ "drop probability must lie in [0, 1]" };

        Rng rng{ seed };
        vector<vector<Colour>> lists(g.size());
        for (Vertex v = 0 ; v < g.size() ; ++v)
            for (int i = 0 ; i < q ; ++i)
                lists[v].push_back(v * q + i);

        vector<Edge> cover_edges;
        vector<int> perm(q);
        for (auto [u, v] : g.edges()) {
            for (int i = 0 ; i < q ; ++i)
                perm[i] = i;
            rng.shuffle(span<int>{ perm });
            for (int i = 0 ; i < q ; ++i) {
                if (drop_probability > 0.0 && rng.bernoulli(drop_probability))
                    continue;
                cover_edges.emplace_back(u * q + i, v * q + perm[i]);
            }
        }

        return CorrespondenceCover::make(g, Graph{ g.size() * q, cover_edges }, std::move(lists));
    }

    auto PartialColouring::domain() const -> vector<Vertex>
    {
        vector<Vertex> result;
        for (Vertex v = 0 ; v < size() ; ++v)
            if (_assignment[v] != -1)
                result.push_back(v);
        return result;
    }

    auto PartialColouring::image() const -> vector<Colour>
    {
        vector<Colour> result;
        for (auto c : _assignment)
            if (c != -1)
                result.push_back(c);
        std::sort(result.begin(), result.end());
        return result;
    }

    auto PartialColouring::total() const -> bool
    {
        return std::find(_assignment.begin(), _assignment.end(), -1) == _assignment.end();
    }

    auto is_proper(const CorrespondenceCover & c, const PartialColouring & phi) -> ProperCheck
    {
        if (phi.size() != c.base.size())
            throw InvalidInput{ "colouring has " + to_string(phi.size()) + " entries for " + to_string(c.base.size()) + " vertices" };

        for (Vertex v = 0 ; v < phi.size() ; ++v)
            if (phi.coloured(v)) {
                auto x = phi.colour(v);
                if (x < 0 || x >= c.cover.size() || c.owner[x] != v)
                    throw InvalidInput{ "vertex " + to_string(v) + " is assigned colour " + to_string(x) + ", which is not in its list" };
            }

        ProperCheck result;
        for (auto x : phi.image())
            for (auto y : c.cover.neighbours(x)) {
                auto w = c.owner[y];
                if (y > x && w != -1 && phi.colour(w) == y) {
                    result.proper = false;
                    result.conflict = pair{ x, y };
                    return result;
                }
            }
        return result;
    }

    auto available_list(const CorrespondenceCover & c, const PartialColouring & phi, Vertex v) -> vector<Colour>
    {
        if (phi.coloured(v))
            throw PreconditionViolated{ "vertex " + to_string(v) + " is already coloured" };

        vector<Colour> result;
        for (auto x : c.list(v)) {
            bool free = true;
            for (auto y : c.cover.neighbours(x)) {
                auto w = c.owner[y];
                if (w != -1 && phi.colour(w) == y) {
                    free = false;
                    break;
                }
            }
            if (free)
                result.push_back(x);
        }
        return result;
    }

    auto restrict_cover(const CorrespondenceCover & c, span<const Vertex> keep_vertices,
            const vector<vector<Colour>> & new_lists) -> SubCover
    {
        if (keep_vertices.size() != new_lists.size())
            throw PreconditionViolated{ "restrict_cover needs one list per kept vertex" };
        if (! std::is_sorted(keep_vertices.begin(), keep_vertices.end()))
            throw PreconditionViolated{ "restrict_cover needs the kept vertices in ascending order" };

        SubCover result;
        auto base = induced_subgraph(c.base, keep_vertices);
        result.base_origin = base.original;

        vector<Colour> colours;
        for (std::size_t i = 0 ; i < keep_vertices.size() ; ++i)
            for (auto x : new_lists[i]) {
                if (x < 0 || x >= c.cover.size() || c.owner[x] != keep_vertices[i])
                    throw PreconditionViolated{ "colour " + to_string(x) + " is not in the list of vertex " + to_string(keep_vertices[i]) };
                colours.push_back(x);
            }
        auto cover = induced_subgraph(c.cover, colours);
        result.colour_origin = cover.original;

        vector<int> local(c.cover.size(), -1);
        for (std::size_t i = 0 ; i < cover.original.size() ; ++i)
            local[cover.original[i]] = static_cast<int>(i);

        vector<vector<Colour>> lists(keep_vertices.size());
        for (std::size_t i = 0 ; i < keep_vertices.size() ; ++i) {
            for (auto x : new_lists[i])
                lists[i].push_back(local[x]);
            std::sort(lists[i].begin(), lists[i].end());
        }

        result.cover = CorrespondenceCover::make(std::move(base.graph), std::move(cover.graph), std::move(lists));
        if (! c.colour_names.empty())
            for (auto x : result.colour_origin)
                result.cover.colour_names.push_back(c.colour_names[x]);
        return result;
    }

    auto drop_unmatched_edges(const CorrespondenceCover & c) -> CorrespondenceCover
    {
        std::set<Edge> matched;
        for (auto [x, y] : c.cover.edges()) {
            auto u = c.owner[x], v = c.owner[y];
            if (u != -1 && v != -1 && u != v)
                matched.emplace(std::min(u, v), std::max(u, v));
        }

        vector<Edge> kept;
        for (auto e : c.base.edges())
            if (matched.contains(e))
                kept.push_back(e);

        auto result = c;
        result.base = Graph{ c.base.size(), kept };
        return result;
    }

    auto avg_colour_degree(const CorrespondenceCover & c, Vertex v) -> double
    {
        auto l = c.list(v);
        if (l.empty())
            throw PreconditionViolated{ "vertex " + to_string(v) + " has an empty list" };
        double total = 0.0;
        for (auto x : l)
            total += c.cover.degree(x);
        return total / static_cast<double>(l.size());
    }
}
