#include "matcher.hh"

#include <algorithm>

using std::pair;
using std::span;
using std::vector;

namespace nibbler::detail
{
    namespace
    {
        constexpr int dense_limit = 4096;

        auto compute_order(const Graph & pattern, span<const Vertex> prefix) -> vector<Vertex>
        {
            int n = pattern.size();
            vector<Vertex> order{ prefix.begin(), prefix.end() };
            vector<char> placed(n, 0);
            vector<int> placed_neighbours(n, 0);
            auto place = [&] (Vertex v) {
                placed[v] = 1;
                for (auto w : pattern.neighbours(v))
                    ++placed_neighbours[w];
            };
            for (auto v : prefix)
                place(v);

            while (static_cast<int>(order.size()) < n) {
                Vertex best = -1;
                for (Vertex v = 0 ; v < n ; ++v) {
                    if (placed[v])
                        continue;
                    if (best == -1
                            || placed_neighbours[v] > placed_neighbours[best]
                            || (placed_neighbours[v] == placed_neighbours[best] && pattern.degree(v) > pattern.degree(best)))
                        best = v;
                }
                order.push_back(best);
                place(best);
            }
            return order;
        }
    }

    Matcher::Matcher(const Graph & pattern, const Graph & target) :
        _pattern(pattern),
        _target(target),
        _image(pattern.size(), -1),
        _used(target.size(), 0),
        _preassigned(pattern.size(), 0)
    {
        if (target.size() <= dense_limit) {
            _words = (target.size() + 63) / 64;
            _dense.assign(_words * target.size(), 0);
            for (Vertex u = 0 ; u < target.size() ; ++u)
                for (auto v : target.neighbours(u))
                    _dense[u * _words + v / 64] |= std::uint64_t{ 1 } << (v % 64);
        }

        _order = compute_order(pattern, {});
    }

    auto Matcher::adjacent(Vertex u, Vertex v) const -> bool
    {
        if (_words)
            return (_dense[u * _words + v / 64] >> (v % 64)) & 1;
        return _target.adjacent(u, v);
    }

    auto Matcher::search(std::size_t depth) -> bool
    {
        if (depth == _order.size()) {
            ++_count;
            if (_stop_at_first)
                return false;
            if (_visitor)
                return (*_visitor)(_image);
            return true;
        }

        auto p = _order[depth];
        auto & back = _back[depth];

        auto consistent = [&] (Vertex c) {
            for (auto b : back)
                if (! adjacent(_image[b], c))
                    return false;
            return true;
        };

        if (_preassigned[p]) {
            auto c = _image[p];
            if (! consistent(c))
                return true;
            return search(depth + 1);
        }

        auto try_candidate = [&] (Vertex c) -> bool {
            if (_used[c] || ! consistent(c))
                return true;
            _image[p] = c;
            _used[c] = 1;
            bool keep_going = search(depth + 1);
            _used[c] = 0;
            _image[p] = -1;
            return keep_going;
        };

        if (! back.empty()) {
            // narrowest placed neighbour's adjacency bounds the candidates
            auto anchor = *std::min_element(back.begin(), back.end(), [&] (Vertex a, Vertex b) {
                    return _target.degree(_image[a]) < _target.degree(_image[b]); });
            for (auto c : _target.neighbours(_image[anchor]))
                if (! try_candidate(c))
                    return false;
        }
        else {
            for (Vertex c = 0 ; c < _target.size() ; ++c)
                if (! try_candidate(c))
                    return false;
        }
        return true;
    }

    auto Matcher::count() -> std::uint64_t
    {
        _visitor = nullptr;
        _stop_at_first = false;
        enumerate(Visitor{});
        return _count;
    }

    auto Matcher::enumerate(const Visitor & visitor) -> bool
    {
        _count = 0;
        _visitor = visitor ? &visitor : nullptr;
        std::fill(_preassigned.begin(), _preassigned.end(), 0);
        _order = compute_order(_pattern, {});

        _back.assign(_order.size(), {});
        vector<int> position(_pattern.size());
        for (std::size_t i = 0 ; i < _order.size() ; ++i)
            position[_order[i]] = static_cast<int>(i);
        for (std::size_t i = 0 ; i < _order.size() ; ++i)
            for (auto w : _pattern.neighbours(_order[i]))
                if (position[w] < static_cast<int>(i))
                    _back[i].push_back(w);

        if (_pattern.size() > _target.size())
            return true;
        bool finished = search(0);
        _visitor = nullptr;
        return finished;
    }

    auto Matcher::exists_with(span<const pair<Vertex, Vertex>> fixed) -> bool
    {
        if (_pattern.size() > _target.size())
            return false;

        for (std::size_t i = 0 ; i < fixed.size() ; ++i)
            for (std::size_t j = 0 ; j < i ; ++j)
                if (fixed[i].second == fixed[j].second)
                    return false;

        vector<Vertex> prefix;
        std::fill(_preassigned.begin(), _preassigned.end(), 0);
        std::fill(_image.begin(), _image.end(), -1);
        for (auto [p, c] : fixed) {
            prefix.push_back(p);
            _preassigned[p] = 1;
            _image[p] = c;
            _used[c] = 1;
        }

        _order = compute_order(_pattern, prefix);
        _back.assign(_order.size(), {});
        vector<int> position(_pattern.size());
        for (std::size_t i = 0 ; i < _order.size() ; ++i)
            position[_order[i]] = static_cast<int>(i);
        for (std::size_t i = 0 ; i < _order.size() ; ++i)
            for (auto w : _pattern.neighbours(_order[i]))
                if (position[w] < static_cast<int>(i))
                    _back[i].push_back(w);

        _count = 0;
        _visitor = nullptr;
        _stop_at_first = true;
        search(0);
        _stop_at_first = false;

        for (auto [p, c] : fixed) {
            _used[c] = 0;
            _image[p] = -1;
            _preassigned[p] = 0;
        }
        return _count > 0;
    }
}
