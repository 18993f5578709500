#ifndef NIBBLER_GUARD_RANDOM_HH
#define NIBBLER_GUARD_RANDOM_HH 1

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace nibbler
{
    using Seed = std::uint64_t;

    auto splitmix64(std::uint64_t x) -> std::uint64_t;

    /// Mixes a seed with a tuple of labels into an independent child seed.
    auto derive_seed(Seed seed, std::uint64_t a, std::uint64_t b = 0) -> Seed;

    /// Uniform double in [0,1) from the top 53 bits.
    inline auto to_unit_interval(std::uint64_t bits) -> double
    {
        return static_cast<double>(bits >> 11) * 0x1.0p-53;
    }

    /**
     * Counter-based draw: the value for (stream key, index) never depends on
     * how many other draws were made, so per-colour draws can be made in any
     * order or in parallel and still come out bit-identical.
     */
    inline auto counter_uniform(Seed stream_key, std::uint64_t index) -> double
    {
        return to_unit_interval(splitmix64(stream_key ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
    }

    /// Sequential generator with portable bounded draws (std distributions differ between standard libraries).
    class Rng
    {
        public:
            explicit Rng(Seed seed) : _engine(splitmix64(seed)) { }

            auto next() -> std::uint64_t { return _engine(); }
            auto uniform_real() -> double { return to_unit_interval(_engine()); }
            auto bernoulli(double p) -> bool { return uniform_real() < p; }

            /// Uniform in [0, bound), bound > 0.
            auto uniform_index(std::uint64_t bound) -> std::uint64_t;

            template <typename T_>
            auto shuffle(std::span<T_> items) -> void
            {
                for (std::size_t i = items.size() ; i > 1 ; --i)
                    std::swap(items[i - 1], items[uniform_index(i)]);
            }

        private:
            std::mt19937_64 _engine;
    };
}

#endif
