#include <nibbler/random.hh>

namespace nibbler
{
    auto splitmix64(std::uint64_t x) -> std::uint64_t
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    auto derive_seed(Seed seed, std::uint64_t a, std::uint64_t b) -> Seed
    {
        return splitmix64(splitmix64(splitmix64(seed) ^ a) + b * 0xd1b54a32d192ed03ULL);
    }

    auto Rng::uniform_index(std::uint64_t bound) -> std::uint64_t
    {
        // rejection on the top of the range keeps it exactly uniform
        std::uint64_t limit = -bound % bound;
        while (true) {
            auto x = _engine();
            if (x >= limit)
                return x % bound;
        }
    }
}
