#pragma once

#include <cstdint>

namespace ringlead
{
    // splitmix64: the standard 64-bit finalizer/stream generator.
    // Used for seed derivation and as the per-processor random string.
    inline constexpr std::uint64_t splitmix64_next(std::uint64_t &state) noexcept
    {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Deterministic derivation of sub-seeds: (master, index) -> stream seed.
    // Independent streams for independent (master, index) pairs.
    inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept
    {
        return mix64(master ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    }

    inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) noexcept
    {
        return derive_seed(derive_seed(master, a), b);
    }

    // A processor's "infinite random string": a deterministic 64-bit stream.
    // Protocols draw their secret values from it in a fixed order.
    class RandomString
    {
    public:
        RandomString() = default;
        explicit RandomString(std::uint64_t seed) : m_state(seed) {}

        std::uint64_t next_u64() { return splitmix64_next(m_state); }

        // Uniform in [0, bound). Rejection-free; the modulo bias is
        // ~bound/2^64 and irrelevant at the scales used here.
        std::int64_t next_below(std::int64_t bound)
        {
            return static_cast<std::int64_t>(next_u64() % static_cast<std::uint64_t>(bound));
        }

        double next_unit()
        {
            return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
        }

    private:
        std::uint64_t m_state = 0;
    };
}
