#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "ringlead/core.hpp"

namespace ringlead
{
    // Keyed mixing fold standing in for the protocol's shared random
    // function f : [n]^n x [m]^(n-l) -> [n].
    //
    // A literally stored random table would have n^n * m^(n-l) entries; a
    // keyed fold preserves everything the protocol and the tests rely on:
    // it is deterministic, identical across processors sharing the key, and
    // empirically uniform. Tests never pin specific output values, only
    // determinism and distribution. Mixing constants are from splitmix64.
    inline Value f_eval(std::uint64_t fseed, std::span<const Value> data_values,
                        std::span<const Value> validation_values, int n)
    {
        if (static_cast<int>(data_values.size()) != n)
        {
            throw std::invalid_argument("f_eval: expected exactly n data values");
        }
        if (static_cast<int>(validation_values.size()) >= n)
        {
            throw std::invalid_argument("f_eval: expected fewer than n validation values");
        }
        std::uint64_t h = mix64(fseed ^ 0x8c67'1050'9af8'2599ULL);
        for (Value x : data_values)
        {
            h = mix64(h ^ (static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL));
        }
        h = mix64(h ^ 0xd1b5'4a32'd192'ed03ULL);
        for (Value x : validation_values)
        {
            h = mix64(h ^ (static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL));
        }
        return static_cast<Value>(h % static_cast<std::uint64_t>(n));
    }
}
