#pragma once

#include "dgred/rational.hpp"

#include <cstdint>

namespace dgred {

/// Deterministic counter-based generator: draw k is a pure function of
/// (seed, k), so runs are bit-reproducible and ranges can be partitioned.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t start = 0)
        : seed_(seed), counter_(start) {}

    static std::uint64_t at(std::uint64_t seed, std::uint64_t counter) {
        // splitmix64 on a seed/counter blend
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() { return at(seed_, counter_++); }

    /// Uniform in [-1, 1], 53-bit mantissa.
    double next_unit() {
        double u = (double)(next_u64() >> 11) * 0x1.0p-53;  // [0,1)
        return 2.0 * u - 1.0;
    }

    /// Small rational with numerator in [-max_num, max_num] and denominator
    /// in [1, max_den]; handy for property tests.
    Rational next_rational(int max_num = 9, int max_den = 5) {
        std::int64_t num = (std::int64_t)(next_u64() % (2 * (std::uint64_t)max_num + 1)) - max_num;
        std::int64_t den = (std::int64_t)(next_u64() % (std::uint64_t)max_den) + 1;
        return Rational(num, den);
    }

    std::uint64_t counter() const { return counter_; }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

}  // namespace dgred
