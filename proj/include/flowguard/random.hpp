#pragma once

#include <cstdint>
#include <random>

namespace flowguard {

// Portable seeded generator. The raw engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; the mappings below are written out
// here instead of using <random> distributions, whose results differ between
// standard library implementations.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, bound) by rejection of the biased low range.
    std::uint64_t below(std::uint64_t bound);

    // Uniform real in [0, 1) from the top 53 bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

} // namespace flowguard
