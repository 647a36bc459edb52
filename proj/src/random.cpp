#include "flowguard/random.hpp"

#include "flowguard/error.hpp"

namespace flowguard {

std::uint64_t SeededRng::below(std::uint64_t bound)
{
    if (bound == 0)
        throw Error(ErrorCode::InvalidArgument, "random bound must be positive");
    // 2^64 mod bound: values under it would over-represent small residues.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = next();
        if (x >= threshold)
            return x % bound;
    }
}

} // namespace flowguard
