#include "degradex/rng.hpp"

#include <cmath>

namespace degradex {

std::uint64_t Rng::poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    const double limit = std::exp(-lambda);
    std::uint64_t k = 0;
    double product = 1.0;
    do {
        ++k;
        product *= uniform();
    } while (product > limit);
    return k - 1;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view id) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a offset basis
    for (const char c : id) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::uint64_t sm = master_seed ^ h;
    splitmix64(sm);
    return splitmix64(sm);
}

}  // namespace degradex
