#include "cleanup/util.hpp"

#include <charconv>
#include <cmath>

namespace cleanup {

long long round_half_even(double x) {
    const double floored = std::floor(x);
    const double frac = x - floored;
    const auto lo = static_cast<long long>(floored);
    if (frac > 0.5) return lo + 1;
    if (frac < 0.5) return lo;
    return (lo % 2 == 0) ? lo : lo + 1;
}

std::vector<int> random_permutation(int n, SplitMix64& rng) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<int>(rng.next_below(static_cast<uint64_t>(i) + 1));
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

std::vector<int> sample_distinct(int n, int k, SplitMix64& rng) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) {
        const auto j = i + static_cast<int>(rng.next_below(static_cast<uint64_t>(n - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

uint64_t fnv1a64(std::string_view text) {
    uint64_t hash = 0xcbf29ce484222325ull;
    for (const char c : text) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace cleanup
