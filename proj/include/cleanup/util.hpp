#pragma once
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cleanup/rng.hpp"

namespace cleanup {

// Nearest integer, ties to even. Used wherever a fractional count becomes a
// discrete one, so population compositions are exact experimental controls.
long long round_half_even(double x);

// Fisher-Yates permutation of [0, n).
std::vector<int> random_permutation(int n, SplitMix64& rng);

// Uniform k-subset of [0, n) as the first k entries of a partial shuffle.
std::vector<int> sample_distinct(int n, int k, SplitMix64& rng);

uint64_t fnv1a64(std::string_view text);

// Shortest round-trip decimal rendering; identical bytes on every platform.
std::string format_double(double v);

}  // namespace cleanup
