#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace bfl {

// A point of {0,1}^n.  Bit i (0-based) holds coordinate x_{i+1}.
using Tuple = std::uint64_t;
using Mask = std::uint64_t;

inline int weight(Tuple x) { return std::popcount(x); }
inline Tuple flip(Tuple x, Mask coords) { return x ^ coords; }
inline bool bit(Tuple x, int i) { return (x >> i) & 1u; }
inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1); }

// Builds a mask from 0-based coordinates; throws ValidationError if any is >= n.
Mask mask_of(const std::vector<int>& coords, int n);
std::vector<int> coords_of(Mask m);

}  // namespace bfl
