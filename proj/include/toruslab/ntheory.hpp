#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace toruslab::nt {

// prime factorization, primes strictly increasing, exponents >= 1;
// inputs capped at 10^18 (trial division + Pollard rho)
struct FactoredInteger {
    std::uint64_t n;
    std::vector<std::pair<std::uint64_t, int>> factors;
};

FactoredInteger factorize(std::uint64_t n);
bool is_prime(std::uint64_t n);

// n = c^2 * d with d squarefree; returns (c, d)
std::pair<std::uint64_t, std::uint64_t> squarefree_part(std::uint64_t n);

// true iff some prime q = 3 (mod 4) divides n to an odd power
bool has_obstruction_prime(std::uint64_t n);

// Existence by the two-squares theorem; the decomposition (x <= y) is found by
// bounded search and is the lexicographically smallest one.
struct TwoSquares {
    bool representable;
    std::uint64_t x = 0, y = 0;
};
TwoSquares is_sum_two_squares(std::uint64_t n);

// Existence by stripping factors of 4 and testing the residue mod 8.
struct ThreeSquares {
    bool representable;
    std::uint64_t x = 0, y = 0, z = 0;
};
ThreeSquares is_sum_three_squares(std::uint64_t n);

// Always representable; lexicographically smallest nondecreasing tuple.
std::array<std::uint64_t, 4> four_square_decomposition(std::uint64_t n);

std::uint64_t isqrt_u64(std::uint64_t n);
bool is_perfect_square(std::uint64_t n, std::uint64_t* root = nullptr);

}  // namespace toruslab::nt
