#pragma once

#include <cstdint>
#include <vector>

#include "residue_forge/arithmetic.hpp"

// Naive reference implementations used to cross-check the fast paths on
// small primes. Everything here is intentionally simple and, where the
// classical method calls for it, uses gcd -- the exact step the main
// enumeration avoids.
namespace residue_forge::oracle {

inline constexpr std::uint64_t kOracleCeiling = 100'000;

struct OracleReport {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> gz_ref; // elements of order p - 1, sorted
    std::vector<std::uint64_t> gs_ref; // elements of order (p - 1) / 2, sorted
    std::vector<std::uint64_t> orders; // orders[g] for g in [1, p-1]; slot 0 unused
};

/// Exact order of every element, found by scanning the divisors of p - 1 in
/// increasing order. Throws TooLargeError above the ceiling.
OracleReport order_table(std::uint64_t p);

/// The classical enumeration: one primitive root by trial, then all powers
/// g^k with k coprime to p - 1.
std::vector<std::uint64_t> primitive_roots_via_gcd(std::uint64_t p);

/// All x in [0, p-1] with x^2 = m mod p, by exhaustive scan.
std::vector<std::uint64_t> sqrt_all_bruteforce(std::uint64_t m, std::uint64_t p);

} // namespace residue_forge::oracle
