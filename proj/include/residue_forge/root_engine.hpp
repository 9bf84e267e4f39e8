#pragma once

#include <cstdint>
#include <vector>

#include "residue_forge/arithmetic.hpp"

namespace residue_forge {

/// Classification flags for an element of F_p*.
struct RootClass {
    std::uint64_t element = 0;
    bool is_qr = false;             // quadratic residue
    bool is_primitive = false;      // order p - 1
    bool is_semi_primitive = false; // order (p - 1) / 2
    bool in_gz_prime = false;       // member of the residue-side coset of the primitive roots
};

/// A semi-primitive root g paired with an element m_prime of exact order 2^n
/// satisfying g^z * m_prime^(2z) = 1 mod p. The pair seeds every U-sequence.
struct SeedPair {
    std::uint64_t g = 0;
    std::uint64_t m_prime = 0;
};

struct EnumerationResult {
    std::vector<std::uint64_t> gz;     // all primitive roots, sorted
    std::vector<std::uint64_t> gs;     // all semi-primitive roots, sorted
    std::uint64_t logd2 = 0;           // period of the U-sequence = order of 2 mod z
    std::vector<std::uint64_t> a_set;  // auxiliary primes, in the order drawn
};

/// True iff g^((p-1)/q) != 1 for every prime q | p - 1.
bool is_primitive_root(std::uint64_t g, const PrimeContext& ctx);

/// True iff the order of g is exactly (p - 1) / 2. Tested by the exponent
/// battery matching p mod 4, not by computing the order.
bool is_semi_primitive_root(std::uint64_t g, const PrimeContext& ctx);

/// The subgroup of 2^k-th roots of unity, sorted; k > n yields the k = n set.
/// Built as powers of an element of order 2^n, not by root extraction.
std::vector<std::uint64_t> rk_set(const PrimeContext& ctx, unsigned k);

/// The 2^(n-1) elements of exact order 2^n, sorted.
std::vector<std::uint64_t> rk_top_layer(const PrimeContext& ctx);

RootClass classify(std::uint64_t g, const PrimeContext& ctx);

/// Deterministic seed search: scans m = 2, 3, ... applying the residue test
/// and the non-residue test, then matches m_prime against the defining
/// congruence. p = 3 is closed-form.
SeedPair find_seed(const PrimeContext& ctx);

/// Validates a caller-supplied pair against the three SeedPair invariants.
SeedPair make_seed_pair(std::uint64_t g, std::uint64_t m_prime, const PrimeContext& ctx);

/// One full period of U_x^(a): U_0 = g^a, U_{x+1} = (m_prime^a * U_x)^2.
/// a must be odd and coprime to z (BadMultiplierError otherwise).
std::vector<std::uint64_t> u_sequence(const SeedPair& seed, std::uint64_t a, const PrimeContext& ctx);

/// Period of the plain U-sequence, found by iterating the recurrence until
/// it returns to g. Equals the multiplicative order of 2 mod z; 1 when z = 1.
std::uint64_t logd2_via_sequence(const SeedPair& seed, const PrimeContext& ctx);

/// Algorithm-1 enumeration of all primitive and semi-primitive roots.
/// Draws auxiliary primes from a PrimeStream; no Euclidean step anywhere.
EnumerationResult enumerate_all(const PrimeContext& ctx);

/// For a primitive root m: the n - 1 distinct semi-primitive roots
/// m^(2 * (2^(n-t) z - 1)), t = 1 .. n-1. Empty when n = 1.
std::vector<std::uint64_t> semiprimitive_powers(std::uint64_t m, const PrimeContext& ctx);

/// m^(p-2), the multiplicative inverse; classification flags are preserved.
std::uint64_t mod_inverse(std::uint64_t m, const PrimeContext& ctx);

} // namespace residue_forge
