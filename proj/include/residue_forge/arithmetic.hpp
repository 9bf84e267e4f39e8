#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "residue_forge/errors.hpp"

namespace residue_forge {

/// A complete prime factorization, primes strictly increasing.
struct Factorization {
    std::uint64_t value = 1;
    std::vector<std::pair<std::uint64_t, unsigned>> factors;
};

/// An odd prime p together with the decomposition p - 1 = 2^n * z (z odd)
/// and the prime factorization of z. Immutable after build_context; safe to
/// share across threads.
struct PrimeContext {
    std::uint64_t p = 0;
    unsigned n = 0;          // two-adic valuation of p - 1
    std::uint64_t z = 1;     // odd cofactor
    std::vector<std::pair<std::uint64_t, unsigned>> z_factors;
    unsigned class4 = 0;     // p mod 4, in {1, 3}
    unsigned class8 = 0;     // p mod 8, in {1, 3, 5, 7}

    std::uint64_t pm1() const { return p - 1; }
    std::uint64_t half() const { return (p - 1) / 2; }
};

/// a*b mod p with a 128-bit intermediate. Requires a, b < p < 2^63.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

/// base^exp mod p by square-and-multiply; powmod(b, 0, p) == 1 (for p > 1).
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p);

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// Complete factorization: trial division below 10^6, then Brent's cycle
/// splitting for what remains. Deterministic.
Factorization factorize(std::uint64_t m);

/// Euler's totient from a factorization: prod q^(e-1) * (q - 1).
std::uint64_t euler_phi(const Factorization& f);

/// All divisors of the factored value, sorted ascending.
std::vector<std::uint64_t> divisors(const Factorization& f);

/// Legendre symbol via Euler's criterion: +1 for residues, -1 for
/// non-residues, 0 when p | a.
int legendre(std::uint64_t a, std::uint64_t p);

inline int legendre(std::uint64_t a, const PrimeContext& ctx) {
    return legendre(a, ctx.p);
}

/// Builds the context for an odd prime. Throws EvenPrimeError for p = 2 and
/// NotPrimeError for anything else that is not prime.
PrimeContext build_context(std::uint64_t p);

/// Smallest k >= 1 with a^k = 1 mod m; multiplicative_order(a, 1) == 1 by
/// convention. Found by shrinking phi(m) prime-by-prime rather than stepping.
/// Throws NotCoprimeError when a shares a factor with m.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

/// Unbounded increasing stream of primes >= start, skipping an exclusion
/// set. Backed by a segmented sieve so it stays cheap well past 2^32.
class PrimeStream {
public:
    explicit PrimeStream(std::uint64_t start, std::vector<std::uint64_t> exclude = {});

    /// Next prime in the stream. Never runs out within the 64-bit range.
    std::uint64_t next();

private:
    void refill();

    std::vector<std::uint64_t> exclude_;
    std::vector<std::uint64_t> base_primes_;   // primes used to cross off segments
    std::uint64_t base_limit_ = 0;             // base_primes_ cover [2, base_limit_]
    std::uint64_t segment_lo_ = 0;
    std::vector<std::uint64_t> window_;        // primes of the current segment
    std::size_t window_pos_ = 0;
};

} // namespace residue_forge
