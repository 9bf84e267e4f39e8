#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "residue_forge/arithmetic.hpp"

namespace residue_forge {

/// Per-prime machinery shared across a whole batch: candidate multipliers r
/// in the fixed scan order of the square-root search. `lower` holds the
/// 2^(n-1)-th roots of unity, `upper` the elements of exact order 2^n that
/// the search falls back to. Only built for p = 1 mod 4.
struct SqrtTower {
    std::vector<std::uint64_t> lower;
    std::vector<std::uint64_t> upper;
};

SqrtTower build_sqrt_tower(const PrimeContext& ctx);

/// p = 3 mod 4: one exponentiation. Returns {m^((p+1)/4), p - that} when m
/// is a residue, nullopt otherwise.
std::optional<std::array<std::uint64_t, 2>> sqrt_p3(std::uint64_t m, const PrimeContext& ctx);

/// p = 1 mod 4: root = m^((p+1-2z)/4) * r, scanning the tower for the r
/// whose square lands back on m. Returns the +- pair, nullopt for a
/// non-residue.
std::optional<std::array<std::uint64_t, 2>> sqrt_p1(std::uint64_t m, const PrimeContext& ctx,
                                                    const SqrtTower& tower);

/// Whether the canonical root m^((p-z)/2) * r is itself a quadratic
/// residue; always equal to legendre(r).
bool qr_flag_of_root(std::uint64_t m, const PrimeContext& ctx);
bool qr_flag_of_root(std::uint64_t m, const PrimeContext& ctx, const SqrtTower& tower);

/// Answer for one c: the smallest non-negative x with x^2 + c = 0 mod p and
/// parity opposite to c, or nothing when X^2 + c has no root mod p.
struct SqrtSolution {
    std::uint64_t c = 0;
    std::optional<std::uint64_t> x;
    unsigned x_parity = 0; // required parity of x (opposite of c)

    bool solved() const { return x.has_value(); }
};

struct BatchStats {
    std::uint64_t qnr_scans = 0;
    std::uint64_t tower_builds = 0;
};

/// Solves x^2 + c = 0 mod p for every c at once; the non-residue search and
/// the tower enumeration happen once per call, not once per c.
std::vector<SqrtSolution> batch_solve(const std::vector<std::uint64_t>& cs, std::uint64_t p);
std::vector<SqrtSolution> batch_solve(const std::vector<std::uint64_t>& cs, std::uint64_t p,
                                      BatchStats& stats);

} // namespace residue_forge
