#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "residue_forge/arithmetic.hpp"

namespace residue_forge {

/// Integer quadratic form Q = a X^2 + b X + c with a >= 1. `irreducible`
/// means the discriminant b^2 - 4ac is not a perfect square.
struct QuadraticForm {
    std::int64_t a = 1;
    std::int64_t b = 0;
    std::int64_t c = 0;
    bool irreducible = false;
};

/// Validates coefficients and fills the irreducibility flag.
QuadraticForm make_form(std::int64_t a, std::int64_t b, std::int64_t c);

/// The (2X + r)^2 + c parametrization with r = (1 - c) mod 2, whose values
/// are the odd members of {X^2 + c}.
QuadraticForm ec_form(std::uint64_t c);

/// Q evaluated at x, exactly.
__int128 eval_form(const QuadraticForm& q, std::uint64_t x);

/// Number of roots of Q mod p: 0, 1, 2, or p (identically zero form).
std::uint64_t tp(const QuadraticForm& q, std::uint64_t p);

/// Truncated Euler product prod (p - t_p(Q)) / (p - 1) over odd primes
/// p <= prime_limit, accumulated in log space with compensated summation.
struct EulerProductEstimate {
    double value = 1.0;
    double log_value = 0.0;
    std::uint64_t prime_limit = 0;
    double last_factor_deviation = 0.0; // |last factor - 1|
    std::uint64_t factors_counted = 0;
};

EulerProductEstimate hq_truncated(const QuadraticForm& q, std::uint64_t prime_limit);

/// Closed-form membership: whether p divides some x^2 + c with x, c of
/// opposite parity, for c a perfect square. Equals (p = 1 mod 4) or (p | c).
bool dp_Ec_member(std::uint64_t p, std::uint64_t c);

/// The density constant of the c-family relative to the base constant:
/// h_1 estimate times (q-1)/q per divisor q = 3 mod 4 and (q-1)/(q-2) per
/// divisor q = 1 mod 4. c must be a perfect square.
double hc_relative(std::uint64_t c, std::uint64_t prime_limit);

/// prod p^alpha_p over an exponent vector, with overflow guard.
std::uint64_t family_modulus(const std::vector<std::pair<std::uint64_t, unsigned>>& alpha);

/// The form (2 p_F^alpha X + b)^2 + c of the constant-preserving family.
/// Requires: c >= 2 an odd perfect square whose prime divisors are all
/// = 3 mod 4 and exactly the keys of alpha; b in [1, p_F^alpha - 1] coprime
/// to them and of opposite parity to c.
QuadraticForm build_family(std::uint64_t c,
                           const std::vector<std::pair<std::uint64_t, unsigned>>& alpha,
                           std::uint64_t b);

struct DensityBucket {
    double x_mid = 0.0;
    std::uint64_t terms = 0;
    std::uint64_t primes = 0;
    double empirical = 0.0;
    double predicted_hq_over_lnQ = 0.0;
    double predicted_hq_over_2lnx = 0.0;
};

struct DensityReport {
    QuadraticForm form;
    std::vector<DensityBucket> buckets; // only non-empty buckets
    EulerProductEstimate prediction_constant;
};

/// Counts primes among Q(x) for x in [1, x_max], bucketed with equal width
/// in ln x, and reports the empirical density next to both normalizations
/// of the prediction. Values Q(x) <= 1 are skipped.
DensityReport density_experiment(const QuadraticForm& q, std::uint64_t x_max,
                                 unsigned bucket_count,
                                 std::uint64_t prediction_prime_limit = 1'000'000);

/// True iff the value sets {Q_{c,alpha,b}(x) : 0 <= x <= x_bound} are
/// pairwise disjoint across the listed b.
bool family_disjointness_check(std::uint64_t c,
                               const std::vector<std::pair<std::uint64_t, unsigned>>& alpha,
                               const std::vector<std::uint64_t>& b_list,
                               std::uint64_t x_bound = 10'000);

} // namespace residue_forge
