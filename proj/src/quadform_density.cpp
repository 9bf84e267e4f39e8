#include "residue_forge/quadform_density.hpp"

#include <algorithm>
#include <cmath>

#include "residue_forge/errors.hpp"
#include "residue_forge/parallel.hpp"

namespace residue_forge {

namespace {

constexpr std::uint64_t kHqLimitCeiling = 200'000'000;
constexpr std::uint64_t kDensityXMaxCeiling = 100'000'000;

unsigned __int128 isqrt_u128(unsigned __int128 v) {
    if (v == 0)
        return 0;
    auto r = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(v)));
    while (r > 0 && r * r > v)
        --r;
    while ((r + 1) * (r + 1) <= v)
        ++r;
    return r;
}

bool is_perfect_square_i128(__int128 v) {
    if (v < 0)
        return false;
    auto u = static_cast<unsigned __int128>(v);
    unsigned __int128 r = isqrt_u128(u);
    return r * r == u;
}

__int128 discriminant(std::int64_t a, std::int64_t b, std::int64_t c) {
    __int128 bb, ac, ac4, disc;
    if (__builtin_mul_overflow(static_cast<__int128>(b), static_cast<__int128>(b), &bb) ||
        __builtin_mul_overflow(static_cast<__int128>(a), static_cast<__int128>(c), &ac) ||
        __builtin_mul_overflow(static_cast<__int128>(4), ac, &ac4) ||
        __builtin_sub_overflow(bb, ac4, &disc))
        throw TooLargeError("discriminant: coefficients too large");
    return disc;
}

std::uint64_t reduce_mod(std::int64_t v, std::uint64_t p) {
    auto r = v % static_cast<std::int64_t>(p);
    if (r < 0)
        r += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r);
}

// Root count assuming p is an odd prime; no primality check here because the
// truncation loop feeds it sieve output.
std::uint64_t tp_impl(const QuadraticForm& q, std::uint64_t p) {
    std::uint64_t a = reduce_mod(q.a, p);
    std::uint64_t b = reduce_mod(q.b, p);
    std::uint64_t c = reduce_mod(q.c, p);
    if (a != 0) {
        std::uint64_t d = mulmod(b, b, p);
        std::uint64_t s = mulmod(mulmod(4 % p, a, p), c, p);
        d = (d + p - s) % p;
        if (d == 0)
            return 1;
        return legendre(d, p) == 1 ? 2 : 0;
    }
    if (b != 0)
        return 1;
    return c == 0 ? p : 0;
}

// Odd primes up to limit, smallest first.
template <typename Fn>
void for_each_odd_prime(std::uint64_t limit, Fn&& fn) {
    if (limit < 3)
        return;
    std::uint64_t half = (limit - 1) / 2; // index i <-> value 2i+1
    std::vector<std::uint8_t> comp(half + 1, 0);
    for (std::uint64_t v = 3; v * v <= limit; v += 2) {
        if (comp[(v - 1) / 2])
            continue;
        for (std::uint64_t j = v * v; j <= limit; j += 2 * v)
            comp[(j - 1) / 2] = 1;
    }
    for (std::uint64_t i = 1; i <= half; ++i)
        if (!comp[i])
            fn(2 * i + 1);
}

} // namespace

QuadraticForm make_form(std::int64_t a, std::int64_t b, std::int64_t c) {
    if (a < 1)
        throw InputError("make_form: leading coefficient must be >= 1");
    QuadraticForm q;
    q.a = a;
    q.b = b;
    q.c = c;
    q.irreducible = !is_perfect_square_i128(discriminant(a, b, c));
    return q;
}

QuadraticForm ec_form(std::uint64_t c) {
    if (c == 0)
        throw InputError("ec_form: c must be positive");
    if (c > (1ull << 62))
        throw TooLargeError("ec_form: c too large");
    std::int64_t r = (c % 2 == 0) ? 1 : 0;
    return make_form(4, 4 * r, r * r + static_cast<std::int64_t>(c));
}

__int128 eval_form(const QuadraticForm& q, std::uint64_t x) {
    __int128 xi = static_cast<__int128>(x);
    return (static_cast<__int128>(q.a) * xi + q.b) * xi + q.c;
}

std::uint64_t tp(const QuadraticForm& q, std::uint64_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
        throw InputError("tp: p must be an odd prime");
    return tp_impl(q, p);
}

EulerProductEstimate hq_truncated(const QuadraticForm& q, std::uint64_t prime_limit) {
    if (!q.irreducible)
        throw ReducibleFormError("hq_truncated: discriminant is a perfect square");
    if (prime_limit < 3)
        throw InputError("hq_truncated: prime_limit must be >= 3");
    if (prime_limit > kHqLimitCeiling)
        throw TooLargeError("hq_truncated: prime_limit above ceiling");

    EulerProductEstimate est;
    est.prime_limit = prime_limit;
    double sum = 0.0, comp = 0.0;
    for_each_odd_prime(prime_limit, [&](std::uint64_t p) {
        std::uint64_t t = tp_impl(q, p);
        if (t >= p)
            throw VanishingFactorError("hq_truncated: factor vanishes at p = " + std::to_string(p));
        // (p - t)/(p - 1) = 1 + (1 - t)/(p - 1); log1p keeps precision.
        double delta = (1.0 - static_cast<double>(t)) / static_cast<double>(p - 1);
        double y = std::log1p(delta) - comp;
        double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        est.last_factor_deviation = std::abs(delta);
        ++est.factors_counted;
    });
    est.log_value = sum;
    est.value = std::exp(sum);
    return est;
}

bool dp_Ec_member(std::uint64_t p, std::uint64_t c) {
    if (c == 0 || !is_perfect_square_i128(static_cast<__int128>(c)))
        throw NotASquareError("dp_Ec_member: c must be a positive perfect square");
    if (p < 3 || !is_prime_u64(p))
        throw InputError("dp_Ec_member: p must be an odd prime");
    return p % 4 == 1 || c % p == 0;
}

double hc_relative(std::uint64_t c, std::uint64_t prime_limit) {
    if (c == 0 || !is_perfect_square_i128(static_cast<__int128>(c)))
        throw NotASquareError("hc_relative: c must be a positive perfect square");
    double h = hq_truncated(ec_form(1), prime_limit).value;
    for (auto [q, e] : factorize(c).factors) {
        (void)e;
        if (q == 2)
            continue;
        double qd = static_cast<double>(q);
        if (q % 4 == 3)
            h *= (qd - 1.0) / qd;
        else
            h *= (qd - 1.0) / (qd - 2.0);
    }
    return h;
}

std::uint64_t family_modulus(const std::vector<std::pair<std::uint64_t, unsigned>>& alpha) {
    std::uint64_t m = 1;
    for (auto [p, e] : alpha) {
        for (unsigned i = 0; i < e; ++i) {
            if (m > 1'000'000'000 / p)
                throw TooLargeError("family_modulus: p_F^alpha above 10^9");
            m *= p;
        }
    }
    return m;
}

QuadraticForm build_family(std::uint64_t c,
                           const std::vector<std::pair<std::uint64_t, unsigned>>& alpha,
                           std::uint64_t b) {
    if (c < 2 || !is_perfect_square_i128(static_cast<__int128>(c)))
        throw NotASquareError("build_family: c must be a perfect square >= 2");
    if (c > (1ull << 62))
        throw TooLargeError("build_family: c too large");
    if (c % 2 == 0)
        throw BadDivisorClassError("build_family: even c unsupported (divisor 2 has no class)");

    std::vector<std::uint64_t> f_set;
    for (auto [q, e] : factorize(c).factors) {
        (void)e;
        if (q % 4 == 1)
            throw BadDivisorClassError("build_family: divisor " + std::to_string(q) +
                                       " is 1 mod 4");
        f_set.push_back(q);
    }
    std::vector<std::uint64_t> keys;
    for (auto [q, e] : alpha) {
        if (e == 0)
            throw InputError("build_family: exponents must be >= 1");
        keys.push_back(q);
    }
    std::sort(keys.begin(), keys.end());
    if (keys != f_set)
        throw InputError("build_family: alpha must cover exactly the prime divisors of c");

    std::uint64_t modulus = family_modulus(alpha);
    if (b < 1 || b >= modulus)
        throw BadMultiplierError("build_family: b out of [1, p_F^alpha - 1]");
    if ((b & 1) == (c & 1))
        throw BadMultiplierError("build_family: b must have parity opposite to c");
    for (std::uint64_t q : f_set)
        if (b % q == 0)
            throw BadMultiplierError("build_family: b shares divisor " + std::to_string(q) +
                                     " with c");

    auto big_a = static_cast<std::int64_t>(modulus);
    return make_form(4 * big_a * big_a, 4 * big_a * static_cast<std::int64_t>(b),
                     static_cast<std::int64_t>(b * b + c));
}

DensityReport density_experiment(const QuadraticForm& q, std::uint64_t x_max,
                                 unsigned bucket_count, std::uint64_t prediction_prime_limit) {
    if (!q.irreducible)
        throw ReducibleFormError("density_experiment: discriminant is a perfect square");
    if (x_max < 1 || bucket_count < 1)
        throw InputError("density_experiment: x_max and bucket_count must be >= 1");
    if (x_max > kDensityXMaxCeiling)
        throw TooLargeError("density_experiment: x_max above ceiling");
    if (bucket_count > 1'000'000)
        throw TooLargeError("density_experiment: bucket_count above ceiling");

    DensityReport rep;
    rep.form = q;
    rep.prediction_constant = hq_truncated(q, prediction_prime_limit);

    const double ln_xmax = std::log(static_cast<double>(x_max));
    const unsigned nb = bucket_count;
    auto bucket_of = [&](std::uint64_t x) -> unsigned {
        if (x_max == 1 || x <= 1)
            return 0;
        auto i = static_cast<long>(std::log(static_cast<double>(x)) / ln_xmax * nb);
        if (i < 0)
            i = 0;
        if (i >= static_cast<long>(nb))
            i = nb - 1;
        return static_cast<unsigned>(i);
    };

    // The form is convex, so its maximum over [1, x_max] sits at an endpoint.
    constexpr __int128 kPrimalityCeiling = static_cast<__int128>(1) << 63;
    if (eval_form(q, 1) >= kPrimalityCeiling || eval_form(q, x_max) >= kPrimalityCeiling)
        throw TooLargeError("density_experiment: form values exceed 2^63");

    unsigned workers = worker_count();
    std::vector<std::vector<std::uint64_t>> terms(workers, std::vector<std::uint64_t>(nb, 0));
    std::vector<std::vector<std::uint64_t>> primes(workers, std::vector<std::uint64_t>(nb, 0));
    parallel_chunks(1, x_max + 1, [&](unsigned k, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t x = lo; x < hi; ++x) {
            __int128 v = eval_form(q, x);
            if (v <= 1)
                continue;
            unsigned bi = bucket_of(x);
            ++terms[k][bi];
            if (is_prime_u64(static_cast<std::uint64_t>(v)))
                ++primes[k][bi];
        }
    });

    const double h = rep.prediction_constant.value;
    for (unsigned i = 0; i < nb; ++i) {
        DensityBucket bu;
        for (unsigned k = 0; k < workers; ++k) {
            bu.terms += terms[k][i];
            bu.primes += primes[k][i];
        }
        if (bu.terms == 0)
            continue;
        bu.x_mid = std::exp(ln_xmax * (i + 0.5) / nb);
        bu.empirical = static_cast<double>(bu.primes) / static_cast<double>(bu.terms);
        double q_mid = (static_cast<double>(q.a) * bu.x_mid + static_cast<double>(q.b)) * bu.x_mid +
                       static_cast<double>(q.c);
        bu.predicted_hq_over_lnQ = q_mid > 1.0 ? h / std::log(q_mid) : 0.0;
        bu.predicted_hq_over_2lnx = bu.x_mid > 1.0 ? h / (2.0 * std::log(bu.x_mid)) : 0.0;
        rep.buckets.push_back(bu);
    }
    return rep;
}

bool family_disjointness_check(std::uint64_t c,
                               const std::vector<std::pair<std::uint64_t, unsigned>>& alpha,
                               const std::vector<std::uint64_t>& b_list,
                               std::uint64_t x_bound) {
    std::vector<std::vector<__int128>> value_sets;
    value_sets.reserve(b_list.size());
    for (std::uint64_t b : b_list) {
        QuadraticForm q = build_family(c, alpha, b);
        std::vector<__int128> vals;
        vals.reserve(x_bound + 1);
        for (std::uint64_t x = 0; x <= x_bound; ++x)
            vals.push_back(eval_form(q, x)); // increasing in x for these forms
        value_sets.push_back(std::move(vals));
    }
    for (std::size_t i = 0; i < value_sets.size(); ++i) {
        for (std::size_t j = i + 1; j < value_sets.size(); ++j) {
            const auto& u = value_sets[i];
            const auto& v = value_sets[j];
            std::size_t a = 0, d = 0;
            while (a < u.size() && d < v.size()) {
                if (u[a] == v[d])
                    return false;
                if (u[a] < v[d])
                    ++a;
                else
                    ++d;
            }
        }
    }
    return true;
}

} // namespace residue_forge
