#include "residue_forge/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "residue_forge/errors.hpp"

namespace residue_forge::oracle {

OracleReport order_table(std::uint64_t p) {
    if (p > kOracleCeiling)
        throw TooLargeError("order_table: p exceeds the oracle ceiling");
    if (p < 3 || !is_prime_u64(p))
        throw NotPrimeError("order_table: p must be an odd prime");

    OracleReport rep;
    rep.p = p;
    rep.orders.assign(p, 0);
    std::vector<std::uint64_t> divs = divisors(factorize(p - 1));
    for (std::uint64_t g = 1; g < p; ++g) {
        for (std::uint64_t d : divs) {
            if (powmod(g, d, p) == 1) {
                rep.orders[g] = d;
                break;
            }
        }
        if (rep.orders[g] == p - 1)
            rep.gz_ref.push_back(g);
        else if (rep.orders[g] == (p - 1) / 2)
            rep.gs_ref.push_back(g);
    }
    return rep;
}

std::vector<std::uint64_t> primitive_roots_via_gcd(std::uint64_t p) {
    if (p > kOracleCeiling)
        throw TooLargeError("primitive_roots_via_gcd: p exceeds the oracle ceiling");
    if (p < 3 || !is_prime_u64(p))
        throw NotPrimeError("primitive_roots_via_gcd: p must be an odd prime");

    std::vector<std::uint64_t> divs = divisors(factorize(p - 1));
    auto order_of = [&](std::uint64_t g) {
        for (std::uint64_t d : divs)
            if (powmod(g, d, p) == 1)
                return d;
        return std::uint64_t{0};
    };
    std::uint64_t h = 0;
    for (std::uint64_t g = 2; g < p; ++g) {
        if (order_of(g) == p - 1) {
            h = g;
            break;
        }
    }
    if (h == 0)
        throw InternalError("primitive_roots_via_gcd: no generator found");

    std::vector<std::uint64_t> out;
    std::uint64_t hk = h;
    for (std::uint64_t k = 1; k <= p - 2; ++k) {
        if (std::gcd(k, p - 1) == 1)
            out.push_back(hk);
        hk = mulmod(hk, h, p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint64_t> sqrt_all_bruteforce(std::uint64_t m, std::uint64_t p) {
    if (p > kOracleCeiling)
        throw TooLargeError("sqrt_all_bruteforce: p exceeds the oracle ceiling");
    m %= p;
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < p; ++x)
        if (mulmod(x, x, p) == m)
            out.push_back(x);
    return out;
}

} // namespace residue_forge::oracle
