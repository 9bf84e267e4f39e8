#include "residue_forge/arithmetic.hpp"

#include <algorithm>
#include <numeric>

namespace residue_forge {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t acc = 1 % p;
    std::uint64_t sq = base % p;
    while (exp > 0) {
        if (exp & 1)
            acc = mulmod(acc, sq, p);
        sq = mulmod(sq, sq, p);
        exp >>= 1;
    }
    return acc;
}

namespace {

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) {
    std::uint64_t x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0)
            return n == q;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is known to be exact for every n < 3.3 * 10^24.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (!miller_rabin_witness(n, a, d, s))
            return false;
    }
    return true;
}

namespace {

std::uint64_t brent_rho(std::uint64_t n, std::uint64_t c0) {
    // Brent's variant of Pollard's cycle method; n is odd, composite, and
    // has no factor below the trial-division bound.
    for (std::uint64_t c = c0;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1;
        std::uint64_t power = 1, lam = 1;
        std::uint64_t saved = 2;
        while (d == 1) {
            if (power == lam) {
                x = y;
                power <<= 1;
                lam = 0;
            }
            // Batch 64 steps per gcd to amortize.
            std::uint64_t prod = 1;
            std::uint64_t batch = std::min<std::uint64_t>(64, power - lam);
            saved = y;
            for (std::uint64_t i = 0; i < batch; ++i) {
                y = (mulmod(y, y, n) + c) % n;
                std::uint64_t diff = x > y ? x - y : y - x;
                if (diff == 0)
                    diff = 1;
                prod = mulmod(prod, diff, n);
            }
            lam += batch;
            d = std::gcd(prod, n);
        }
        if (d != n)
            return d;
        // Batch overshot an actual factor; redo one step at a time.
        y = saved;
        d = 1;
        while (d == 1 || d == n) {
            y = (mulmod(y, y, n) + c) % n;
            std::uint64_t diff = x > y ? x - y : y - x;
            if (diff == 0)
                break;
            d = std::gcd(diff, n);
        }
        if (d != 1 && d != n)
            return d;
        // Rare degenerate cycle: retry with another polynomial.
    }
}

void split(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1)
        return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = brent_rho(n, 1);
    split(d, out);
    split(n / d, out);
}

} // namespace

Factorization factorize(std::uint64_t m) {
    if (m == 0)
        throw InputError("factorize: value must be positive");
    Factorization f;
    f.value = m;
    std::uint64_t rest = m;
    auto take = [&](std::uint64_t q) {
        unsigned e = 0;
        while (rest % q == 0) {
            rest /= q;
            ++e;
        }
        if (e > 0)
            f.factors.emplace_back(q, e);
    };
    take(2);
    take(3);
    for (std::uint64_t q = 5; q <= 1'000'000 && q * q <= rest; q += 6) {
        take(q);
        take(q + 2);
    }
    if (rest > 1) {
        if (is_prime_u64(rest)) {
            f.factors.emplace_back(rest, 1);
        } else {
            std::vector<std::uint64_t> primes;
            split(rest, primes);
            std::sort(primes.begin(), primes.end());
            for (std::size_t i = 0; i < primes.size();) {
                std::size_t j = i;
                while (j < primes.size() && primes[j] == primes[i])
                    ++j;
                f.factors.emplace_back(primes[i], static_cast<unsigned>(j - i));
                i = j;
            }
        }
    }
    return f;
}

std::uint64_t euler_phi(const Factorization& f) {
    std::uint64_t phi = 1;
    for (auto [q, e] : f.factors) {
        phi *= q - 1;
        for (unsigned i = 1; i < e; ++i)
            phi *= q;
    }
    return phi;
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
    std::vector<std::uint64_t> ds{1};
    for (auto [q, e] : f.factors) {
        std::size_t old = ds.size();
        std::uint64_t qe = 1;
        for (unsigned i = 0; i < e; ++i) {
            qe *= q;
            for (std::size_t j = 0; j < old; ++j)
                ds.push_back(ds[j] * qe);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

int legendre(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0)
        return 0;
    std::uint64_t e = powmod(a, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

PrimeContext build_context(std::uint64_t p) {
    if (p == 2)
        throw EvenPrimeError("build_context: p = 2 is outside scope (odd primes only)");
    if (p >= (1ull << 63))
        throw InputError("build_context: p must be below 2^63");
    if (!is_prime_u64(p))
        throw NotPrimeError("build_context: " + std::to_string(p) + " is not prime");
    PrimeContext ctx;
    ctx.p = p;
    std::uint64_t m = p - 1;
    while ((m & 1) == 0) {
        m >>= 1;
        ++ctx.n;
    }
    ctx.z = m;
    ctx.z_factors = factorize(m).factors;
    ctx.class4 = static_cast<unsigned>(p % 4);
    ctx.class8 = static_cast<unsigned>(p % 8);
    return ctx;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
    if (m == 0)
        throw InputError("multiplicative_order: modulus must be positive");
    if (m == 1)
        return 1;
    a %= m;
    Factorization fm = factorize(m);
    for (auto [q, e] : fm.factors) {
        (void)e;
        if (a % q == 0)
            throw NotCoprimeError("multiplicative_order: base shares factor " + std::to_string(q) +
                                  " with modulus");
    }
    std::uint64_t ord = euler_phi(fm);
    for (auto [q, e] : factorize(ord).factors) {
        (void)e;
        while (ord % q == 0 && powmod(a, ord / q, m) == 1)
            ord /= q;
    }
    return ord;
}

PrimeStream::PrimeStream(std::uint64_t start, std::vector<std::uint64_t> exclude)
    : exclude_(std::move(exclude)), segment_lo_(start < 2 ? 2 : start) {
    std::sort(exclude_.begin(), exclude_.end());
}

namespace {
constexpr std::uint64_t kSegment = 1 << 16;
}

void PrimeStream::refill() {
    while (true) {
        std::uint64_t lo = segment_lo_;
        std::uint64_t hi = lo + kSegment; // half-open [lo, hi)
        // Grow the base primes to cover sqrt(hi).
        std::uint64_t need = 1;
        while (need * need < hi)
            ++need;
        if (need > base_limit_) {
            std::uint64_t new_limit = std::max<std::uint64_t>(need + 64, 2 * base_limit_);
            std::vector<char> comp(new_limit + 1, 0);
            base_primes_.clear();
            for (std::uint64_t i = 2; i <= new_limit; ++i) {
                if (comp[i])
                    continue;
                base_primes_.push_back(i);
                for (std::uint64_t j = i * i; j <= new_limit; j += i)
                    comp[j] = 1;
            }
            base_limit_ = new_limit;
        }
        std::vector<char> comp(kSegment, 0);
        for (std::uint64_t q : base_primes_) {
            if (q * q >= hi)
                break;
            std::uint64_t first = std::max(q * q, (lo + q - 1) / q * q);
            for (std::uint64_t j = first; j < hi; j += q)
                comp[j - lo] = 1;
        }
        window_.clear();
        window_pos_ = 0;
        for (std::uint64_t v = lo; v < hi; ++v) {
            if (v < 2 || comp[v - lo])
                continue;
            if (std::binary_search(exclude_.begin(), exclude_.end(), v))
                continue;
            window_.push_back(v);
        }
        segment_lo_ = hi;
        if (!window_.empty())
            return;
    }
}

std::uint64_t PrimeStream::next() {
    if (window_pos_ >= window_.size())
        refill();
    return window_[window_pos_++];
}

} // namespace residue_forge
