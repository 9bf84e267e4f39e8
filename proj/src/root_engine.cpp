#include "residue_forge/root_engine.hpp"

#include <algorithm>
#include <unordered_set>

namespace residue_forge {

namespace {

std::uint64_t first_qnr(const PrimeContext& ctx) {
    for (std::uint64_t m = 2; m < ctx.p; ++m)
        if (legendre(m, ctx) == -1)
            return m;
    throw InternalError("first_qnr: no non-residue found (p not prime?)");
}

// An element of exact order 2^n: z-th power of any non-residue.
std::uint64_t top_layer_generator(const PrimeContext& ctx) {
    return powmod(first_qnr(ctx), ctx.z, ctx.p);
}

} // namespace

bool is_primitive_root(std::uint64_t g, const PrimeContext& ctx) {
    if (g == 0 || g >= ctx.p)
        throw InputError("is_primitive_root: element out of range");
    if (powmod(g, ctx.pm1() / 2, ctx.p) == 1)
        return false;
    for (auto [q, e] : ctx.z_factors) {
        (void)e;
        if (powmod(g, ctx.pm1() / q, ctx.p) == 1)
            return false;
    }
    return true;
}

bool is_semi_primitive_root(std::uint64_t g, const PrimeContext& ctx) {
    if (g == 0 || g >= ctx.p)
        throw InputError("is_semi_primitive_root: element out of range");
    if (powmod(g, ctx.half(), ctx.p) != 1)
        return false; // both branches require a residue
    if (ctx.class4 == 1 && powmod(g, ctx.pm1() / 4, ctx.p) == 1)
        return false;
    for (auto [q, e] : ctx.z_factors) {
        (void)e;
        if (powmod(g, ctx.pm1() / (2 * q), ctx.p) == 1)
            return false;
    }
    return true;
}

std::vector<std::uint64_t> rk_set(const PrimeContext& ctx, unsigned k) {
    if (k > ctx.n)
        k = ctx.n;
    std::uint64_t w = top_layer_generator(ctx);
    // w^(2^(n-k)) has order 2^k; its powers are the whole subgroup.
    std::uint64_t gen = powmod(w, 1ull << (ctx.n - k), ctx.p);
    std::vector<std::uint64_t> out;
    out.reserve(1ull << k);
    std::uint64_t x = 1;
    do {
        out.push_back(x);
        x = mulmod(x, gen, ctx.p);
    } while (x != 1);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint64_t> rk_top_layer(const PrimeContext& ctx) {
    std::uint64_t w = top_layer_generator(ctx);
    std::vector<std::uint64_t> out;
    out.reserve(1ull << (ctx.n - 1));
    std::uint64_t w2 = mulmod(w, w, ctx.p);
    std::uint64_t x = w;
    for (std::uint64_t i = 0; i < (1ull << (ctx.n - 1)); ++i) {
        out.push_back(x);
        x = mulmod(x, w2, ctx.p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

RootClass classify(std::uint64_t g, const PrimeContext& ctx) {
    if (g == 0 || g >= ctx.p)
        throw InputError("classify: element out of range");
    RootClass rc;
    rc.element = g;
    rc.is_qr = legendre(g, ctx) == 1;
    rc.is_primitive = is_primitive_root(g, ctx);
    rc.is_semi_primitive = is_semi_primitive_root(g, ctx);
    rc.in_gz_prime = rc.is_qr;
    if (rc.in_gz_prime) {
        for (auto [q, e] : ctx.z_factors) {
            (void)e;
            if (powmod(g, ctx.pm1() / (2 * q), ctx.p) == 1) {
                rc.in_gz_prime = false;
                break;
            }
        }
    }
    return rc;
}

namespace {

// Candidates of exact order 2^n in the step-2 scan order: w^1, -w^1, w^3,
// -w^3, ... For n = 1 the first candidate is -1 and always matches, so the
// sign variant (which would fall out of the layer) is never reached.
std::uint64_t match_m_prime(std::uint64_t g, std::uint64_t w, const PrimeContext& ctx) {
    std::uint64_t gz_pow = powmod(g, ctx.z, ctx.p);
    std::uint64_t w2 = mulmod(w, w, ctx.p);
    std::uint64_t cand = w;
    for (std::uint64_t k = 0; k < (1ull << (ctx.n - 1)); ++k) {
        for (std::uint64_t mp : {cand, ctx.p - cand}) {
            std::uint64_t t = powmod(mp, 2 * ctx.z, ctx.p);
            if (mulmod(gz_pow, t, ctx.p) == 1)
                return mp;
        }
        cand = mulmod(cand, w2, ctx.p);
    }
    throw InternalError("match_m_prime: no order-2^n partner found");
}

} // namespace

SeedPair find_seed(const PrimeContext& ctx) {
    if (ctx.p == 3)
        return SeedPair{1, 2};

    std::uint64_t g_z = 0;
    std::uint64_t qnr = 0;
    for (std::uint64_t m = 2; m + 1 < ctx.p; ++m) {
        std::uint64_t euler = powmod(m, ctx.half(), ctx.p);
        if (euler == 1) {
            // Residue test: m lands in the residue-side coset when no odd
            // prime factor of p - 1 collapses it.
            bool ok = true;
            for (auto [q, e] : ctx.z_factors) {
                (void)e;
                if (powmod(m, ctx.pm1() / (2 * q), ctx.p) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                std::uint64_t r = qnr;
                for (std::uint64_t j = m + 1; r == 0; ++j)
                    if (legendre(j, ctx) == -1)
                        r = j;
                g_z = mulmod(m, powmod(r, ctx.z, ctx.p), ctx.p);
                break;
            }
        } else {
            if (qnr == 0)
                qnr = m;
            bool ok = true;
            for (auto [q, e] : ctx.z_factors) {
                (void)e;
                if (powmod(m, ctx.pm1() / q, ctx.p) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                g_z = m;
                break;
            }
        }
    }
    if (g_z == 0)
        throw InternalError("find_seed: scan exhausted without a primitive root");

    std::uint64_t g = mulmod(g_z, g_z, ctx.p);
    std::uint64_t w = powmod(g_z, ctx.z, ctx.p);
    std::uint64_t m_prime = match_m_prime(g, w, ctx);
    return SeedPair{g, m_prime};
}

SeedPair make_seed_pair(std::uint64_t g, std::uint64_t m_prime, const PrimeContext& ctx) {
    if (!is_semi_primitive_root(g, ctx))
        throw InputError("make_seed_pair: g is not semi-primitive");
    // Exact order 2^n: the 2^(n-1) power must be -1.
    if (powmod(m_prime, 1ull << (ctx.n - 1), ctx.p) != ctx.p - 1)
        throw InputError("make_seed_pair: m_prime does not have order 2^n");
    std::uint64_t rel = mulmod(powmod(g, ctx.z, ctx.p), powmod(m_prime, 2 * ctx.z, ctx.p), ctx.p);
    if (rel != 1)
        throw InputError("make_seed_pair: defining congruence fails");
    return SeedPair{g, m_prime};
}

std::vector<std::uint64_t> u_sequence(const SeedPair& seed, std::uint64_t a, const PrimeContext& ctx) {
    if ((a & 1) == 0)
        throw BadMultiplierError("u_sequence: multiplier must be odd");
    for (auto [q, e] : ctx.z_factors) {
        (void)e;
        if (a % q == 0)
            throw BadMultiplierError("u_sequence: multiplier shares factor " + std::to_string(q) +
                                     " with z");
    }
    std::uint64_t period = logd2_via_sequence(seed, ctx);
    std::vector<std::uint64_t> out;
    out.reserve(period);
    std::uint64_t mult = powmod(seed.m_prime, a, ctx.p);
    std::uint64_t u = powmod(seed.g, a, ctx.p);
    for (std::uint64_t x = 0; x < period; ++x) {
        out.push_back(u);
        std::uint64_t t = mulmod(mult, u, ctx.p);
        u = mulmod(t, t, ctx.p);
    }
    return out;
}

std::uint64_t logd2_via_sequence(const SeedPair& seed, const PrimeContext& ctx) {
    std::uint64_t u = seed.g;
    for (std::uint64_t x = 1; x <= ctx.p; ++x) {
        std::uint64_t t = mulmod(seed.m_prime, u, ctx.p);
        u = mulmod(t, t, ctx.p);
        if (u == seed.g)
            return x;
    }
    throw InternalError("logd2_via_sequence: sequence failed to return to g");
}

EnumerationResult enumerate_all(const PrimeContext& ctx) {
    EnumerationResult res;
    if (ctx.p == 3) {
        res.gz = {2};
        res.gs = {1};
        res.logd2 = 1;
        return res;
    }

    SeedPair seed = find_seed(ctx);
    res.logd2 = logd2_via_sequence(seed, ctx);

    Factorization zf;
    zf.value = ctx.z;
    zf.factors = ctx.z_factors;
    std::uint64_t gs_target = euler_phi(zf) << (ctx.n >= 2 ? ctx.n - 2 : 0);

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(gs_target * 2);
    res.gs.reserve(gs_target);
    res.gz.reserve(ctx.class4 == 1 ? 2 * gs_target : gs_target);

    auto emit_chunk = [&](std::uint64_t a) {
        std::uint64_t mult = powmod(seed.m_prime, a, ctx.p);
        std::uint64_t u = powmod(seed.g, a, ctx.p);
        for (std::uint64_t x = 0; x < res.logd2; ++x) {
            seen.insert(u);
            res.gs.push_back(u);
            std::uint64_t root = mulmod(mult, u, ctx.p);
            res.gz.push_back(root);
            if (ctx.class4 == 1)
                res.gz.push_back(ctx.p - root);
            u = mulmod(root, root, ctx.p);
        }
    };

    emit_chunk(1);
    if (res.gs.size() < gs_target) {
        std::vector<std::uint64_t> exclude;
        for (auto [q, e] : ctx.z_factors) {
            (void)e;
            exclude.push_back(q);
        }
        PrimeStream stream(3, exclude);
        while (res.gs.size() < gs_target) {
            std::uint64_t a = stream.next();
            if (seen.count(powmod(seed.g, a, ctx.p)))
                continue; // chunk already covered
            res.a_set.push_back(a);
            emit_chunk(a);
        }
    }
    if (seen.size() != res.gs.size())
        throw InternalError("enumerate_all: accepted chunks were not disjoint");

    std::sort(res.gz.begin(), res.gz.end());
    std::sort(res.gs.begin(), res.gs.end());
    return res;
}

std::vector<std::uint64_t> semiprimitive_powers(std::uint64_t m, const PrimeContext& ctx) {
    if (!is_primitive_root(m, ctx))
        throw InputError("semiprimitive_powers: m is not a primitive root");
    std::vector<std::uint64_t> out;
    if (ctx.n == 1)
        return out; // degenerate: no exponents to emit
    out.reserve(ctx.n - 1);
    for (unsigned t = 1; t < ctx.n; ++t) {
        std::uint64_t a_t = (1ull << (ctx.n - t)) * ctx.z - 1;
        out.push_back(powmod(m, 2 * a_t, ctx.p));
    }
    return out;
}

std::uint64_t mod_inverse(std::uint64_t m, const PrimeContext& ctx) {
    if (m == 0 || m >= ctx.p)
        throw InputError("mod_inverse: element out of range");
    return powmod(m, ctx.p - 2, ctx.p);
}

} // namespace residue_forge
