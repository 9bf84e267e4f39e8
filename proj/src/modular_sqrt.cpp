#include "residue_forge/modular_sqrt.hpp"

#include <algorithm>

#include "residue_forge/errors.hpp"

namespace residue_forge {

namespace {

std::uint64_t scan_qnr(const PrimeContext& ctx) {
    for (std::uint64_t g = 2; g < ctx.p; ++g)
        if (powmod(g, ctx.half(), ctx.p) == ctx.p - 1)
            return g;
    throw InternalError("scan_qnr: no non-residue below p");
}

// Finds (root, r) with root = m^((p+1-2z)/4) * r and root^2 = m. The scan
// covers the lower tower first, then the order-2^n layer; some r in the
// union always works when m is a residue.
std::pair<std::uint64_t, std::uint64_t> p1_root_with_witness(std::uint64_t m,
                                                             const PrimeContext& ctx,
                                                             const SqrtTower& tower) {
    std::uint64_t base = powmod(m, (ctx.p + 1 - 2 * ctx.z) / 4, ctx.p);
    for (const auto* part : {&tower.lower, &tower.upper}) {
        for (std::uint64_t r : *part) {
            std::uint64_t cand = mulmod(base, r, ctx.p);
            if (mulmod(cand, cand, ctx.p) == m)
                return {cand, r};
        }
    }
    throw InternalError("sqrt_p1: tower exhausted for a residue input");
}

} // namespace

SqrtTower build_sqrt_tower(const PrimeContext& ctx) {
    if (ctx.class4 != 1)
        throw WrongPrimeClassError("build_sqrt_tower: requires p = 1 mod 4");
    if (ctx.n > 24)
        throw TooLargeError("build_sqrt_tower: 2^(n-1) candidates exceed the ceiling");
    std::uint64_t g = scan_qnr(ctx);
    std::uint64_t w = powmod(g, ctx.z, ctx.p);
    std::uint64_t w2 = mulmod(w, w, ctx.p);

    SqrtTower tower;
    tower.lower.reserve(1ull << (ctx.n - 1));
    tower.upper.reserve(1ull << (ctx.n - 1));
    // Lower part: {+-w^(2k), 1 <= k <= 2^(n-2)} enumerates all 2^(n-1)-th
    // roots of unity (k = 2^(n-2) contributes -1 and +1).
    std::uint64_t x = w2;
    for (std::uint64_t k = 1; k <= (1ull << (ctx.n - 2)); ++k) {
        tower.lower.push_back(x);
        tower.lower.push_back(ctx.p - x);
        x = mulmod(x, w2, ctx.p);
    }
    // Upper part: odd powers of w, the elements of exact order 2^n.
    x = w;
    for (std::uint64_t k = 0; k < (1ull << (ctx.n - 2)); ++k) {
        tower.upper.push_back(x);
        tower.upper.push_back(ctx.p - x);
        x = mulmod(x, w2, ctx.p);
    }
    return tower;
}

std::optional<std::array<std::uint64_t, 2>> sqrt_p3(std::uint64_t m, const PrimeContext& ctx) {
    if (ctx.class4 != 3)
        throw WrongPrimeClassError("sqrt_p3: requires p = 3 mod 4");
    if (m == 0 || m >= ctx.p)
        throw InputError("sqrt_p3: residue out of range");
    if (powmod(m, ctx.half(), ctx.p) != 1)
        return std::nullopt;
    std::uint64_t x = powmod(m, (ctx.p + 1) / 4, ctx.p);
    return std::array<std::uint64_t, 2>{x, ctx.p - x};
}

std::optional<std::array<std::uint64_t, 2>> sqrt_p1(std::uint64_t m, const PrimeContext& ctx,
                                                    const SqrtTower& tower) {
    if (ctx.class4 != 1)
        throw WrongPrimeClassError("sqrt_p1: requires p = 1 mod 4");
    if (m == 0 || m >= ctx.p)
        throw InputError("sqrt_p1: residue out of range");
    if (powmod(m, ctx.half(), ctx.p) != 1)
        return std::nullopt;
    auto [root, r] = p1_root_with_witness(m, ctx, tower);
    (void)r;
    return std::array<std::uint64_t, 2>{root, ctx.p - root};
}

bool qr_flag_of_root(std::uint64_t m, const PrimeContext& ctx, const SqrtTower& tower) {
    if (ctx.class4 != 1)
        throw WrongPrimeClassError("qr_flag_of_root: requires p = 1 mod 4");
    if (m == 0 || m >= ctx.p)
        throw InputError("qr_flag_of_root: residue out of range");
    if (legendre(m, ctx) != 1)
        throw NotAResidueError("qr_flag_of_root: m is not a quadratic residue");
    auto [root, r] = p1_root_with_witness(m, ctx, tower);
    bool flag = legendre(root, ctx) == 1;
    if (flag != (legendre(r, ctx) == 1))
        throw InternalError("qr_flag_of_root: root residuosity disagrees with witness");
    return flag;
}

bool qr_flag_of_root(std::uint64_t m, const PrimeContext& ctx) {
    SqrtTower tower = build_sqrt_tower(ctx);
    return qr_flag_of_root(m, ctx, tower);
}

std::vector<SqrtSolution> batch_solve(const std::vector<std::uint64_t>& cs, std::uint64_t p,
                                      BatchStats& stats) {
    if (p == 2)
        throw EvenPrimeError("batch_solve: p = 2 is outside scope");
    PrimeContext ctx = build_context(p);

    SqrtTower tower;
    if (ctx.class4 == 1) {
        tower = build_sqrt_tower(ctx);
        ++stats.qnr_scans;
        ++stats.tower_builds;
    }

    std::vector<SqrtSolution> out;
    out.reserve(cs.size());
    for (std::uint64_t c : cs) {
        if (c == 0)
            throw InputError("batch_solve: c must be positive");
        SqrtSolution sol;
        sol.c = c;
        sol.x_parity = static_cast<unsigned>(1 - (c & 1));

        std::uint64_t cm = c % p;
        if (cm == 0) {
            // x must be 0 mod p; parity picks 0 or p itself.
            sol.x = (c & 1) ? 0 : p;
            out.push_back(sol);
            continue;
        }
        std::uint64_t m = p - cm; // (-c) mod p
        std::optional<std::array<std::uint64_t, 2>> roots;
        if (ctx.class4 == 3)
            roots = sqrt_p3(m, ctx);
        else
            roots = sqrt_p1(m, ctx, tower);
        if (!roots) {
            out.push_back(sol);
            continue;
        }
        std::uint64_t lo = std::min((*roots)[0], (*roots)[1]);
        std::uint64_t hi = std::max((*roots)[0], (*roots)[1]);
        for (std::uint64_t cand : {lo, hi, lo + p, hi + p}) {
            if ((cand & 1) == sol.x_parity) {
                sol.x = cand;
                break;
            }
        }
        if (!sol.x)
            throw InternalError("batch_solve: parity lift failed");
        out.push_back(sol);
    }
    return out;
}

std::vector<SqrtSolution> batch_solve(const std::vector<std::uint64_t>& cs, std::uint64_t p) {
    BatchStats stats;
    return batch_solve(cs, p, stats);
}

} // namespace residue_forge
