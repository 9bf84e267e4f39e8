#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unordered_set>

#include "invariant_checks.hpp"
#include "residue_forge/root_engine.hpp"

using namespace residue_forge;

TEST_CASE("classification basics") {
    auto c3 = build_context(3);
    auto c13 = build_context(13);

    CHECK(is_primitive_root(2, c3));
    CHECK_FALSE(is_primitive_root(1, c13));
    CHECK(is_primitive_root(2, c13));
    CHECK_FALSE(is_primitive_root(4, c13));

    CHECK(is_semi_primitive_root(1, c3));
    CHECK(is_semi_primitive_root(4, c13));
    CHECK(is_semi_primitive_root(10, c13));
    CHECK_FALSE(is_semi_primitive_root(3, c13));

    // squares of primitive roots are semi-primitive
    for (std::uint64_t p : {7ull, 13ull, 17ull, 101ull}) {
        auto ctx = build_context(p);
        for (std::uint64_t g = 1; g < p; ++g)
            if (is_primitive_root(g, ctx))
                CHECK(is_semi_primitive_root(mulmod(g, g, p), ctx));
    }

    auto r = classify(2, c3);
    CHECK_FALSE(r.is_qr);
    CHECK(r.is_primitive);
    CHECK_FALSE(r.is_semi_primitive);
    CHECK_FALSE(r.in_gz_prime);

    r = classify(4, c13);
    CHECK(r.is_qr);
    CHECK_FALSE(r.is_primitive);
    CHECK(r.is_semi_primitive);
    CHECK(r.in_gz_prime);

    r = classify(12, c13);
    CHECK(r.is_qr);
    CHECK_FALSE(r.is_primitive);
    CHECK_FALSE(r.is_semi_primitive);
    CHECK_FALSE(r.in_gz_prime);

    // flag implications over a range of primes
    for (std::uint64_t p = 3; p <= 200; p += 2) {
        if (!is_prime_u64(p))
            continue;
        auto ctx = build_context(p);
        for (std::uint64_t g = 1; g < p; ++g) {
            auto rc = classify(g, ctx);
            if (rc.is_primitive)
                CHECK_FALSE(rc.is_qr);
            if (rc.is_semi_primitive) {
                CHECK(rc.is_qr);
                CHECK(rc.in_gz_prime);
            }
        }
    }
}

TEST_CASE("tower sets") {
    auto c13 = build_context(13);
    CHECK(rk_set(c13, 0) == std::vector<std::uint64_t>{1});
    CHECK(rk_set(c13, 1) == std::vector<std::uint64_t>{1, 12});
    CHECK(rk_set(c13, 2) == std::vector<std::uint64_t>{1, 5, 8, 12});
    CHECK(rk_set(c13, 5) == rk_set(c13, 2)); // clamps past n

    CHECK(rk_top_layer(build_context(7)) == std::vector<std::uint64_t>{6});
    CHECK(rk_top_layer(c13) == std::vector<std::uint64_t>{5, 8});

    // p = 17: n = 4, so the layer holds 2^3 = 8 elements of exact order 16
    auto t17 = rk_top_layer(build_context(17));
    CHECK(t17.size() == 8);
    for (std::uint64_t v : t17) {
        CHECK(powmod(v, 8, 17) == 16);
        CHECK(powmod(v, 16, 17) == 1);
    }
}

TEST_CASE("seed search") {
    auto c3 = build_context(3);
    auto s3 = find_seed(c3);
    CHECK(s3.g == 1);
    CHECK(s3.m_prime == 2);

    auto c13 = build_context(13);
    auto s13 = find_seed(c13);
    CHECK((s13.g == 4 || s13.g == 10));
    CHECK((s13.m_prime == 5 || s13.m_prime == 8));

    for (std::uint64_t p = 3; p <= 500; p += 2) {
        if (!is_prime_u64(p))
            continue;
        auto ctx = build_context(p);
        auto seed = find_seed(ctx);
        CHECK(is_semi_primitive_root(seed.g, ctx));
        CHECK(powmod(seed.m_prime, 1ull << (ctx.n - 1), p) == p - 1); // exact order 2^n
        std::uint64_t rel =
            mulmod(powmod(seed.g, ctx.z, p), powmod(seed.m_prime, 2 * ctx.z, p), p);
        CHECK(rel == 1);
        // make_seed_pair accepts what find_seed produced
        CHECK_NOTHROW(make_seed_pair(seed.g, seed.m_prime, ctx));
    }

    CHECK_THROWS_AS(make_seed_pair(3, 5, build_context(13)), InputError);  // 3 not semi-primitive
    CHECK_THROWS_AS(make_seed_pair(4, 12, build_context(13)), InputError); // 12 has order 2
}

TEST_CASE("u_sequence") {
    auto c13 = build_context(13);
    auto seed = make_seed_pair(10, 5, c13);
    auto seq = u_sequence(seed, 1, c13);
    CHECK(seq == std::vector<std::uint64_t>{10, 4});
    CHECK(logd2_via_sequence(seed, c13) == 2);

    CHECK_THROWS_AS(u_sequence(seed, 2, c13), BadMultiplierError); // even
    CHECK_THROWS_AS(u_sequence(seed, 9, c13), BadMultiplierError); // shares 3 with z

    // constant sequences when z = 1
    auto c257 = build_context(257);
    auto s257 = find_seed(c257);
    CHECK(logd2_via_sequence(s257, c257) == 1);
    CHECK(u_sequence(s257, 1, c257).size() == 1);

    // closed form U_x = g^(2^x a) * m'^((2^(x+1)-2) a), exponents mod p-1
    for (std::uint64_t p : {7ull, 13ull, 41ull, 113ull, 1009ull}) {
        auto ctx = build_context(p);
        auto sp = find_seed(ctx);
        std::vector<std::uint64_t> zdivs;
        for (auto [q, e] : ctx.z_factors) {
            (void)e;
            zdivs.push_back(q);
        }
        PrimeStream as(3, zdivs);
        for (std::uint64_t a : {std::uint64_t{1}, as.next(), as.next()}) {
            auto s = u_sequence(sp, a, ctx);
            for (std::size_t x = 0; x < s.size(); ++x) {
                std::uint64_t pm1 = p - 1;
                std::uint64_t e_g = mulmod(powmod(2, x, pm1), a % pm1, pm1);
                std::uint64_t e_m =
                    mulmod((powmod(2, x + 1, pm1) + pm1 - 2 % pm1) % pm1, a % pm1, pm1);
                std::uint64_t closed =
                    mulmod(powmod(sp.g, e_g, p), powmod(sp.m_prime, e_m, p), p);
                CHECK(s[x] == closed);
            }
        }
    }
}

TEST_CASE("enumerate_all on pinned primes") {
    auto r3 = enumerate_all(build_context(3));
    CHECK(r3.gz == std::vector<std::uint64_t>{2});
    CHECK(r3.gs == std::vector<std::uint64_t>{1});
    CHECK(r3.logd2 == 1);
    CHECK(r3.a_set.empty());

    auto r13 = enumerate_all(build_context(13));
    CHECK(r13.gz == std::vector<std::uint64_t>{2, 6, 7, 11});
    CHECK(r13.gs == std::vector<std::uint64_t>{4, 10});

    auto r257 = enumerate_all(build_context(257));
    CHECK(r257.gz.size() == 128);
    CHECK(r257.gs.size() == 64);
    CHECK(r257.a_set.size() == 63);
    CHECK(*std::max_element(r257.a_set.begin(), r257.a_set.end()) > 257);

    // chunk accounting
    for (std::uint64_t p : {5ull, 7ull, 17ull, 101ull, 257ull, 401ull}) {
        auto res = enumerate_all(build_context(p));
        CHECK((res.a_set.size() + 1) * res.logd2 == res.gs.size());
    }
}

TEST_CASE("semiprimitive powers of a primitive root") {
    auto c13 = build_context(13);
    CHECK(semiprimitive_powers(2, c13) == std::vector<std::uint64_t>{10});
    CHECK_THROWS_AS(semiprimitive_powers(4, c13), InputError); // not primitive

    auto c7 = build_context(7);
    CHECK(semiprimitive_powers(3, c7).empty());

    auto c17 = build_context(17);
    auto v = semiprimitive_powers(3, c17);
    CHECK(v.size() == 3);
    std::unordered_set<std::uint64_t> uniq(v.begin(), v.end());
    CHECK(uniq.size() == 3);
    for (std::uint64_t x : v)
        CHECK(is_semi_primitive_root(x, c17));

    // distinct semi-primitive roots throughout, and the wrapped exponent
    // 2 a_0 mod (p-1) lands back on the first entry
    for (std::uint64_t p = 5; p <= 300; p += 2) {
        if (!is_prime_u64(p))
            continue;
        auto ctx = build_context(p);
        std::uint64_t m = 0;
        for (std::uint64_t g = 2; g < p; ++g)
            if (is_primitive_root(g, ctx)) {
                m = g;
                break;
            }
        auto powers = semiprimitive_powers(m, ctx);
        CHECK(powers.size() == ctx.n - 1);
        std::unordered_set<std::uint64_t> dd(powers.begin(), powers.end());
        CHECK(dd.size() == powers.size());
        for (std::uint64_t x : powers)
            CHECK(is_semi_primitive_root(x, ctx));
        if (ctx.n >= 2) {
            std::uint64_t a0 = ((1ull << ctx.n) * ctx.z - 1) % (p - 1);
            CHECK(powmod(m, mulmod(2, a0, p - 1), p) == powers.front());
        }
    }
}

TEST_CASE("inverse preserves classification") {
    auto c13 = build_context(13);
    CHECK(mod_inverse(2, c13) == 7);
    CHECK(mod_inverse(1, c13) == 1);
    CHECK(mod_inverse(4, c13) == 10);

    for (std::uint64_t p : {7ull, 13ull, 97ull, 193ull}) {
        auto ctx = build_context(p);
        for (std::uint64_t m = 1; m < p; ++m) {
            std::uint64_t inv = mod_inverse(m, ctx);
            CHECK(mulmod(m, inv, p) == 1);
            auto a = classify(m, ctx);
            auto b = classify(inv, ctx);
            CHECK(a.is_qr == b.is_qr);
            CHECK(a.is_primitive == b.is_primitive);
            CHECK(a.is_semi_primitive == b.is_semi_primitive);
            CHECK(a.in_gz_prime == b.in_gz_prime);
        }
    }
}

TEST_CASE("full invariant suite on small primes") {
    for (std::uint64_t p = 3; p <= 200; p += 2) {
        if (!is_prime_u64(p))
            continue;
        auto ctx = build_context(p);
        auto res = enumerate_all(ctx);
        auto ref = residue_forge::oracle::order_table(p);
        auto check = rf_checks::run_root_engine_suite(ctx, res, ref, 4096);
        INFO(check.detail);
        CHECK(check.ok);
    }
}
