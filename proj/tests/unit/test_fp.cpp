#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "symfp/error.hpp"
#include "symfp/fp.hpp"

using namespace symfp;

TEST_CASE("FpContext accepts odd primes below 2^31 only") {
    CHECK_NOTHROW(FpContext(3));
    CHECK_NOTHROW(FpContext(2147483647));
    CHECK_THROWS_AS(FpContext(2), InvalidArgument);
    CHECK_THROWS_AS(FpContext(9), InvalidArgument);
    CHECK_THROWS_AS(FpContext(1), InvalidArgument);
    CHECK_THROWS_AS(FpContext(2147483659ULL), InvalidArgument);  // prime, but >= 2^31
}

TEST_CASE("field helpers agree with direct integer arithmetic") {
    for (std::uint64_t p : {3ULL, 5ULL, 101ULL, 65521ULL, 2147483647ULL}) {
        const FpContext ctx(p);
        const std::int64_t P = static_cast<std::int64_t>(p);
        for (std::int64_t a : std::vector<std::int64_t>{0, 1, 2, P - 1, P / 2}) {
            CHECK(ctx.reduce(-a) == oracle::md(-a, P));
            for (std::int64_t b : std::vector<std::int64_t>{0, 1, P - 2, P / 3}) {
                const auto ra = static_cast<Residue>(a), rb = static_cast<Residue>(b);
                CHECK(ctx.add(ra, rb) == oracle::md(a + b, P));
                CHECK(ctx.sub(ra, rb) == oracle::md(a - b, P));
                CHECK(ctx.mul(ra, rb) == static_cast<Residue>((static_cast<unsigned __int128>(a) * b) % p));
            }
        }
    }
}

TEST_CASE("mod_inv examples") {
    CHECK(mod_inv(1, FpContext(7)) == 1);
    CHECK(mod_inv(2, FpContext(5)) == 3);
    CHECK(mod_inv(4, FpContext(7)) == 2);
    CHECK(mod_inv(-1, FpContext(7)) == 6);
}

TEST_CASE("mod_inv rejects zero residues") {
    const FpContext ctx(7);
    CHECK_THROWS_WITH_AS(mod_inv(0, ctx), "non-invertible residue", InvalidArgument);
    CHECK_THROWS_WITH_AS(mod_inv(14, ctx), "non-invertible residue", InvalidArgument);
    CHECK_THROWS_AS((void)ctx.inv(0), InvalidArgument);
}

TEST_CASE("mod_inv is an involution and matches search, exhaustively for p <= 101") {
    for (std::uint64_t p = 3; p <= 101; p += 2) {
        if (!oracle::is_prime_trial(p)) continue;
        const FpContext ctx(p);
        for (std::int64_t a = 1; a < static_cast<std::int64_t>(p); ++a) {
            const Residue b = mod_inv(a, ctx);
            REQUIRE(static_cast<std::int64_t>(b) == oracle::inv_search(a, static_cast<std::int64_t>(p)));
            REQUIRE(mod_inv(b, ctx) == static_cast<Residue>(a));
            REQUIRE(ctx.inv(static_cast<Residue>(a)) == b);
        }
    }
}

TEST_CASE("pow and dot") {
    const FpContext ctx(2147483647);
    CHECK(ctx.pow(3, 2147483646) == 1);  // Fermat
    CHECK(ctx.pow(5, 0) == 1);
    std::vector<Residue> a(1000), b(1000);
    unsigned __int128 acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = static_cast<Residue>(2147483646 - i);
        b[i] = static_cast<Residue>(2147483000 + i);
        acc += static_cast<unsigned __int128>(a[i]) * b[i];
    }
    CHECK(ctx.dot(a, b) == static_cast<Residue>(acc % 2147483647));
}

TEST_CASE("is_prime examples and errors") {
    CHECK(is_prime(3));
    CHECK_FALSE(is_prime(91));
    CHECK(is_prime(2147483647));
    CHECK(is_prime(2));
    CHECK(is_prime(18446744073709551557ULL));  // largest 64-bit prime
    CHECK_FALSE(is_prime(3215031751ULL));      // strong pseudoprime to bases 2, 3, 5, 7
    CHECK_FALSE(is_prime(3825123056546413051ULL));
    CHECK_THROWS_WITH_AS(is_prime(1), "out of range", InvalidArgument);
    CHECK_THROWS_WITH_AS(is_prime(0), "out of range", InvalidArgument);
}

TEST_CASE("is_prime agrees with a sieve up to 10^6") {
    const auto prime = oracle::sieve(1000000);
    for (std::uint64_t m = 2; m <= 1000000; ++m) REQUIRE(is_prime(m) == prime[m]);
}

TEST_CASE("is_prime agrees with trial division on large samples") {
    for (std::uint64_t m = 2147483000; m < 2147484000; ++m) REQUIRE(is_prime(m) == oracle::is_prime_trial(m));
}

TEST_CASE("primes_in_window examples") {
    using V = std::vector<std::uint64_t>;
    CHECK(primes_in_window({std::log(10.0)}) == V{7});
    CHECK(primes_in_window({std::log(6.0)}) == V{5});
    CHECK(primes_in_window({std::log(30.0)}) == V{17, 19, 23, 29});
    // Left end excluded, right end included.
    CHECK(primes_in_window({std::log(14.0)}) == V{11, 13});
    CHECK(primes_in_window({std::log(13.0)}) == V{7, 11, 13});
}

TEST_CASE("primes_in_window returns exactly the primes of (e^X/2, e^X]") {
    const auto prime = oracle::sieve(200000);
    for (double X = 1.0; X < 12.0; X += 0.173) {
        const double hi = std::exp(X);
        std::vector<std::uint64_t> expect;
        for (std::uint64_t q = 2; q <= static_cast<std::uint64_t>(hi); ++q)
            if (prime[q] && 2.0 * static_cast<double>(q) > hi) expect.push_back(q);
        const auto got = primes_in_window({X});
        REQUIRE(got == expect);
        for (auto q : got) {
            CHECK(is_prime(q));
            CHECK(static_cast<double>(q) <= hi);
            CHECK(static_cast<double>(q) > hi / 2.0);
        }
    }
}

TEST_CASE("odd_primes and primes_between") {
    CHECK(odd_primes(5) == std::vector<std::uint64_t>{3, 5, 7, 11, 13});
    CHECK(odd_primes(25).back() == 101);
    CHECK(primes_between(5, 20) == std::vector<std::uint64_t>{5, 7, 11, 13, 17, 19});
    CHECK(primes_between(0, 2) == std::vector<std::uint64_t>{2});
    CHECK(primes_between(24, 28).empty());
}
