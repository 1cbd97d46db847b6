#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hasse/arith.hpp"
#include "hasse/errors.hpp"

using namespace hasse;

namespace {

bool trial_division_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int euler_criterion(i64 a, i64 p, i64 k) {
    i64 e = powmod(mod(a, p), static_cast<u64>((p - 1) / k), p);
    return e == 1 ? 1 : (e == p - 1 ? -1 : 0);
}

// x^2 = n mod p^(v + 1) (odd p) or 2^(v + 3) decides squares in Z_p.
bool brute_square_in_Zp(i64 n, i64 p) {
    int v = valuation(n, p);
    i64 mdl = 1;
    for (int i = 0; i < v + (p == 2 ? 3 : 1); ++i) mdl *= p;
    for (i64 x = 0; x < mdl; ++x)
        if (mod(mulmod(x, x, mdl) - n, mdl) == 0) return true;
    return false;
}

} // namespace

TEST_CASE("primality agrees with trial division below 2e5") {
    for (i64 n = -5; n < 200000; ++n) REQUIRE(is_prime(n) == trial_division_prime(n));
}

TEST_CASE("primality of frozen large values") {
    CHECK(is_prime(2305843009213693951LL));   // 2^61 - 1
    CHECK(is_prime(9223372036854775783LL));   // 2^63 - 25
    CHECK_FALSE(is_prime(3215031751LL));      // strong pseudoprime to bases 2, 3, 5, 7
    CHECK_FALSE(is_prime(3825123056546413051LL));  // strong pseudoprime to the first nine prime bases
    CHECK_FALSE(is_prime(561));
}

TEST_CASE("factorization multiplies back into primes") {
    Factorization f = factorize(600851475143LL);
    std::vector<PrimePower> expect{{71, 1}, {839, 1}, {1471, 1}, {6857, 1}};
    CHECK(f.factors == expect);
    CHECK(factorize(-164).sign() == -1);
    CHECK_THROWS_AS(factorize(0), UsageError);

    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; ++i) {
        i64 n = static_cast<i64>(rng() >> (i % 2 ? 2 : 20)) + 1;
        Factorization g = factorize(n);
        i128 prod = 1;
        i64 last = 1;
        for (auto [p, e] : g.factors) {
            REQUIRE(p > last);
            REQUIRE(is_prime(p));
            last = p;
            for (int k = 0; k < e; ++k) prod *= p;
        }
        REQUIRE(prod == n);
    }
}

TEST_CASE("jacobi symbol matches Euler's criterion and is multiplicative") {
    auto primes = primes_up_to(400);
    for (i64 p : primes) {
        if (p == 2) continue;
        for (i64 a = -50; a <= 50; ++a) {
            int expect = (mod(a, p) == 0) ? 0 : euler_criterion(a, p, 2);
            REQUIRE(jacobi_symbol(a, p) == expect);
        }
    }
    std::mt19937_64 rng(2);
    for (int i = 0; i < 1000; ++i) {
        i64 n1 = 2 * static_cast<i64>(rng() % 5000) + 1, n2 = 2 * static_cast<i64>(rng() % 5000) + 1;
        i64 a = static_cast<i64>(rng() % 100000) - 50000;
        REQUIRE(jacobi_symbol(a, n1 * n2) == jacobi_symbol(a, n1) * jacobi_symbol(a, n2));
    }
    CHECK_THROWS_AS(jacobi_symbol(3, 10), UsageError);
}

TEST_CASE("square roots modulo primes are canonical") {
    for (i64 p : primes_up_to(3000)) {
        if (p == 2) continue;
        for (i64 a = 1; a < std::min<i64>(p, 200); ++a) {
            if (jacobi_symbol(a, p) != 1) {
                REQUIRE_THROWS_AS(sqrt_mod_prime(a, p), DomainError);
                continue;
            }
            i64 r = sqrt_mod_prime(a, p);
            REQUIRE(mulmod(r, r, p) == a);
            REQUIRE(r <= p - r);
        }
    }
}

TEST_CASE("quartic and octic symbols match exponentiation") {
    for (i64 p : primes_up_to(5000)) {
        if (p % 8 != 1) continue;
        for (i64 a : {-4, -1, 2, 3, 5, 7, 11, 13}) {
            if (jacobi_symbol(a, p) != 1) continue;
            REQUIRE(to_int(quartic_symbol(a, p)) == euler_criterion(a, p, 4));
            if (euler_criterion(a, p, 4) == 1) REQUIRE(to_int(octic_symbol(a, p)) == euler_criterion(a, p, 8));
        }
    }
    CHECK(quartic_symbol(3, 73) == Sign::minus);
    CHECK(quartic_symbol(2, 73) == Sign::plus);
}

TEST_CASE("p-adic squares agree with congruence search") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        i64 n = static_cast<i64>(rng() % 20001) - 10000;
        if (n == 0) continue;
        for (i64 p : {2, 3, 5, 7}) REQUIRE(is_square_in_Qp(n, Place::prime(p)) == brute_square_in_Zp(n, p));
        REQUIRE(is_square_in_Qp(n, Place::real()) == (n > 0));
    }
    CHECK(is_square_in_Qp(Rational(17, 4), Place::prime(2)));
    CHECK_FALSE(is_square_in_Qp(Rational(3, 2), Place::prime(2)));
    CHECK(is_square_in_Qp(BigInt(-7), Place::prime(2)));
}

TEST_CASE("squarefree parts and divisors") {
    CHECK(squarefree_part(-4 * 73 * 9) == -73);
    CHECK(squarefree_part(72) == 2);
    std::vector<i64> d = squarefree_divisors(12);
    CHECK(d == std::vector<i64>{1, -1, 2, -2, 3, -3, 6, -6});
    std::mt19937_64 rng(4);
    for (int i = 0; i < 1000; ++i) {
        i64 n = static_cast<i64>(rng() % 1000000) + 1;
        i64 s = squarefree_part(n);
        REQUIRE(is_squarefree(s));
        REQUIRE(n % s == 0);
        REQUIRE(exact_sqrt(n / s).has_value());
        REQUIRE(squarefree_divisors(n).size() == (std::size_t{2} << factorize(n).factors.size()));
    }
}

TEST_CASE("integer square roots") {
    CHECK(isqrt(static_cast<i128>(99)) == 9);
    CHECK(exact_sqrt(static_cast<i128>(1) << 100) == (static_cast<i128>(1) << 50));
    CHECK_FALSE(exact_sqrt(-4).has_value());
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        i128 r = static_cast<i128>(rng() >> 2);
        REQUIRE(exact_sqrt(r * r) == r);
        REQUIRE_FALSE(exact_sqrt(r * r + 1 + (r > 0 ? 0 : 1)).has_value());
        REQUIRE(isqrt(BigInt(r) * BigInt(r) + 5) == BigInt(r));
    }
    CHECK(primes_up_to(100).size() == 25);
    CHECK(inv_mod(7, 11) == 8);
}
