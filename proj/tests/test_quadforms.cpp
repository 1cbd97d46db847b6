#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "hasse/errors.hpp"
#include "hasse/quadforms.hpp"

using namespace hasse;

namespace {

// Count reduced primitive forms straight from the inequalities.
std::size_t brute_class_number(i64 D) {
    std::size_t h = 0;
    for (i64 a = 1; 3 * a * a <= -D; ++a)
        for (i64 b = -a + 1; b <= a; ++b) {
            if ((b * b - D) % (4 * a) != 0) continue;
            i64 c = (b * b - D) / (4 * a);
            if (c < a) continue;
            if (b < 0 && a == c) continue;
            if (gcd(gcd(a, b), c) != 1) continue;
            ++h;
        }
    return h;
}

bool represents(const QuadForm& f, i64 n, i64 box) {
    for (i64 x = -box; x <= box; ++x)
        for (i64 y = -box; y <= box; ++y)
            if (f.eval(x, y) == n) return true;
    return false;
}

} // namespace

TEST_CASE("class numbers agree with direct enumeration") {
    for (i64 D = -3; D >= -5000; --D) {
        if (mod(D, 4) > 1) continue;
        REQUIRE(class_group(D).order() == brute_class_number(D));
    }
}

TEST_CASE("frozen class groups") {
    ClassGroup g = class_group(-164);
    CHECK(g.order() == 8);
    CHECK(g.is_cyclic());
    CHECK(class_group(-23).invariant_factors() == std::vector<i64>{3});
    CHECK(class_group(-84).invariant_factors() == std::vector<i64>{2, 2});
    CHECK(class_group(-68).invariant_factors() == std::vector<i64>{4});
    CHECK(class_group(-4).order() == 1);
    QuadForm q5 = prime_form_class(-164, 5);
    CHECK(class_order(g, q5) == 4);
    CHECK_FALSE(is_fourth_power_class(g, q5));
    CHECK_THROWS_AS(class_group(-5), UsageError);
}

TEST_CASE("composition satisfies the group axioms") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 300; ++i) {
        i64 D = -static_cast<i64>(rng() % 20000) - 3;
        if (mod(D, 4) > 1) continue;
        ClassGroup cg = class_group(D);
        const auto& cls = cg.classes();
        for (int j = 0; j < 5; ++j) {
            const QuadForm& f = cls[rng() % cls.size()];
            const QuadForm& g = cls[rng() % cls.size()];
            const QuadForm& h = cls[rng() % cls.size()];
            REQUIRE(compose(f, g) == compose(g, f));
            REQUIRE(compose(compose(f, g), h) == compose(f, compose(g, h)));
            REQUIRE(compose(f, cg.identity()) == f);
            REQUIRE(compose(f, inverse(f)) == cg.identity());
            REQUIRE(power(f, static_cast<i64>(cg.order())) == cg.identity());
        }
    }
}

TEST_CASE("composition multiplies represented values") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 200; ++i) {
        i64 D = -static_cast<i64>(rng() % 3000) - 3;
        if (mod(D, 4) > 1) continue;
        ClassGroup cg = class_group(D);
        const auto& cls = cg.classes();
        const QuadForm& f = cls[rng() % cls.size()];
        const QuadForm& g = cls[rng() % cls.size()];
        if (gcd(f.a, g.a) != 1) continue;
        REQUIRE(represents(compose(f, g), f.a * g.a, 60));
    }
}

TEST_CASE("invariant factors match element counts") {
    for (i64 D = -3; D >= -3000; D -= 1) {
        if (mod(D, 4) > 1) continue;
        ClassGroup cg = class_group(D);
        const auto& inv = cg.invariant_factors();
        i64 prod = 1;
        for (std::size_t i = 0; i < inv.size(); ++i) {
            prod *= inv[i];
            if (i + 1 < inv.size()) REQUIRE(inv[i + 1] % inv[i] == 0);
        }
        REQUIRE(prod == static_cast<i64>(cg.order()));
        for (i64 k : {2, 3, 4, 6, 8}) {
            i64 expect = 1;
            for (i64 d : inv) expect *= gcd(k, d);
            i64 count = 0;
            for (std::size_t j = 0; j < cg.order(); ++j) count += k % cg.element_order(j) == 0;
            REQUIRE(count == expect);
        }
    }
}

TEST_CASE("principal genus consists of the squares") {
    for (i64 D = -3; D >= -2000; --D) {
        if (mod(D, 4) > 1) continue;
        ClassGroup cg = class_group(D);
        std::set<QuadForm> squares, principal;
        for (const auto& f : cg.classes()) {
            squares.insert(compose(f, f));
            auto chi = genus_characters(D, f);
            if (std::all_of(chi.begin(), chi.end(), [](Sign s) { return s == Sign::plus; })) principal.insert(f);
        }
        REQUIRE(squares == principal);
    }
}

TEST_CASE("prime forms represent their prime") {
    for (i64 p : primes_up_to(400)) {
        i64 D = -164;
        if (D % p == 0 || jacobi_symbol(mod(D, p), p) == -1 || p == 2) continue;
        QuadForm f = prime_form_class(D, p);
        REQUIRE(f.disc() == D);
        REQUIRE(represents(f, p, 30));
    }
    CHECK(represent_prime({1, 0, 32}, 41, 10) == std::pair<i64, i64>{3, 1});
}

TEST_CASE("ray class groups modulo 6 and 4") {
    RayClassGroup r6 = ray_class_group(-4, {6, 0});
    CHECK(r6.invariant_factors() == std::vector<i64>{4});
    CHECK(r6.residue_unit_count() == 16);
    RayClassGroup r4 = ray_class_group(-8, {4, 0});
    CHECK(r4.invariant_factors() == std::vector<i64>{4});
    CHECK(r4.residue_unit_count() == 8);
    CHECK(ray_class_order(r6, 13) == 2);
    CHECK_THROWS_AS(ray_class_order(r6, 3), DomainError);
    // Q(i) has class number one: modulo 1 the ray class group is trivial.
    CHECK(ray_class_group(-4, {1, 0}).order() == 1);
}

TEST_CASE("fundamental units match a direct Pell search") {
    for (i64 p : primes_up_to(200)) {
        FundamentalUnitData u = fundamental_unit(p);
        BigInt n = u.u * u.u - p * u.v * u.v;
        BigInt scale = u.half ? 4 : 1;
        REQUIRE((n == scale || n == -scale));
        // smallest v with u^2 - p v^2 = +-4 (p = 1 mod 4) or +-1
        BigInt target = (p % 4 == 1) ? 4 : 1;
        i64 v = 1;
        for (;; ++v) {
            i128 pv = static_cast<i128>(p) * v * v;
            bool hit = false;
            for (int s : {-1, 1}) {
                i128 w = pv + s * static_cast<i128>(target);
                if (w > 0 && exact_sqrt(w)) hit = true;
            }
            if (hit) break;
            if (v > 200000) break;
        }
        if (v <= 200000) {
            BigInt vv = u.half || p % 4 != 1 ? u.v : 2 * u.v;
            REQUIRE(vv == v);
        }
    }
    FundamentalUnitData f73 = fundamental_unit(73);
    CHECK(f73.norm == -1);
    CHECK(fundamental_unit(7).u == 8);
    CHECK(fundamental_unit(7).v == 3);
}

TEST_CASE("power difference residue identity on small instances") {
    std::size_t instances = 0;
    for (i64 p : primes_up_to(30)) {
        if (p == 2) continue;
        for (i64 q : primes_up_to(30)) {
            if (q == 2 || q == p || jacobi_symbol(p, q) != 1) continue;
            for (int h : {1, 3}) {
                BigInt qh = pow(BigInt(q), static_cast<unsigned>(h));
                for (i64 s2 = 1; s2 <= 60; ++s2) {
                    BigInt r2sq = 4 * qh + BigInt(p) * s2 * s2;
                    if (!is_perfect_square(r2sq)) continue;
                    i64 r2 = static_cast<i64>(isqrt(r2sq));
                    if (r2 % q == 0 || s2 % q == 0) continue;
                    REQUIRE(power_difference_residue_check(p, q, h, r2, s2));
                    ++instances;
                }
            }
        }
    }
    CHECK(instances > 10);
}
