#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hasse {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// A quadratic (or higher) residue symbol value, always +1 or -1.
/// Symbols that may vanish (Jacobi with a common factor) are returned as int.
enum class Sign : int { minus = -1, plus = 1 };

constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
constexpr Sign sign_of(int v) noexcept { return v < 0 ? Sign::minus : Sign::plus; }
constexpr Sign operator*(Sign a, Sign b) noexcept { return sign_of(to_int(a) * to_int(b)); }

struct PrimePower {
    i64 prime;
    int exponent;
    bool operator==(const PrimePower&) const = default;
};

/// Complete factorization of a nonzero integer. `factors` holds the prime
/// decomposition of |value| with strictly increasing primes.
struct Factorization {
    i64 value = 1;
    std::vector<PrimePower> factors;

    int sign() const noexcept { return value < 0 ? -1 : 1; }
    bool operator==(const Factorization&) const = default;
};

/// A completion of Q: a prime p, or the real place (stored as p = 0).
class Place {
public:
    static constexpr Place real() noexcept { return Place{0}; }
    static Place prime(i64 p);

    constexpr bool is_real() const noexcept { return p_ == 0; }
    constexpr i64 p() const noexcept { return p_; }
    bool operator==(const Place&) const = default;
    auto operator<=>(const Place&) const = default;

private:
    constexpr explicit Place(i64 p) noexcept : p_(p) {}
    i64 p_;
};

// Factorization and primality are certified only below this bound.
inline constexpr u64 kFactorBound = static_cast<u64>(INT64_MAX);

i64 mod(i64 a, i64 m) noexcept;
i64 mulmod(i64 a, i64 b, i64 m) noexcept;
i64 powmod(i64 base, u64 exp, i64 m) noexcept;
i64 gcd(i64 a, i64 b) noexcept;

/// Extended gcd: returns g >= 0 with x*a + y*b = g.
struct ExtGcd {
    i64 g, x, y;
};
ExtGcd ext_gcd(i64 a, i64 b) noexcept;
i64 inv_mod(i64 a, i64 m);

/// Floor square root; exact for the full int128 range used here.
i128 isqrt(i128 n);
std::optional<i128> exact_sqrt(i128 n);
BigInt isqrt(const BigInt& n);
bool is_perfect_square(const BigInt& n);

bool is_prime(i64 n) noexcept;
Factorization factorize(i64 n);

/// Valuation of n at p; n must be nonzero.
int valuation(i64 n, i64 p);
int valuation(const BigInt& n, i64 p);

/// Squarefree part with sign: n = sf * k^2.
i64 squarefree_part(i64 n);
bool is_squarefree(i64 n);

int jacobi_symbol(i64 a, i64 n);
i64 sqrt_mod_prime(i64 a, i64 p);
Sign quartic_symbol(i64 a, i64 p);
Sign octic_symbol(i64 a, i64 p);

/// All signed squarefree divisors of n, sorted by |d| then sign.
std::vector<i64> squarefree_divisors(i64 n);

bool is_square_in_Qp(const Rational& n, Place place);
bool is_square_in_Qp(const BigInt& n, Place place);
bool is_square_in_Qp(i64 n, Place place);

/// Primes up to `limit` via a simple sieve.
std::vector<i64> primes_up_to(i64 limit);

} // namespace hasse
