#include "hasse/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

#include "hasse/errors.hpp"

namespace hasse {

Place Place::prime(i64 p) {
    if (p < 2 || !is_prime(p))
        throw UsageError("place must be a prime or the real place, got " + std::to_string(p));
    return Place{p};
}

i64 mod(i64 a, i64 m) noexcept {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m) noexcept {
    i128 r = static_cast<i128>(mod(a, m)) * mod(b, m) % m;
    return static_cast<i64>(r);
}

i64 powmod(i64 base, u64 exp, i64 m) noexcept {
    if (m == 1) return 0;
    i64 result = 1;
    i64 b = mod(base, m);
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, b, m);
        b = mulmod(b, b, m);
        exp >>= 1;
    }
    return result;
}

i64 gcd(i64 a, i64 b) noexcept {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

ExtGcd ext_gcd(i64 a, i64 b) noexcept {
    i64 old_r = a, r = b;
    i64 old_s = 1, s = 0;
    i64 old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

i64 inv_mod(i64 a, i64 m) {
    auto [g, x, y] = ext_gcd(mod(a, m), m);
    (void)y;
    if (g != 1) throw DomainError("no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
    return mod(x, m);
}

i128 isqrt(i128 n) {
    if (n < 0) throw DomainError("isqrt of negative number");
    if (n < 2) return n;
    // Newton from a floating estimate, then correct.
    long double est = std::sqrt(static_cast<long double>(n));
    i128 x = static_cast<i128>(est);
    if (x <= 0) x = 1;
    for (int i = 0; i < 4; ++i) x = (x + n / x) / 2;
    while (x * x > n) --x;
    while ((x + 1) * (x + 1) <= n) ++x;
    return x;
}

std::optional<i128> exact_sqrt(i128 n) {
    if (n < 0) return std::nullopt;
    // Squares mod 64 filter.
    static constexpr u64 kSquaresMod64 = [] {
        u64 mask = 0;
        for (u64 i = 0; i < 64; ++i) mask |= u64{1} << ((i * i) % 64);
        return mask;
    }();
    if (((kSquaresMod64 >> static_cast<int>(n & 63)) & 1) == 0) return std::nullopt;
    i128 r = isqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

BigInt isqrt(const BigInt& n) {
    if (n < 0) throw DomainError("isqrt of negative number");
    return boost::multiprecision::sqrt(n);
}

bool is_perfect_square(const BigInt& n) {
    if (n < 0) return false;
    BigInt r = boost::multiprecision::sqrt(n);
    return r * r == n;
}

namespace {

bool miller_rabin_witness(i64 n, i64 a, i64 d, int s) {
    i64 x = powmod(a, static_cast<u64>(d), n);
    if (x == 1 || x == n - 1) return false;
    for (int r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

i64 pollard_rho(i64 n) {
    if (n % 2 == 0) return 2;
    // Brent's variant; the polynomial constant is bumped deterministically
    // on failure so results are reproducible.
    for (i64 c = 1;; ++c) {
        i64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        i64 m = 128, r = 1;
        auto f = [&](i64 v) { return static_cast<i64>((static_cast<i128>(v) * v + c) % n); };
        do {
            x = y;
            for (i64 i = 0; i < r; ++i) y = f(y);
            i64 k = 0;
            do {
                ys = y;
                for (i64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(i64 n, std::map<i64, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    i64 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

bool is_prime(i64 n) noexcept {
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // The first twelve prime bases are deterministic for every 64-bit n.
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

Factorization factorize(i64 n) {
    if (n == 0) throw UsageError("factorize: n must be nonzero");
    if (n == INT64_MIN) throw UsageError("factorize: |n| exceeds the supported bound 2^63-1");
    Factorization result;
    result.value = n;
    i64 m = n < 0 ? -n : n;
    std::map<i64, int> found;
    for (i64 p = 2; p <= 1'000'000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
        while (m % p == 0) {
            ++found[p];
            m /= p;
        }
    }
    if (m > 1) factor_into(m, found);
    for (auto [p, e] : found) result.factors.push_back({p, e});
    return result;
}

int valuation(i64 n, i64 p) {
    if (n == 0) throw DomainError("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int valuation(const BigInt& n, i64 p) {
    if (n == 0) throw DomainError("valuation of zero");
    int v = 0;
    BigInt m = n;
    BigInt q, r;
    for (;;) {
        boost::multiprecision::divide_qr(m, BigInt(p), q, r);
        if (r != 0) break;
        m = q;
        ++v;
    }
    return v;
}

i64 squarefree_part(i64 n) {
    Factorization f = factorize(n);
    i64 result = f.sign();
    for (auto [p, e] : f.factors)
        if (e % 2 == 1) result *= p;
    return result;
}

bool is_squarefree(i64 n) {
    if (n == 0) return false;
    Factorization f = factorize(n);
    return std::all_of(f.factors.begin(), f.factors.end(), [](const PrimePower& pp) { return pp.exponent == 1; });
}

int jacobi_symbol(i64 a, i64 n) {
    if (n <= 0 || n % 2 == 0)
        throw UsageError("jacobi_symbol: modulus must be odd and positive, got " + std::to_string(n));
    a = mod(a, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

i64 sqrt_mod_prime(i64 a, i64 p) {
    if (p == 2) return mod(a, 2);
    if (p < 2 || p % 2 == 0) throw UsageError("sqrt_mod_prime: p must be an odd prime");
    a = mod(a, p);
    if (a == 0) return 0;
    if (jacobi_symbol(a, p) != 1)
        throw DomainError(std::to_string(a) + " is not a quadratic residue mod " + std::to_string(p));
    i64 r;
    if (p % 4 == 3) {
        r = powmod(a, static_cast<u64>((p + 1) / 4), p);
    } else {
        // Tonelli-Shanks with the smallest positive nonresidue.
        i64 q = p - 1;
        int s = 0;
        while (q % 2 == 0) {
            q /= 2;
            ++s;
        }
        i64 z = 2;
        while (jacobi_symbol(z, p) != -1) ++z;
        i64 c = powmod(z, static_cast<u64>(q), p);
        r = powmod(a, static_cast<u64>((q + 1) / 2), p);
        i64 t = powmod(a, static_cast<u64>(q), p);
        int m = s;
        while (t != 1) {
            int i = 0;
            i64 tt = t;
            while (tt != 1) {
                tt = mulmod(tt, tt, p);
                ++i;
            }
            i64 b = c;
            for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
            r = mulmod(r, b, p);
            c = mulmod(b, b, p);
            t = mulmod(t, c, p);
            m = i;
        }
    }
    return std::min(r, p - r);
}

Sign quartic_symbol(i64 a, i64 p) {
    if (!is_prime(p) || p % 4 != 1)
        throw DomainError("quartic_symbol: p must be a prime = 1 mod 4, got " + std::to_string(p));
    if (mod(a, p) == 0) throw DomainError("quartic_symbol: p divides a");
    if (jacobi_symbol(a, p) != 1)
        throw DomainError("quartic_symbol: " + std::to_string(a) + " is not a square mod " + std::to_string(p));
    i64 v = powmod(a, static_cast<u64>((p - 1) / 4), p);
    if (v == 1) return Sign::plus;
    if (v == p - 1) return Sign::minus;
    throw DomainError("quartic_symbol: power is not +-1");
}

Sign octic_symbol(i64 a, i64 p) {
    if (!is_prime(p) || p % 8 != 1)
        throw DomainError("octic_symbol: p must be a prime = 1 mod 8, got " + std::to_string(p));
    if (mod(a, p) == 0) throw DomainError("octic_symbol: p divides a");
    i64 v = powmod(a, static_cast<u64>((p - 1) / 8), p);
    if (v == 1) return Sign::plus;
    if (v == p - 1) return Sign::minus;
    throw DomainError("octic_symbol: " + std::to_string(a) + " is not a quartic residue mod " + std::to_string(p));
}

std::vector<i64> squarefree_divisors(i64 n) {
    Factorization f = factorize(n);
    std::vector<i64> pos{1};
    for (auto [p, e] : f.factors) {
        (void)e;
        std::size_t k = pos.size();
        for (std::size_t i = 0; i < k; ++i) pos.push_back(pos[i] * p);
    }
    std::sort(pos.begin(), pos.end());
    std::vector<i64> out;
    out.reserve(pos.size() * 2);
    for (i64 d : pos) {
        out.push_back(d);
        out.push_back(-d);
    }
    return out;
}

bool is_square_in_Qp(const BigInt& n, Place place) {
    if (n == 0) throw DomainError("is_square_in_Qp: n must be nonzero");
    if (place.is_real()) return n > 0;
    i64 p = place.p();
    int v = valuation(n, p);
    if (v % 2 != 0) return false;
    BigInt u = n;
    for (int i = 0; i < v; ++i) u /= p;
    if (p == 2) {
        BigInt r = u % 8;
        if (r < 0) r += 8;
        return r == 1;
    }
    BigInt r = u % p;
    if (r < 0) r += p;
    return jacobi_symbol(static_cast<i64>(r), p) == 1;
}

bool is_square_in_Qp(const Rational& n, Place place) {
    // num/den and num*den differ by the square den^2.
    return is_square_in_Qp(BigInt(boost::multiprecision::numerator(n) * boost::multiprecision::denominator(n)), place);
}

bool is_square_in_Qp(i64 n, Place place) { return is_square_in_Qp(BigInt(n), place); }

std::vector<i64> primes_up_to(i64 limit) {
    std::vector<i64> out;
    if (limit < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (i64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (i64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

} // namespace hasse
