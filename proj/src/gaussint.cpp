#include "hasse/gaussint.hpp"

#include <array>
#include <string>

#include "hasse/errors.hpp"

namespace hasse {

std::ostream& operator<<(std::ostream& os, GaussianInt g) {
    os << g.re << (g.im < 0 ? "-" : "+") << (g.im < 0 ? -g.im : g.im) << "i";
    return os;
}

GaussianInt QuarticUnit::value() const noexcept {
    static constexpr std::array<GaussianInt, 4> kUnits{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
    return kUnits[static_cast<std::size_t>(k_)];
}

namespace {

// Nearest integer to x/n (n > 0), ties toward zero.
i64 round_div(i128 x, i128 n) {
    i128 q = x / n;
    i128 r = x - q * n;
    i128 twice = r < 0 ? -2 * r : 2 * r;
    if (twice > n) q += (x < 0 ? -1 : 1);
    return static_cast<i64>(q);
}

} // namespace

GaussianDivMod divmod(GaussianInt g, GaussianInt h) {
    if (h.is_zero()) throw UsageError("divmod: division by zero in Z[i]");
    i128 n = static_cast<i128>(h.re) * h.re + static_cast<i128>(h.im) * h.im;
    // g * conj(h)
    i128 xr = static_cast<i128>(g.re) * h.re + static_cast<i128>(g.im) * h.im;
    i128 xi = static_cast<i128>(g.im) * h.re - static_cast<i128>(g.re) * h.im;
    GaussianInt q{round_div(xr, n), round_div(xi, n)};
    return {q, g - q * h};
}

GaussianInt gcd(GaussianInt a, GaussianInt b) {
    while (!b.is_zero()) {
        GaussianInt r = divmod(a, b).remainder;
        a = b;
        b = r;
    }
    return a;
}

std::array<GaussianInt, 4> associates(GaussianInt g) {
    return {g, GaussianInt{0, 1} * g, -g, GaussianInt{0, -1} * g};
}

GaussianInt primary_associate(GaussianInt g) {
    i64 n = g.norm();
    if (!is_prime(n) || n % 8 != 1)
        throw DomainError("primary_associate: norm " + std::to_string(n) + " is not a prime = 1 mod 8");
    for (GaussianInt u : associates(g)) {
        if (u.im % 4 == 0 && mod(u.re, 4) == 1) return u;
    }
    throw DomainError("primary_associate: no associate with 4 | b and a = 1 mod 4");
}

GaussianInt split_prime(i64 p) {
    if (!is_prime(p) || p % 4 != 1)
        throw DomainError("split_prime: " + std::to_string(p) + " is not a prime = 1 mod 4");
    i64 r = sqrt_mod_prime(p - 1, p);
    GaussianInt g = gcd(GaussianInt{p, 0}, GaussianInt{r, 1});
    if (g.norm() != p) throw InternalError("split_prime: gcd has norm " + std::to_string(g.norm()));
    if (p % 8 == 1) return primary_associate(g);
    for (GaussianInt u : associates(g)) {
        if (u.re > 0 && u.re % 2 == 1 && u.im % 2 == 0) return u;
    }
    throw InternalError("split_prime: no canonical associate");
}

QuarticUnit biquadratic_symbol(GaussianInt alpha, GaussianInt pi) {
    i64 n = pi.norm();
    if (n % 2 == 0 || !is_prime(n))
        throw DomainError("biquadratic_symbol: norm of pi must be an odd prime, got " + std::to_string(n));
    GaussianInt a = divmod(alpha, pi).remainder;
    if (a.is_zero()) throw DomainError("biquadratic_symbol: pi divides alpha");
    // Z[i]/(pi) = F_n with i -> -re/im.
    i64 t = mulmod(-pi.re, inv_mod(pi.im, n), n);
    i64 image = mod(a.re + mulmod(a.im, t, n), n);
    if (image == 0) throw DomainError("biquadratic_symbol: pi divides alpha");
    i64 v = powmod(image, static_cast<u64>((n - 1) / 4), n);
    if (v == 1) return QuarticUnit(0);
    if (v == t) return QuarticUnit(1);
    if (v == n - 1) return QuarticUnit(2);
    if (v == n - t) return QuarticUnit(3);
    throw InternalError("biquadratic_symbol: power is not a fourth root of unity");
}

bool conjugate_symbol_check(i64 p) {
    if (!is_prime(p) || p % 8 != 1)
        throw DomainError("conjugate symbol check needs a prime = 1 mod 8, got " + std::to_string(p));
    GaussianInt pi = primary_associate(split_prime(p));
    QuarticUnit s = biquadratic_symbol(pi, pi.conj());
    if (!s.is_real()) throw InternalError("[pi/conj(pi)]_4 is +-i for p = " + std::to_string(p));
    return s.real_value() == to_int(octic_symbol(-4, p));
}

} // namespace hasse
