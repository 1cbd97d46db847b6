#pragma once

#include <array>
#include <ostream>

#include "hasse/arith.hpp"

namespace hasse {

/// An element re + im*i of Z[i].
struct GaussianInt {
    i64 re = 0;
    i64 im = 0;

    constexpr i64 norm() const noexcept { return re * re + im * im; }
    constexpr GaussianInt conj() const noexcept { return {re, -im}; }
    constexpr bool is_zero() const noexcept { return re == 0 && im == 0; }

    friend constexpr GaussianInt operator+(GaussianInt a, GaussianInt b) noexcept { return {a.re + b.re, a.im + b.im}; }
    friend constexpr GaussianInt operator-(GaussianInt a, GaussianInt b) noexcept { return {a.re - b.re, a.im - b.im}; }
    friend constexpr GaussianInt operator-(GaussianInt a) noexcept { return {-a.re, -a.im}; }
    friend constexpr GaussianInt operator*(GaussianInt a, GaussianInt b) noexcept {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    bool operator==(const GaussianInt&) const = default;
};

std::ostream& operator<<(std::ostream& os, GaussianInt g);

/// A fourth root of unity i^k, k in {0,1,2,3}.
class QuarticUnit {
public:
    constexpr QuarticUnit() = default;
    constexpr explicit QuarticUnit(int k) : k_(((k % 4) + 4) % 4) {}

    constexpr int exponent() const noexcept { return k_; }
    constexpr bool is_real() const noexcept { return k_ % 2 == 0; }
    /// +1 or -1; only meaningful when is_real().
    constexpr int real_value() const noexcept { return k_ == 0 ? 1 : -1; }
    GaussianInt value() const noexcept;

    friend constexpr QuarticUnit operator*(QuarticUnit a, QuarticUnit b) noexcept { return QuarticUnit(a.k_ + b.k_); }
    bool operator==(const QuarticUnit&) const = default;

private:
    int k_ = 0;
};

struct GaussianDivMod {
    GaussianInt quotient;
    GaussianInt remainder;
};

/// Euclidean division: g = q*h + r with norm(r) < norm(h). Each coordinate of
/// the exact quotient is rounded to the nearest integer, ties toward zero.
GaussianDivMod divmod(GaussianInt g, GaussianInt h);
GaussianInt gcd(GaussianInt a, GaussianInt b);

/// The four associates u*g, in the order u = 1, i, -1, -i.
std::array<GaussianInt, 4> associates(GaussianInt g);

/// A Gaussian prime of norm p for a rational prime p = 1 mod 4.
/// Returns the primary associate when p = 1 mod 8, otherwise the associate
/// with odd positive real part and even imaginary part.
GaussianInt split_prime(i64 p);

/// The associate with 4 | im and re = 1 mod 4. Exists exactly when the norm is
/// = 1 mod 8.
GaussianInt primary_associate(GaussianInt g);

/// [alpha/pi]_4: the unit u with alpha^((N(pi)-1)/4) = u mod pi.
QuarticUnit biquadratic_symbol(GaussianInt alpha, GaussianInt pi);

/// Checks [pi/conj(pi)]_4 = (-4/p)_8 for the primary prime above p.
bool conjugate_symbol_check(i64 p);

} // namespace hasse
