#pragma once

#include <compare>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hasse/arith.hpp"

namespace hasse {

/// The binary quadratic form aX^2 + bXY + cY^2.
struct QuadForm {
    i64 a = 1;
    i64 b = 0;
    i64 c = 1;

    i64 disc() const noexcept { return b * b - 4 * a * c; }
    i128 eval(i64 x, i64 y) const noexcept {
        return static_cast<i128>(a) * x * x + static_cast<i128>(b) * x * y + static_cast<i128>(c) * y * y;
    }
    bool is_primitive() const noexcept { return gcd(gcd(a, b), c) == 1; }
    bool is_reduced() const noexcept;

    bool operator==(const QuadForm&) const = default;
    auto operator<=>(const QuadForm&) const = default;
};

std::ostream& operator<<(std::ostream& os, const QuadForm& f);

QuadForm principal_form(i64 disc);
QuadForm inverse(const QuadForm& f);
QuadForm reduce_form(QuadForm f);
/// Gauss composition of two primitive forms of the same negative
/// discriminant; the result is reduced.
QuadForm compose(const QuadForm& f, const QuadForm& g);
QuadForm power(const QuadForm& f, i64 n);

/// Invariant factors d1 | d2 | ... (all > 1) of a finite abelian group, given
/// the order of every element.
std::vector<i64> invariant_factors_from_orders(const std::vector<i64>& element_orders);

class ClassGroup {
public:
    explicit ClassGroup(i64 disc);

    i64 disc() const noexcept { return disc_; }
    const std::vector<QuadForm>& classes() const noexcept { return classes_; }
    const std::vector<i64>& invariant_factors() const noexcept { return invariant_factors_; }
    std::size_t order() const noexcept { return classes_.size(); }
    QuadForm identity() const { return principal_form(disc_); }
    bool is_cyclic() const noexcept { return invariant_factors_.size() <= 1; }

    /// Position of the class of f in classes(); f is reduced first.
    std::size_t index_of(const QuadForm& f) const;
    i64 element_order(std::size_t index) const { return orders_.at(index); }

private:
    i64 disc_;
    std::vector<QuadForm> classes_;
    std::vector<i64> orders_;
    std::vector<i64> invariant_factors_;
    std::map<QuadForm, std::size_t> index_;
};

ClassGroup class_group(i64 disc);

/// All reduced primitive forms of discriminant disc, sorted.
std::vector<QuadForm> reduced_forms(i64 disc);

/// Reduced class of (p, B, (B^2 - D)/4p) with B the canonical root of
/// B^2 = D mod 4p.
QuadForm prime_form_class(i64 disc, i64 p);
i64 class_order(const ClassGroup& cg, const QuadForm& f);
bool is_fourth_power_class(const ClassGroup& cg, const QuadForm& f);

struct GenusCharacter {
    enum class Kind { odd_prime, delta, epsilon, delta_epsilon };
    Kind kind;
    i64 prime = 0;  // set for odd_prime

    int eval(i64 n) const;
    std::string label() const;
};

/// The assigned genus characters of a negative discriminant: (.|q) for odd
/// primes q | D, then the 2-adic characters dictated by D.
std::vector<GenusCharacter> assigned_characters(i64 disc);
std::vector<Sign> genus_characters(i64 disc, const QuadForm& f);

/// 2-parts of the invariant factors (those > 1).
std::vector<i64> two_sylow_structure(const ClassGroup& cg);

std::optional<std::pair<i64, i64>> represent_prime(const QuadForm& f, i64 p, i64 bound);

// ---------------------------------------------------------------------------
// Ray class groups of Q(i) and Q(sqrt(-2)).

/// x + y*w in Z[w] with w^2 = -d, d in {1, 2}.
struct ImagQuadInt {
    i64 x = 0;
    i64 y = 0;
    bool operator==(const ImagQuadInt&) const = default;
};

class ImagQuadRing {
public:
    /// field_disc is -4 (Z[i]) or -8 (Z[sqrt(-2)]).
    explicit ImagQuadRing(i64 field_disc);

    i64 d() const noexcept { return d_; }
    i64 field_disc() const noexcept { return -4 * d_; }
    i64 norm(ImagQuadInt a) const noexcept { return a.x * a.x + d_ * a.y * a.y; }
    ImagQuadInt mul(ImagQuadInt a, ImagQuadInt b) const noexcept {
        return {a.x * b.x - d_ * a.y * b.y, a.x * b.y + a.y * b.x};
    }
    ImagQuadInt remainder(ImagQuadInt a, ImagQuadInt b) const;
    ImagQuadInt gcd(ImagQuadInt a, ImagQuadInt b) const;
    std::vector<ImagQuadInt> units() const;
    /// A prime element of norm p for a split rational prime p.
    ImagQuadInt split_prime(i64 p) const;

private:
    i64 d_;
};

class RayClassGroup {
public:
    RayClassGroup(i64 field_disc, ImagQuadInt modulus);

    i64 field_disc() const noexcept { return ring_.field_disc(); }
    const ImagQuadRing& ring() const noexcept { return ring_; }
    ImagQuadInt modulus() const noexcept { return modulus_; }
    const std::vector<i64>& invariant_factors() const noexcept { return invariant_factors_; }
    std::size_t order() const noexcept { return coset_orders_.size(); }
    std::size_t unit_group_order() const noexcept { return units_mod_.size(); }
    std::size_t residue_unit_count() const noexcept { return invertible_count_; }

    /// Coset index of an element coprime to the modulus.
    std::size_t class_of(ImagQuadInt a) const;
    i64 class_order(std::size_t coset) const { return coset_orders_.at(coset); }
    /// Residue index (0 <= idx < N(modulus)) -> coset index, for every unit residue.
    const std::map<i64, std::size_t>& element_index() const noexcept { return element_index_; }

private:
    i64 residue_index(ImagQuadInt a) const;
    ImagQuadInt residue_rep(i64 index) const;

    ImagQuadRing ring_;
    ImagQuadInt modulus_;
    i64 n1_ = 1, n2_ = 1, t_ = 0;  // HNF basis (n1, 0), (t, n2) of the ideal
    std::vector<i64> units_mod_;
    std::size_t invertible_count_ = 0;
    std::map<i64, std::size_t> element_index_;
    std::vector<i64> coset_orders_;
    std::vector<i64> invariant_factors_;
};

RayClassGroup ray_class_group(i64 field_disc, ImagQuadInt modulus);

/// Order in the ray class group of the canonical prime above p: split_prime
/// for Q(i); for Q(sqrt(-2)) the prime x + y*sqrt(-2) with x, y > 0.
i64 ray_class_order(const RayClassGroup& rcg, i64 p);

// ---------------------------------------------------------------------------
// Real quadratic units.

/// The fundamental unit (u + v*sqrt(p))/2 when `half`, else u + v*sqrt(p).
struct FundamentalUnitData {
    i64 p = 0;
    BigInt u;
    BigInt v;
    bool half = false;
    int norm = 0;
};

FundamentalUnitData fundamental_unit(i64 p);

/// For r^2 - p s^2 = q^h with r = r2/2, s = s2/2: computes S from
/// (r + s sqrt p)^h - (r - s sqrt p)^h = 2 S sqrt p and reports whether
/// (S|q) = (s|q).
bool power_difference_residue_check(i64 p, i64 q, int h, i64 r2, i64 s2);

/// The integer T with (r2 + s2 sqrt p)^h = R + T sqrt p, from the binomial sum.
BigInt binomial_sqrt_coefficient(i64 p, int h, i64 r2, i64 s2);

} // namespace hasse
