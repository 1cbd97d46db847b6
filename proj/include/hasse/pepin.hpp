#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hasse/arith.hpp"
#include "hasse/descent.hpp"
#include "hasse/localsolve.hpp"
#include "hasse/quadforms.hpp"

namespace hasse {

/// A named claim and whether it was confirmed.
struct ClaimCheck {
    std::string claim;
    std::string source;  // which classical result the claim belongs to
    bool pass = false;
    bool operator==(const ClaimCheck&) const = default;
};

struct ProjPoint {
    BigInt x = 0;
    BigInt y = 0;
    BigInt z = 0;
    bool operator==(const ProjPoint&) const = default;
};

/// p = alpha^2 a^2 + 2 beta a b + gamma b^2 and the quartic p X^4 - m Y^4 = Z^2
/// with m = alpha^2 gamma - beta^2.
///
/// A raw form (A, B, C) with B even is carried to that shape by a change of
/// variables in SL2(Z) that moves a square value A' = alpha^2 into first place;
/// `to_normal` maps raw witnesses (x, y) to normalized ones (a, b).
struct FamilySpec {
    QuadForm form;  // the form that enumerates the primes
    i64 m = 0;
    std::optional<i64> alpha, beta, gamma;
    // Integer matrix [[r00, r01], [r10, r11]] with (a, b) = R (x, y).
    std::array<i64, 4> to_normal{1, 0, 0, 1};
    // Ray class group used as an extra obstruction, if any.
    std::optional<std::pair<i64, ImagQuadInt>> ray;

    static FamilySpec from_coefficients(i64 alpha, i64 beta, i64 gamma);
    static FamilySpec from_raw_form(const QuadForm& f);

    bool normalized() const noexcept { return alpha.has_value(); }
    std::pair<i64, i64> normal_witness(i64 x, i64 y) const;
};

/// Fundamental discriminant of Q(sqrt(-m)), m > 0.
i64 field_discriminant(i64 m);

/// (alpha, b, alpha^2 a + beta b) on p x^2 - m y^2 = z^2; verified.
ProjPoint conic_point(const FamilySpec& spec, i64 a, i64 b);

/// Second intersection of the conic p x^2 - m y^2 = z^2 with the line through
/// base in direction (0, t_den, t_num); coprime integers, first nonzero > 0.
ProjPoint conic_parametrization(i64 p, i64 m, const ProjPoint& base, i64 t_num, i64 t_den);

bool on_conic(i64 p, i64 m, const ProjPoint& P);

struct FamilyReport {
    i64 p = 0;
    std::pair<i64, i64> witness;  // raw form coordinates
    std::optional<ProjPoint> conic;
    Sign conic_2adic = Sign::plus;  // (p, -m)_2
    LocalSolvability local;
    std::optional<TorsorPoint> global_point;
    std::optional<i64> class_order;  // of the prime above p in Cl(Q(sqrt(-m)))
    std::optional<bool> fourth_power;
    std::optional<i64> ray_order;
    bool hasse_counterexample = false;
};

/// Primes p <= pmax represented by the form, each with its first witness in
/// scan order (y = 0, 1, ...; x = 0, 1, -1, 2, -2, ...), sorted by p.
std::vector<std::pair<i64, std::pair<i64, i64>>> family_primes(const QuadForm& f, i64 pmax);

std::vector<FamilyReport> family_scan(const FamilySpec& spec, i64 pmax, i64 H);

namespace reference {
std::vector<FamilyReport> family_scan(const FamilySpec& spec, i64 pmax, i64 H);
}

enum class IdentityKind { nine_four, general_form, newton_seven, fermat_seven_factor };

/// Parses "eq1", "generalized", "newton3", "flt7_factor".
IdentityKind parse_identity_kind(const std::string& name);

/// Inputs:
///  nine_four:           (a, b, x, y), p = 9a^2 + 4b^2, z^2 := p x^4 - 36 y^4
///  general_form:        (alpha, beta, gamma, a, b, x, y), z^2 := p x^4 - m y^4
///  newton_seven:        (x, y, z)
///  fermat_seven_factor: (x, y)
bool identity_check(IdentityKind kind, const std::vector<i64>& inputs);

/// Evaluates the identity at `trials` random tuples with entries in [-50, 50].
bool identity_trials(IdentityKind kind, std::size_t trials, std::uint64_t seed);

struct TorsorConditionRow {
    i64 b1 = 0;
    std::string condition;  // e.g. "(2q/p)_4"
    i64 symbol_argument = 0;
    Sign value = Sign::plus;
    std::optional<TorsorPoint> point;
    bool implication_holds = true;
};

/// Quartic-symbol conditions for the torsors b1 in {2, -2, q, -q, 2q, -2q} of
/// y^2 = x(x^2 - 4 p q^2) and point searches on each.
std::vector<TorsorConditionRow> torsor_condition_table(i64 p, i64 q, i64 H);

/// p = 1 mod 8 prime, q = 3 mod 4 prime, (p/q) = +1.
bool quartic_torsor_hypotheses(i64 p, i64 q);

struct QuarticTorsorReport {
    i64 p = 0, q = 0, H = 0;
    Sign two_quartic = Sign::plus;  // (2/p)_4
    Sign q_quartic = Sign::plus;    // (q/p)_4
    std::optional<TorsorPoint> point;  // on N^2 = p M^4 - 4 q^2 e^4
    DescentReport descent;
    bool consistent = true;
    bool sha_annotation = false;  // symbols not both +1
    std::vector<ClaimCheck> checks;
};

QuarticTorsorReport quartic_torsor_report(i64 p, i64 q, i64 H);

struct HistoricReport {
    std::string id;
    std::vector<ClaimCheck> checks;
    std::optional<TorsorSpec> torsor;
    std::optional<LocalSolvability> local;
    std::optional<TorsorPoint> point;
    std::vector<std::pair<i64, i64>> integral_points;
    std::optional<DescentReport> descent;
    std::vector<FamilyReport> family;
    std::vector<i64> ray_invariants;
    // p -> (A, B) with p = A^2 + 32 B^2
    std::vector<std::pair<i64, std::pair<i64, i64>>> representations;
};

/// lind_reichardt, euler_cube, pepin32, pepin2_consequence. Descents and
/// exhaustive quartic searches run at height min(H, kDescentHeight).
HistoricReport historic_case(const std::string& id, i64 H, i64 pmax = 10000);

inline constexpr i64 kDescentHeight = 200;

/// Every (N >= 0, M, e) with e >= 0, |M| <= H, e <= H, gcd(M, e) = 1 on the torsor.
std::vector<TorsorPoint> torsor_points(const TorsorSpec& t, i64 H);

/// Integral points on y^2 = x^3 + 1 with |x| <= bound.
std::vector<std::pair<i64, i64>> cube_plus_one_points(i64 bound);

struct Flt7Report {
    std::size_t trials = 0;
    i64 H = 0;
    std::uint64_t seed = 0;
    std::vector<ClaimCheck> stages;
    std::size_t field_points_checked = 0;
    TorsionSet torsion;
    DescentReport descent;
    std::size_t quartic_pairs_checked = 0;
    std::optional<std::pair<i64, i64>> quartic_point;  // (s, t) with t != 0, if any
};

Flt7Report flt7_verify(std::size_t trials, i64 H, std::uint64_t seed);

} // namespace hasse
