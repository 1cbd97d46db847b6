#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hasse/arith.hpp"
#include "hasse/localsolve.hpp"

namespace hasse {

enum class Isogeny { phi, psi };

std::string to_string(Isogeny iso);

/// E: y^2 = x(x^2 + a x + b) and its 2-isogenous curve
/// E^: y^2 = x(x^2 + a_hat x + b_hat) with a_hat = -2a, b_hat = a^2 - 4b.
struct IsogenyPair {
    i64 a = 0;
    i64 b = 0;
    i64 a_hat = 0;
    i64 b_hat = 0;
    bool operator==(const IsogenyPair&) const = default;
};

IsogenyPair isogenous_pair(i64 a, i64 b);

/// One torsor N^2 = b1 M^4 + a M^2 e^2 + (b/b1) e^4 per signed squarefree b1 | b.
std::vector<TorsorSpec> torsor_family(i64 a, i64 b);

/// Classes b1 mod squares whose torsors are everywhere locally solvable.
/// psi-torsors carry E's coefficients (a, b); phi-torsors carry (a_hat, b_hat).
struct SelmerGroup {
    Isogeny isogeny = Isogeny::psi;
    std::vector<i64> elements;  // squarefree representatives, sorted

    bool contains(i64 b1) const;
    std::size_t order() const noexcept { return elements.size(); }
};

SelmerGroup selmer_group(i64 a, i64 b, Isogeny isogeny);

/// Coefficients (a, b) whose torsors compute the Selmer group for `isogeny`.
std::pair<i64, i64> torsor_coefficients(const IsogenyPair& pair, Isogeny isogeny);

/// Scan e = 0..H, then M = 0..H (gcd(M, e) = 1), N >= 0 derived. Rows are
/// searched in parallel; the first point in scan order is returned.
std::optional<TorsorPoint> torsor_point_search(const TorsorSpec& t, i64 H);

namespace reference {
std::optional<TorsorPoint> torsor_point_search(const TorsorSpec& t, i64 H);
}

/// A rational point on y^2 = x(x^2 + a x + b), or the point at infinity.
struct CurvePoint {
    bool infinity = true;
    Rational x = 0;
    Rational y = 0;

    static CurvePoint at_infinity() { return {}; }
    static CurvePoint affine(Rational x, Rational y) { return {false, std::move(x), std::move(y)}; }
    bool operator==(const CurvePoint&) const = default;
};

bool on_curve(i64 a, i64 b, const CurvePoint& P);
CurvePoint add_points(i64 a, i64 b, const CurvePoint& P, const CurvePoint& Q);
CurvePoint negate(const CurvePoint& P);

/// (N, M, e) -> (b1 M^2/e^2, b1 M N/e^3) on y^2 = x(x^2 + a x + b1 b2).
CurvePoint torsor_to_curve_point(const TorsorSpec& t, const TorsorPoint& pt);

/// Dimension over F_2 of the subgroup of Q*/Q*^2 generated by the classes.
int f2_rank(const std::vector<i64>& classes);
/// Squarefree representatives of the generated subgroup, sorted.
std::vector<i64> f2_span(const std::vector<i64>& classes);
/// Is b1 in the subgroup generated by `classes`?
bool in_f2_span(const std::vector<i64>& classes, i64 b1);

struct TorsionSet {
    // Finite torsion points, sorted; the point at infinity is always included.
    std::vector<std::pair<i64, i64>> points;
    std::size_t order() const noexcept { return points.size() + 1; }
};

/// Order cap for torsion verification.
inline constexpr int kTorsionOrderCap = 16;

TorsionSet nagell_lutz_torsion(i64 a, i64 b);

struct ShaCandidate {
    Isogeny isogeny;
    i64 b1;
    bool operator==(const ShaCandidate&) const = default;
};

struct DescentReport {
    IsogenyPair pair;
    SelmerGroup selmer_phi;
    SelmerGroup selmer_psi;
    std::map<i64, TorsorPoint> found_phi;  // b1 -> point on the phi-torsor
    std::map<i64, TorsorPoint> found_psi;
    i64 H = 0;
    int rank_lower = 0;
    int rank_upper = 0;
    std::vector<ShaCandidate> sha_candidates;

    std::vector<i64> found_classes(Isogeny iso) const;
};

struct RankBounds {
    int lower = 0;
    int upper = 0;
};

RankBounds rank_bounds(const DescentReport& report);

DescentReport full_descent(i64 a, i64 b, i64 H);

namespace reference {
DescentReport full_descent(i64 a, i64 b, i64 H);
}

} // namespace hasse
