#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hasse/arith.hpp"

namespace hasse {

/// The homogeneous space N^2 = b1 M^4 + a M^2 e^2 + b2 e^4.
struct TorsorSpec {
    i64 b1 = 1;
    i64 a = 0;
    i64 b2 = 1;

    i64 b() const noexcept { return b1 * b2; }
    /// b1 M^4 + a M^2 e^2 + b2 e^4, exactly.
    BigInt quartic(const BigInt& M, const BigInt& e) const;
    i128 quartic(i64 M, i64 e) const noexcept;
    /// a^2 - 4 b1 b2; the quartic is separable iff b1 * b2 * this != 0.
    i64 quadratic_disc() const noexcept { return a * a - 4 * b1 * b2; }
    bool operator==(const TorsorSpec&) const = default;
};

struct TorsorPoint {
    i64 N = 0;
    i64 M = 0;
    i64 e = 0;
    bool operator==(const TorsorPoint&) const = default;
};

enum class Verdict { unsolvable, solvable, undecided };

std::string to_string(Verdict v);
/// "inf" for the real place, else the prime.
std::string to_string(Place place);

struct LocalCertificate {
    enum class Kind {
        hensel,          // f(M, e) is a nonzero p-adic square (or zero) at integers M, e
        infinity,        // (M, e) = (1, 0): b1 is a square in the completion
        real_point,      // real place: f(M, e) >= 0 at the integers given
    };
    Kind kind = Kind::hensel;
    BigInt M = 0;
    BigInt e = 0;
    int precision = 0;       // disc radius exponent k at which the branch was decided
    int half_valuation = 0;  // v_p(f(M, e)) / 2
};

struct LocalReport {
    Place place = Place::real();
    Verdict solvable = Verdict::undecided;
    std::optional<LocalCertificate> certificate;
};

struct LocalSolvability {
    Verdict verdict = Verdict::undecided;
    std::vector<LocalReport> reports;
};

/// (a, b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over Q_v.
Sign hilbert_symbol(i64 a, i64 b, Place place);

bool solvable_real(const TorsorSpec& t);

/// Depth bound for the p-adic branch search.
int local_depth_bound(const TorsorSpec& t, i64 p);

/// Exact p-adic decision with a certificate, or undecided at the depth bound.
LocalReport solvable_in_Qp(const TorsorSpec& t, i64 p);

/// Recomputes the certificate of a solvable report.
bool verify_certificate(const TorsorSpec& t, const LocalReport& r);

/// Places that are searched: real, 2, odd bad primes, odd good primes < 11.
/// Every other place is an odd prime p >= 11 of good reduction, where the
/// smooth genus-one reduction has (sqrt p - 1)^2 > 0 points that lift.
std::vector<Place> searched_places(const TorsorSpec& t);

/// Place checks run in parallel; the verdict is the conjunction.
LocalSolvability everywhere_locally_solvable(const TorsorSpec& t);

namespace reference {
LocalSolvability everywhere_locally_solvable(const TorsorSpec& t);
}

} // namespace hasse
