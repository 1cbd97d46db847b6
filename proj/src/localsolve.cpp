#include "hasse/localsolve.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <set>

#include "hasse/errors.hpp"

namespace hasse {

BigInt TorsorSpec::quartic(const BigInt& M, const BigInt& e) const {
    BigInt m2 = M * M;
    BigInt e2 = e * e;
    return b1 * m2 * m2 + a * m2 * e2 + b2 * e2 * e2;
}

i128 TorsorSpec::quartic(i64 M, i64 e) const noexcept {
    i128 m2 = static_cast<i128>(M) * M;
    i128 e2 = static_cast<i128>(e) * e;
    return b1 * m2 * m2 + a * m2 * e2 + b2 * e2 * e2;
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::unsolvable:
        return "false";
    case Verdict::solvable:
        return "true";
    case Verdict::undecided:
        return "undecided";
    }
    return "?";
}

std::string to_string(Place place) {
    return place.is_real() ? "inf" : std::to_string(place.p());
}

Sign hilbert_symbol(i64 a, i64 b, Place place) {
    if (a == 0 || b == 0) throw UsageError("hilbert_symbol: arguments must be nonzero");
    if (place.is_real()) return (a < 0 && b < 0) ? Sign::minus : Sign::plus;
    i64 p = place.p();
    int alpha = valuation(a, p);
    int beta = valuation(b, p);
    i64 u = a, v = b;
    for (int i = 0; i < alpha; ++i) u /= p;
    for (int i = 0; i < beta; ++i) v /= p;
    int sign = 1;
    if (p == 2) {
        auto eps = [](i64 x) { return static_cast<int>(mod((mod(x, 8) - 1) / 2, 2)); };
        auto omega = [](i64 x) {
            i64 r = mod(x, 8);
            return (r == 3 || r == 5) ? 1 : 0;
        };
        int e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        sign = (e % 2 == 0) ? 1 : -1;
    } else {
        if ((static_cast<i64>(alpha) * beta % 2 == 1) && ((p - 1) / 2) % 2 == 1) sign = -sign;
        if (beta % 2 == 1) sign *= jacobi_symbol(u, p);
        if (alpha % 2 == 1) sign *= jacobi_symbol(v, p);
    }
    return sign_of(sign);
}

bool solvable_real(const TorsorSpec& t) {
    if (t.b1 > 0 || t.b2 >= 0) return true;
    // b1, b2 < 0: b1 s^2 + a s + b2 peaks at s = -a/(2 b1), positive iff a > 0.
    return t.a > 0 && static_cast<i128>(t.a) * t.a >= 4 * static_cast<i128>(t.b1) * t.b2;
}

namespace {

struct Poly {
    std::array<BigInt, 5> c;  // c[j] x^j
};

// Taylor coefficients of g at x0: g(x0 + h) = sum_j out[j] h^j.
Poly taylor(const Poly& g, const BigInt& x0) {
    static constexpr int kBinom[5][5] = {{1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
    std::array<BigInt, 5> pw;
    pw[0] = 1;
    for (int i = 1; i < 5; ++i) pw[i] = pw[i - 1] * x0;
    Poly out;
    for (int j = 0; j < 5; ++j) {
        BigInt s = 0;
        for (int i = j; i < 5; ++i)
            if (g.c[i] != 0) s += kBinom[i][j] * g.c[i] * pw[i - j];
        out.c[j] = s;
    }
    return out;
}

constexpr int kInfinite = std::numeric_limits<int>::max() / 4;

int val_or_inf(const BigInt& v, i64 p) { return v == 0 ? kInfinite : valuation(v, p); }

enum class Branch { found, empty, undecided };

struct SearchResult {
    Branch outcome = Branch::empty;
    BigInt x0;
    int precision = 0;
    int half_valuation = 0;
};

// Does g take a nonzero square value (or zero) on x0 + p^k Z_p? Depth-first
// refinement; discs on which every value has the square class of g(x0) are
// decided outright.
SearchResult search_disc(const Poly& g, i64 p, const BigInt& x0, int k, int depth_bound) {
    struct Frame {
        BigInt x0;
        int k;
    };
    const int gap = (p == 2) ? 3 : 1;
    std::vector<Frame> stack{{x0, k}};
    bool undecided = false;
    while (!stack.empty()) {
        Frame fr = std::move(stack.back());
        stack.pop_back();
        Poly t = taylor(g, fr.x0);
        if (t.c[0] == 0) return {Branch::found, fr.x0, fr.k, 0};
        int v0 = valuation(t.c[0], p);
        int delta = kInfinite;
        for (int j = 1; j < 5; ++j) {
            int vj = val_or_inf(t.c[j], p);
            if (vj < kInfinite) delta = std::min(delta, vj + j * fr.k);
        }
        if (delta - v0 >= gap) {
            if (v0 % 2 == 0 && is_square_in_Qp(t.c[0], Place::prime(p)))
                return {Branch::found, fr.x0, fr.k, v0 / 2};
            continue;
        }
        if (fr.k >= depth_bound) {
            undecided = true;
            continue;
        }
        BigInt step = pow(BigInt(p), static_cast<unsigned>(fr.k));
        for (i64 r = p - 1; r >= 0; --r) stack.push_back({fr.x0 + r * step, fr.k + 1});
    }
    return {undecided ? Branch::undecided : Branch::empty, 0, 0, 0};
}

LocalReport real_report(const TorsorSpec& t) {
    LocalReport r;
    r.place = Place::real();
    if (!solvable_real(t)) {
        r.solvable = Verdict::unsolvable;
        return r;
    }
    r.solvable = Verdict::solvable;
    LocalCertificate cert;
    cert.kind = LocalCertificate::Kind::real_point;
    if (t.b1 > 0) {
        cert.M = 1;
        cert.e = 0;
        r.certificate = cert;
        return r;
    }
    if (t.b2 >= 0) {
        cert.M = 0;
        cert.e = 1;
        r.certificate = cert;
        return r;
    }
    // Approximate sqrt(s*) with s* = -a/(2 b1) by M/e.
    long double root = std::sqrt(-static_cast<long double>(t.a) / (2.0L * static_cast<long double>(t.b1)));
    for (i64 e = 1; e <= 1'000'000; ++e) {
        i64 M = std::llround(root * static_cast<long double>(e));
        for (i64 m : {M, M - 1, M + 1}) {
            if (m >= 0 && t.quartic(BigInt(m), BigInt(e)) >= 0) {
                cert.M = m;
                cert.e = e;
                r.certificate = cert;
                return r;
            }
        }
    }
    return r;  // degenerate tangency at an irrational ratio; no integer witness
}

} // namespace

int local_depth_bound(const TorsorSpec& t, i64 p) {
    int v = (p == 2) ? 4 : 0;  // 16
    v += 2 * valuation(t.b1, p) + 2 * valuation(t.b2, p);
    i64 disc = t.quadratic_disc();
    v += (disc == 0) ? 40 : 2 * valuation(disc, p);
    return v + 6;
}

LocalReport solvable_in_Qp(const TorsorSpec& t, i64 p) {
    if (t.b1 == 0 || t.b2 == 0) throw UsageError("torsor coefficients b1, b2 must be nonzero");
    Place place = Place::prime(p);
    LocalReport report;
    report.place = place;
    if (is_square_in_Qp(t.b1, place)) {
        report.solvable = Verdict::solvable;
        report.certificate = LocalCertificate{LocalCertificate::Kind::infinity, 1, 0, 0, valuation(t.b1, p) / 2};
        return report;
    }
    int bound = local_depth_bound(t, p);
    // Chart e = 1: g(x) = b2 + a x^2 + b1 x^4 on Z_p.
    Poly chart_e{{BigInt(t.b2), 0, BigInt(t.a), 0, BigInt(t.b1)}};
    SearchResult r1 = search_disc(chart_e, p, 0, 0, bound);
    if (r1.outcome == Branch::found) {
        report.solvable = Verdict::solvable;
        report.certificate = LocalCertificate{LocalCertificate::Kind::hensel, r1.x0, 1, r1.precision, r1.half_valuation};
        return report;
    }
    // Chart M = 1: h(y) = b1 + a y^2 + b2 y^4 on p Z_p.
    Poly chart_m{{BigInt(t.b1), 0, BigInt(t.a), 0, BigInt(t.b2)}};
    SearchResult r2 = search_disc(chart_m, p, 0, 1, bound);
    if (r2.outcome == Branch::found) {
        report.solvable = Verdict::solvable;
        report.certificate = LocalCertificate{LocalCertificate::Kind::hensel, 1, r2.x0, r2.precision, r2.half_valuation};
        return report;
    }
    bool undecided = r1.outcome == Branch::undecided || r2.outcome == Branch::undecided;
    report.solvable = undecided ? Verdict::undecided : Verdict::unsolvable;
    return report;
}

bool verify_certificate(const TorsorSpec& t, const LocalReport& r) {
    if (r.solvable != Verdict::solvable) return true;
    if (!r.certificate) return r.place.is_real() && solvable_real(t);
    const LocalCertificate& c = *r.certificate;
    if (c.M == 0 && c.e == 0) return false;
    BigInt v = t.quartic(c.M, c.e);
    if (r.place.is_real()) return v >= 0;
    if (v == 0) return true;
    if (!is_square_in_Qp(v, r.place)) return false;
    return valuation(v, r.place.p()) == 2 * c.half_valuation;
}

std::vector<Place> searched_places(const TorsorSpec& t) {
    std::set<i64> primes{2, 3, 5, 7};
    for (i64 n : {t.b1, t.b2, t.quadratic_disc()}) {
        if (n == 0) continue;
        for (auto [q, e] : factorize(n).factors) {
            (void)e;
            primes.insert(q);
        }
    }
    std::vector<Place> out{Place::real()};
    for (i64 q : primes) out.push_back(Place::prime(q));
    return out;
}

namespace {

LocalReport check_place(const TorsorSpec& t, Place place) {
    if (place.is_real()) return real_report(t);
    return solvable_in_Qp(t, place.p());
}

Verdict aggregate(const std::vector<LocalReport>& reports) {
    bool undecided = false;
    for (const auto& r : reports) {
        if (r.solvable == Verdict::unsolvable) return Verdict::unsolvable;
        if (r.solvable == Verdict::undecided) undecided = true;
    }
    return undecided ? Verdict::undecided : Verdict::solvable;
}

} // namespace

LocalSolvability everywhere_locally_solvable(const TorsorSpec& t) {
    std::vector<Place> places = searched_places(t);
    LocalSolvability out;
    out.reports.resize(places.size());
    const auto n = static_cast<std::ptrdiff_t>(places.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) out.reports[i] = check_place(t, places[i]);
    out.verdict = aggregate(out.reports);
    return out;
}

namespace reference {

LocalSolvability everywhere_locally_solvable(const TorsorSpec& t) {
    LocalSolvability out;
    for (Place place : searched_places(t)) out.reports.push_back(check_place(t, place));
    out.verdict = aggregate(out.reports);
    return out;
}

} // namespace reference

} // namespace hasse
