#include "hasse/descent.hpp"

#include <algorithm>
#include <set>

#include "hasse/errors.hpp"

namespace hasse {

std::string to_string(Isogeny iso) { return iso == Isogeny::phi ? "phi" : "psi"; }

IsogenyPair isogenous_pair(i64 a, i64 b) {
    i128 disc = static_cast<i128>(a) * a - 4 * static_cast<i128>(b);
    if (b == 0 || disc == 0) throw UsageError("singular curve: need b != 0 and a^2 - 4b != 0");
    if (disc > INT64_MAX || disc < INT64_MIN) throw UsageError("curve coefficients too large");
    return {a, b, -2 * a, static_cast<i64>(disc)};
}

std::vector<TorsorSpec> torsor_family(i64 a, i64 b) {
    if (b == 0) throw UsageError("torsor_family: b must be nonzero");
    std::vector<TorsorSpec> out;
    for (i64 b1 : squarefree_divisors(b)) out.push_back({b1, a, b / b1});
    return out;
}

bool SelmerGroup::contains(i64 b1) const {
    return std::binary_search(elements.begin(), elements.end(), squarefree_part(b1));
}

std::pair<i64, i64> torsor_coefficients(const IsogenyPair& pair, Isogeny isogeny) {
    return isogeny == Isogeny::psi ? std::pair{pair.a, pair.b} : std::pair{pair.a_hat, pair.b_hat};
}

namespace {

i64 class_product(i64 x, i64 y) {
    i64 g = gcd(x, y);
    i128 v = static_cast<i128>(x / g) * (y / g);
    if (v > INT64_MAX || v < INT64_MIN) throw ResourceError("square class product overflows");
    return static_cast<i64>(v);
}

// Square classes as F_2 vectors: bit 0 is the sign, bit i+1 the i-th prime.
struct ClassBasis {
    std::vector<i64> primes;

    explicit ClassBasis(const std::vector<i64>& classes) {
        std::set<i64> ps;
        for (i64 c : classes)
            for (auto [q, e] : factorize(c).factors)
                if (e % 2 == 1) ps.insert(q);
        primes.assign(ps.begin(), ps.end());
        if (primes.size() > 62) throw ResourceError("too many primes in square classes");
    }

    u64 vec(i64 c) const {
        u64 v = c < 0 ? 1 : 0;
        for (auto [q, e] : factorize(c).factors) {
            if (e % 2 == 0) continue;
            auto it = std::lower_bound(primes.begin(), primes.end(), q);
            if (it == primes.end() || *it != q) return ~u64{0};  // outside the basis
            v |= u64{1} << (1 + (it - primes.begin()));
        }
        return v;
    }
};

// Row-reduced basis; returns the pivot rows.
std::vector<u64> echelon(const std::vector<u64>& vs) {
    std::vector<u64> rows;
    for (u64 v : vs) {
        for (u64 r : rows) v = std::min(v, v ^ r);
        if (v) {
            rows.push_back(v);
            std::sort(rows.rbegin(), rows.rend());
        }
    }
    return rows;
}

} // namespace

int f2_rank(const std::vector<i64>& classes) {
    ClassBasis basis(classes);
    std::vector<u64> vs;
    for (i64 c : classes) vs.push_back(basis.vec(c));
    return static_cast<int>(echelon(vs).size());
}

std::vector<i64> f2_span(const std::vector<i64>& classes) {
    std::set<i64> span{1};
    for (i64 c : classes) {
        i64 s = squarefree_part(c);
        if (span.count(s)) continue;
        std::vector<i64> add;
        for (i64 x : span) add.push_back(class_product(x, s));
        span.insert(add.begin(), add.end());
    }
    return {span.begin(), span.end()};
}

bool in_f2_span(const std::vector<i64>& classes, i64 b1) {
    ClassBasis basis(classes);
    u64 target = basis.vec(b1);
    if (target == ~u64{0}) return false;
    std::vector<u64> vs;
    for (i64 c : classes) vs.push_back(basis.vec(c));
    for (u64 r : echelon(vs)) target = std::min(target, target ^ r);
    return target == 0;
}

SelmerGroup selmer_group(i64 a, i64 b, Isogeny isogeny) {
    auto [ta, tb] = torsor_coefficients(isogenous_pair(a, b), isogeny);
    SelmerGroup out;
    out.isogeny = isogeny;
    for (const TorsorSpec& t : torsor_family(ta, tb)) {
        LocalSolvability ls = everywhere_locally_solvable(t);
        if (ls.verdict == Verdict::undecided) {
            for (const auto& r : ls.reports)
                if (r.solvable == Verdict::undecided)
                    throw UndecidedError("local solvability undecided for b1 = " + std::to_string(t.b1),
                                         to_string(r.place));
        }
        if (ls.verdict == Verdict::solvable) out.elements.push_back(t.b1);
    }
    std::sort(out.elements.begin(), out.elements.end());
    if (!out.contains(1)) throw InternalError("Selmer group misses the trivial class");
    for (i64 x : out.elements)
        for (i64 y : out.elements)
            if (!out.contains(class_product(x, y))) throw InternalError("Selmer group not closed under products");
    return out;
}

namespace {

std::optional<i64> first_in_row(const TorsorSpec& t, i64 e, i64 H) {
    for (i64 M = 0; M <= H; ++M) {
        if (gcd(M, e) != 1) continue;
        i128 v = t.quartic(M, e);
        if (v < 0) continue;
        if (exact_sqrt(v)) return M;
    }
    return std::nullopt;
}

std::optional<TorsorPoint> row_zero(const TorsorSpec& t) {
    if (auto r = exact_sqrt(t.b1); t.b1 >= 0 && r) return TorsorPoint{static_cast<i64>(*r), 1, 0};
    return std::nullopt;
}

TorsorPoint make_point(const TorsorSpec& t, i64 M, i64 e) {
    return {static_cast<i64>(*exact_sqrt(t.quartic(M, e))), M, e};
}

} // namespace

std::optional<TorsorPoint> torsor_point_search(const TorsorSpec& t, i64 H) {
    if (H < 0) throw UsageError("search height must be nonnegative");
    if (auto p = row_zero(t)) return p;
    constexpr i64 kBlock = 64;
    for (i64 lo = 1; lo <= H; lo += kBlock) {
        i64 hi = std::min(H, lo + kBlock - 1);
        std::vector<std::optional<i64>> rows(static_cast<std::size_t>(hi - lo + 1));
        const auto n = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) rows[i] = first_in_row(t, lo + i, H);
        for (std::ptrdiff_t i = 0; i < n; ++i)
            if (rows[i]) return make_point(t, *rows[i], lo + i);
    }
    return std::nullopt;
}

namespace reference {

std::optional<TorsorPoint> torsor_point_search(const TorsorSpec& t, i64 H) {
    if (H < 0) throw UsageError("search height must be nonnegative");
    if (auto p = row_zero(t)) return p;
    for (i64 e = 1; e <= H; ++e)
        for (i64 M = 0; M <= H; ++M) {
            if (gcd(M, e) != 1) continue;
            i128 v = t.quartic(M, e);
            if (v >= 0 && exact_sqrt(v)) return make_point(t, M, e);
        }
    return std::nullopt;
}

} // namespace reference

bool on_curve(i64 a, i64 b, const CurvePoint& P) {
    if (P.infinity) return true;
    return P.y * P.y == P.x * (P.x * P.x + a * P.x + b);
}

CurvePoint negate(const CurvePoint& P) {
    if (P.infinity) return P;
    return CurvePoint::affine(P.x, -P.y);
}

CurvePoint add_points(i64 a, i64 b, const CurvePoint& P, const CurvePoint& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    Rational lambda;
    if (P.x == Q.x) {
        if (P.y != Q.y || P.y == 0) return CurvePoint::at_infinity();
        lambda = (3 * P.x * P.x + 2 * a * P.x + b) / (2 * P.y);
    } else {
        lambda = (Q.y - P.y) / (Q.x - P.x);
    }
    Rational x3 = lambda * lambda - a - P.x - Q.x;
    Rational y3 = lambda * (P.x - x3) - P.y;
    return CurvePoint::affine(x3, y3);
}

CurvePoint torsor_to_curve_point(const TorsorSpec& t, const TorsorPoint& pt) {
    if (pt.e == 0) return CurvePoint::at_infinity();
    Rational e(pt.e);
    Rational x = Rational(t.b1) * pt.M * pt.M / (e * e);
    Rational y = Rational(t.b1) * pt.M * pt.N / (e * e * e);
    CurvePoint P = CurvePoint::affine(x, y);
    if (!on_curve(t.a, t.b(), P)) throw InternalError("torsor point does not map onto the curve");
    return P;
}

namespace {

bool is_integral(const Rational& r) { return denominator(r) == 1; }

std::vector<i64> divisors(const Factorization& f) {
    std::vector<i64> out{1};
    for (auto [q, e] : f.factors) {
        std::size_t n = out.size();
        i64 pw = 1;
        for (int k = 1; k <= e; ++k) {
            pw *= q;
            for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pw);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_torsion(i64 a, i64 b, const CurvePoint& P) {
    CurvePoint Q = P;
    for (int n = 2; n <= kTorsionOrderCap; ++n) {
        Q = add_points(a, b, Q, P);
        if (Q.infinity) return true;
        if (!is_integral(Q.x) || !is_integral(Q.y)) return false;
    }
    return false;
}

} // namespace

TorsionSet nagell_lutz_torsion(i64 a, i64 b) {
    IsogenyPair pair = isogenous_pair(a, b);
    // y^2 divides the discriminant b^2 (a^2 - 4b), up to a constant 16.
    std::map<i64, int> exps;
    for (auto [q, e] : factorize(b).factors) exps[q] += 2 * e;
    for (auto [q, e] : factorize(pair.b_hat).factors) exps[q] += e;
    Factorization yf;
    for (auto [q, e] : exps) yf.factors.push_back({q, e / 2});
    std::set<std::pair<i64, i64>> pts;
    auto try_point = [&](i64 x, i64 y) {
        i128 rhs = static_cast<i128>(x) * (static_cast<i128>(x) * x + static_cast<i128>(a) * x + b);
        if (rhs != static_cast<i128>(y) * y) return;
        CurvePoint P = CurvePoint::affine(x, y);
        if (y == 0 || is_torsion(a, b, P)) pts.insert({x, y});
    };
    try_point(0, 0);
    // Roots of x^2 + a x + b.
    if (auto r = exact_sqrt(static_cast<i128>(pair.b_hat))) {
        i64 s = static_cast<i64>(*r);
        if ((a + s) % 2 == 0) {
            try_point((-a + s) / 2, 0);
            try_point((-a - s) / 2, 0);
        }
    }
    for (i64 y : divisors(yf)) {
        i128 y2 = static_cast<i128>(y) * y;
        if (y2 > INT64_MAX) continue;
        for (i64 x : divisors(factorize(static_cast<i64>(y2)))) {
            try_point(x, y);
            try_point(-x, y);
        }
    }
    TorsionSet out;
    for (auto [x, y] : pts) {
        out.points.push_back({x, y});
        if (y != 0) out.points.push_back({x, -y});
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
}

std::vector<i64> DescentReport::found_classes(Isogeny iso) const {
    const auto& m = iso == Isogeny::phi ? found_phi : found_psi;
    std::vector<i64> out;
    for (const auto& [b1, pt] : m) out.push_back(b1);
    return out;
}

RankBounds rank_bounds(const DescentReport& r) {
    auto log2_exact = [](std::size_t n) {
        int k = 0;
        while ((std::size_t{1} << k) < n) ++k;
        if ((std::size_t{1} << k) != n) throw InternalError("Selmer group order is not a power of 2");
        return k;
    };
    RankBounds out;
    out.upper = log2_exact(r.selmer_phi.order()) + log2_exact(r.selmer_psi.order()) - 2;
    int lower = f2_rank(r.found_classes(Isogeny::phi)) + f2_rank(r.found_classes(Isogeny::psi)) - 2;
    out.lower = std::max(0, lower);
    return out;
}

namespace {

struct SearchJob {
    Isogeny iso;
    TorsorSpec torsor;
};

std::vector<SearchJob> search_jobs(const DescentReport& r) {
    std::vector<SearchJob> jobs;
    for (Isogeny iso : {Isogeny::phi, Isogeny::psi}) {
        auto [ta, tb] = torsor_coefficients(r.pair, iso);
        const SelmerGroup& s = iso == Isogeny::phi ? r.selmer_phi : r.selmer_psi;
        for (i64 b1 : s.elements) jobs.push_back({iso, {b1, ta, tb / b1}});
    }
    return jobs;
}

// The images of the 2-torsion always lie in the image of the descent map.
void add_bookkeeping(DescentReport& r) {
    for (Isogeny iso : {Isogeny::phi, Isogeny::psi}) {
        auto [ta, tb] = torsor_coefficients(r.pair, iso);
        auto& found = iso == Isogeny::phi ? r.found_phi : r.found_psi;
        if (!found.count(1)) found[1] = TorsorPoint{1, 1, 0};
        i64 sb = squarefree_part(tb);
        if (!found.count(sb)) {
            // x = 0 maps to b; as a torsor point: M = 0, e = 1, N^2 = b / sb.
            auto n = exact_sqrt(static_cast<i128>(tb / sb));
            if (!n) throw InternalError("b / squarefree(b) is not a square");
            found[sb] = TorsorPoint{static_cast<i64>(*n), 0, 1};
        }
    }
}

void finish(DescentReport& r, const std::vector<SearchJob>& jobs, const std::vector<std::optional<TorsorPoint>>& pts) {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!pts[i]) continue;
        auto& found = jobs[i].iso == Isogeny::phi ? r.found_phi : r.found_psi;
        found[jobs[i].torsor.b1] = *pts[i];
    }
    add_bookkeeping(r);
    for (Isogeny iso : {Isogeny::phi, Isogeny::psi}) {
        const SelmerGroup& s = iso == Isogeny::phi ? r.selmer_phi : r.selmer_psi;
        std::vector<i64> found = r.found_classes(iso);
        for (i64 b1 : found)
            if (!s.contains(b1)) throw InternalError("torsor with a rational point is not in the Selmer group");
        for (i64 b1 : s.elements)
            if (!in_f2_span(found, b1)) r.sha_candidates.push_back({iso, b1});
    }
    RankBounds rb = rank_bounds(r);
    r.rank_lower = rb.lower;
    r.rank_upper = rb.upper;
    if (r.rank_lower > r.rank_upper) throw InternalError("rank lower bound exceeds upper bound");
}

DescentReport start(i64 a, i64 b, i64 H) {
    if (H < 0) throw UsageError("search height must be nonnegative");
    DescentReport r;
    r.pair = isogenous_pair(a, b);
    r.H = H;
    r.selmer_psi = selmer_group(a, b, Isogeny::psi);
    r.selmer_phi = selmer_group(a, b, Isogeny::phi);
    return r;
}

} // namespace

DescentReport full_descent(i64 a, i64 b, i64 H) {
    DescentReport r = start(a, b, H);
    std::vector<SearchJob> jobs = search_jobs(r);
    std::vector<std::optional<TorsorPoint>> pts(jobs.size());
    const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) pts[i] = reference::torsor_point_search(jobs[i].torsor, H);
    finish(r, jobs, pts);
    return r;
}

namespace reference {

DescentReport full_descent(i64 a, i64 b, i64 H) {
    DescentReport r = start(a, b, H);
    std::vector<SearchJob> jobs = search_jobs(r);
    std::vector<std::optional<TorsorPoint>> pts;
    for (const auto& j : jobs) pts.push_back(reference::torsor_point_search(j.torsor, H));
    finish(r, jobs, pts);
    return r;
}

} // namespace reference

} // namespace hasse
