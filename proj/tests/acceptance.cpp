// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--only N ...] [--expect-fail N ...]
//
// Exit 0 iff the set of failing criteria equals the --expect-fail set.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hasse/arith.hpp"
#include "hasse/descent.hpp"
#include "hasse/errors.hpp"
#include "hasse/gaussint.hpp"
#include "hasse/localsolve.hpp"
#include "hasse/pepin.hpp"
#include "hasse/quadforms.hpp"

using namespace hasse;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

bool all_pass(const std::vector<ClaimCheck>& cs) {
    if (cs.empty()) return false;
    for (const auto& c : cs)
        if (!c.pass) return false;
    return true;
}

Outcome c1() {
    ClassGroup cg = class_group(-164);
    QuadForm f = prime_form_class(-164, 5);
    i64 ord = class_order(cg, f);
    bool fourth = is_fourth_power_class(cg, f);
    bool ok = cg.order() == 8 && cg.is_cyclic() && ord == 4 && !fourth;
    return {ok, "h = " + std::to_string(cg.order()) + (cg.is_cyclic() ? " cyclic" : " not cyclic") +
                    ", order of [p5] = " + std::to_string(ord) + ", fourth power: " + (fourth ? "yes" : "no")};
}

Outcome c2() {
    int n = 0;
    for (i64 m : primes_up_to(500)) {
        if (m % 8 != 1) continue;
        auto s = two_sylow_structure(class_group(-4 * m));
        ++n;
        if (s.size() != 1 || s[0] % 4 != 0) return {false, "m = " + std::to_string(m)};
    }
    return {true, std::to_string(n) + " primes m"};
}

Outcome c3() {
    RayClassGroup r = ray_class_group(-4, {6, 0});
    if (r.invariant_factors() != std::vector<i64>{4}) return {false, "invariants differ from [4]"};
    auto ps = family_primes(QuadForm{9, 0, 4}, 5000);
    for (auto [p, w] : ps)
        if (ray_class_order(r, p) != 2) return {false, "p = " + std::to_string(p)};
    return {true, "[4]; " + std::to_string(ps.size()) + " primes of order 2"};
}

Outcome c4() {
    auto inv = ray_class_group(-8, {4, 0}).invariant_factors();
    return {inv == std::vector<i64>{4}, inv.size() == 1 ? "[" + std::to_string(inv[0]) + "]" : "not cyclic"};
}

Outcome c5() {
    auto rows = family_scan(FamilySpec::from_raw_form({5, 4, 9}), 10000, 60);
    std::size_t points = 0, undecided = 0, mismatched = 0;
    i64 first = 0;
    for (const auto& r : rows) {
        points += r.global_point.has_value();
        undecided += r.local.verdict == Verdict::undecided;
        bool els = r.local.verdict == Verdict::solvable;
        if (r.local.verdict != Verdict::undecided && els != (r.p % 8 == 1)) {
            if (!mismatched) first = r.p;
            ++mismatched;
        }
    }
    std::ostringstream d;
    d << rows.size() << " primes, " << points << " points, " << undecided << " undecided, " << mismatched
      << " with ELS != (p = 1 mod 8)";
    if (mismatched) d << ", first p = " << first << " (p = 13 mod 16 is 2-adically solvable)";
    return {points == 0 && undecided == 0 && mismatched == 0, d.str()};
}

Outcome c6() {
    auto rows = family_scan(FamilySpec::from_coefficients(3, 0, 4), 10000, 60);
    std::size_t points = 0;
    for (const auto& r : rows) points += r.global_point.has_value();
    bool id = identity_trials(IdentityKind::nine_four, 1000, 0);
    return {points == 0 && id && !rows.empty(),
            std::to_string(rows.size()) + " primes, " + std::to_string(points) + " points, identity " +
                (id ? "holds" : "fails")};
}

Outcome c7() {
    auto ps = family_primes(QuadForm{2, 0, 3}, 10000);
    for (auto [p, w] : ps)
        if (hilbert_symbol(p, -6, Place::prime(2)) != Sign::minus) return {false, "p = " + std::to_string(p)};
    return {!ps.empty(), std::to_string(ps.size()) + " primes"};
}

Outcome c8() {
    HistoricReport r = historic_case("lind_reichardt", 1000);
    return {all_pass(r.checks), std::to_string(r.checks.size()) + " checks"};
}

Outcome c9() {
    HistoricReport r = historic_case("euler_cube", 100000);
    bool ok = all_pass(r.checks) && r.descent && r.descent->rank_upper == 0 && r.descent->sha_candidates.empty();
    return {ok, std::to_string(r.integral_points.size()) + " integral points"};
}

Outcome c10() {
    Flt7Report r = flt7_verify(1000, 1000, 0);
    bool ok = all_pass(r.stages) && r.stages.size() == 6 &&
              r.torsion.points == std::vector<std::pair<i64, i64>>{{0, 0}} && r.descent.rank_upper == 0;
    return {ok, std::to_string(r.quartic_pairs_checked) + " quartic pairs, " +
                    std::to_string(r.field_points_checked) + " field points"};
}

Outcome c11() {
    int n = 0;
    for (i64 p : primes_up_to(10000)) {
        if (p % 8 != 1) continue;
        ++n;
        if (!conjugate_symbol_check(p)) return {false, "p = " + std::to_string(p)};
    }
    return {true, std::to_string(n) + " primes"};
}

Outcome c12() {
    std::size_t instances = 0;
    for (i64 p : primes_up_to(50)) {
        if (p == 2) continue;
        for (i64 q : primes_up_to(50)) {
            if (q == 2 || q == p || jacobi_symbol(p, q) != 1) continue;
            for (int h : {1, 3, 5}) {
                BigInt qh = pow(BigInt(q), static_cast<unsigned>(h));
                // r = r2/2, s = s2/2 with s <= 500
                for (i64 s2 = 1; s2 <= 1000; ++s2) {
                    BigInt r2sq = 4 * qh + BigInt(p) * s2 * s2;
                    if (!is_perfect_square(r2sq)) continue;
                    i64 r2 = static_cast<i64>(isqrt(r2sq));
                    if (r2 > 1000 || r2 % q == 0 || s2 % q == 0) continue;
                    ++instances;
                    if (!power_difference_residue_check(p, q, h, r2, s2))
                        return {false, "p = " + std::to_string(p) + ", q = " + std::to_string(q) +
                                           ", h = " + std::to_string(h)};
                }
            }
        }
    }
    return {instances > 0, std::to_string(instances) + " instances"};
}

Outcome c13() {
    std::ostringstream d;
    bool ok = true;
    for (auto [p, q] : std::vector<std::pair<i64, i64>>{{73, 3}, {89, 7}, {97, 3}, {113, 7}}) {
        if (!quartic_torsor_hypotheses(p, q)) {
            d << "(" << p << "," << q << ") excluded; ";
            continue;
        }
        QuarticTorsorReport r = quartic_torsor_report(p, q, 500);
        bool sel = r.descent.selmer_phi.elements == std::vector<i64>{1, p} && r.descent.selmer_psi.order() == 16 &&
                   r.descent.selmer_psi.elements == f2_span({-1, 2, p, q});
        bool cond = !r.sha_annotation || !r.point;
        ok = ok && sel && cond && all_pass(r.checks);
        d << "(" << p << "," << q << ") " << (sel ? "selmer ok" : "selmer differs")
          << (r.sha_annotation ? (r.point ? ", point despite symbols" : ", no point") : ", symbols +1") << "; ";
    }
    return {ok, d.str()};
}

Outcome c14() {
    std::size_t pairs = 0, found = 0;
    for (i64 p : primes_up_to(600))
        for (i64 q : primes_up_to(30)) {
            if (!quartic_torsor_hypotheses(p, q)) continue;
            ++pairs;
            for (const auto& row : torsor_condition_table(p, q, 200)) {
                found += row.point.has_value();
                if (!row.implication_holds)
                    return {false, "p = " + std::to_string(p) + ", q = " + std::to_string(q) + ", b1 = " +
                                       std::to_string(row.b1)};
            }
        }
    return {pairs > 0, std::to_string(pairs) + " pairs, " + std::to_string(found) + " torsor points"};
}

// Brute force for Q_p points: some primitive (M, e) mod p^k with f(M, e) a p-adic square.
bool brute_local(const TorsorSpec& t, i64 p, int k) {
    i64 box = 1;
    for (int i = 0; i < k; ++i) box *= p;
    for (i64 M = 0; M < box; ++M)
        for (i64 e = 0; e < box; ++e) {
            if (M % p == 0 && e % p == 0) continue;
            BigInt v = t.quartic(BigInt(M), BigInt(e));
            if (v == 0 || is_square_in_Qp(v, Place::prime(p))) return true;
        }
    return false;
}

std::size_t brute_class_number(i64 D) {
    std::size_t h = 0;
    for (i64 a = 1; 3 * a * a <= -D; ++a)
        for (i64 b = -a + 1; b <= a; ++b) {
            if ((b * b - D) % (4 * a) != 0) continue;
            i64 c = (b * b - D) / (4 * a);
            if (c < a || (b < 0 && a == c) || gcd(gcd(a, b), c) != 1) continue;
            ++h;
        }
    return h;
}

Outcome c15() {
    std::mt19937_64 rng(15);
    std::uniform_int_distribution<i64> small(-30, 30);
    std::size_t local = 0, symbols = 0, classes = 0;
    while (local < 1000) {
        TorsorSpec t{small(rng), small(rng), small(rng)};
        if (t.b1 == 0 || t.b2 == 0 || t.quadratic_disc() == 0) continue;
        i64 p = std::array<i64, 3>{2, 3, 5}[rng() % 3];
        LocalReport r = solvable_in_Qp(t, p);
        int k = p == 2 ? 6 : (p == 3 ? 4 : 3);
        if (r.solvable == Verdict::undecided || (r.solvable == Verdict::solvable) != brute_local(t, p, k))
            return {false, "local solvability of (" + std::to_string(t.b1) + ", " + std::to_string(t.a) + ", " +
                               std::to_string(t.b2) + ") at " + std::to_string(p)};
        ++local;
    }
    auto primes = primes_up_to(20000);
    while (symbols < 1000) {
        i64 p = primes[rng() % primes.size()];
        if (p % 8 != 1) continue;
        i64 a = static_cast<i64>(rng() % static_cast<u64>(p - 1)) + 1;
        i64 e2 = powmod(a, static_cast<u64>((p - 1) / 2), p);
        if (jacobi_symbol(a, p) != (e2 == 1 ? 1 : -1)) return {false, "jacobi"};
        if (e2 == 1) {
            i64 e4 = powmod(a, static_cast<u64>((p - 1) / 4), p);
            if (to_int(quartic_symbol(a, p)) != (e4 == 1 ? 1 : -1)) return {false, "quartic symbol"};
        }
        ++symbols;
    }
    while (classes < 1000) {
        i64 D = -static_cast<i64>(rng() % 20000) - 3;
        if (mod(D, 4) > 1) continue;
        if (class_group(D).order() != brute_class_number(D)) return {false, "h(" + std::to_string(D) + ")"};
        ++classes;
    }
    return {true, std::to_string(local) + " local, " + std::to_string(symbols) + " symbol, " +
                      std::to_string(classes) + " class number cases"};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria{
    {"class group of discriminant -164", c1},
    {"2-Sylow of Cl(-4m) cyclic with 4 | order, m = 1 mod 8 <= 500", c2},
    {"ray class group mod 6 of Q(i) and order 2 for p = 9a^2 + 4b^2 <= 5000", c3},
    {"ray class group mod 4 of Q(sqrt(-2))", c4},
    {"pX^4 - 41Y^4 family: no points, ELS iff p = 1 mod 8, none undecided", c5},
    {"pX^4 - 36Y^4 family: no points; square identity", c6},
    {"(p, -6)_2 = -1 on 2a^2 + 3b^2", c7},
    {"Lind-Reichardt quartic", c8},
    {"y^2 = x^3 + 1", c9},
    {"Fermat n = 7 chain", c10},
    {"conjugate biquadratic symbol for p = 1 mod 8 <= 10^4", c11},
    {"power difference residue identity", c12},
    {"Selmer groups and quartic torsor for b = -4pq^2", c13},
    {"torsor condition table, p <= 600, q <= 30", c14},
    {"oracle equivalences", c15},
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance suite"};
    std::vector<int> only, expect_fail;
    app.add_option("--only", only, "run only these criteria");
    app.add_option("--expect-fail", expect_fail, "criteria expected to fail");
    CLI11_PARSE(app, argc, argv);

    std::set<int> failed, expected(expect_fail.begin(), expect_fail.end());
    for (std::size_t i = 0; i < kCriteria.size(); ++i) {
        int n = static_cast<int>(i) + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), n) == only.end()) {
            expected.erase(n);
            continue;
        }
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = kCriteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) failed.insert(n);
        std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << n << ' ' << kCriteria[i].first << " | " << o.detail;
        if (expected.count(n)) std::cout << " [expected failure]";
        std::cout << " (" << static_cast<int>(secs * 1000) << " ms)" << std::endl;
    }
    if (failed != expected) {
        std::cout << "unexpected outcome: failing set differs from --expect-fail" << std::endl;
        return 1;
    }
    return 0;
}
