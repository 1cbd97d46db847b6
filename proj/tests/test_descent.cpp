#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <random>

#include "hasse/descent.hpp"
#include "hasse/errors.hpp"

using namespace hasse;

namespace {

// Independent scan of the same order: e = 0, then e = 1..H with M = 0..H.
std::optional<TorsorPoint> naive_search(const TorsorSpec& t, i64 H) {
    if (auto r = exact_sqrt(static_cast<i128>(t.b1)); r && t.b1 > 0) return TorsorPoint{static_cast<i64>(*r), 1, 0};
    for (i64 e = 1; e <= H; ++e)
        for (i64 M = 0; M <= H; ++M) {
            if (gcd(M, e) != 1) continue;
            i128 v = t.quartic(M, e);
            if (v < 0) continue;
            if (auto r = exact_sqrt(v)) return TorsorPoint{static_cast<i64>(*r), M, e};
        }
    return std::nullopt;
}

bool same(const DescentReport& x, const DescentReport& y) {
    return x.pair == y.pair && x.selmer_phi.elements == y.selmer_phi.elements &&
           x.selmer_psi.elements == y.selmer_psi.elements && x.found_phi == y.found_phi &&
           x.found_psi == y.found_psi && x.rank_lower == y.rank_lower && x.rank_upper == y.rank_upper &&
           x.sha_candidates == y.sha_candidates;
}

bool nonsingular(i64 a, i64 b) { return b != 0 && a * a - 4 * b != 0; }

} // namespace

TEST_CASE("isogenous pair and torsor family") {
    IsogenyPair p = isogenous_pair(0, -25);
    CHECK(p == IsogenyPair{0, -25, 0, 100});
    CHECK_THROWS_AS(isogenous_pair(2, 1), UsageError);
    auto fam = torsor_family(0, -4);
    CHECK(fam.size() == 4);  // b1 in {+-1, +-2}
    for (const auto& t : fam) CHECK(t.b() == -4);
}

TEST_CASE("point search returns the first point in scan order") {
    CHECK(torsor_point_search({3, -3, 1}, 10) == TorsorPoint{1, 0, 1});
    CHECK(torsor_point_search({4, 0, -1}, 10) == TorsorPoint{2, 1, 0});
    CHECK_FALSE(torsor_point_search({2, 0, -34}, 60).has_value());
    CHECK(torsor_to_curve_point({3, -3, 1}, {1, 1, 1}) == CurvePoint::affine(3, 3));

    std::mt19937_64 rng(41);
    std::uniform_int_distribution<i64> d(-40, 40);
    for (int i = 0; i < 1500; ++i) {
        TorsorSpec t{d(rng), d(rng), d(rng)};
        if (t.b1 == 0 || t.b2 == 0) continue;
        i64 H = 1 + static_cast<i64>(rng() % 90);
        auto par = torsor_point_search(t, H);
        REQUIRE(par == reference::torsor_point_search(t, H));
        REQUIRE(par == naive_search(t, H));
        if (par) REQUIRE(t.quartic(BigInt(par->M), BigInt(par->e)) == BigInt(par->N) * par->N);
    }
}

TEST_CASE("group law on rational points") {
    // y^2 = x^3 - 25x: (-4, 6) has infinite order
    CurvePoint P = CurvePoint::affine(-4, 6);
    CHECK(on_curve(0, -25, P));
    CurvePoint Q = add_points(0, -25, P, P);
    CHECK(on_curve(0, -25, Q));
    CHECK(Q.x == Rational(1681, 144));
    CHECK(add_points(0, -25, P, negate(P)).infinity);
    CurvePoint T = CurvePoint::affine(5, 0);
    CurvePoint R = add_points(0, -25, Q, T);
    CHECK(add_points(0, -25, add_points(0, -25, P, Q), T) == add_points(0, -25, P, R));
    CHECK(add_points(0, -25, T, T).infinity);
}

TEST_CASE("frozen torsion subgroups") {
    CHECK(nagell_lutz_torsion(-3, 3).order() == 6);
    TorsionSet t = nagell_lutz_torsion(-147, 5488);
    CHECK(t.points == std::vector<std::pair<i64, i64>>{{0, 0}});
    CHECK(nagell_lutz_torsion(0, -1).order() == 4);
    CHECK(nagell_lutz_torsion(0, 4).order() == 4);  // y^2 = x^3 + 4x: (2, +-4) of order 4
}

TEST_CASE("f2 spans") {
    CHECK(f2_rank({-1, 2, 73, 3}) == 4);
    CHECK(f2_rank({6, 2, 3}) == 2);
    CHECK(f2_span({2, 3}) == std::vector<i64>{1, 2, 3, 6});
    CHECK(in_f2_span({-73, -2}, 146));
    CHECK_FALSE(in_f2_span({-73, -2}, 2));
    std::mt19937_64 rng(42);
    for (int i = 0; i < 1000; ++i) {
        std::vector<i64> gens;
        for (int j = 0; j < 3; ++j) gens.push_back(squarefree_part(static_cast<i64>(rng() % 200) - 100 | 1));
        auto span = f2_span(gens);
        REQUIRE(span.size() == (std::size_t{1} << f2_rank(gens)));
        for (i64 x : span)
            for (i64 y : span) REQUIRE(std::binary_search(span.begin(), span.end(), squarefree_part(x * y)));
    }
}

TEST_CASE("congruent number curves") {
    // y^2 = x^3 - n^2 x has rank 0 for n = 1, 2, 3 and rank 1 for n = 5, 6, 7.
    for (i64 n : {1, 2, 3}) {
        DescentReport r = full_descent(0, -n * n, 60);
        CHECK(r.rank_upper == 0);
        CHECK(r.rank_lower == 0);
    }
    for (i64 n : {5, 6, 7}) {
        DescentReport r = full_descent(0, -n * n, 60);
        CHECK(r.rank_lower == 1);
        CHECK(r.rank_upper == 1);
        CHECK(r.sha_candidates.empty());
    }
}

TEST_CASE("descent on y^2 = x(x^2 - 3x + 3)") {
    DescentReport r = full_descent(-3, 3, 100);
    CHECK(r.selmer_phi.elements == std::vector<i64>{-3, 1});
    CHECK(r.selmer_psi.elements == std::vector<i64>{1, 3});
    CHECK(r.rank_upper == 0);
}

TEST_CASE("descent invariants on random curves") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<i64> d(-12, 12);
    int done = 0;
    while (done < 120) {
        i64 a = d(rng), b = d(rng);
        if (!nonsingular(a, b)) continue;
        DescentReport r;
        try {
            r = full_descent(a, b, 40);
        } catch (const UndecidedError&) {
            continue;
        }
        ++done;
        REQUIRE(same(r, reference::full_descent(a, b, 40)));
        for (const SelmerGroup* s : {&r.selmer_phi, &r.selmer_psi}) {
            REQUIRE(s->contains(1));
            REQUIRE(std::has_single_bit(s->order()));
            for (i64 x : s->elements)
                for (i64 y : s->elements) REQUIRE(s->contains(squarefree_part(x * y)));
        }
        REQUIRE(r.rank_lower <= r.rank_upper);
        RankBounds rb = rank_bounds(r);
        REQUIRE(rb.lower == r.rank_lower);
        REQUIRE(rb.upper == r.rank_upper);
        for (Isogeny iso : {Isogeny::phi, Isogeny::psi}) {
            auto [ca, cb] = torsor_coefficients(r.pair, iso);
            const auto& found = iso == Isogeny::phi ? r.found_phi : r.found_psi;
            const auto& sel = iso == Isogeny::phi ? r.selmer_phi : r.selmer_psi;
            for (const auto& [b1, pt] : found) {
                REQUIRE(sel.contains(b1));
                TorsorSpec t{b1, ca, cb / b1};
                REQUIRE(on_curve(ca, cb, torsor_to_curve_point(t, pt)));
            }
        }
        for (const auto& c : r.sha_candidates) {
            const auto& sel = c.isogeny == Isogeny::phi ? r.selmer_phi : r.selmer_psi;
            REQUIRE(sel.contains(c.b1));
            REQUIRE_FALSE(in_f2_span(r.found_classes(c.isogeny), c.b1));
        }
    }
}
