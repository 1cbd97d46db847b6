#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hasse/errors.hpp"
#include "hasse/report.hpp"

using namespace hasse;

namespace {

// to_json . from_json is the identity on the json produced by to_json.
template <class T>
json cycle(const T& v) {
    json j = v;
    T back = j.get<T>();
    json again = back;
    REQUIRE(j == again);
    return j;
}

} // namespace

TEST_CASE("scalars") {
    CHECK(json(BigInt("-123456789012345678901234567890")).get<BigInt>() == BigInt("-123456789012345678901234567890"));
    CHECK(json(Rational(-7, 12)) == "-7/12");
    CHECK(json("-7/12").get<Rational>() == Rational(-7, 12));
    CHECK(json("5").get<Rational>() == Rational(5));
    CHECK(json(Place::real()) == "inf");
    Place v = Place::real();
    json(Place::prime(17)).get_to(v);
    CHECK(v == Place::prime(17));
    CHECK(json(Verdict::undecided) == "undecided");
    CHECK(json(Sign::minus) == -1);
    CHECK_THROWS(json("1/0").get<Rational>());
}

TEST_CASE("value types round trip exactly") {
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<i64> d(-1000, 1000);
    for (int i = 0; i < 1000; ++i) {
        TorsorSpec t{d(rng), d(rng), d(rng)};
        REQUIRE(json(t).get<TorsorSpec>() == t);
        TorsorPoint p{d(rng), d(rng), d(rng)};
        REQUIRE(json(p).get<TorsorPoint>() == p);
        QuadForm f{d(rng), d(rng), d(rng)};
        REQUIRE(json(f).get<QuadForm>() == f);
        ProjPoint q{BigInt(d(rng)) << 70, d(rng), d(rng)};
        REQUIRE(json(q).get<ProjPoint>() == q);
        CurvePoint c = CurvePoint::affine(Rational(d(rng), 1 + (rng() % 50)), Rational(d(rng), 1 + (rng() % 50)));
        REQUIRE(json(c).get<CurvePoint>() == c);
    }
    CHECK(json(CurvePoint::at_infinity()).get<CurvePoint>().infinity);
}

TEST_CASE("reports round trip") {
    cycle(everywhere_locally_solvable({2, 0, -34}));
    cycle(full_descent(-3, 3, 50));
    cycle(full_descent(0, -4 * 73 * 9, 30));
    cycle(nagell_lutz_torsion(-147, 5488));
    cycle(family_scan(FamilySpec::from_coefficients(3, 0, 4), 300, 10));
    cycle(family_scan(FamilySpec::from_raw_form({5, 4, 9}), 300, 10));
    cycle(torsor_condition_table(73, 3, 20));
    cycle(quartic_torsor_report(113, 7, 20));
    for (const char* id : {"lind_reichardt", "euler_cube", "pepin32", "pepin2_consequence"})
        cycle(historic_case(id, 30, 500));
    cycle(flt7_verify(10, 20, 1));
}

TEST_CASE("run report serialization") {
    RunReport r;
    r.command = "descent";
    r.config = {{"height", 200}, {"seed", 0}};
    r.results.push_back(full_descent(-3, 3, 40));
    r.assertions.push_back({"rank 0", "Euler", true});
    r.assertions.push_back({"no Sha", "Euler", false});
    CHECK_FALSE(r.all_pass());
    std::string text = serialize(r);
    CHECK(text.back() == '\n');
    RunReport back = parse_report(text);
    CHECK(back == r);
    CHECK(serialize(back) == text);
    json j = json::parse(text);
    CHECK(j.at("assertions").at(0).at("paper_ref") == "Euler");
    CHECK(j.at("assertions").at(1).at("pass") == false);
    CHECK_THROWS(parse_report("{\"command\": 1}"));
}
