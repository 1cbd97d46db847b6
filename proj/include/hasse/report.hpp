#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hasse/arith.hpp"
#include "hasse/descent.hpp"
#include "hasse/localsolve.hpp"
#include "hasse/pepin.hpp"
#include "hasse/quadforms.hpp"

// Big integers travel as decimal strings, rationals as "n/d".
namespace nlohmann {
template <>
struct adl_serializer<hasse::BigInt> {
    static void to_json(json& j, const hasse::BigInt& v) { j = v.str(); }
    static void from_json(const json& j, hasse::BigInt& v) { v = hasse::BigInt(j.get<std::string>()); }
};
template <>
struct adl_serializer<hasse::Rational> {
    static void to_json(json& j, const hasse::Rational& v);
    static void from_json(const json& j, hasse::Rational& v);
};
} // namespace nlohmann

namespace hasse {

using nlohmann::json;

void to_json(json& j, Sign s);
void from_json(const json& j, Sign& s);
void to_json(json& j, Verdict v);
void from_json(const json& j, Verdict& v);
void to_json(json& j, const Place& p);
void from_json(const json& j, Place& p);
void to_json(json& j, Isogeny iso);
void from_json(const json& j, Isogeny& iso);

#define HASSE_JSON(T)                \
    void to_json(json& j, const T& v); \
    void from_json(const json& j, T& v);

HASSE_JSON(QuadForm)
HASSE_JSON(TorsorSpec)
HASSE_JSON(TorsorPoint)
HASSE_JSON(LocalCertificate)
HASSE_JSON(LocalReport)
HASSE_JSON(LocalSolvability)
HASSE_JSON(IsogenyPair)
HASSE_JSON(SelmerGroup)
HASSE_JSON(ShaCandidate)
HASSE_JSON(DescentReport)
HASSE_JSON(TorsionSet)
HASSE_JSON(CurvePoint)
HASSE_JSON(ClaimCheck)
HASSE_JSON(ProjPoint)
HASSE_JSON(FamilyReport)
HASSE_JSON(TorsorConditionRow)
HASSE_JSON(QuarticTorsorReport)
HASSE_JSON(HistoricReport)
HASSE_JSON(Flt7Report)

#undef HASSE_JSON

/// {command, config, results: [...], assertions: [{claim, paper_ref, pass}]}
struct RunReport {
    std::string command;
    json config = json::object();
    json results = json::array();
    std::vector<ClaimCheck> assertions;

    bool all_pass() const;
    bool operator==(const RunReport&) const = default;
};

void to_json(json& j, const RunReport& r);
void from_json(const json& j, RunReport& r);

std::string serialize(const RunReport& r);
RunReport parse_report(const std::string& text);

} // namespace hasse
