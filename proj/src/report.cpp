#include "hasse/report.hpp"

#include "hasse/errors.hpp"

namespace nlohmann {

void adl_serializer<hasse::Rational>::to_json(json& j, const hasse::Rational& v) {
    j = numerator(v).str() + "/" + denominator(v).str();
}

void adl_serializer<hasse::Rational>::from_json(const json& j, hasse::Rational& v) {
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        v = hasse::Rational(hasse::BigInt(s));
        return;
    }
    v = hasse::Rational(hasse::BigInt(s.substr(0, slash)), hasse::BigInt(s.substr(slash + 1)));
}

} // namespace nlohmann

namespace hasse {

namespace {

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
    j[key] = v ? json(*v) : json(nullptr);
}

template <class T>
void get(const json& j, const char* key, std::optional<T>& v) {
    if (!j.contains(key) || j.at(key).is_null()) v.reset();
    else v = j.at(key).get<T>();
}

std::string certificate_kind(LocalCertificate::Kind k) {
    switch (k) {
    case LocalCertificate::Kind::hensel:
        return "hensel";
    case LocalCertificate::Kind::infinity:
        return "infinity";
    case LocalCertificate::Kind::real_point:
        return "real_point";
    }
    return "?";
}

} // namespace

void to_json(json& j, Sign s) { j = to_int(s); }
void from_json(const json& j, Sign& s) { s = sign_of(j.get<int>()); }

void to_json(json& j, Verdict v) { j = to_string(v); }
void from_json(const json& j, Verdict& v) {
    std::string s = j.get<std::string>();
    if (s == "true") v = Verdict::solvable;
    else if (s == "false") v = Verdict::unsolvable;
    else if (s == "undecided") v = Verdict::undecided;
    else throw UsageError("bad verdict: " + s);
}

void to_json(json& j, const Place& p) { j = to_string(p); }
void from_json(const json& j, Place& p) {
    std::string s = j.get<std::string>();
    p = s == "inf" ? Place::real() : Place::prime(std::stoll(s));
}

void to_json(json& j, Isogeny iso) { j = to_string(iso); }
void from_json(const json& j, Isogeny& iso) { iso = j.get<std::string>() == "phi" ? Isogeny::phi : Isogeny::psi; }

void to_json(json& j, const QuadForm& f) { j = json::array({f.a, f.b, f.c}); }
void from_json(const json& j, QuadForm& f) { f = {j.at(0).get<i64>(), j.at(1).get<i64>(), j.at(2).get<i64>()}; }

void to_json(json& j, const TorsorSpec& t) { j = json{{"b1", t.b1}, {"a", t.a}, {"b2", t.b2}}; }
void from_json(const json& j, TorsorSpec& t) {
    j.at("b1").get_to(t.b1);
    j.at("a").get_to(t.a);
    j.at("b2").get_to(t.b2);
}

void to_json(json& j, const TorsorPoint& p) { j = json{{"N", p.N}, {"M", p.M}, {"e", p.e}}; }
void from_json(const json& j, TorsorPoint& p) {
    j.at("N").get_to(p.N);
    j.at("M").get_to(p.M);
    j.at("e").get_to(p.e);
}

void to_json(json& j, const LocalCertificate& c) {
    j = json{{"kind", certificate_kind(c.kind)}, {"M", c.M},           {"e", c.e},
             {"precision", c.precision},       {"half_valuation", c.half_valuation}};
}
void from_json(const json& j, LocalCertificate& c) {
    std::string k = j.at("kind").get<std::string>();
    c.kind = k == "infinity" ? LocalCertificate::Kind::infinity
             : k == "real_point" ? LocalCertificate::Kind::real_point
                                 : LocalCertificate::Kind::hensel;
    j.at("M").get_to(c.M);
    j.at("e").get_to(c.e);
    j.at("precision").get_to(c.precision);
    j.at("half_valuation").get_to(c.half_valuation);
}

void to_json(json& j, const LocalReport& r) {
    j = json{{"place", r.place}, {"solvable", r.solvable}};
    put(j, "certificate", r.certificate);
}
void from_json(const json& j, LocalReport& r) {
    j.at("place").get_to(r.place);
    j.at("solvable").get_to(r.solvable);
    get(j, "certificate", r.certificate);
}

void to_json(json& j, const LocalSolvability& s) { j = json{{"verdict", s.verdict}, {"reports", s.reports}}; }
void from_json(const json& j, LocalSolvability& s) {
    j.at("verdict").get_to(s.verdict);
    j.at("reports").get_to(s.reports);
}

void to_json(json& j, const IsogenyPair& p) {
    j = json{{"a", p.a}, {"b", p.b}, {"a_hat", p.a_hat}, {"b_hat", p.b_hat}};
}
void from_json(const json& j, IsogenyPair& p) {
    j.at("a").get_to(p.a);
    j.at("b").get_to(p.b);
    j.at("a_hat").get_to(p.a_hat);
    j.at("b_hat").get_to(p.b_hat);
}

void to_json(json& j, const SelmerGroup& s) { j = json{{"isogeny", s.isogeny}, {"elements", s.elements}}; }
void from_json(const json& j, SelmerGroup& s) {
    j.at("isogeny").get_to(s.isogeny);
    j.at("elements").get_to(s.elements);
}

void to_json(json& j, const ShaCandidate& c) { j = json{{"isogeny", c.isogeny}, {"b1", c.b1}}; }
void from_json(const json& j, ShaCandidate& c) {
    j.at("isogeny").get_to(c.isogeny);
    j.at("b1").get_to(c.b1);
}

namespace {

json found_to_json(const std::map<i64, TorsorPoint>& m) {
    json out = json::array();
    for (const auto& [b1, pt] : m) out.push_back(json{{"b1", b1}, {"point", pt}});
    return out;
}

std::map<i64, TorsorPoint> found_from_json(const json& j) {
    std::map<i64, TorsorPoint> out;
    for (const auto& e : j) out[e.at("b1").get<i64>()] = e.at("point").get<TorsorPoint>();
    return out;
}

} // namespace

void to_json(json& j, const DescentReport& r) {
    j = json{{"curve", r.pair},
             {"selmer_phi", r.selmer_phi},
             {"selmer_psi", r.selmer_psi},
             {"found_phi", found_to_json(r.found_phi)},
             {"found_psi", found_to_json(r.found_psi)},
             {"H", r.H},
             {"rank_lower", r.rank_lower},
             {"rank_upper", r.rank_upper},
             {"sha_candidates", r.sha_candidates}};
}
void from_json(const json& j, DescentReport& r) {
    j.at("curve").get_to(r.pair);
    j.at("selmer_phi").get_to(r.selmer_phi);
    j.at("selmer_psi").get_to(r.selmer_psi);
    r.found_phi = found_from_json(j.at("found_phi"));
    r.found_psi = found_from_json(j.at("found_psi"));
    j.at("H").get_to(r.H);
    j.at("rank_lower").get_to(r.rank_lower);
    j.at("rank_upper").get_to(r.rank_upper);
    j.at("sha_candidates").get_to(r.sha_candidates);
}

void to_json(json& j, const TorsionSet& t) { j = json{{"order", t.order()}, {"points", t.points}}; }
void from_json(const json& j, TorsionSet& t) { j.at("points").get_to(t.points); }

void to_json(json& j, const CurvePoint& P) {
    if (P.infinity) j = json{{"infinity", true}};
    else j = json{{"infinity", false}, {"x", P.x}, {"y", P.y}};
}
void from_json(const json& j, CurvePoint& P) {
    P.infinity = j.at("infinity").get<bool>();
    if (!P.infinity) {
        j.at("x").get_to(P.x);
        j.at("y").get_to(P.y);
    }
}

void to_json(json& j, const ClaimCheck& c) { j = json{{"claim", c.claim}, {"paper_ref", c.source}, {"pass", c.pass}}; }
void from_json(const json& j, ClaimCheck& c) {
    j.at("claim").get_to(c.claim);
    j.at("paper_ref").get_to(c.source);
    j.at("pass").get_to(c.pass);
}

void to_json(json& j, const ProjPoint& P) { j = json::array({P.x, P.y, P.z}); }
void from_json(const json& j, ProjPoint& P) {
    j.at(0).get_to(P.x);
    j.at(1).get_to(P.y);
    j.at(2).get_to(P.z);
}

void to_json(json& j, const FamilyReport& r) {
    j = json{{"p", r.p}, {"witness", r.witness}, {"conic_2adic", r.conic_2adic}, {"local", r.local},
             {"hasse_counterexample", r.hasse_counterexample}};
    put(j, "conic_point", r.conic);
    put(j, "global_point", r.global_point);
    put(j, "class_order", r.class_order);
    put(j, "fourth_power", r.fourth_power);
    put(j, "ray_order", r.ray_order);
}
void from_json(const json& j, FamilyReport& r) {
    j.at("p").get_to(r.p);
    j.at("witness").get_to(r.witness);
    j.at("conic_2adic").get_to(r.conic_2adic);
    j.at("local").get_to(r.local);
    j.at("hasse_counterexample").get_to(r.hasse_counterexample);
    get(j, "conic_point", r.conic);
    get(j, "global_point", r.global_point);
    get(j, "class_order", r.class_order);
    get(j, "fourth_power", r.fourth_power);
    get(j, "ray_order", r.ray_order);
}

void to_json(json& j, const TorsorConditionRow& r) {
    j = json{{"b1", r.b1},
             {"condition", r.condition},
             {"symbol_argument", r.symbol_argument},
             {"value", r.value},
             {"implication_holds", r.implication_holds}};
    put(j, "point", r.point);
}
void from_json(const json& j, TorsorConditionRow& r) {
    j.at("b1").get_to(r.b1);
    j.at("condition").get_to(r.condition);
    j.at("symbol_argument").get_to(r.symbol_argument);
    j.at("value").get_to(r.value);
    j.at("implication_holds").get_to(r.implication_holds);
    get(j, "point", r.point);
}

void to_json(json& j, const QuarticTorsorReport& r) {
    j = json{{"p", r.p},
             {"q", r.q},
             {"H", r.H},
             {"two_quartic", r.two_quartic},
             {"q_quartic", r.q_quartic},
             {"descent", r.descent},
             {"consistent", r.consistent},
             {"sha_annotation", r.sha_annotation},
             {"checks", r.checks}};
    put(j, "point", r.point);
}
void from_json(const json& j, QuarticTorsorReport& r) {
    j.at("p").get_to(r.p);
    j.at("q").get_to(r.q);
    j.at("H").get_to(r.H);
    j.at("two_quartic").get_to(r.two_quartic);
    j.at("q_quartic").get_to(r.q_quartic);
    j.at("descent").get_to(r.descent);
    j.at("consistent").get_to(r.consistent);
    j.at("sha_annotation").get_to(r.sha_annotation);
    j.at("checks").get_to(r.checks);
    get(j, "point", r.point);
}

void to_json(json& j, const HistoricReport& r) {
    j = json{{"id", r.id},
             {"checks", r.checks},
             {"integral_points", r.integral_points},
             {"family", r.family},
             {"ray_invariants", r.ray_invariants},
             {"representations", r.representations}};
    put(j, "torsor", r.torsor);
    put(j, "local", r.local);
    put(j, "point", r.point);
    put(j, "descent", r.descent);
}
void from_json(const json& j, HistoricReport& r) {
    j.at("id").get_to(r.id);
    j.at("checks").get_to(r.checks);
    j.at("integral_points").get_to(r.integral_points);
    j.at("family").get_to(r.family);
    j.at("ray_invariants").get_to(r.ray_invariants);
    j.at("representations").get_to(r.representations);
    get(j, "torsor", r.torsor);
    get(j, "local", r.local);
    get(j, "point", r.point);
    get(j, "descent", r.descent);
}

void to_json(json& j, const Flt7Report& r) {
    j = json{{"trials", r.trials},
             {"H", r.H},
             {"seed", r.seed},
             {"stages", r.stages},
             {"field_points_checked", r.field_points_checked},
             {"torsion", r.torsion},
             {"descent", r.descent},
             {"quartic_pairs_checked", r.quartic_pairs_checked}};
    put(j, "quartic_point", r.quartic_point);
}
void from_json(const json& j, Flt7Report& r) {
    j.at("trials").get_to(r.trials);
    j.at("H").get_to(r.H);
    j.at("seed").get_to(r.seed);
    j.at("stages").get_to(r.stages);
    j.at("field_points_checked").get_to(r.field_points_checked);
    j.at("torsion").get_to(r.torsion);
    j.at("descent").get_to(r.descent);
    j.at("quartic_pairs_checked").get_to(r.quartic_pairs_checked);
    get(j, "quartic_point", r.quartic_point);
}

bool RunReport::all_pass() const {
    for (const auto& a : assertions)
        if (!a.pass) return false;
    return true;
}

void to_json(json& j, const RunReport& r) {
    j = json{{"command", r.command}, {"config", r.config}, {"results", r.results}, {"assertions", r.assertions}};
}
void from_json(const json& j, RunReport& r) {
    j.at("command").get_to(r.command);
    r.config = j.at("config");
    r.results = j.at("results");
    j.at("assertions").get_to(r.assertions);
}

std::string serialize(const RunReport& r) { return json(r).dump(2) + "\n"; }

RunReport parse_report(const std::string& text) { return json::parse(text).get<RunReport>(); }

} // namespace hasse
