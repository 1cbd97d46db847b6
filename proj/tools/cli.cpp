#include "cli.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hasse/errors.hpp"
#include "hasse/gaussint.hpp"
#include "hasse/report.hpp"

namespace hasse::cli {

namespace {

struct RunConfig {
    i64 pmax = 10000;
    i64 height = 200;
    std::uint64_t seed = 0;
    std::string output = "text";
    std::size_t trials = 1000;
};

json config_json(const RunConfig& c) {
    return json{{"pmax", c.pmax}, {"height", c.height}, {"seed", c.seed}, {"output", c.output}, {"trials", c.trials}};
}

struct Outcome {
    RunReport report;
    std::vector<std::string> lines;  // text rendering, before the assertions
    bool undecided = false;
};

std::string join(const std::vector<i64>& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ']';
    return os.str();
}

std::string show(const std::optional<TorsorPoint>& p) {
    if (!p) return "none";
    return "(N, M, e) = (" + std::to_string(p->N) + ", " + std::to_string(p->M) + ", " + std::to_string(p->e) + ")";
}

Outcome cmd_classgroup(i64 D) {
    ClassGroup cg = class_group(D);
    Outcome o;
    std::vector<QuadForm> cls = cg.classes();
    json classes = json::array();
    bool divides = true;
    for (std::size_t i = 0; i < cls.size(); ++i) {
        i64 ord = cg.element_order(i);
        classes.push_back(json{{"form", cls[i]}, {"order", ord}});
        divides = divides && static_cast<i64>(cg.order()) % ord == 0;
    }
    o.report.results.push_back(json{{"disc", D},
                                    {"order", cg.order()},
                                    {"cyclic", cg.is_cyclic()},
                                    {"invariant_factors", cg.invariant_factors()},
                                    {"two_sylow", two_sylow_structure(cg)},
                                    {"classes", classes}});
    o.lines.push_back("discriminant " + std::to_string(D));
    o.lines.push_back("order " + std::to_string(cg.order()) + ", " + (cg.is_cyclic() ? "cyclic" : "not cyclic"));
    o.lines.push_back("invariant factors " + join(cg.invariant_factors()));
    o.lines.push_back("2-Sylow " + join(two_sylow_structure(cg)));
    o.report.assertions.push_back({"element orders divide the class number", "class group", divides});
    return o;
}

ImagQuadInt parse_modulus(const std::string& s) {
    auto comma = s.find(',');
    try {
        if (comma == std::string::npos) return {std::stoll(s), 0};
        return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw UsageError("modulus must be an integer or x,y; got " + s);
    }
}

Outcome cmd_rayclass(i64 field, const std::string& mod) {
    ImagQuadInt m = parse_modulus(mod);
    RayClassGroup rcg = ray_class_group(field, m);
    Outcome o;
    o.report.results.push_back(json{{"field_disc", field},
                                    {"modulus", json::array({m.x, m.y})},
                                    {"order", rcg.order()},
                                    {"invariant_factors", rcg.invariant_factors()},
                                    {"residue_units", rcg.residue_unit_count()},
                                    {"unit_image", rcg.unit_group_order()}});
    o.lines.push_back("ray class group of discriminant " + std::to_string(field) + " modulo " + mod);
    o.lines.push_back("order " + std::to_string(rcg.order()) + ", invariant factors " + join(rcg.invariant_factors()));
    bool count = rcg.order() * rcg.unit_group_order() == rcg.residue_unit_count();
    o.report.assertions.push_back({"|(O/m)^*| = |Cl_m| * |unit image|", "ray class group", count});
    return o;
}

Outcome cmd_symbol(const std::string& kind, i64 a, i64 p) {
    Outcome o;
    int value = 0;
    bool agrees = true;
    if (kind == "jacobi") {
        value = jacobi_symbol(a, p);
        if (is_prime(p) && p > 2 && mod(a, p) != 0) {
            i64 e = powmod(mod(a, p), static_cast<u64>((p - 1) / 2), p);
            agrees = (e == 1 ? 1 : -1) == value;
        }
    } else if (kind == "quartic" || kind == "octic") {
        if (!is_prime(p)) throw UsageError(kind + " symbol needs a prime modulus");
        value = to_int(kind == "quartic" ? quartic_symbol(a, p) : octic_symbol(a, p));
        u64 k = kind == "quartic" ? 4 : 8;
        i64 e = powmod(mod(a, p), static_cast<u64>(p - 1) / k, p);
        agrees = (e == 1 ? 1 : -1) == value;
    } else {
        throw UsageError("symbol kind must be jacobi, quartic or octic");
    }
    o.report.results.push_back(json{{"kind", kind}, {"a", a}, {"p", p}, {"value", value}});
    o.lines.push_back("(" + std::to_string(a) + "/" + std::to_string(p) + ")_" + kind + " = " + std::to_string(value));
    o.report.assertions.push_back({"symbol agrees with modular exponentiation", "Euler's criterion", agrees});
    return o;
}

Outcome cmd_local(i64 b1, i64 a, i64 b2) {
    TorsorSpec t{b1, a, b2};
    if (b1 == 0 || b2 == 0) throw UsageError("b1 and b2 must be nonzero");
    LocalSolvability ls = everywhere_locally_solvable(t);
    Outcome o;
    o.report.results.push_back(json{{"torsor", t}, {"local", ls}});
    o.lines.push_back("N^2 = " + std::to_string(b1) + " M^4 + " + std::to_string(a) + " M^2 e^2 + " + std::to_string(b2) +
                      " e^4");
    for (const auto& r : ls.reports) o.lines.push_back("  " + to_string(r.place) + ": " + to_string(r.solvable));
    o.lines.push_back("everywhere locally solvable: " + to_string(ls.verdict));
    bool certs = true;
    for (const auto& r : ls.reports) certs = certs && verify_certificate(t, r);
    o.report.assertions.push_back({"local certificates recompute", "local solvability", certs});
    o.undecided = ls.verdict == Verdict::undecided;
    return o;
}

void describe_descent(Outcome& o, const DescentReport& d) {
    o.lines.push_back("S_phi = " + join(d.selmer_phi.elements) + ", S_psi = " + join(d.selmer_psi.elements));
    o.lines.push_back("found phi " + join(d.found_classes(Isogeny::phi)) + ", found psi " +
                      join(d.found_classes(Isogeny::psi)));
    o.lines.push_back("rank bounds " + std::to_string(d.rank_lower) + " <= r <= " + std::to_string(d.rank_upper));
    o.lines.push_back("Sha candidates " + std::to_string(d.sha_candidates.size()));
}

Outcome cmd_descent(i64 a, i64 b, const RunConfig& cfg) {
    DescentReport d = full_descent(a, b, cfg.height);
    Outcome o;
    o.report.results.push_back(json(d));
    o.lines.push_back("y^2 = x(x^2 + " + std::to_string(a) + " x + " + std::to_string(b) + "), H = " +
                      std::to_string(cfg.height));
    describe_descent(o, d);
    bool maps = true;
    for (Isogeny iso : {Isogeny::phi, Isogeny::psi}) {
        auto [ta, tb] = torsor_coefficients(d.pair, iso);
        for (const auto& [b1, pt] : iso == Isogeny::phi ? d.found_phi : d.found_psi)
            maps = maps && on_curve(ta, tb, torsor_to_curve_point({b1, ta, tb / b1}, pt));
    }
    o.report.assertions.push_back({"torsor points map onto the curve", "2-isogeny descent", maps});
    o.report.assertions.push_back({"rank_lower <= rank_upper", "2-isogeny descent", d.rank_lower <= d.rank_upper});
    return o;
}

struct FamilyClaims {
    std::string name;
    bool no_points = false;
    bool els_iff_1_mod_8 = false;
    bool not_fourth_power = false;
    std::optional<i64> ray_order;      // expected exact order
    bool ray_not_trivial = false;
    bool conic_fails_2adically = false;
};

FamilyClaims claims_for(const FamilySpec& s) {
    FamilyClaims c;
    if (s.form == QuadForm{5, 4, 9}) {
        c = {"Pepin family 5m^2 + 4mn + 9n^2", true, true, true, std::nullopt, false, false};
    } else if (s.form == QuadForm{9, 0, 4}) {
        c = {"Pepin family 9a^2 + 4b^2", true, false, false, 2, false, false};
    } else if (s.form == QuadForm{4, 4, 9}) {
        c = {"Pepin family 4u^2 + 4uv + 9v^2", true, false, false, std::nullopt, true, false};
    } else if (s.form == QuadForm{2, 0, 3}) {
        c = {"family 2a^2 + 3b^2", true, false, false, std::nullopt, false, true};
    } else if (s.alpha && is_prime(*s.alpha) && *s.alpha % 4 == 3 && is_prime(s.m) && s.m % 8 == 1) {
        c = {"conic family with alpha = 3 mod 4 prime, m = 1 mod 8 prime", true, false, true, std::nullopt, false,
             false};
    } else {
        c.name = "conic family";
    }
    return c;
}

Outcome cmd_family(const FamilySpec& spec, const RunConfig& cfg) {
    std::vector<FamilyReport> reps = family_scan(spec, cfg.pmax, cfg.height);
    FamilyClaims claims = claims_for(spec);
    Outcome o;
    for (const auto& r : reps) o.report.results.push_back(json(r));
    std::size_t els = 0, found = 0, undecided = 0, candidates = 0;
    bool conics = true, iff = true, fourth = true, ray = true, conic2 = true;
    for (const auto& r : reps) {
        els += r.local.verdict == Verdict::solvable;
        undecided += r.local.verdict == Verdict::undecided;
        found += r.global_point.has_value();
        candidates += r.hasse_counterexample;
        if (r.conic) conics = conics && on_conic(r.p, spec.m, *r.conic);
        if (r.local.verdict != Verdict::undecided)
            iff = iff && ((r.local.verdict == Verdict::solvable) == (r.p % 8 == 1));
        if (r.fourth_power) fourth = fourth && !*r.fourth_power;
        if (claims.ray_order) ray = ray && r.ray_order && *r.ray_order == *claims.ray_order;
        if (claims.ray_not_trivial) ray = ray && r.ray_order && *r.ray_order != 1;
        conic2 = conic2 && r.conic_2adic == Sign::minus;
    }
    o.lines.push_back("form " + std::to_string(spec.form.a) + "x^2 + " + std::to_string(spec.form.b) + "xy + " +
                      std::to_string(spec.form.c) + "y^2, m = " + std::to_string(spec.m));
    o.lines.push_back(std::to_string(reps.size()) + " primes <= " + std::to_string(cfg.pmax) + "; locally solvable " +
                      std::to_string(els) + ", undecided " + std::to_string(undecided) + ", global points " +
                      std::to_string(found) + ", Hasse counterexample candidates " + std::to_string(candidates));
    auto& as = o.report.assertions;
    as.push_back({"conic points satisfy px^2 - my^2 = z^2", "conic point formula", conics});
    if (claims.no_points)
        as.push_back({"no point of height <= " + std::to_string(cfg.height), claims.name, found == 0});
    if (claims.els_iff_1_mod_8) as.push_back({"everywhere locally solvable iff p = 1 mod 8", claims.name, iff});
    if (claims.not_fourth_power) as.push_back({"class of the prime above p is not a fourth power", claims.name, fourth});
    if (claims.ray_order || claims.ray_not_trivial)
        as.push_back({"ray class of the prime above p obstructs fourth powers", claims.name, ray});
    if (claims.conic_fails_2adically) as.push_back({"(p, -m)_2 = -1", claims.name, conic2});
    o.undecided = undecided > 0;
    return o;
}

Outcome cmd_prop4(i64 p, i64 q, const RunConfig& cfg) {
    auto rows = torsor_condition_table(p, q, cfg.height);
    Outcome o;
    for (const auto& r : rows) {
        o.report.results.push_back(json(r));
        o.lines.push_back("b1 = " + std::to_string(r.b1) + ": " + r.condition + " = " + std::to_string(to_int(r.value)) +
                          ", point " + show(r.point));
        o.report.assertions.push_back(
            {"point on T(" + std::to_string(r.b1) + ") implies " + r.condition + " = +1", "torsor condition table",
             r.implication_holds});
    }
    return o;
}

Outcome cmd_theorem6(i64 p, i64 q, const RunConfig& cfg) {
    QuarticTorsorReport r = quartic_torsor_report(p, q, cfg.height);
    Outcome o;
    o.report.results.push_back(json(r));
    o.lines.push_back("(2/p)_4 = " + std::to_string(to_int(r.two_quartic)) + ", (q/p)_4 = " +
                      std::to_string(to_int(r.q_quartic)));
    o.lines.push_back("N^2 = pM^4 - 4q^2e^4: " + show(r.point));
    describe_descent(o, r.descent);
    if (r.sha_annotation) o.lines.push_back("expected: Sha(E^/Q)[2] has order divisible by 4");
    o.report.assertions = r.checks;
    return o;
}

Outcome cmd_case(const std::string& id, const RunConfig& cfg) {
    HistoricReport r = historic_case(id, cfg.height, cfg.pmax);
    Outcome o;
    o.report.results.push_back(json(r));
    o.lines.push_back("case " + id);
    if (r.local) o.lines.push_back("everywhere locally solvable: " + to_string(r.local->verdict));
    if (r.torsor && id == "lind_reichardt") o.lines.push_back("point: " + show(r.point));
    if (!r.integral_points.empty()) o.lines.push_back(std::to_string(r.integral_points.size()) + " integral points");
    if (r.descent) describe_descent(o, *r.descent);
    if (!r.family.empty()) o.lines.push_back(std::to_string(r.family.size()) + " family primes scanned");
    o.report.assertions = r.checks;
    o.undecided = r.local && r.local->verdict == Verdict::undecided;
    return o;
}

Outcome cmd_flt7(const RunConfig& cfg) {
    Flt7Report r = flt7_verify(cfg.trials, cfg.height, cfg.seed);
    Outcome o;
    o.report.results.push_back(json(r));
    o.lines.push_back("E: y^2 = x(x^2 - 147x + 5488)");
    o.lines.push_back("torsion order " + std::to_string(r.torsion.order()) + ", rank <= " +
                      std::to_string(r.descent.rank_upper));
    o.lines.push_back(std::to_string(r.field_points_checked) + " finite field points, " +
                      std::to_string(r.quartic_pairs_checked) + " quartic pairs checked");
    o.report.assertions = r.stages;
    return o;
}

bool use_color(const std::ostream& out) {
    if (std::getenv("NO_COLOR")) return false;
    return &out == &std::cout && isatty(fileno(stdout));
}

void render_text(const Outcome& o, std::ostream& out) {
    bool color = use_color(out);
    for (const auto& l : o.lines) out << l << '\n';
    for (const auto& a : o.report.assertions) {
        const char* tag = a.pass ? "PASS" : "FAIL";
        if (color) out << (a.pass ? "\033[32m" : "\033[31m") << tag << "\033[0m";
        else out << tag;
        out << "  " << a.claim << " [" << a.source << "]\n";
    }
}

} // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pepin quartics, descent and local solvability", "hasse"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--pmax", cfg.pmax, "prime bound for family scans")->check(CLI::PositiveNumber);
    app.add_option("--height", cfg.height, "search height H")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "PRNG seed");
    app.add_option("--output", cfg.output, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--trials", cfg.trials, "random trials")->check(CLI::PositiveNumber);

    auto sub = [&](const char* name, const char* help) {
        CLI::App* s = app.add_subcommand(name, help);
        s->fallthrough();
        return s;
    };

    i64 D = 0, x1 = 0, x2 = 0, x3 = 0;
    std::string word;
    std::vector<i64> coeffs, raw;

    auto* classgroup = sub("classgroup", "class group of a negative discriminant");
    classgroup->add_option("D", D)->required();
    auto* rayclass = sub("rayclass", "ray class group of Q(i) or Q(sqrt(-2))");
    rayclass->add_option("FIELD", x1)->required();
    rayclass->add_option("MOD", word, "integer or x,y")->required();
    auto* symbol = sub("symbol", "jacobi, quartic or octic symbol");
    symbol->add_option("KIND", word)->required();
    symbol->add_option("A", x1)->required();
    symbol->add_option("P", x2)->required();
    auto* local = sub("local", "local solvability of N^2 = b1 M^4 + a M^2 e^2 + b2 e^4");
    local->add_option("B1", x1)->required();
    local->add_option("A", x2)->required();
    local->add_option("B2", x3)->required();
    auto* descent = sub("descent", "2-isogeny descent on y^2 = x(x^2 + ax + b)");
    descent->add_option("A", x1)->required();
    descent->add_option("B", x2)->required();
    auto* family = sub("family", "scan the family p = alpha^2 a^2 + 2 beta ab + gamma b^2");
    family->add_option("COEFFS", coeffs, "ALPHA BETA GAMMA")->expected(3);
    family->add_option("--raw-form", raw, "A B C")->expected(3);
    auto* prop4 = sub("prop4", "torsor condition table for y^2 = x(x^2 - 4pq^2)");
    prop4->add_option("P", x1)->required();
    prop4->add_option("Q", x2)->required();
    auto* theorem6 = sub("theorem6", "quartic symbol obstruction for N^2 = pM^4 - 4q^2e^4");
    theorem6->add_option("P", x1)->required();
    theorem6->add_option("Q", x2)->required();
    auto* kase = sub("case", "historic case");
    kase->add_option("ID", word)->required()->check(
        CLI::IsMember({"lind_reichardt", "euler_cube", "pepin32", "pepin2_consequence"}));
    auto* flt7 = sub("flt7", "Fermat n = 7 via the elliptic curve");

    std::vector<std::string> rev(argv.rbegin(), argv.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return pass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return usage;
    }

    Outcome o;
    try {
        if (*classgroup) o = cmd_classgroup(D);
        else if (*rayclass) o = cmd_rayclass(x1, word);
        else if (*symbol) o = cmd_symbol(word, x1, x2);
        else if (*local) o = cmd_local(x1, x2, x3);
        else if (*descent) o = cmd_descent(x1, x2, cfg);
        else if (*family) {
            if (coeffs.empty() == raw.empty()) throw UsageError("family needs ALPHA BETA GAMMA or --raw-form A B C");
            FamilySpec spec = raw.empty() ? FamilySpec::from_coefficients(coeffs[0], coeffs[1], coeffs[2])
                                          : FamilySpec::from_raw_form({raw[0], raw[1], raw[2]});
            o = cmd_family(spec, cfg);
        } else if (*prop4) o = cmd_prop4(x1, x2, cfg);
        else if (*theorem6) o = cmd_theorem6(x1, x2, cfg);
        else if (*kase) o = cmd_case(word, cfg);
        else if (*flt7) o = cmd_flt7(cfg);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const UndecidedError& e) {
        err << "undecided at place " << e.place() << ": " << e.what() << '\n';
        return undecided;
    } catch (const std::exception& e) {
        err << "assertion failed: " << e.what() << '\n';
        return assertion_failed;
    }

    o.report.command = app.get_subcommands().front()->get_name();
    o.report.config = config_json(cfg);
    if (cfg.output == "json") out << serialize(o.report);
    else render_text(o, out);

    for (const auto& a : o.report.assertions)
        if (!a.pass) {
            err << "assertion failed: " << a.claim << " [" << a.source << "]\n";
            return assertion_failed;
        }
    return o.undecided ? undecided : pass;
}

} // namespace hasse::cli
