#include "heightgap/report.hpp"

#include <cstdlib>
#include <sstream>

namespace heightgap {

RunConfig RunConfig::from_env() {
    RunConfig c;
    if (const char* s = std::getenv("HEIGHTGAP_PRECISION")) {
        long v = std::atol(s);
        if (v < 1 || v > 4096) throw bad_input("HEIGHTGAP_PRECISION out of range");
        c.precision = v;
    }
    return c;
}

json RunConfig::to_json() const {
    return json{{"precision", precision},
                {"series_order_cap", series_order_cap},
                {"desk_bounds",
                 {{"max_pf", max_pf}, {"max_tower_n", max_tower_n}, {"max_division_m", max_division_m}}},
                {"tolerances",
                 {{"weil_pow2", tol.weil_pow2},
                  {"cyclotomic_zero", tol.cyclotomic_zero},
                  {"doubling_vs_localsum", tol.doubling_vs_localsum},
                  {"parallelogram", tol.parallelogram},
                  {"torsion_zero", tol.torsion_zero},
                  {"m2_scaling", tol.m2_scaling},
                  {"haar_total", tol.haar_total},
                  {"jensen_term", tol.jensen_term},
                  {"j_cross_check", tol.j_cross_check},
                  {"constants_branch", tol.constants_branch}}}};
}

json Report::to_json() const {
    return json{{"schema_version", kSchemaVersion},
                {"command", command},
                {"inputs", inputs},
                {"outputs", outputs},
                {"assumptions", assumptions},
                {"config", config},
                {"timing_ms", timing_ms}};
}

Report Report::from_json(const json& j) {
    if (j.value("schema_version", "") != kSchemaVersion)
        throw bad_input("Report::from_json: unknown schema version");
    Report r;
    r.command = j.at("command").get<std::string>();
    r.inputs = j.at("inputs");
    r.outputs = j.at("outputs");
    r.assumptions = j.at("assumptions").get<std::vector<std::string>>();
    r.config = j.at("config");
    r.timing_ms = j.at("timing_ms").get<double>();
    return r;
}

BigRational rational_from_json(const json& j) {
    if (j.is_number_integer()) return BigRational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        BigRational r;
        if (r.set_str(s, 10) != 0) throw bad_input("rational_from_json: bad literal '" + s + "'");
        r.canonicalize();
        return r;
    }
    if (j.is_number_float()) throw bad_input("rational_from_json: floats are not exact; pass strings");
    throw bad_input("rational_from_json: expected integer or 'num/den' string");
}

json rational_to_json(const BigRational& x) {
    if (x.get_den() == 1) {
        if (x.get_num().fits_slong_p()) return json(x.get_num().get_si());
        return json(x.get_num().get_str());
    }
    return json(x.get_num().get_str() + "/" + x.get_den().get_str());
}

WeierstrassCurve curve_from_json(const json& j) {
    if (!j.is_object()) throw bad_input("curve_from_json: expected an object");
    if (j.contains("A") || j.contains("B")) {
        return WeierstrassCurve::short_form(rational_from_json(j.value("A", json(0))),
                                            rational_from_json(j.value("B", json(0))));
    }
    auto get = [&](const char* k) {
        return j.contains(k) ? rational_from_json(j.at(k)) : BigRational(0);
    };
    return WeierstrassCurve(get("a1"), get("a2"), get("a3"), get("a4"), get("a6"));
}

json curve_to_json(const WeierstrassCurve& E) {
    return json{{"a1", rational_to_json(E.a1())},
                {"a2", rational_to_json(E.a2())},
                {"a3", rational_to_json(E.a3())},
                {"a4", rational_to_json(E.a4())},
                {"a6", rational_to_json(E.a6())},
                {"discriminant", rational_to_json(E.discriminant())},
                {"j", rational_to_json(E.j_invariant())}};
}

CurvePoint point_from_json(const json& j) {
    if (j.is_string() && (j.get<std::string>() == "O" || j.get<std::string>() == "0"))
        return CurvePoint::infinity();
    if (!j.is_object() || !j.contains("x") || !j.contains("y"))
        throw bad_input("point_from_json: expected {\"x\":..,\"y\":..} or \"O\"");
    return CurvePoint::affine(rational_from_json(j.at("x")), rational_from_json(j.at("y")));
}

IntPoly minpoly_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw bad_input("minpoly_from_json: expected a coefficient array");
    IntPoly f;
    for (const auto& c : j) {
        if (c.is_number_integer())
            f.emplace_back(static_cast<long>(c.get<long long>()));
        else if (c.is_string())
            f.emplace_back(BigInt(c.get<std::string>()));
        else
            throw bad_input("minpoly_from_json: coefficients must be integers");
    }
    return f;
}

std::vector<std::pair<std::string, WeierstrassCurve>> curves_from_csv(const std::string& text) {
    std::vector<std::pair<std::string, WeierstrassCurve>> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != 6) {
            if (!out.empty() || cells.empty()) throw bad_input("curves_from_csv: need label,a1..a6");
            continue;  // tolerate a header row
        }
        bool header = false;
        for (size_t i = 1; i < cells.size(); ++i)
            if (!cells[i].empty() && !std::isdigit(static_cast<unsigned char>(cells[i][0])) &&
                cells[i][0] != '-')
                header = true;
        if (header) continue;
        BigRational a[5];
        for (int i = 0; i < 5; ++i) {
            if (a[i].set_str(cells[i + 1], 10) != 0)
                throw bad_input("curves_from_csv: bad rational '" + cells[i + 1] + "'");
            a[i].canonicalize();
        }
        out.emplace_back(cells[0], WeierstrassCurve(a[0], a[1], a[2], a[3], a[4]));
    }
    return out;
}

json scan_results_to_json(const std::vector<ScanResult>& rs) {
    json arr = json::array();
    for (const auto& r : rs) {
        json e{{"p", r.p}, {"verdict", verdict_name(r.verdict)}};
        if (r.a_p) e["a_p"] = *r.a_p;
        arr.push_back(std::move(e));
    }
    return arr;
}

namespace {
json derivation_to_json(const std::vector<DerivationEntry>& d) {
    json arr = json::array();
    for (const auto& e : d) arr.push_back({{"name", e.name}, {"formula", e.formula}, {"value", e.value}});
    return arr;
}
}  // namespace

json gap_report_to_json(const GapReport& r) {
    return json{{"d", r.params.d},
                {"f", r.params.f},
                {"p", r.params.p},
                {"universal_c", r.universal_c},
                {"unramified_gap", r.unramified_gap},
                {"C1", r.C1},
                {"c2", r.c2},
                {"C2", r.C2},
                {"final_C", r.final_C},
                {"derivation", derivation_to_json(r.derivation)},
                {"warnings", r.warnings}};
}

json elliptic_gap_report_to_json(const EllipticGapReport& r) {
    return json{{"d", r.params.d},
                {"f", r.params.f},
                {"p", r.params.p},
                {"d_frak_p", r.d_frak_p},
                {"amplification", r.amplification.get_str()},
                {"local_gap", r.local_gap},
                {"global_gap", r.global_gap},
                {"epsilon", r.epsilon},
                {"derivation", derivation_to_json(r.derivation)}};
}

json tower_prediction_to_json(const TowerPrediction& t) {
    json breaks = json::array();
    for (const auto& b : t.breaks)
        breaks.push_back({{"interval", {b.interval_lo, b.interval_hi}}, {"level", b.level}});
    json hb = json::array();
    for (const auto& u : t.herbrand.breaks_u) hb.push_back(u.get_str());
    json hs = json::array();
    for (const auto& s : t.herbrand.slopes) hs.push_back(s.get_str());
    return json{{"n", t.n},
                {"p", t.p},
                {"degree", t.degree.get_str()},
                {"group_shape", t.group_shape},
                {"ramification_breaks", breaks},
                {"herbrand", {{"breaks_u", hb}, {"slopes", hs}}}};
}

json prepared_factorization_to_json(const PreparedFactorization& pf) {
    json levels = json::array();
    for (const auto& L : pf.levels) {
        json g = json::array();
        for (const auto& c : L.g) {
            if (c.is_zero_to_precision())
                g.push_back("0");
            else {
                Valuation v = c.valuation();
                g.push_back(json{{"v", v.value()},
                                 {"unit", c.unit_part().empty() ? "0" : c.unit_part()[0].get_str()}});
            }
        }
        levels.push_back({{"level", L.level}, {"degree", L.degree}, {"coefficients", g}});
    }
    json segs = json::array();
    for (const auto& s : pf.polygon.segments)
        segs.push_back({{"root_valuation", s.root_valuation.get_str()}, {"length", s.length}});
    return json{{"p", pf.p},
                {"n", pf.n},
                {"degree", pf.s},
                {"precision", pf.precision},
                {"levels", levels},
                {"polygon", {{"zero_roots", pf.polygon.zero_root_count}, {"segments", segs}}}};
}

bool validate_against_schema(const json& doc, const json& schema, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (schema.contains("type")) {
        std::string t = schema["type"];
        bool ok = (t == "object" && doc.is_object()) || (t == "array" && doc.is_array()) ||
                  (t == "string" && doc.is_string()) || (t == "number" && doc.is_number()) ||
                  (t == "integer" && doc.is_number_integer()) ||
                  (t == "boolean" && doc.is_boolean()) || (t == "null" && doc.is_null());
        if (!ok) return fail("expected type " + t);
    }
    if (schema.contains("required"))
        for (const auto& k : schema["required"])
            if (!doc.contains(k.get<std::string>()))
                return fail("missing required key " + k.get<std::string>());
    if (schema.contains("properties") && doc.is_object())
        for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
            if (doc.contains(it.key()))
                if (!validate_against_schema(doc[it.key()], it.value(), why)) return false;
    if (schema.contains("items") && doc.is_array())
        for (const auto& e : doc)
            if (!validate_against_schema(e, schema["items"], why)) return false;
    return true;
}

}  // namespace heightgap
