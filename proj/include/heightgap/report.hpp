#pragma once

// Run configuration, the centralized tolerance ledger, JSON report
// envelopes, and ingestion of curves / points / minimal polynomials.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "heightgap/curve.hpp"
#include "heightgap/formal.hpp"
#include "heightgap/gap.hpp"
#include "heightgap/poly_factor.hpp"

namespace heightgap {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "heightgap-report/1";

// Every numeric tolerance used by the verification suites lives here, so
// acceptance criteria state them exactly once.
struct ToleranceLedger {
    double weil_pow2 = 1e-10;           // h(2^{1/n}) vs (log 2)/n
    double cyclotomic_zero = 1e-12;
    double doubling_vs_localsum = 1e-6;
    double parallelogram = 4e-6;
    double torsion_zero = 1e-8;
    double m2_scaling = 1e-6;           // times m^2
    double haar_total = 1e-4;           // at grid 256
    double jensen_term = 1e-6;          // n = 1 term at grid 256
    double j_cross_check = 1e-8;
    double constants_branch = 1e-12;
};

struct RunConfig {
    long precision = kDefaultPadicPrecision;  // p-adic digits
    long series_order_cap = 700;
    std::uint64_t max_pf = 1000000;
    long max_tower_n = 2;
    long max_division_m = 31;
    ToleranceLedger tol;

    static RunConfig from_env();
    json to_json() const;
};

struct Report {
    std::string command;
    json inputs;
    json outputs;
    std::vector<std::string> assumptions;
    json config;
    double timing_ms = 0;

    json to_json() const;
    static Report from_json(const json& j);
};

// ---- ingestion -------------------------------------------------------------

BigRational rational_from_json(const json& j);
json rational_to_json(const BigRational& x);

// {"a1":..,"a2":..,"a3":..,"a4":..,"a6":..} or {"A":..,"B":..}
WeierstrassCurve curve_from_json(const json& j);
json curve_to_json(const WeierstrassCurve& E);

// {"x":"num/den","y":"num/den"} or "O"
CurvePoint point_from_json(const json& j);

// JSON array of integer coefficients, constant term first.
IntPoly minpoly_from_json(const json& j);

// CSV rows: label,a1,a2,a3,a4,a6 (header optional)
std::vector<std::pair<std::string, WeierstrassCurve>> curves_from_csv(const std::string& text);

// ---- report payload builders ----------------------------------------------

json scan_results_to_json(const std::vector<ScanResult>& rs);
json gap_report_to_json(const GapReport& r);
json elliptic_gap_report_to_json(const EllipticGapReport& r);
json tower_prediction_to_json(const TowerPrediction& t);
json prepared_factorization_to_json(const PreparedFactorization& pf);

// Minimal structural validator for the subset of JSON Schema used by
// docs/report.schema.json (type / required / properties / items).
bool validate_against_schema(const json& doc, const json& schema, std::string* why = nullptr);

}  // namespace heightgap
