#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "heightgap/report.hpp"

using namespace heightgap;

TEST_CASE("rational and curve ingestion") {
    CHECK(rational_from_json(json(5)) == BigRational(5));
    CHECK(rational_from_json(json("3/4")) == BigRational(3, 4));
    CHECK(rational_from_json(json("-7")) == BigRational(-7));
    CHECK_THROWS_AS(rational_from_json(json(0.5)), bad_input);

    json longform = {{"a1", 0}, {"a2", 0}, {"a3", 1}, {"a4", -1}, {"a6", 0}};
    WeierstrassCurve E = curve_from_json(longform);
    CHECK(E.discriminant() == 37);
    json shortform = {{"A", 1}, {"B", 0}};
    CHECK(curve_from_json(shortform).j_invariant() == 1728);
    // round trip through curve_to_json
    WeierstrassCurve E2 = curve_from_json(curve_to_json(E));
    CHECK(E2.a3() == 1);
    CHECK(E2.a4() == -1);
}

TEST_CASE("point and minpoly ingestion") {
    CHECK(point_from_json(json("O")).is_infinity());
    CurvePoint P = point_from_json(json{{"x", "1/4"}, {"y", "-9/8"}});
    CHECK(P.x() == BigRational(1, 4));
    CHECK(P.y() == BigRational(-9, 8));
    IntPoly f = minpoly_from_json(json::parse("[-2,0,0,1]"));
    CHECK(f == IntPoly{-2, 0, 0, 1});
    CHECK_THROWS_AS(minpoly_from_json(json::parse("[]")), bad_input);
}

TEST_CASE("csv batch ingestion") {
    std::string csv = "label,a1,a2,a3,a4,a6\n37a,0,0,1,-1,0\nx3p1,0,0,0,0,1\n";
    auto curves = curves_from_csv(csv);
    REQUIRE(curves.size() == 2);
    CHECK(curves[0].first == "37a");
    CHECK(curves[0].second.discriminant() == 37);
    CHECK(curves[1].second.j_invariant() == 0);
}

TEST_CASE("report round trip") {
    Report r;
    r.command = "scan";
    r.inputs = {{"p_min", 5}, {"p_max", 100}};
    r.outputs = {{"accepted", {17, 19}}};
    r.assumptions = {ScanResult::kAssumption};
    r.config = RunConfig{}.to_json();
    r.timing_ms = 12.5;
    json j = r.to_json();
    Report r2 = Report::from_json(j);
    CHECK(r2.to_json() == j);
}

TEST_CASE("reports validate against the shipped schema") {
    std::ifstream sf("docs/report.schema.json");
    if (!sf.is_open()) sf.open("../docs/report.schema.json");
    if (!sf.is_open()) sf.open("../../docs/report.schema.json");
    REQUIRE(sf.is_open());
    json schema = json::parse(sf);
    Report r;
    r.command = "constants";
    r.inputs = {{"d", 1}};
    r.outputs = {{"C1", 6250.0}};
    r.config = RunConfig{}.to_json();
    std::string why;
    CHECK(validate_against_schema(r.to_json(), schema, &why));
    // and a broken document fails
    json broken = r.to_json();
    broken.erase("command");
    CHECK(!validate_against_schema(broken, schema, &why));
}

TEST_CASE("precision env override") {
    setenv("HEIGHTGAP_PRECISION", "48", 1);
    CHECK(RunConfig::from_env().precision == 48);
    setenv("HEIGHTGAP_PRECISION", "0", 1);
    CHECK_THROWS_AS(RunConfig::from_env(), bad_input);
    unsetenv("HEIGHTGAP_PRECISION");
    CHECK(RunConfig::from_env().precision == kDefaultPadicPrecision);
}
