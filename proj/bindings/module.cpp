// Python bindings for the main operations.  Exact rationals cross the
// boundary as "num/den" strings; everything heavy stays in C++.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heightgap/canonical.hpp"
#include "heightgap/heights.hpp"
#include "heightgap/verify.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace heightgap;

namespace {

BigRational q_from_str(const std::string& s) {
    BigRational r;
    if (r.set_str(s, 10) != 0) throw bad_input("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

WeierstrassCurve curve_from_list(const std::vector<std::string>& a) {
    if (a.size() == 2) return WeierstrassCurve::short_form(q_from_str(a[0]), q_from_str(a[1]));
    if (a.size() == 5)
        return WeierstrassCurve(q_from_str(a[0]), q_from_str(a[1]), q_from_str(a[2]),
                                q_from_str(a[3]), q_from_str(a[4]));
    throw bad_input("curve: pass [A,B] or [a1,a2,a3,a4,a6]");
}

CurvePoint point_from_pair(const std::optional<std::pair<std::string, std::string>>& P) {
    if (!P) return CurvePoint::infinity();
    return CurvePoint::affine(q_from_str(P->first), q_from_str(P->second));
}

}  // namespace

PYBIND11_MODULE(_heightgap, m) {
    m.doc() = "exact-arithmetic height-gap checks for elliptic curve torsion fields";

    py::register_exception<bad_input>(m, "BadInput", PyExc_ValueError);
    py::register_exception<computation_error>(m, "ComputationError", PyExc_RuntimeError);

    m.def(
        "curve_invariants",
        [](const std::vector<std::string>& a) {
            WeierstrassCurve E = curve_from_list(a);
            return py::dict("discriminant"_a = E.discriminant().get_str(),
                            "j"_a = E.j_invariant().get_str(),
                            "c4"_a = E.c4().get_str(), "c6"_a = E.c6().get_str());
        },
        py::arg("coefficients"));

    m.def(
        "count_points",
        [](const std::vector<std::string>& a, std::uint64_t p, unsigned f) {
            auto R = count_points(curve_from_list(a), p, f);
            return py::dict("count"_a = *R.point_count, "a_q"_a = *R.a_q);
        },
        py::arg("coefficients"), py::arg("p"), py::arg("f") = 1);

    m.def(
        "is_supersingular",
        [](const std::vector<std::string>& a, std::uint64_t p) {
            return is_supersingular(curve_from_list(a), p, 1);
        },
        py::arg("coefficients"), py::arg("p"));

    m.def(
        "supersingular_scan",
        [](const std::vector<std::string>& a, std::uint64_t p_min, std::uint64_t p_max) {
            ScanCriteria crit;
            auto rs = supersingular_scan(curve_from_list(a), p_min, p_max, crit);
            py::list out;
            for (const auto& r : rs) {
                py::dict d("p"_a = r.p, "verdict"_a = verdict_name(r.verdict));
                if (r.a_p) d["a_p"] = *r.a_p;
                out.append(d);
            }
            return out;
        },
        py::arg("coefficients"), py::arg("p_min"), py::arg("p_max"));

    m.def(
        "supersingular_index",
        [](const std::vector<std::string>& a, std::uint64_t p) {
            auto r = supersingular_index(curve_from_list(a), p,
                                         static_cast<long>(p) * static_cast<long>(p) + 2);
            return py::dict("index"_a = r.index, "exceptional_j"_a = r.exceptional_j);
        },
        py::arg("coefficients"), py::arg("p"));

    m.def(
        "eisenstein_tower",
        [](const std::vector<std::string>& a, std::uint64_t p, long n, long precision) {
            TowerOptions opt;
            opt.target_precision = precision;
            opt.max_n = 2;
            auto pf = eisenstein_tower(curve_from_list(a), p, n, opt);
            py::list levels;
            for (const auto& L : pf.levels)
                levels.append(py::dict("level"_a = L.level, "degree"_a = L.degree));
            py::list slopes;
            for (const auto& s : pf.polygon.segments)
                slopes.append(py::make_tuple(s.root_valuation.get_str(), s.length));
            return py::dict("degree"_a = pf.s, "precision"_a = pf.precision, "levels"_a = levels,
                            "polygon_slopes"_a = slopes);
        },
        py::arg("coefficients"), py::arg("p"), py::arg("n") = 1, py::arg("precision") = 44);

    m.def(
        "weil_height",
        [](const std::vector<long long>& minpoly) {
            IntPoly f;
            for (auto c : minpoly) f.emplace_back(static_cast<long>(c));
            AlgebraicNumber a(f);
            HeightValue h = weil_height(a);
            return py::dict("value"_a = h.value, "error_bound"_a = h.error_bound,
                            "degree"_a = a.degree(), "root_of_unity"_a = is_root_of_unity(a));
        },
        py::arg("minpoly"), "coefficients constant-term first");

    m.def(
        "canonical_height",
        [](const std::vector<std::string>& a,
           const std::optional<std::pair<std::string, std::string>>& P, const std::string& method) {
            WeierstrassCurve E = curve_from_list(a);
            CurvePoint Q = point_from_pair(P);
            py::dict out;
            if (Q.is_infinity()) {
                out["doubling"] = 0.0;
                out["localsum"] = 0.0;
                return out;
            }
            if (method == "doubling" || method == "both")
                out["doubling"] = canonical_height_doubling(E, Q, 14, 1e-9).value;
            if (method == "localsum" || method == "both")
                out["localsum"] = canonical_height_local_sum(E, Q).value;
            return out;
        },
        py::arg("coefficients"), py::arg("point"), py::arg("method") = "both");

    m.def("thm01_constants", [](long d, long f, long p, double universal_c) {
        GapReport r = thm01_constants(GapParams{d, f, p}, universal_c);
        py::list deriv;
        for (const auto& e : r.derivation)
            deriv.append(py::make_tuple(e.name, e.formula, e.value));
        return py::dict("C1"_a = r.C1, "c2"_a = r.c2, "C2"_a = r.C2, "final_C"_a = r.final_C,
                        "derivation"_a = deriv, "warnings"_a = r.warnings);
    }, py::arg("d") = 1, py::arg("f") = 1, py::arg("p") = 5, py::arg("universal_c") = 0.2);

    m.def("thm02_constants", [](long d, long f, long p, long d_frak_p) {
        EllipticGapReport r = thm02_constants(GapParams{d, f, p}, d_frak_p);
        return py::dict("amplification"_a = r.amplification.get_str(), "local_gap"_a = r.local_gap,
                        "global_gap"_a = r.global_gap, "epsilon"_a = r.epsilon);
    }, py::arg("d") = 1, py::arg("f") = 1, py::arg("p") = 5, py::arg("d_frak_p") = 1);

    m.def("Q_of_n", &Q_of_n, py::arg("n"), py::arg("q"));
    m.def("frey_rhs", &frey_rhs, py::arg("h"), py::arg("delta"));

    m.def("tower_prediction", [](long n, long p) {
        TowerPrediction t = tower_prediction(n, p);
        py::list breaks;
        for (const auto& b : t.breaks)
            breaks.append(py::make_tuple(b.interval_lo, b.interval_hi, b.level));
        return py::dict("degree"_a = t.degree.get_str(), "group_shape"_a = t.group_shape,
                        "breaks"_a = breaks);
    }, py::arg("n"), py::arg("p"));

    m.def("verify", [](const std::string& suite) {
        RunConfig cfg = RunConfig::from_env();
        auto rs = run_acceptance(suite, cfg);
        py::list out;
        for (const auto& r : rs)
            out.append(py::dict("id"_a = r.id, "name"_a = r.name, "pass"_a = r.pass,
                                "details"_a = r.details, "ms"_a = r.ms));
        return out;
    }, py::arg("suite") = "constants");
}
