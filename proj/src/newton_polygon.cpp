#include "heightgap/newton_polygon.hpp"

#include <algorithm>

namespace heightgap {

NewtonPolygon newton_polygon(std::vector<std::pair<long, BigRational>> pts) {
    if (pts.empty()) throw bad_input("newton_polygon: all coefficients are zero");
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 1; i < pts.size(); ++i)
        if (pts[i].first == pts[i - 1].first)
            throw bad_input("newton_polygon: duplicate degree");

    NewtonPolygon np;
    np.zero_root_count = pts.front().first;  // X^t divides the polynomial

    // lower convex hull (monotone chain over degrees)
    std::vector<std::pair<long, BigRational>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // drop b if it lies on or above segment a--pt
            BigRational lhs = (b.second - a.second) * BigRational(pt.first - a.first);
            BigRational rhs = (pt.second - a.second) * BigRational(b.first - a.first);
            if (lhs >= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    np.vertices = hull;
    for (size_t i = 1; i < hull.size(); ++i) {
        BigRational slope =
            (hull[i].second - hull[i - 1].second) / BigRational(hull[i].first - hull[i - 1].first);
        PolygonSegment seg;
        seg.root_valuation = -slope;
        seg.root_valuation.canonicalize();
        seg.length = hull[i].first - hull[i - 1].first;
        np.segments.push_back(std::move(seg));
    }
    // hull convexity <=> geometric slopes strictly increasing <=> root
    // valuations strictly decreasing; assert it
    for (size_t i = 1; i < np.segments.size(); ++i)
        if (!(np.segments[i].root_valuation < np.segments[i - 1].root_valuation))
            throw computation_error("newton_polygon: hull slopes not strictly monotone");
    return np;
}

}  // namespace heightgap
