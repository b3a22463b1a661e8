#pragma once

// Grid sampling over a chart's validated box, aggregation of per-point
// residual sets, and the three-valued class verdicts that reproduce the
// classification table.  Point evaluation may run on several threads; records
// land in a pre-sized vector by grid index and every aggregate is reduced in
// that fixed order, so the report is identical whatever the thread count.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "curv4/catalog.hpp"
#include "curv4/conditions.hpp"

namespace curv4 {

struct SampleGrid {
    catalog::Box4 box{};
    std::array<int, 4> counts{5, 5, 5, 5};
    double margin = 0.05; // fraction of the box width kept clear of each face

    std::vector<Point4> points(const MetricChart& chart) const {
        std::array<std::vector<double>, 4> axis;
        for (int d = 0; d < 4; ++d) {
            const double w = box[d][1] - box[d][0];
            const double lo = box[d][0] + margin * w, hi = box[d][1] - margin * w;
            const int n = counts[d];
            if (n < 1) throw ArgumentError("SampleGrid: counts must be at least 1");
            for (int i = 0; i < n; ++i)
                axis[d].push_back(n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1.0));
        }
        std::vector<Point4> pts;
        for (double a : axis[0])
            for (double b : axis[1])
                for (double c : axis[2])
                    for (double d : axis[3]) {
                        const Point4 p{a, b, c, d};
                        if (chart.valid(p)) pts.push_back(p);
                    }
        if (pts.empty())
            throw ArgumentError("SampleGrid: no grid point satisfies the chart domain");
        return pts;
    }
};

struct Tolerances {
    double satisfied = 1e-7;
    double violated = 1e-4;
    double ode_tol = 1e-10; // provenance echo; profiles are solved at build time
};

enum class Verdict { satisfied, violated, indeterminate };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::satisfied: return "satisfied";
        case Verdict::violated: return "violated";
        default: return "indeterminate";
    }
}

struct PointRecord {
    Point4 x{};
    ResidualSet residuals;
    std::array<double, 4> ricci{};
    std::vector<int> pattern;
};

struct ConditionReport {
    std::string family;
    catalog::FamilySpec spec;
    SampleGrid grid;
    Tolerances tol;
    std::uint64_t seed = 0;
    std::string chart_name;

    std::vector<PointRecord> points;
    ResidualSet max_residuals;
    ResidualSet median_residuals;
    std::array<std::array<double, 2>, 4> eigen_range{};
    std::vector<int> modal_pattern;
    double eigen_spread = 0.0; // normalized max over slots of (max - min)

    // fixed key order: lcf, p, q, class_b, class_u, parallel_ricci, constant_eigenvalues
    std::vector<std::pair<std::string, Verdict>> verdicts;

    Verdict verdict(const std::string& key) const {
        for (const auto& [k, v] : verdicts)
            if (k == key) return v;
        throw ArgumentError("no verdict named " + key);
    }
};

inline int thread_count_from_env() {
    const char* env = std::getenv("CURV4_THREADS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n < 1 ? 1 : (n > 64 ? 64 : n);
}

namespace classify_detail {

inline double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2];
}

template <class Get>
double median_field(const std::vector<PointRecord>& pts, Get get) {
    std::vector<double> v;
    for (const auto& p : pts) v.push_back(get(p.residuals));
    return median_of(std::move(v));
}

inline Verdict judge(double max_residual, const Tolerances& tol) {
    if (max_residual < tol.satisfied) return Verdict::satisfied;
    if (max_residual > tol.violated) return Verdict::violated;
    return Verdict::indeterminate;
}

} // namespace classify_detail

inline ConditionReport classify(const MetricChart& chart, const catalog::FamilySpec& spec,
                                const SampleGrid& grid, const Tolerances& tol,
                                std::uint64_t seed = 12345) {
    ConditionReport rep;
    rep.family = catalog::family_name(spec.family);
    rep.spec = spec;
    rep.grid = grid;
    rep.tol = tol;
    rep.seed = seed;
    rep.chart_name = chart.name;

    const auto pts = grid.points(chart);
    const DirectionSet dirs = DirectionSet::make(seed);
    rep.points.resize(pts.size());

    const int threads = thread_count_from_env();
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            PointRecord rec;
            rec.x = pts[i];
            const CurvatureBundle b = curvature_bundle(chart, pts[i]);
            rec.residuals = evaluate_residuals(chart, b, dirs);
            const auto spectrum = ricci_spectrum(b);
            rec.ricci = spectrum.eigenvalues;
            rec.pattern = spectrum.multiplicity;
            rep.points[i] = std::move(rec);
        }
    };
    if (threads <= 1 || pts.size() < 8) {
        work(0, pts.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (pts.size() + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const std::size_t lo = t * chunk, hi = std::min(pts.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    // aggregates, reduced in grid order
    using classify_detail::median_field;
    auto max_field = [&](auto get) {
        double m = 0.0;
        for (const auto& p : rep.points) m = std::max(m, get(p.residuals));
        return m;
    };
    auto& mx = rep.max_residuals;
    auto& md = rep.median_residuals;
    mx.weyl_norm = max_field([](const ResidualSet& r) { return r.weyl_norm; });
    mx.cotton = max_field([](const ResidualSet& r) { return r.cotton; });
    mx.q_general = max_field([](const ResidualSet& r) { return r.q_general; });
    mx.q_explicit = max_field([](const ResidualSet& r) { return r.q_explicit; });
    mx.p_commutator = max_field([](const ResidualSet& r) { return r.p_commutator; });
    mx.p_quadratic = max_field([](const ResidualSet& r) { return r.p_quadratic; });
    mx.codazzi = max_field([](const ResidualSet& r) { return r.codazzi; });
    mx.killing = max_field([](const ResidualSet& r) { return r.killing; });
    mx.nabla_ricci = max_field([](const ResidualSet& r) { return r.nabla_ricci; });
    md.weyl_norm = median_field(rep.points, [](const ResidualSet& r) { return r.weyl_norm; });
    md.cotton = median_field(rep.points, [](const ResidualSet& r) { return r.cotton; });
    md.q_general = median_field(rep.points, [](const ResidualSet& r) { return r.q_general; });
    md.q_explicit = median_field(rep.points, [](const ResidualSet& r) { return r.q_explicit; });
    md.p_commutator =
        median_field(rep.points, [](const ResidualSet& r) { return r.p_commutator; });
    md.p_quadratic = median_field(rep.points, [](const ResidualSet& r) { return r.p_quadratic; });
    md.codazzi = median_field(rep.points, [](const ResidualSet& r) { return r.codazzi; });
    md.killing = median_field(rep.points, [](const ResidualSet& r) { return r.killing; });
    md.nabla_ricci = median_field(rep.points, [](const ResidualSet& r) { return r.nabla_ricci; });
    {
        std::vector<double> st, d1v, p1v;
        for (const auto& p : rep.points) {
            if (p.residuals.stackel) st.push_back(*p.residuals.stackel);
            if (p.residuals.d1) d1v.push_back(*p.residuals.d1);
            if (p.residuals.p1) p1v.push_back(*p.residuals.p1);
        }
        using classify_detail::median_of;
        if (!st.empty()) {
            mx.stackel = *std::max_element(st.begin(), st.end());
            md.stackel = median_of(st);
        }
        if (!d1v.empty()) {
            mx.d1 = *std::max_element(d1v.begin(), d1v.end());
            md.d1 = median_of(d1v);
        }
        if (!p1v.empty()) {
            mx.p1 = *std::max_element(p1v.begin(), p1v.end());
            md.p1 = median_of(p1v);
        }
    }

    double rmax = 0.0;
    for (int s = 0; s < 4; ++s) {
        rep.eigen_range[s] = {rep.points[0].ricci[s], rep.points[0].ricci[s]};
        for (const auto& p : rep.points) {
            rep.eigen_range[s][0] = std::min(rep.eigen_range[s][0], p.ricci[s]);
            rep.eigen_range[s][1] = std::max(rep.eigen_range[s][1], p.ricci[s]);
            rmax = std::max({rmax, std::abs(p.ricci[s])});
        }
    }
    for (int s = 0; s < 4; ++s)
        rep.eigen_spread = std::max(
            rep.eigen_spread, (rep.eigen_range[s][1] - rep.eigen_range[s][0]) / (1.0 + rmax));
    {
        std::map<std::vector<int>, int> counts;
        for (const auto& p : rep.points) ++counts[p.pattern];
        int best = -1;
        for (const auto& [pat, n] : counts)
            if (n > best) {
                best = n;
                rep.modal_pattern = pat;
            }
    }

    using classify_detail::judge;
    rep.verdicts = {
        {"lcf", judge(mx.weyl_norm, tol)},
        {"p", judge(mx.p_commutator, tol)},
        {"q", judge(mx.q_explicit, tol)},
        {"class_b", judge(mx.codazzi, tol)},
        {"class_u", judge(mx.killing, tol)},
        {"parallel_ricci", judge(mx.nabla_ricci, tol)},
        {"constant_eigenvalues", judge(rep.eigen_spread, tol)},
    };

    // a conformally flat Q-space must come out a P-space; anything else is an
    // internal inconsistency of the pipeline, not a property of the chart
    if (rep.verdict("lcf") == Verdict::satisfied && rep.verdict("q") == Verdict::satisfied &&
        rep.verdict("p") != Verdict::satisfied)
        throw ConsistencyError("classify: chart " + chart.name +
                               " judged conformally flat and Q but not P");
    return rep;
}

inline ConditionReport classify(const catalog::BuiltFamily& bf, std::uint64_t seed = 12345) {
    SampleGrid grid{bf.spec.box, bf.spec.grid_counts, bf.spec.grid_margin};
    Tolerances tol{bf.spec.satisfied_tol, bf.spec.violated_tol, bf.spec.ode_tol};
    return classify(bf.chart, bf.spec, grid, tol, seed);
}

} // namespace curv4
