#pragma once

// Deterministic report serialization.  The writer is hand-rolled rather than
// delegated to a JSON library so field order is fixed by construction and
// every float prints with 17 significant digits; identical runs produce
// byte-identical files.

#include <cstdio>
#include <sstream>
#include <string>

#include "curv4/classify.hpp"

namespace curv4::report {

inline constexpr int kSchemaVersion = 1;

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : "null"; }

namespace detail {

inline void write_residuals(std::ostringstream& os, const ResidualSet& r) {
    os << "{\"weyl_norm\":" << fmt(r.weyl_norm) << ",\"cotton\":" << fmt(r.cotton)
       << ",\"q_general\":" << fmt(r.q_general) << ",\"q_explicit\":" << fmt(r.q_explicit)
       << ",\"p_commutator\":" << fmt(r.p_commutator) << ",\"p_quadratic\":" << fmt(r.p_quadratic)
       << ",\"codazzi\":" << fmt(r.codazzi) << ",\"killing\":" << fmt(r.killing)
       << ",\"nabla_ricci\":" << fmt(r.nabla_ricci) << ",\"stackel\":" << fmt(r.stackel)
       << ",\"d1\":" << fmt(r.d1) << ",\"p1\":" << fmt(r.p1) << "}";
}

inline void write_pattern(std::ostringstream& os, const std::vector<int>& pat) {
    os << "[";
    for (std::size_t i = 0; i < pat.size(); ++i) os << (i ? "," : "") << pat[i];
    os << "]";
}

} // namespace detail

inline std::string to_json(const ConditionReport& rep) {
    std::ostringstream os;
    os << "{\"schema_version\":" << kSchemaVersion;
    os << ",\"family\":\"" << rep.family << "\"";
    os << ",\"chart\":\"" << rep.chart_name << "\"";
    os << ",\"seed\":" << rep.seed;
    os << ",\"tolerances\":{\"satisfied\":" << fmt(rep.tol.satisfied)
       << ",\"violated\":" << fmt(rep.tol.violated) << ",\"ode_tol\":" << fmt(rep.tol.ode_tol)
       << "}";
    os << ",\"grid\":{\"box\":[";
    for (int d = 0; d < 4; ++d)
        os << (d ? "," : "") << "[" << fmt(rep.grid.box[d][0]) << "," << fmt(rep.grid.box[d][1])
           << "]";
    os << "],\"counts\":[";
    for (int d = 0; d < 4; ++d) os << (d ? "," : "") << rep.grid.counts[d];
    os << "],\"margin\":" << fmt(rep.grid.margin) << "}";
    os << ",\"params\":{";
    {
        bool first = true;
        for (const auto& [k, v] : rep.spec.params) {
            os << (first ? "" : ",") << "\"" << k << "\":" << fmt(v);
            first = false;
        }
    }
    os << "}";
    os << ",\"profiles\":{";
    {
        bool first = true;
        for (const auto& [k, v] : rep.spec.profiles) {
            os << (first ? "" : ",") << "\"" << k << "\":\"" << v.describe() << "\"";
            first = false;
        }
    }
    os << "}";
    os << ",\"points\":[";
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
        const auto& p = rep.points[i];
        os << (i ? "," : "") << "{\"x\":[" << fmt(p.x[0]) << "," << fmt(p.x[1]) << ","
           << fmt(p.x[2]) << "," << fmt(p.x[3]) << "],\"residuals\":";
        detail::write_residuals(os, p.residuals);
        os << ",\"ricci_eigenvalues\":[" << fmt(p.ricci[0]) << "," << fmt(p.ricci[1]) << ","
           << fmt(p.ricci[2]) << "," << fmt(p.ricci[3]) << "],\"multiplicity_pattern\":";
        detail::write_pattern(os, p.pattern);
        os << "}";
    }
    os << "]";
    os << ",\"aggregates\":{\"max\":";
    detail::write_residuals(os, rep.max_residuals);
    os << ",\"median\":";
    detail::write_residuals(os, rep.median_residuals);
    os << "}";
    os << ",\"spectrum\":{\"eigenvalue_ranges\":[";
    for (int s = 0; s < 4; ++s)
        os << (s ? "," : "") << "[" << fmt(rep.eigen_range[s][0]) << ","
           << fmt(rep.eigen_range[s][1]) << "]";
    os << "],\"modal_pattern\":";
    detail::write_pattern(os, rep.modal_pattern);
    os << ",\"eigenvalue_spread\":" << fmt(rep.eigen_spread) << "}";
    os << ",\"verdicts\":{";
    for (std::size_t i = 0; i < rep.verdicts.size(); ++i)
        os << (i ? "," : "") << "\"" << rep.verdicts[i].first << "\":\""
           << verdict_name(rep.verdicts[i].second) << "\"";
    os << "}}";
    return os.str();
}

/// One row per point with every residual; optional residuals print empty.
inline std::string to_csv(const ConditionReport& rep) {
    std::ostringstream os;
    os << "family,x1,x2,x3,x4,weyl_norm,cotton,q_general,q_explicit,p_commutator,p_quadratic,"
          "codazzi,killing,nabla_ricci,stackel,d1,p1,r1,r2,r3,r4\n";
    auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
    for (const auto& p : rep.points) {
        const auto& r = p.residuals;
        os << rep.family << "," << fmt(p.x[0]) << "," << fmt(p.x[1]) << "," << fmt(p.x[2]) << ","
           << fmt(p.x[3]) << "," << fmt(r.weyl_norm) << "," << fmt(r.cotton) << ","
           << fmt(r.q_general) << "," << fmt(r.q_explicit) << "," << fmt(r.p_commutator) << ","
           << fmt(r.p_quadratic) << "," << fmt(r.codazzi) << "," << fmt(r.killing) << ","
           << fmt(r.nabla_ricci) << "," << opt(r.stackel) << "," << opt(r.d1) << ","
           << opt(r.p1) << "," << fmt(p.ricci[0]) << "," << fmt(p.ricci[1]) << ","
           << fmt(p.ricci[2]) << "," << fmt(p.ricci[3]) << "\n";
    }
    return os.str();
}

} // namespace curv4::report
