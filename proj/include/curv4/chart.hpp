#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "curv4/tensor.hpp"

namespace curv4 {

/// Coordinate jets of a point, one per variable.
inline std::array<Jet3, 4> point_jets(const Point4& p) {
    return {Jet3::variable(p[0], 0), Jet3::variable(p[1], 1), Jet3::variable(p[2], 2),
            Jet3::variable(p[3], 3)};
}

/// A local metric: evaluator from a point to the full symmetric matrix of
/// order-3 jets, plus the validity predicate of the coordinate domain.
struct MetricChart {
    std::string name;
    bool diagonal = false;
    std::function<Mat4Jet(const Point4&)> components;
    std::function<std::optional<std::string>(const Point4&)> invalid_reason;

    bool valid(const Point4& p) const { return !invalid_reason || !invalid_reason(p); }

    std::optional<std::string> why_invalid(const Point4& p) const {
        if (!invalid_reason) return std::nullopt;
        return invalid_reason(p);
    }
};

inline Mat4Jet diagonal_metric(const std::array<Jet3, 4>& d) {
    Mat4Jet g{};
    for (int i = 0; i < 4; ++i) g[m4(i, i)] = d[i];
    return g;
}

/// Positive definiteness of the value slots via leading principal minors.
inline std::optional<std::string> positivity_failure(const Mat4& g) {
    double minors[4];
    minors[0] = g[m4(0, 0)];
    minors[1] = g[m4(0, 0)] * g[m4(1, 1)] - g[m4(0, 1)] * g[m4(1, 0)];
    // 3x3 leading minor
    minors[2] = g[m4(0, 0)] * (g[m4(1, 1)] * g[m4(2, 2)] - g[m4(1, 2)] * g[m4(2, 1)]) -
                g[m4(0, 1)] * (g[m4(1, 0)] * g[m4(2, 2)] - g[m4(1, 2)] * g[m4(2, 0)]) +
                g[m4(0, 2)] * (g[m4(1, 0)] * g[m4(2, 1)] - g[m4(1, 1)] * g[m4(2, 0)]);
    minors[3] = det4(g);
    for (int k = 0; k < 4; ++k)
        if (!(minors[k] > 0.0))
            return "leading principal minor " + std::to_string(k + 1) +
                   " is not positive: " + std::to_string(minors[k]);
    return std::nullopt;
}

/// e^{2u} g over the same domain; u is built from the coordinate jets.
inline MetricChart conformal_rescale(MetricChart base,
                                     std::function<Jet3(const std::array<Jet3, 4>&)> u) {
    MetricChart out = base;
    out.name = base.name + "_conformal";
    auto inner = base.components;
    out.components = [inner, u](const Point4& p) {
        Mat4Jet g = inner(p);
        const Jet3 factor = exp(2.0 * u(point_jets(p)));
        for (auto& c : g) c = c * factor;
        return g;
    };
    return out;
}

} // namespace curv4
