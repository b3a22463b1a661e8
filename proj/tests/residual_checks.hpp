#pragma once

// Frame-relative identity residuals shared by the unit tests and the
// acceptance suite: Riemann symmetries with the first Bianchi identity, the
// contracted second Bianchi identity, and Weyl trace-freeness.

#include <algorithm>
#include <cmath>

#include "curv4/geometry.hpp"

namespace testres {

using namespace curv4;

inline double riemann_symmetry_residual(const CurvatureBundle& b) {
    const Ten4 R = frame_transform(b.riemann_values(), b.frame);
    const double scale = 1.0 + frob(R);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    const double r = R[t4(i, j, k, l)];
                    worst = std::max(worst, std::abs(r + R[t4(j, i, k, l)]));
                    worst = std::max(worst, std::abs(r + R[t4(i, j, l, k)]));
                    worst = std::max(worst, std::abs(r - R[t4(k, l, i, j)]));
                    worst =
                        std::max(worst, std::abs(r + R[t4(j, k, i, l)] + R[t4(k, i, j, l)]));
                }
    return worst / scale;
}

inline double contracted_bianchi_residual(const CurvatureBundle& b) {
    Mat4 gi{};
    for (int s = 0; s < 16; ++s) gi[s] = b.g_inv[s].value();
    double scale = 1.0 + frob(b.grad_ricci);
    double worst = 0.0;
    for (int j = 0; j < 4; ++j) {
        double div = 0.0;
        for (int m = 0; m < 4; ++m)
            for (int i = 0; i < 4; ++i) div += gi[m4(m, i)] * b.grad_ricci[t3(m, i, j)];
        const double ds = b.scalar.partial(j);
        worst = std::max(worst, std::abs(div - 0.5 * ds));
        scale = std::max(scale, 1.0 + std::abs(ds));
    }
    return worst / scale;
}

inline double weyl_trace_residual(const CurvatureBundle& b) {
    const Ten4 W = frame_transform(b.weyl, b.frame);
    const double scale = 1.0 + frob(W);
    double worst = 0.0;
    for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) {
            double tr13 = 0.0, tr14 = 0.0, tr12 = 0.0;
            for (int a = 0; a < 4; ++a) {
                tr13 += W[t4(a, j, a, l)];
                tr14 += W[t4(a, j, l, a)];
                tr12 += W[t4(a, a, j, l)];
            }
            worst = std::max({worst, std::abs(tr13), std::abs(tr14), std::abs(tr12)});
        }
    return worst / scale;
}

} // namespace testres
