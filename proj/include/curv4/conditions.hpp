#pragma once

// Residual functionals for the geometric conditions that define the
// classified families: conformal flatness, the Cotton identity, the Q-space
// equation in both of its algebraically identical forms, the P-space
// condition as a Jacobi commutator and as the quadratic Ricci identity, the
// Codazzi / Killing / parallel-Ricci classes, the Staeckel system on diagonal
// charts, and the diagonal-chart reformulations of conformal flatness and the
// P-condition.
//
// Every residual except the Staeckel one is relative: the raw maximum is
// divided by (1 + magnitude of the dominant term), so families with very
// different curvature scales can share thresholds.  The Staeckel residual is
// reported raw; its natural scale is the log-derivative of the metric.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "curv4/geometry.hpp"
#include "curv4/rng.hpp"

namespace curv4 {

struct ResidualSet {
    double weyl_norm = 0.0;
    double cotton = 0.0;
    double q_general = 0.0;
    double q_explicit = 0.0;
    double p_commutator = 0.0;
    double p_quadratic = 0.0;
    double codazzi = 0.0;
    double killing = 0.0;
    double nabla_ricci = 0.0;
    std::optional<double> stackel;
    std::optional<double> d1;
    std::optional<double> p1;
};

/// Shared direction samples for the P-condition statistics.  The raw vectors
/// are drawn once per run from the seed and get g-normalized per point, so
/// every grid point sees the same set and results do not depend on
/// evaluation order.
struct DirectionSet {
    std::vector<Vec4> raw_directions;       // 16 raw vectors
    std::vector<std::array<Vec4, 4>> raw_frames; // 8 raw frames for the quadratic form

    static DirectionSet make(std::uint64_t seed) {
        DirectionSet ds;
        SplitMix64 rng(seed);
        auto draw = [&rng]() {
            Vec4 v{};
            double n2 = 0.0;
            do {
                n2 = 0.0;
                for (auto& c : v) {
                    c = rng.uniform(-1.0, 1.0);
                    n2 += c * c;
                }
            } while (n2 < 0.1);
            return v;
        };
        for (int i = 0; i < 16; ++i) ds.raw_directions.push_back(draw());
        for (int f = 0; f < 8; ++f)
            ds.raw_frames.push_back({draw(), draw(), draw(), draw()});
        return ds;
    }
};

namespace cond_detail {

inline double g_inner(const Mat4& g, const Vec4& a, const Vec4& b) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += g[m4(i, j)] * a[i] * b[j];
    return s;
}

/// Gram-Schmidt against g; returns false when the input is too degenerate.
inline bool gs_orthonormalize(std::array<Vec4, 4>& v, const Mat4& g) {
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < i; ++j) {
            const double c = g_inner(g, v[i], v[j]);
            for (int d = 0; d < 4; ++d) v[i][d] -= c * v[j][d];
        }
        const double n2 = g_inner(g, v[i], v[i]);
        if (n2 < 1e-8) return false;
        const double inv = 1.0 / std::sqrt(n2);
        for (int d = 0; d < 4; ++d) v[i][d] *= inv;
    }
    return true;
}

struct FrameData {
    Ten3 grad_ricci;  // frame components
    Mat4 ricci;
    Vec4 ds;
    double norm_grad_ricci;
    double norm_ricci;
};

inline FrameData frame_data(const CurvatureBundle& b) {
    FrameData f;
    f.grad_ricci = frame_transform(b.grad_ricci, b.frame);
    f.ricci = frame_transform(b.ricci_values(), b.frame);
    for (int a = 0; a < 4; ++a) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i) s += b.frame[m4(i, a)] * b.scalar.partial(i);
        f.ds[a] = s;
    }
    f.norm_grad_ricci = frob(f.grad_ricci);
    f.norm_ricci = frob(f.ricci);
    return f;
}

} // namespace cond_detail

/// ||W|| over (1 + ||R||), both in orthonormal-frame components.
inline double weyl_norm_residual(const CurvatureBundle& b) {
    const Ten4 W = frame_transform(b.weyl, b.frame);
    const Ten4 R = frame_transform(b.riemann_values(), b.frame);
    return frob(W) / (1.0 + frob(R));
}

/// Q-space residuals: the general n=4 form of the defining equation and its
/// explicitly evaluated right-hand side.  The two are the same identity
/// arranged differently and must agree to rounding.
inline std::pair<double, double> q_residual(const CurvatureBundle& b) {
    const auto f = cond_detail::frame_data(b);
    const double norm = 1.0 + f.norm_grad_ricci;
    double general = 0.0, explicit_form = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) {
                const double dr = f.grad_ricci[t3(a, c, d)];
                const double dcd = c == d ? 1.0 : 0.0;
                const double dac = a == c ? 1.0 : 0.0;
                const double dad = a == d ? 1.0 : 0.0;
                const double lhs = dr - (1.0 / 6.0) * f.ds[a] * dcd;
                const double sym = f.ds[a] * dcd + f.ds[c] * dad + f.ds[d] * dac;
                general = std::max(general, std::abs(lhs - sym / 18.0));
                const double expl = dr - (2.0 / 9.0) * f.ds[a] * dcd -
                                    (1.0 / 18.0) * f.ds[c] * dad - (1.0 / 18.0) * f.ds[d] * dac;
                explicit_form = std::max(explicit_form, std::abs(expl));
            }
    return {general / norm, explicit_form / norm};
}

/// Cotton identity residual (the consequence of W = 0 in dimension 4).
inline double cotton_residual(const CurvatureBundle& b) {
    const auto f = cond_detail::frame_data(b);
    const double norm = 1.0 + f.norm_grad_ricci;
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) {
                const double lhs = f.grad_ricci[t3(a, c, d)] - f.grad_ricci[t3(c, a, d)];
                const double rhs = (1.0 / 6.0) * (f.ds[a] * (c == d ? 1.0 : 0.0) -
                                                  f.ds[c] * (a == d ? 1.0 : 0.0));
                worst = std::max(worst, std::abs(lhs - rhs));
            }
    return worst / norm;
}

/// Codazzi, Killing and parallel-Ricci residuals.
inline std::array<double, 3> class_residuals(const CurvatureBundle& b) {
    const auto f = cond_detail::frame_data(b);
    double codazzi = 0.0, killing = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) {
                codazzi = std::max(codazzi, std::abs(f.grad_ricci[t3(a, c, d)] -
                                                     f.grad_ricci[t3(c, a, d)]));
                killing = std::max(killing,
                                   std::abs(f.grad_ricci[t3(a, c, d)] + f.grad_ricci[t3(c, d, a)] +
                                            f.grad_ricci[t3(d, a, c)]));
            }
    const double norm = 1.0 + f.norm_grad_ricci;
    return {codazzi / norm, killing / norm, f.norm_grad_ricci / (1.0 + f.norm_ricci)};
}

/// P-space residuals: the worst normalized Jacobi commutator over the
/// direction set, and the worst value of the quadratic Ricci identity over
/// orthonormal 4-tuples (all permutations of the chart frame plus the seeded
/// random frames).
inline std::pair<double, double> p_residual(const CurvatureBundle& b, const DirectionSet& dirs) {
    const Mat4 g = value_matrix(b.g);

    double commutator = 0.0;
    std::vector<Vec4> directions;
    for (int i = 0; i < 4; ++i) {
        Vec4 v{};
        v[i] = 1.0;
        directions.push_back(v);
    }
    for (const auto& v : dirs.raw_directions) directions.push_back(v);
    for (Vec4 v : directions) {
        const double n = std::sqrt(cond_detail::g_inner(g, v, v));
        for (auto& c : v) c /= n;
        // renormalize once more against rounding so the package precondition holds
        const double n2 = cond_detail::g_inner(g, v, v);
        for (auto& c : v) c /= std::sqrt(n2);
        const auto jp = jacobi_package(b, v);
        const double denom = 1.0 + frob(jp.lambda) * frob(jp.lambda_prime);
        commutator = std::max(commutator, frob(jp.commutator) / denom);
    }

    const auto f = cond_detail::frame_data(b);
    const double qnorm = 1.0 + f.norm_ricci * f.norm_grad_ricci;
    const Mat4 rho = b.ricci_values();
    const Ten3& dr = b.grad_ricci;

    auto rho_of = [&](const Vec4& a, const Vec4& c) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s += rho[m4(i, j)] * a[i] * c[j];
        return s;
    };
    auto drho_of = [&](const Vec4& x, const Vec4& a, const Vec4& c) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) s += dr[t3(i, j, k)] * x[i] * a[j] * c[k];
        return s;
    };

    std::vector<std::array<Vec4, 4>> frames;
    {
        std::array<Vec4, 4> chart_frame;
        for (int a = 0; a < 4; ++a)
            for (int i = 0; i < 4; ++i) chart_frame[a][i] = b.frame[m4(i, a)];
        frames.push_back(chart_frame);
    }
    for (auto raw : dirs.raw_frames)
        if (cond_detail::gs_orthonormalize(raw, g)) frames.push_back(raw);

    double quadratic = 0.0;
    int perm[4] = {0, 1, 2, 3};
    for (const auto& fr : frames) {
        std::sort(perm, perm + 4);
        do {
            const Vec4 &X = fr[perm[0]], &Y = fr[perm[1]], &Z = fr[perm[2]], &U = fr[perm[3]];
            const double v = (rho_of(Y, Y) - rho_of(Z, Z)) * drho_of(X, Y, Z) +
                             (drho_of(X, Z, Z) - drho_of(X, Y, Y)) * rho_of(Y, Z) +
                             rho_of(Y, U) * drho_of(X, Z, U) - rho_of(Z, U) * drho_of(X, Y, U);
            quadratic = std::max(quadratic, std::abs(v));
        } while (std::next_permutation(perm, perm + 4));
    }
    return {commutator, quadratic / qnorm};
}

/// Staeckel-system residual of a diagonal chart, reported raw.
inline double stackel_residual(const MetricChart& chart, const Point4& p) {
    if (!chart.diagonal)
        throw ArgumentError("stackel_residual: chart '" + chart.name + "' is not diagonal");
    const Mat4Jet g = chart.components(p);
    std::array<Jet3, 4> nu;
    for (int s = 0; s < 4; ++s) nu[s] = 0.5 * log(g[m4(s, s)]);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            worst = std::max(worst,
                             std::abs(nu[i].partial(i, j) + 2.0 * nu[i].partial(j) * nu[j].partial(i)));
            for (int k = 0; k < 4; ++k) {
                if (k == i || k == j) continue;
                worst = std::max(worst, std::abs(nu[i].partial(j) * nu[j].partial(k) +
                                                 nu[i].partial(k) * nu[k].partial(j) -
                                                 nu[i].partial(j) * nu[i].partial(k)));
                worst = std::max(worst, std::abs(nu[i].partial(j, k)));
            }
        }
    return worst;
}

/// Conformal-flatness identity of a two-surface warped product whose base
/// occupies coordinates (x3, x4) and whose leaf metric is f^2 times a surface
/// of curvature K_N:
///     K_N / f^2 + (lap f) / f - |grad f|^2 / f^2 + K = 0,
/// with the Laplacian and gradient taken in the base block and K the base
/// curvature.  Everything comes from the bundle's jets plus the warp f^2.
inline double warped_product_lcf_residual(const CurvatureBundle& b, const Jet3& f2, double K_N) {
    const Jet3 f = sqrt(f2);
    const Jet3 g22 = b.g[m4(2, 2)], g23 = b.g[m4(2, 3)], g33 = b.g[m4(3, 3)];
    const Jet3 det = g22 * g33 - g23 * g23;
    const Jet3 sq = sqrt(det);
    const Jet3 iu22 = g33 / det, iu33 = g22 / det, iu23 = -1.0 * (g23 / det);
    const Jet3 df2 = f.derivative(2), df3 = f.derivative(3);
    const Jet3 grad2 = iu22 * df2 * df2 + 2.0 * iu23 * df2 * df3 + iu33 * df3 * df3;
    const Jet3 flux2 = sq * (iu22 * df2 + iu23 * df3);
    const Jet3 flux3 = sq * (iu23 * df2 + iu33 * df3);
    const double lap = (flux2.derivative(2).value() + flux3.derivative(3).value()) / sq.value();
    const double K = b.riemann[t4(2, 3, 3, 2)].value() / det.value();
    const double a1 = K_N / f2.value();
    const double a2 = lap / f.value();
    const double a3 = grad2.value() / f2.value();
    const double resid = a1 + a2 - a3 + K;
    const double scale = 1.0 + std::abs(a1) + std::abs(a2) + std::abs(a3) + std::abs(K);
    return std::abs(resid) / scale;
}

struct DiagonalChecks {
    bool applicable = false;
    std::string reason;
    double d1 = 0.0;
    double p1 = 0.0;
};

/// Diagonal-chart reformulations: the cross-pairing curvature identity that
/// characterizes conformal flatness, and the eigenvalue-derivative identity
/// characterizing the P-condition.  Only meaningful on Staeckel charts with
/// distinct Ricci eigenvalues.
inline DiagonalChecks diagonal_condition_checks(const MetricChart& chart, const Point4& p,
                                                double stackel_threshold = 1e-6) {
    DiagonalChecks out;
    if (!chart.diagonal) {
        out.reason = "chart is not diagonal";
        return out;
    }
    if (stackel_residual(chart, p) >= stackel_threshold) {
        out.reason = "Staeckel residual above threshold";
        return out;
    }
    const CurvatureBundle b = curvature_bundle(chart, p);

    // eigenvalue jets: the coordinate frame diagonalizes the Ricci operator here
    std::array<Jet3, 4> r;
    for (int i = 0; i < 4; ++i) r[i] = b.ricci[m4(i, i)] / b.g[m4(i, i)];
    double rmax = 0.0;
    for (int i = 0; i < 4; ++i) rmax = std::max(rmax, std::abs(r[i].value()));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(r[i].value() - r[j].value()) <= kEigenClusterTol * (1.0 + rmax)) {
                out.reason = "Ricci eigenvalues not distinct at point";
                return out;
            }
    out.applicable = true;

    // sectional-style frame components K_ab
    Mat4 K{};
    for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c)
            if (a != c)
                K[m4(a, c)] = b.riemann[t4(a, c, c, a)].value() /
                              (b.g[m4(a, a)].value() * b.g[m4(c, c)].value());
    const double s01 = K[m4(0, 1)] + K[m4(2, 3)];
    const double s02 = K[m4(0, 2)] + K[m4(1, 3)];
    const double s03 = K[m4(0, 3)] + K[m4(1, 2)];
    double kmax = 0.0;
    for (double v : {s01, s02, s03}) kmax = std::max(kmax, std::abs(v));
    out.d1 = std::max({std::abs(s01 - s02), std::abs(s01 - s03), std::abs(s02 - s03)}) /
             (1.0 + kmax);

    std::array<Jet3, 4> nu;
    for (int s = 0; s < 4; ++s) nu[s] = 0.5 * log(b.g[m4(s, s)]);
    double scale = 1.0, worst = 0.0;
    for (int i = 0; i < 4; ++i) scale = std::max(scale, 1.0 + std::abs(r[i].partial(i)));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            const double xi_ri = r[i].partial(i);
            const double xi_rj = r[j].partial(i);
            const double rhs = 4.0 * (r[i].value() - r[j].value()) * nu[j].partial(i);
            worst = std::max(worst, std::abs((2.0 / 3.0) * xi_ri - xi_rj));
            worst = std::max(worst, std::abs(xi_rj - rhs));
        }
    out.p1 = worst / scale;
    return out;
}

/// Full residual set of one chart at one point.
inline ResidualSet evaluate_residuals(const MetricChart& chart, const CurvatureBundle& b,
                                      const DirectionSet& dirs) {
    ResidualSet r;
    r.weyl_norm = weyl_norm_residual(b);
    r.cotton = cotton_residual(b);
    std::tie(r.q_general, r.q_explicit) = q_residual(b);
    std::tie(r.p_commutator, r.p_quadratic) = p_residual(b, dirs);
    const auto cls = class_residuals(b);
    r.codazzi = cls[0];
    r.killing = cls[1];
    r.nabla_ricci = cls[2];
    if (chart.diagonal) {
        r.stackel = stackel_residual(chart, b.point);
        const auto diag = diagonal_condition_checks(chart, b.point);
        if (diag.applicable) {
            r.d1 = diag.d1;
            r.p1 = diag.p1;
        }
    }
    return r;
}

} // namespace curv4
