#pragma once

// Curvature pipeline.  Conventions, fixed once and calibrated by tests:
//   R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y],
//   Riem(i,j,k,l) = g( R(d_i, d_j) d_k , d_l ),
//   ricci(i,j) = g^{ab} Riem(a,i,j,b)   (so the unit 4-sphere has ricci = 3 g
//   and hyperbolic H^4 has Ricci eigenvalue -3),
//   scalar = g^{ij} ricci(i,j).
// All derivatives come from metric jets; nothing in here differentiates
// numerically.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "curv4/chart.hpp"
#include "curv4/errors.hpp"
#include "curv4/ode.hpp"
#include "curv4/tensor.hpp"

namespace curv4 {

struct ChristoffelData {
    Mat4Jet g;
    Mat4Jet g_inv;
    std::array<Jet3, 64> gamma; // gamma[t3(k,i,j)] = Gamma^k_ij, order-2 jets
};

struct CurvatureBundle {
    Point4 point{};
    Mat4Jet g;
    Mat4Jet g_inv;
    std::array<Jet3, 64> gamma;
    std::array<Jet3, 256> riemann; // Riem(i,j,k,l), valid to order 1
    Mat4Jet ricci;                 // valid to order 1
    Jet3 scalar;                   // valid to order 1
    Ten3 grad_ricci{};             // (nabla_i ricci)(j,k) values
    Ten5 grad_riemann{};           // (nabla_m Riem)(i,j,k,l) values
    Ten4 weyl{};                   // values
    Mat4 frame{};                  // g-orthonormal frame columns
    double sqrt_det_g = 0.0;

    Ten4 riemann_values() const {
        Ten4 r;
        for (int s = 0; s < 256; ++s) r[s] = riemann[s].value();
        return r;
    }
    Mat4 ricci_values() const {
        Mat4 r;
        for (int s = 0; s < 16; ++s) r[s] = ricci[s].value();
        return r;
    }
};

inline ChristoffelData christoffel(const MetricChart& chart, const Point4& p) {
    if (auto reason = chart.why_invalid(p))
        throw GeometryError("christoffel: point outside chart domain: " + *reason);
    ChristoffelData out;
    out.g = chart.components(p);
    if (auto fail = positivity_failure(value_matrix(out.g)))
        throw GeometryError("christoffel: metric not positive definite at point (" +
                            std::to_string(p[0]) + ", " + std::to_string(p[1]) + ", " +
                            std::to_string(p[2]) + ", " + std::to_string(p[3]) + "): " + *fail);
    out.g_inv = invert4(out.g);

    std::array<Jet3, 64> dg; // dg[t3(d,i,j)] = d_d g_ij
    for (int d = 0; d < 4; ++d)
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                dg[t3(d, i, j)] = out.g[m4(i, j)].derivative(d);
                dg[t3(d, j, i)] = dg[t3(d, i, j)];
            }
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                Jet3 sum;
                for (int l = 0; l < 4; ++l)
                    sum += out.g_inv[m4(k, l)] *
                           (dg[t3(i, j, l)] + dg[t3(j, i, l)] - dg[t3(l, i, j)]);
                sum *= 0.5;
                out.gamma[t3(k, i, j)] = sum;
                out.gamma[t3(k, j, i)] = sum;
            }
    return out;
}

namespace geo_detail {

inline Ten4 weyl_from(const Mat4& g, const Mat4& ricci, double s, const Ten4& riem) {
    // Schouten tensor h and its Kulkarni-Nomizu product with g
    Mat4 h;
    for (int i = 0; i < 16; ++i) h[i] = 0.5 * (ricci[i] - s / 6.0 * g[i]);
    Ten4 w;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    w[t4(i, j, k, l)] = riem[t4(i, j, k, l)] -
                                        (h[m4(j, k)] * g[m4(i, l)] - h[m4(i, k)] * g[m4(j, l)] +
                                         g[m4(j, k)] * h[m4(i, l)] - g[m4(i, k)] * h[m4(j, l)]);
    return w;
}

} // namespace geo_detail

inline CurvatureBundle curvature_bundle(const MetricChart& chart, const Point4& p) {
    CurvatureBundle b;
    b.point = p;
    auto chr = christoffel(chart, p);
    b.g = std::move(chr.g);
    b.g_inv = std::move(chr.g_inv);
    b.gamma = std::move(chr.gamma);

    // Riem(i,j,k,l), antisymmetric in (i,j)
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                std::array<Jet3, 4> up{}; // component along d_u of R(d_i,d_j) d_k
                for (int u = 0; u < 4; ++u) {
                    Jet3 sum = b.gamma[t3(u, j, k)].derivative(i) -
                               b.gamma[t3(u, i, k)].derivative(j);
                    for (int m = 0; m < 4; ++m)
                        sum += b.gamma[t3(u, i, m)] * b.gamma[t3(m, j, k)] -
                               b.gamma[t3(u, j, m)] * b.gamma[t3(m, i, k)];
                    up[u] = sum;
                }
                for (int l = 0; l < 4; ++l) {
                    Jet3 low;
                    for (int u = 0; u < 4; ++u) low += b.g[m4(l, u)] * up[u];
                    b.riemann[t4(i, j, k, l)] = low;
                    b.riemann[t4(j, i, k, l)] = -low;
                }
            }

    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            Jet3 sum;
            for (int a = 0; a < 4; ++a)
                for (int c = 0; c < 4; ++c) sum += b.g_inv[m4(a, c)] * b.riemann[t4(a, i, j, c)];
            b.ricci[m4(i, j)] = sum;
            b.ricci[m4(j, i)] = sum;
        }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) b.scalar += b.g_inv[m4(i, j)] * b.ricci[m4(i, j)];

    // covariant derivatives, value slots only
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                double v = b.ricci[m4(j, k)].partial(i);
                for (int m = 0; m < 4; ++m)
                    v -= b.gamma[t3(m, i, j)].value() * b.ricci[m4(m, k)].value() +
                         b.gamma[t3(m, i, k)].value() * b.ricci[m4(j, m)].value();
                b.grad_ricci[t3(i, j, k)] = v;
            }
    for (int m = 0; m < 4; ++m)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) {
                        double v = b.riemann[t4(i, j, k, l)].partial(m);
                        for (int a = 0; a < 4; ++a)
                            v -= b.gamma[t3(a, m, i)].value() * b.riemann[t4(a, j, k, l)].value() +
                                 b.gamma[t3(a, m, j)].value() * b.riemann[t4(i, a, k, l)].value() +
                                 b.gamma[t3(a, m, k)].value() * b.riemann[t4(i, j, a, l)].value() +
                                 b.gamma[t3(a, m, l)].value() * b.riemann[t4(i, j, k, a)].value();
                        b.grad_riemann[t5(m, i, j, k, l)] = v;
                    }

    const Mat4 gv = value_matrix(b.g);
    b.weyl = geo_detail::weyl_from(gv, b.ricci_values(), b.scalar.value(), b.riemann_values());
    b.frame = orthonormal_frame(gv);
    b.sqrt_det_g = std::sqrt(det4(gv));
    return b;
}

/// Weyl tensor of the bundle (the pipeline route: Riemann minus the
/// Kulkarni-Nomizu product of the Schouten tensor with g).
inline Ten4 weyl_tensor(const CurvatureBundle& b) {
    return geo_detail::weyl_from(value_matrix(b.g), b.ricci_values(), b.scalar.value(),
                                 b.riemann_values());
}

/// Hodge star acting on the (i,j) pair of a 2-form-valued slot.
inline Ten4 star_left(const CurvatureBundle& b, const Ten4& T) {
    Mat4 gi{};
    for (int s = 0; s < 16; ++s) gi[s] = b.g_inv[s].value();
    Ten4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int a = 0; a < 4; ++a)
                        for (int bb = 0; bb < 4; ++bb) {
                            const int e = eps4(i, j, a, bb);
                            if (!e) continue;
                            for (int c = 0; c < 4; ++c)
                                for (int d = 0; d < 4; ++d)
                                    s += e * gi[m4(a, c)] * gi[m4(bb, d)] * T[t4(c, d, k, l)];
                        }
                    out[t4(i, j, k, l)] = 0.5 * b.sqrt_det_g * s;
                }
    return out;
}

inline Ten4 star_right(const CurvatureBundle& b, const Ten4& T) {
    Mat4 gi{};
    for (int s = 0; s < 16; ++s) gi[s] = b.g_inv[s].value();
    Ten4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int a = 0; a < 4; ++a)
                        for (int bb = 0; bb < 4; ++bb) {
                            const int e = eps4(k, l, a, bb);
                            if (!e) continue;
                            for (int c = 0; c < 4; ++c)
                                for (int d = 0; d < 4; ++d)
                                    s += e * gi[m4(a, c)] * gi[m4(bb, d)] * T[t4(i, j, c, d)];
                        }
                    out[t4(i, j, k, l)] = 0.5 * b.sqrt_det_g * s;
                }
    return out;
}

/// Self-dual / anti-self-dual parts of the Weyl tensor under the coordinate
/// orientation: W± = P± W P± with P± = (1 ± star)/2 on both 2-form slots.
inline std::pair<Ten4, Ten4> weyl_selfdual_split(const CurvatureBundle& b) {
    const Ten4& w = b.weyl;
    const Ten4 sw = star_left(b, w);
    const Ten4 ws = star_right(b, w);
    const Ten4 sws = star_right(b, sw);
    Ten4 plus, minus;
    for (int s = 0; s < 256; ++s) {
        plus[s] = 0.25 * (w[s] + sw[s] + ws[s] + sws[s]);
        minus[s] = 0.25 * (w[s] - sw[s] - ws[s] + sws[s]);
    }
    return {plus, minus};
}

/// Jacobi operator package along a g-unit direction, stored in the components
/// of the bundle's orthonormal frame (so self-adjointness reads as matrix
/// symmetry and the Frobenius norm is basis-independent).
struct JacobiPackage {
    Vec4 direction{};       // coordinate components of X
    Vec4 direction_frame{}; // frame components of X
    Mat4 lambda{};          // lambda_X
    Mat4 lambda_prime{};    // lambda'_X = (nabla_X R)(., X, X)
    Mat4 commutator{};      // L_X = lambda'_X lambda_X - lambda_X lambda'_X
};

inline JacobiPackage jacobi_package(const CurvatureBundle& b, const Vec4& X) {
    double gxx = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) gxx += b.g[m4(i, j)].value() * X[i] * X[j];
    if (std::abs(gxx - 1.0) > 1e-12)
        throw ArgumentError("jacobi_package: direction is not g-unit (g(X,X) = " +
                            std::to_string(gxx) + ")");

    // lowered operators: lam(i,j) = Riem(j,a,b,i) X^a X^b (symmetric by pair symmetry)
    Mat4 lam_low{}, lamp_low{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s1 = 0.0, s2 = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int bb = 0; bb < 4; ++bb) {
                    const double xab = X[a] * X[bb];
                    if (xab == 0.0) continue;
                    s1 += b.riemann[t4(j, a, bb, i)].value() * xab;
                    for (int m = 0; m < 4; ++m)
                        s2 += b.grad_riemann[t5(m, j, a, bb, i)] * X[m] * xab;
                }
            lam_low[m4(i, j)] = s1;
            lamp_low[m4(i, j)] = s2;
        }

    JacobiPackage out;
    out.direction = X;
    out.lambda = frame_transform(lam_low, b.frame);
    out.lambda_prime = frame_transform(lamp_low, b.frame);
    for (int a = 0; a < 4; ++a) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s += b.frame[m4(i, a)] * b.g[m4(i, j)].value() * X[j];
        out.direction_frame[a] = s;
    }
    for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) {
            double s = 0.0;
            for (int m = 0; m < 4; ++m)
                s += out.lambda_prime[m4(a, m)] * out.lambda[m4(m, c)] -
                     out.lambda[m4(a, m)] * out.lambda_prime[m4(m, c)];
            out.commutator[m4(a, c)] = s;
        }
    return out;
}

struct RicciSpectrum {
    std::array<double, 4> eigenvalues{}; // descending
    std::vector<int> multiplicity;       // cluster sizes, e.g. {2,1,1}
};

inline constexpr double kEigenClusterTol = 1e-6;

inline RicciSpectrum ricci_spectrum(const CurvatureBundle& b) {
    // frame components of the Ricci operator = symmetric matrix similar to g^{-1} ricci
    const Mat4 rho_frame = frame_transform(b.ricci_values(), b.frame);
    RicciSpectrum out;
    out.eigenvalues = sym_eigenvalues4(rho_frame);
    double scale = 1.0;
    for (double r : out.eigenvalues) scale = std::max(scale, 1.0 + std::abs(r));
    const double tol = kEigenClusterTol * scale;
    int run = 1;
    for (int i = 1; i < 4; ++i) {
        if (std::abs(out.eigenvalues[i] - out.eigenvalues[i - 1]) <= tol) {
            ++run;
        } else {
            out.multiplicity.push_back(run);
            run = 1;
        }
    }
    out.multiplicity.push_back(run);
    // pattern as a multiset: largest cluster first
    std::sort(out.multiplicity.begin(), out.multiplicity.end(), std::greater<int>());
    return out;
}

} // namespace curv4
