#pragma once

// Independent cross-checks.  Nothing in this header shares code with the
// pipeline paths it verifies: partials come from central differences of the
// chart evaluator, the Weyl tensor is assembled index by index from the
// explicit Ricci/scalar subtraction, and the diagonal-metric curvature
// components are evaluated directly from the log-coefficient jets.

#include <array>
#include <cmath>
#include <functional>

#include "curv4/chart.hpp"
#include "curv4/errors.hpp"
#include "curv4/tensor.hpp"

namespace curv4::oracle {

/// Central-difference mixed partial of one metric component, second order in
/// the step; one Richardson level when `richardson` is set.  Third-order
/// stencils divide by h^3, so the Richardson pair runs on a widened base step
/// where rounding cancellation and truncation balance; below that the
/// extrapolated value would sit on the double-precision noise floor.
inline double fd_metric_partial(const MetricChart& chart, const Point4& p, int row, int col,
                                std::array<int, 4> alpha, double step = 1e-3,
                                bool richardson = false) {
    int total = alpha[0] + alpha[1] + alpha[2] + alpha[3];
    if (total > 3) throw ArgumentError("fd_metric_partial: order above 3");
    const double h = richardson && total == 3 ? 4.0 * step : step;
    for (int d = 0; d < 4; ++d) {
        Point4 probe = p;
        probe[d] += 4.0 * h * (alpha[d] + 1);
        if (!chart.valid(probe)) throw ArgumentError("fd_metric_partial: stencil margin violated");
        probe[d] = p[d] - 4.0 * h * (alpha[d] + 1);
        if (!chart.valid(probe)) throw ArgumentError("fd_metric_partial: stencil margin violated");
    }

    std::function<double(Point4, std::array<int, 4>, double)> rec =
        [&](Point4 q, std::array<int, 4> a, double hh) -> double {
        for (int d = 0; d < 4; ++d) {
            if (a[d] == 0) continue;
            --a[d];
            Point4 qp = q, qm = q;
            qp[d] += hh;
            qm[d] -= hh;
            return (rec(qp, a, hh) - rec(qm, a, hh)) / (2.0 * hh);
        }
        return chart.components(q)[m4(row, col)].value();
    };
    if (!richardson) return rec(p, alpha, h);
    const double fine = rec(p, alpha, h);
    const double coarse = rec(p, alpha, 2.0 * h);
    return (4.0 * fine - coarse) / 3.0;
}

/// Weyl tensor assembled directly from the explicit decomposition of a
/// conformally flat curvature tensor: W = R - [ -s/6 (g.g) + 1/2 (ricci.g) ]
/// written out term by term in the slot order Riem(i,j,k,l) = R(X_i,X_j,X_k,X_l).
inline Ten4 brute_force_weyl(const Ten4& riem, const Mat4& ricci, double s, const Mat4& g) {
    Ten4 w{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    const double gterm =
                        -(s / 6.0) * (g[m4(j, k)] * g[m4(i, l)] - g[m4(i, k)] * g[m4(j, l)]);
                    const double rterm =
                        0.5 * (ricci[m4(j, k)] * g[m4(i, l)] - ricci[m4(i, k)] * g[m4(j, l)] +
                               g[m4(j, k)] * ricci[m4(i, l)] - g[m4(i, k)] * ricci[m4(j, l)]);
                    w[t4(i, j, k, l)] = riem[t4(i, j, k, l)] - gterm - rterm;
                }
    return w;
}

/// Log-coefficients nu_s = ln(mu_s) of a diagonal metric, as jets.
inline std::array<Jet3, 4> log_coefficients(const Mat4Jet& g) {
    std::array<Jet3, 4> nu;
    for (int s = 0; s < 4; ++s) nu[s] = 0.5 * log(g[m4(s, s)]);
    return nu;
}

/// Diagonal-metric curvature component R^i_{jij} (the component of
/// R(X_i, X_j) X_j along X_i) from the nu-jets alone.
inline double diag_R_jij(const Mat4Jet& g, const std::array<Jet3, 4>& nu, int i, int j, int k,
                         int l) {
    const double mu2_i = g[m4(i, i)].value(), mu2_j = g[m4(j, j)].value();
    const double mu2_k = g[m4(k, k)].value(), mu2_l = g[m4(l, l)].value();
    const double term_j = (nu[i].partial(j) * nu[j].partial(j) - nu[i].partial(j) * nu[i].partial(j) -
                           nu[i].partial(j, j)) / mu2_j;
    const double term_i = (nu[j].partial(i) * nu[i].partial(i) - nu[j].partial(i) * nu[j].partial(i) -
                           nu[j].partial(i, i)) / mu2_i;
    const double term_k = nu[i].partial(k) * nu[j].partial(k) / mu2_k;
    const double term_l = nu[i].partial(l) * nu[j].partial(l) / mu2_l;
    return mu2_j * (term_j + term_i - term_k - term_l);
}

/// Diagonal-metric component R^i_{kij} (the component of R(X_i, X_j) X_k
/// along X_i) from the nu-jets alone.
inline double diag_R_kij(const std::array<Jet3, 4>& nu, int i, int j, int k) {
    return -nu[i].partial(j, k) + nu[i].partial(j) * nu[j].partial(k) +
           nu[i].partial(k) * nu[k].partial(j) - nu[i].partial(j) * nu[i].partial(k);
}

} // namespace curv4::oracle
