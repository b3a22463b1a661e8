#pragma once

// The classified metric families: constructors with parameter validation,
// profile solving, and closed-form Ricci-eigenvalue oracles.
//
// Families I..IX are the conformally flat P-space types (III2 is the variant
// whose warp profile solves the second-order equation that upgrades the chart
// to the Q class), S1..S10 instantiate the ten separable diagonal solutions
// of the Staeckel system with recorded default profile functions, and
// R2a/R2b/R2c are the parallel-Ricci warp profiles.
//
// Coordinate layout: warped families put the leaf on the leading coordinates
// and the base on the trailing ones (III*: base x1; IV/V: base (x3,x4)).

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curv4/chart.hpp"
#include "curv4/errors.hpp"
#include "curv4/profile.hpp"
#include "curv4/tensor.hpp"

namespace curv4::catalog {

enum class Family {
    I, II, III1, III2, IV, V, VI, VII, VIII, IX,
    S1, S2, S3, S4, S5, S6, S7, S8, S9, S10,
    R2a, R2b, R2c,
};

inline const std::vector<std::pair<Family, const char*>>& family_names() {
    static const std::vector<std::pair<Family, const char*>> names = {
        {Family::I, "I"},     {Family::II, "II"},   {Family::III1, "III1"},
        {Family::III2, "III2"}, {Family::IV, "IV"}, {Family::V, "V"},
        {Family::VI, "VI"},   {Family::VII, "VII"}, {Family::VIII, "VIII"},
        {Family::IX, "IX"},   {Family::S1, "S1"},   {Family::S2, "S2"},
        {Family::S3, "S3"},   {Family::S4, "S4"},   {Family::S5, "S5"},
        {Family::S6, "S6"},   {Family::S7, "S7"},   {Family::S8, "S8"},
        {Family::S9, "S9"},   {Family::S10, "S10"}, {Family::R2a, "R2a"},
        {Family::R2b, "R2b"}, {Family::R2c, "R2c"},
    };
    return names;
}

inline std::string family_name(Family f) {
    for (const auto& [fam, name] : family_names())
        if (fam == f) return name;
    return "?";
}

inline std::optional<Family> family_from_name(const std::string& s) {
    for (const auto& [fam, name] : family_names())
        if (s == name) return fam;
    return std::nullopt;
}

inline std::vector<Family> all_families() {
    std::vector<Family> out;
    for (const auto& [fam, name] : family_names()) out.push_back(fam);
    return out;
}

using Box4 = std::array<std::array<double, 2>, 4>;

struct FamilySpec {
    Family family = Family::I;
    std::map<std::string, double> params;
    std::map<std::string, ProfileExpr> profiles;
    Box4 box{};
    std::array<int, 4> grid_counts{5, 5, 5, 5};
    double grid_margin = 0.05;
    double satisfied_tol = 1e-7;
    double violated_tol = 1e-4;
    double ode_tol = 1e-10;
};

struct BuiltFamily {
    FamilySpec spec;
    MetricChart chart;
    std::function<std::optional<std::array<double, 4>>(const Point4&)> closed_eigenvalues =
        [](const Point4&) { return std::nullopt; };
};

namespace detail {

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw ConstructionError(msg);
}

inline double param(const FamilySpec& s, const std::string& name) {
    auto it = s.params.find(name);
    if (it == s.params.end())
        throw ConstructionError("family " + family_name(s.family) + " needs parameter '" +
                                name + "'");
    return it->second;
}

inline double param_or(const FamilySpec& s, const std::string& name, double fallback) {
    auto it = s.params.find(name);
    return it == s.params.end() ? fallback : it->second;
}

inline const ProfileExpr& profile(const FamilySpec& s, const std::string& name) {
    auto it = s.profiles.find(name);
    if (it == s.profiles.end())
        throw ConstructionError("family " + family_name(s.family) + " needs profile '" +
                                name + "'");
    return it->second;
}

/// Scans fn over the margin-shrunk interval; returns the first x where fn
/// reports a violation.
inline std::optional<std::pair<double, std::string>> axis_scan(
    std::array<double, 2> range, double margin,
    const std::function<std::optional<std::string>(double)>& fn, int n = 65) {
    const double w = range[1] - range[0];
    const double lo = range[0] + margin * w, hi = range[1] - margin * w;
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * i / (n - 1.0);
        if (auto bad = fn(x)) return std::make_pair(x, *bad);
    }
    return std::nullopt;
}

inline void scan_or_throw(const FamilySpec& s, int axis,
                          const std::function<std::optional<std::string>(double)>& fn) {
    if (auto bad = axis_scan(s.box[axis], s.grid_margin, fn))
        throw ConstructionError("family " + family_name(s.family) + ": " + bad->second +
                                " at x" + std::to_string(axis + 1) + " = " +
                                std::to_string(bad->first));
}

inline std::optional<std::string> outside_box(const Box4& box, const Point4& p) {
    for (int d = 0; d < 4; ++d) {
        const double slack = 1e-9 * (1.0 + std::abs(box[d][1] - box[d][0]));
        if (p[d] < box[d][0] - slack || p[d] > box[d][1] + slack)
            return "coordinate x" + std::to_string(d + 1) + " outside the declared box";
    }
    return std::nullopt;
}

/// Conformal factor of the constant-curvature 3-space on coords (1,2,3).
inline Jet3 conf3_factor(double K_N, const std::array<Jet3, 4>& x) {
    const Jet3 w = 1.0 + (K_N / 4.0) * (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
    return reciprocal(w * w);
}

/// Conformal factor of a constant-curvature surface on two coordinates.
inline Jet3 conf2_factor(double k, const Jet3& u, const Jet3& v) {
    const Jet3 w = 1.0 + (k / 4.0) * (u * u + v * v);
    return reciprocal(w * w);
}

inline std::optional<std::string> conf_radius_bad(double k, double r2) {
    if (1.0 + (k / 4.0) * r2 < 0.05) return std::string("conformal factor near its pole");
    return std::nullopt;
}

inline std::array<double, 4> sorted_desc(std::array<double, 4> v) {
    std::sort(v.begin(), v.end(), [](double a, double b) { return a > b; });
    return v;
}

/// Coarse positive-definiteness sweep over the declared box.
inline void verify_positive_definite(const MetricChart& chart, const FamilySpec& s) {
    std::array<std::array<double, 3>, 4> samples;
    for (int d = 0; d < 4; ++d) {
        const double w = s.box[d][1] - s.box[d][0];
        samples[d] = {s.box[d][0] + s.grid_margin * w, s.box[d][0] + 0.5 * w,
                      s.box[d][1] - s.grid_margin * w};
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    const Point4 p{samples[0][i], samples[1][j], samples[2][k], samples[3][l]};
                    if (!chart.valid(p)) continue;
                    if (auto bad = positivity_failure(value_matrix(chart.components(p))))
                        throw ConstructionError(
                            "family " + family_name(s.family) +
                            ": metric not positive definite on the box: " + *bad);
                }
}

// ------------------------------------------------------------------
// warped product of a 1-dimensional base (x1) with a 3-space form
// ------------------------------------------------------------------

struct WarpProfile {
    // f as a jet in x1 plus plain values of (f, f', f'') for the eigenvalue oracle
    std::function<Jet3(double)> f_jet;
    std::function<std::array<double, 3>(double)> f_derivs;
};

inline BuiltFamily make_warped_b1n3(FamilySpec spec, double K_N, const WarpProfile& wp,
                                    const std::string& chart_name) {
    MetricChart c;
    c.name = chart_name;
    c.diagonal = true;
    const Box4 box = spec.box;
    auto f_jet = wp.f_jet;
    c.components = [f_jet, K_N](const Point4& p) {
        auto x = point_jets(p);
        const Jet3 f = f_jet(p[0]);
        const Jet3 w = f * f * conf3_factor(K_N, x);
        return diagonal_metric({Jet3(1.0), w, w, w});
    };
    c.invalid_reason = [box, K_N, f_jet](const Point4& p) -> std::optional<std::string> {
        if (auto bad = outside_box(box, p)) return bad;
        if (auto bad = conf_radius_bad(K_N, p[1] * p[1] + p[2] * p[2] + p[3] * p[3])) return bad;
        return std::nullopt;
    };

    BuiltFamily out;
    out.spec = std::move(spec);
    out.chart = std::move(c);
    auto f_derivs = wp.f_derivs;
    out.closed_eigenvalues = [f_derivs, K_N](const Point4& p) -> std::optional<std::array<double, 4>> {
        const auto fd = f_derivs(p[0]);
        const double f = fd[0], fp = fd[1], fpp = fd[2];
        const double leaf = 2.0 * K_N / (f * f) - 2.0 * (fp / f) * (fp / f) - fpp / f;
        const double base = -3.0 * fpp / f;
        return sorted_desc({leaf, leaf, leaf, base});
    };
    return out;
}

inline WarpProfile warp_from_expr(const ProfileExpr& f) {
    WarpProfile wp;
    wp.f_jet = [f](double x) { return f.eval(Jet3::variable(x, 0)); };
    wp.f_derivs = [f](double x) {
        const Jet3 j = f.eval(Jet3::variable(x, 0));
        return std::array<double, 3>{j.value(), j.partial(0), j.partial(0, 0)};
    };
    return wp;
}

// ------------------------------------------------------------------
// separable products of |x_i - x_j| factors (families VII/VIII/IX and
// their Staeckel counterparts S8/S9/S10)
// ------------------------------------------------------------------

inline void check_ranges_separated(const FamilySpec& s, const std::vector<int>& axes) {
    for (std::size_t a = 0; a < axes.size(); ++a)
        for (std::size_t b = a + 1; b < axes.size(); ++b) {
            const auto &ra = s.box[axes[a]], &rb = s.box[axes[b]];
            const double gap = std::max(ra[0], rb[0]) - std::min(ra[1], rb[1]);
            require(gap > 0.05, "family " + family_name(s.family) + ": coordinate ranges x" +
                                    std::to_string(axes[a] + 1) + " and x" +
                                    std::to_string(axes[b] + 1) +
                                    " must be separated (coincidence locus x_i = x_j)");
        }
}

inline void check_poly_positive(const FamilySpec& s, const ProfileExpr& P,
                                const std::vector<int>& axes) {
    for (int axis : axes)
        scan_or_throw(s, axis, [&P](double x) -> std::optional<std::string> {
            if (P.eval(x) < 1e-9) return "polynomial P not positive on the box";
            return std::nullopt;
        });
}

/// Sign of prod_{j != i} (x_i - x_j) on separated ranges, from the centers.
inline double numerator_sign(const FamilySpec& s, int axis, const std::vector<int>& axes) {
    double sign = 1.0;
    const double ci = 0.5 * (s.box[axis][0] + s.box[axis][1]);
    for (int other : axes) {
        if (other == axis) continue;
        const double co = 0.5 * (s.box[other][0] + s.box[other][1]);
        sign *= (ci - co) > 0.0 ? 1.0 : -1.0;
    }
    return sign;
}

/// The separable coefficients prod (x_i - x_j) / P(x_i) are positive only when
/// P carries the sign of the numerator on each coordinate range; this is what
/// makes the chart the classified conformally flat geometry rather than just a
/// Staeckel solution.
inline void check_poly_interlaces(const FamilySpec& s, const ProfileExpr& P,
                                  const std::vector<int>& axes) {
    for (int axis : axes) {
        const double sign = numerator_sign(s, axis, axes);
        scan_or_throw(s, axis, [&P, sign](double x) -> std::optional<std::string> {
            if (sign * P.eval(x) < 1e-9)
                return "P(x_i) does not carry the sign of prod (x_i - x_j) "
                       "(coefficient mu_i^2 not positive)";
            return std::nullopt;
        });
    }
}

} // namespace detail

// --------------------------------------------------------------------
// family builders
// --------------------------------------------------------------------

namespace detail {

inline BuiltFamily build_I(FamilySpec spec) {
    const double k = param(spec, "k");
    MetricChart c;
    c.name = "space_form";
    c.diagonal = true;
    const Box4 box = spec.box;
    c.components = [k](const Point4& p) {
        auto x = point_jets(p);
        const Jet3 w = 1.0 + (k / 4.0) * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
        const Jet3 mu2 = reciprocal(w * w);
        return diagonal_metric({mu2, mu2, mu2, mu2});
    };
    c.invalid_reason = [box, k](const Point4& p) -> std::optional<std::string> {
        if (auto bad = outside_box(box, p)) return bad;
        return conf_radius_bad(k, p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
    };
    BuiltFamily out{std::move(spec), std::move(c)};
    out.closed_eigenvalues = [k](const Point4&) -> std::optional<std::array<double, 4>> {
        return std::array<double, 4>{3.0 * k, 3.0 * k, 3.0 * k, 3.0 * k};
    };
    return out;
}

inline BuiltFamily build_II(FamilySpec spec) {
    const double k = param(spec, "k");
    require(k != 0.0, "family II requires k != 0 (opposite curvatures +-k)");
    MetricChart c;
    c.name = "surface_product_opposite";
    c.diagonal = true;
    const Box4 box = spec.box;
    c.components = [k](const Point4& p) {
        auto x = point_jets(p);
        const Jet3 a = conf2_factor(k, x[0], x[1]);
        const Jet3 b = conf2_factor(-k, x[2], x[3]);
        return diagonal_metric({a, a, b, b});
    };
    c.invalid_reason = [box, k](const Point4& p) -> std::optional<std::string> {
        if (auto bad = outside_box(box, p)) return bad;
        if (auto bad = conf_radius_bad(k, p[0] * p[0] + p[1] * p[1])) return bad;
        return conf_radius_bad(-k, p[2] * p[2] + p[3] * p[3]);
    };
    BuiltFamily out{std::move(spec), std::move(c)};
    out.closed_eigenvalues = [k](const Point4&) -> std::optional<std::array<double, 4>> {
        return sorted_desc({k, k, -k, -k});
    };
    return out;
}

inline BuiltFamily build_III1(FamilySpec spec) {
    const double K_N = param(spec, "K_N");
    const ProfileExpr f = profile(spec, "f");
    scan_or_throw(spec, 0, [&f](double x) -> std::optional<std::string> {
        if (f.eval(x) < 1e-9) return "warp function f not positive";
        return std::nullopt;
    });
    return make_warped_b1n3(std::move(spec), K_N, warp_from_expr(f), "warped_b1_n3");
}

inline BuiltFamily build_III2(FamilySpec spec) {
    const double K_N = param(spec, "K_N");
    const double c = param(spec, "c");
    const double F0 = param(spec, "F0");
    const double F0p = param(spec, "F0p");
    auto F = std::make_shared<ProfileFunction>(
        solve_F_profile(K_N, c, F0, F0p, spec.box[0], spec.ode_tol,
                        param_or(spec, "x0", 0.0)));
    WarpProfile wp;
    wp.f_jet = [F](double x) { return reciprocal(F->jet_at(x, 0)); };
    wp.f_derivs = [F](double x) {
        const Jet3 f = reciprocal(F->jet_at(x, 0));
        return std::array<double, 3>{f.value(), f.partial(0), f.partial(0, 0)};
    };
    return make_warped_b1n3(std::move(spec), K_N, wp, "warped_b1_n3_ode");
}

inline BuiltFamily build_R2(FamilySpec spec) {
    ProfileExpr f;
    double K_N = 0.0;
    if (spec.family == Family::R2a) {
        K_N = param(spec, "K_N");
        require(K_N > 0.0, "family R2a requires K_N > 0");
        const double eps = param_or(spec, "eps", 1.0);
        require(eps == 1.0 || eps == -1.0, "family R2a requires eps = +-1");
        f = ProfileExpr::poly({param(spec, "b"), eps * std::sqrt(K_N)});
    } else if (spec.family == Family::R2b) {
        const double C = param(spec, "C"), D = param(spec, "D"), a = param(spec, "a");
        K_N = -4.0 * C * D * a * a;
        f = ProfileExpr::exp2(C, D, a);
    } else {
        const double C = param(spec, "C"), D = param(spec, "D"), a = param(spec, "a");
        K_N = a * a * (C * C + D * D);
        require(K_N > 0.0, "family R2c requires a^2 (C^2 + D^2) > 0");
        f = ProfileExpr::sincos(C, D, a);
    }
    scan_or_throw(spec, 0, [&f](double x) -> std::optional<std::string> {
        if (f.eval(x) < 1e-9) return "warp function f not positive";
        return std::nullopt;
    });
    const std::string name = "warped_parallel_ricci_" + family_name(spec.family);
    return make_warped_b1n3(std::move(spec), K_N, warp_from_expr(f), name);
}

inline BuiltFamily build_IV(FamilySpec spec) {
    const double K_N = param(spec, "K_N");
    const double cc = param(spec, "c");
    const double A = param(spec, "A");
    require(cc != 0.0, "family IV requires c != 0");
    require(A != 0.0, "family IV requires A != 0");
    const ProfileExpr K = profile(spec, "K");
    const ProfileExpr alpha = profile(spec, "alpha");
    const ProfileExpr Kp = K.derivative();
    const double kappa = K_N / (cc * A); // the forbidden values are +-kappa and -kappa - A
    const double C = A - kappa;

    scan_or_throw(spec, 2, [&](double x) -> std::optional<std::string> {
        const double k = K.eval(x), kp = Kp.eval(x);
        if (std::abs(kp) < 1e-9) return "K'(x) vanishes";
        if (cc * k + K_N / A < 1e-9) return "c K + K_N / A not positive (warp f^2)";
        if (std::abs(k - kappa) < 1e-6 || std::abs(k + kappa) < 1e-6)
            return "K(x) hits the excluded value +-K_N/(cA)";
        if (std::abs(k + kappa + A) < 1e-6) return "K(x) hits the excluded value -K_N/(cA)-A";
        const double beta = -kp / (2.0 * (k + kappa + A));
        const double gamma = kp / (k * k - kappa * kappa);
        if (beta * gamma < 1e-12) return "beta * gamma not positive (base metric degenerate)";
        return std::nullopt;
    });

    MetricChart chart;
    chart.name = "warped_b2_n2_curvature_profile";
    chart.diagonal = false;
    const Box4 box = spec.box;
    chart.components = [K, Kp, alpha, K_N, cc, A, kappa](const Point4& p) {
        auto x = point_jets(p);
        const Jet3 k = K.eval(x[2]);
        const Jet3 kp = Kp.eval(x[2]);
        const Jet3 beta = -kp / (2.0 * (k + (kappa + A)));
        const Jet3 gamma = kp / (k * k - kappa * kappa);
        const Jet3 al = alpha.eval(x[2]);
        const Jet3 off = beta * x[3] + al;
        const Jet3 f2 = cc * k + K_N / A;
        const Jet3 w = f2 * conf2_factor(K_N, x[0], x[1]);
        Mat4Jet g{};
        g[m4(0, 0)] = w;
        g[m4(1, 1)] = w;
        g[m4(2, 2)] = beta * gamma + off * off;
        g[m4(2, 3)] = g[m4(3, 2)] = off;
        g[m4(3, 3)] = Jet3(1.0);
        return g;
    };
    chart.invalid_reason = [box, K, Kp, K_N, cc, A, kappa](const Point4& p)
        -> std::optional<std::string> {
        if (auto bad = outside_box(box, p)) return bad;
        if (auto bad = conf_radius_bad(K_N, p[0] * p[0] + p[1] * p[1])) return bad;
        const double k = K.eval(p[2]), kp = Kp.eval(p[2]);
        if (std::abs(kp) < 1e-9) return std::string("K'(x) vanishes");
        if (cc * k + K_N / A < 1e-9) return std::string("warp f^2 not positive");
        if (std::abs(k - kappa) < 1e-6 || std::abs(k + kappa) < 1e-6 ||
            std::abs(k + kappa + A) < 1e-6)
            return std::string("K(x) at an excluded value");
        const double beta = -kp / (2.0 * (k + kappa + A));
        const double gamma = kp / (k * k - kappa * kappa);
        if (beta * gamma < 1e-12) return std::string("beta * gamma not positive");
        return std::nullopt;
    };

    BuiltFamily out{std::move(spec), std::move(chart)};
    out.closed_eigenvalues = [K, A, C](const Point4& p) -> std::optional<std::array<double, 4>> {
        const double k = K.eval(p[2]);
        return sorted_desc({2.0 * k + C, 2.0 * k + C, 3.0 * k + A, 2.0 * k - A + C});
    };
    return out;
}

// ------------------------------------------------------------------
// family V: base profile mu(x,y) from solve_mu_profile
// ------------------------------------------------------------------

inline BuiltFamily build_V(FamilySpec spec) {
    const double K_N = param(spec, "K_N");
    const double cc = param(spec, "c");
    require(cc != 0.0, "family V requires c != 0");
    const double C = param(spec, "C");
    const double e = param(spec, "e");
    const double mu0 = param(spec, "mu0");
    const double y0 = param_or(spec, "y0", spec.box[3][0]);
    const double sgn = param_or(spec, "mu_branch", 1.0);
    require(sgn == 1.0 || sgn == -1.0, "family V requires mu_branch = +-1");
    const ProfileExpr D = profile(spec, "D");
    const ProfileExpr Dp = D.derivative();

    MuProfile mu = solve_mu_profile(D, C, cc, e, K_N, mu0, y0, static_cast<int>(sgn),
                                    spec.ode_tol);

    scan_or_throw(spec, 2, [&](double x) -> std::optional<std::string> {
        const double Dv = D.eval(x), Dpv = Dp.eval(x);
        if (std::abs(Dv) < 1e-9) return "D(x) vanishes";
        if (std::abs(Dpv) < 1e-9) return "D'(x) vanishes";
        const double eterm = (Dv - C) * (Dv - C) + 2.0 * K_N / (cc * Dv) + e;
        if (std::abs(eterm) < 1e-9) return "E(x) denominator vanishes";
        return std::nullopt;
    });
    // scan the (x,y) rectangle for radicand and positivity failures
    {
        const double wx = spec.box[2][1] - spec.box[2][0];
        const double wy = spec.box[3][1] - spec.box[3][0];
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j) {
                const double x = spec.box[2][0] + spec.grid_margin * wx +
                                 (1.0 - 2.0 * spec.grid_margin) * wx * i / 6.0;
                const double y = spec.box[3][0] + spec.grid_margin * wy +
                                 (1.0 - 2.0 * spec.grid_margin) * wy * j / 6.0;
                double muv = 0.0;
                try {
                    muv = mu.value(x, y);
                } catch (const IntegrationError& err) {
                    throw ConstructionError("family V: " + std::string(err.what()) + " at (x, y) = (" +
                                            std::to_string(x) + ", " + std::to_string(y) + ")");
                }
                const double Dv = D.eval(x);
                if (cc * Dv * muv < 1e-9)
                    throw ConstructionError("family V: warp f^2 = c D mu not positive at (x, y) = (" +
                                            std::to_string(x) + ", " + std::to_string(y) + ")");
                const double Ev = Dp.eval(x) * Dp.eval(x) /
                                  (2.0 * Dv * Dv * ((Dv - C) * (Dv - C) + 2.0 * K_N / (cc * Dv) + e));
                if (Ev * (muv + Dv) < 1e-9)
                    throw ConstructionError(
                        "family V: base coefficient E (mu + D) not positive at (x, y) = (" +
                        std::to_string(x) + ", " + std::to_string(y) + ")");
            }
    }

    MetricChart chart;
    chart.name = "warped_b2_n2_mu_profile";
    chart.diagonal = false;
    const Box4 box = spec.box;
    chart.components = [mu, D, Dp, K_N, cc, C, e](const Point4& p) {
        auto x = point_jets(p);
        const auto mj = mu.jets(p[2], p[3]);
        const Jet3 Dj = D.eval(x[2]);
        const Jet3 Dpj = Dp.eval(x[2]);
        const Jet3 Ej =
            (Dpj * Dpj) / (2.0 * Dj * Dj * ((Dj - C) * (Dj - C) + (2.0 * K_N / cc) / Dj + e));
        const Jet3 a = mj.mu_x / mj.mu_y;
        const Jet3 psi2 = Ej * (mj.mu + Dj);
        const Jet3 f2 = cc * Dj * mj.mu;
        const Jet3 w = f2 * conf2_factor(K_N, x[0], x[1]);
        Mat4Jet g{};
        g[m4(0, 0)] = w;
        g[m4(1, 1)] = w;
        g[m4(2, 2)] = psi2 + a * a;
        g[m4(2, 3)] = g[m4(3, 2)] = a;
        g[m4(3, 3)] = Jet3(1.0);
        return g;
    };
    chart.invalid_reason = [box, mu, D, Dp, K_N, cc, C, e](const Point4& p)
        -> std::optional<std::string> {
        if (auto bad = outside_box(box, p)) return bad;
        if (auto bad = conf_radius_bad(K_N, p[0] * p[0] + p[1] * p[1])) return bad;
        const double Dv = D.eval(p[2]);
        if (std::abs(Dv) < 1e-9) return std::string("D(x) vanishes");
        if (std::abs(Dp.eval(p[2])) < 1e-9) return std::string("D'(x) vanishes");
        double muv = 0.0;
        try {
            muv = mu.value(p[2], p[3]);
        } catch (const IntegrationError& err) {
            return std::string(err.what());
        }
        if (cc * Dv * muv < 1e-9) return std::string("warp f^2 = c D mu not positive");
        const double Ev = Dp.eval(p[2]) * Dp.eval(p[2]) /
                          (2.0 * Dv * Dv * ((Dv - C) * (Dv - C) + 2.0 * K_N / (cc * Dv) + e));
        if (Ev * (muv + Dv) < 1e-9) return std::string("E (mu + D) not positive");
        return std::nullopt;
    };

    BuiltFamily out{std::move(spec), std::move(chart)};
    out.closed_eigenvalues = [mu, D, C](const Point4& p) -> std::optional<std::array<double, 4>> {
        const double muv = mu.value(p[2], p[3]);
        const double Dv = D.eval(p[2]);
        const double K = muv - Dv + C; // Gauss curvature of the base
        return sorted_desc({2.0 * K + C, 2.0 * K + C, 2.0 * K - Dv + C, 3.0 * K + Dv});
    };
    return out;
}

inline BuiltFamily build_VI(FamilySpec spec) {
    const double a = param(spec, "a");
    const double b = param(spec, "b");
    const double q = param(spec, "q");
    const double r = param(spec, "r");
    require(a > 0.0 && b > 0.0 && q > 0.0 && r > 0.0,
            "family VI requires positive constants a, b, q, r");
    require(a != b, "family VI requires a != b");
    const double phi0 = param_or(spec, "phi0", 1.0);
    const int branch = static_cast<int>(param_or(spec, "phi_branch", 1.0));

    auto phi = std::make_shared<ProfileFunction>(
        solve_phi_profile(a, b, phi0, branch, spec.box[0], spec.ode_tol,
                          param_or(spec, "x0", 0.0)));

    MetricChart chart;
    chart.name = "jacobi_quartic_diagonal";
    chart.diagonal = true;
    const Box4 box = spec.box;
    chart.components = [phi, a, b, q, r](const Point4& p) {
        const Jet3 ph = phi->jet_at(p[0], 0);
        const Jet3 ph2 = ph * ph;
        return diagonal_metric({Jet3(1.0), ph2, r * (ph2 + a), q * (ph2 + b)});
    };
    chart.invalid_reason = [box, phi](const Point4& p) -> std::optional<std::string> {
        if (auto bad = outside_box(box, p)) return bad;
        if (std::abs(phi->state_at(p[0])[0]) < 1e-6)
            return std::string("phi vanishes (metric coefficient phi^2 degenerate)");
        return std::nullopt;
    };

    BuiltFamily out{std::move(spec), std::move(chart)};
    out.closed_eigenvalues = [phi, a, b](const Point4& p) -> std::optional<std::array<double, 4>> {
        const double p2 = std::pow(phi->state_at(p[0])[0], 2);
        return sorted_desc({-6.0 * p2 - 2.0 * a - 2.0 * b, -4.0 * p2 - 2.0 * a - 2.0 * b,
                            -4.0 * p2 - 2.0 * b, -4.0 * p2 - 2.0 * a});
    };
    return out;
}

// For VII/VIII/IX the coefficient mu_i^2 is the signed ratio
// prod (x_i - x_j) / P(x_i); positivity comes from P interlacing the
// coordinate ranges.  The Staeckel-only counterparts S8/S9/S10 take the
// absolute value of every factor instead: that still solves the separability
// system (log-derivatives ignore constant signs) and admits any positive P,
// but it is not the conformally flat geometry unless the signs already agree.
inline BuiltFamily build_VII(FamilySpec spec, bool abs_factors = false) {
    const ProfileExpr P = profile(spec, "P");
    require(P.kind == ProfileExpr::Kind::Poly && P.coeffs.size() == 7,
            "family " + family_name(spec.family) +
                " requires a degree-six polynomial P (seven coefficients)");
    if (P.coeffs[6] == 0.0)
        throw ConstructionError(
            "family VII with a6 = 0 degenerates to constant curvature (P of degree < 6)");
    check_ranges_separated(spec, {0, 1, 2, 3});
    if (abs_factors)
        check_poly_positive(spec, P, {0, 1, 2, 3});
    else
        check_poly_interlaces(spec, P, {0, 1, 2, 3});

    MetricChart chart;
    chart.name = abs_factors ? "stackel_separable_sextic" : "separable_sextic";
    chart.diagonal = true;
    const Box4 box = spec.box;
    chart.components = [P, abs_factors](const Point4& p) {
        auto x = point_jets(p);
        std::array<Jet3, 4> d;
        for (int i = 0; i < 4; ++i) {
            Jet3 prod = reciprocal(P.eval(x[i]));
            for (int j = 0; j < 4; ++j)
                if (j != i) prod *= x[i] - x[j];
            d[i] = abs_factors ? abs_signed(prod) : prod;
        }
        return diagonal_metric(d);
    };
    chart.invalid_reason = [box, P](const Point4& p) -> std::optional<std::string> {
        if (auto bad = outside_box(box, p)) return bad;
        for (int i = 0; i < 4; ++i) {
            if (std::abs(P.eval(p[i])) < 1e-9) return std::string("P(x_i) vanishes");
            for (int j = i + 1; j < 4; ++j)
                if (std::abs(p[i] - p[j]) < 1e-6) return std::string("coincidence locus x_i = x_j");
        }
        return std::nullopt;
    };

    BuiltFamily out{std::move(spec), std::move(chart)};
    const double a6 = P.coeffs[6], a5 = P.coeffs[5];
    out.closed_eigenvalues = [a6, a5](const Point4& p) -> std::optional<std::array<double, 4>> {
        std::array<double, 4> r;
        const double s = p[0] + p[1] + p[2] + p[3];
        for (int i = 0; i < 4; ++i) r[i] = -a6 * (1.5 * p[i] + (s - p[i])) - 0.75 * a5;
        return sorted_desc(r);
    };
    return out;
}

inline BuiltFamily build_VIII(FamilySpec spec, bool abs_factors = false) {
    const ProfileExpr P = profile(spec, "P");
    require(P.kind == ProfileExpr::Kind::Poly && P.coeffs.size() == 6,
            "family " + family_name(spec.family) +
                " requires a degree-five polynomial P (six coefficients)");
    require(P.coeffs[0] == 0.0, "family VIII requires P(0) = 0 (zero constant coefficient)");
    if (P.coeffs[5] == 0.0)
        throw ConstructionError(
            "family VIII with a5 = 0 degenerates to constant curvature (P of degree < 5)");
    check_ranges_separated(spec, {1, 2, 3});
    if (abs_factors)
        check_poly_positive(spec, P, {1, 2, 3});
    else
        check_poly_interlaces(spec, P, {1, 2, 3});
    for (int axis : {1, 2, 3})
        require(spec.box[axis][0] > 0.0 || spec.box[axis][1] < 0.0,
                "family VIII requires x2 x3 x4 sign-definite on the box");

    MetricChart chart;
    chart.name = abs_factors ? "stackel_separable_quintic" : "separable_quintic_warped";
    chart.diagonal = true;
    const Box4 box = spec.box;
    chart.components = [P, abs_factors](const Point4& p) {
        auto x = point_jets(p);
        std::array<Jet3, 4> d;
        d[0] = abs_signed(x[1] * x[2] * x[3]);
        for (int i = 1; i < 4; ++i) {
            Jet3 prod = reciprocal(P.eval(x[i]));
            for (int j = 1; j < 4; ++j)
                if (j != i) prod *= x[i] - x[j];
            d[i] = abs_factors ? abs_signed(prod) : prod;
        }
        return diagonal_metric(d);
    };
    chart.invalid_reason = [box, P](const Point4& p) -> std::optional<std::string> {
        if (auto bad = outside_box(box, p)) return bad;
        if (std::abs(p[1] * p[2] * p[3]) < 1e-9) return std::string("warp |x2 x3 x4| vanishes");
        for (int i = 1; i < 4; ++i) {
            if (std::abs(P.eval(p[i])) < 1e-9) return std::string("P(x_i) vanishes");
            for (int j = i + 1; j < 4; ++j)
                if (std::abs(p[i] - p[j]) < 1e-6) return std::string("coincidence locus x_i = x_j");
        }
        return std::nullopt;
    };

    BuiltFamily out{std::move(spec), std::move(chart)};
    const double a5 = P.coeffs[5], a4 = P.coeffs[4];
    out.closed_eigenvalues = [a5, a4](const Point4& p) -> std::optional<std::array<double, 4>> {
        const double s = p[1] + p[2] + p[3];
        std::array<double, 4> r;
        r[0] = -a5 * s - 0.75 * a4;
        for (int i = 1; i < 4; ++i) r[i] = -a5 * (1.5 * p[i] + (s - p[i])) - 0.75 * a4;
        return sorted_desc(r);
    };
    return out;
}

inline BuiltFamily build_IX(FamilySpec spec, bool abs_factors = false) {
    const double b = param(spec, "b");
    require(b != 0.0, "family IX requires b != 0");
    const double a1 = param(spec, "a1"), a2 = param(spec, "a2"), a3 = param(spec, "a3");
    if (a3 == 0.0)
        throw ConstructionError(
            "family IX with a3 = 0 degenerates to constant curvature (P of degree < 4)");
    // P(x) = (x - b)(a3 x^3 + a2 x^2 + a1 x)
    const ProfileExpr P = ProfileExpr::poly(
        {0.0, -b * a1, a1 - b * a2, a2 - b * a3, a3});
    check_ranges_separated(spec, {2, 3});
    if (abs_factors)
        check_poly_positive(spec, P, {2, 3});
    else
        check_poly_interlaces(spec, P, {2, 3});
    for (int axis : {2, 3}) {
        require(spec.box[axis][0] > 0.0 || spec.box[axis][1] < 0.0,
                "family IX requires x3 x4 sign-definite on the box");
        require(spec.box[axis][0] > b || spec.box[axis][1] < b,
                "family IX requires x3, x4 ranges away from b");
    }

    MetricChart chart;
    chart.name = abs_factors ? "stackel_separable_quartic" : "separable_quartic_double_warp";
    chart.diagonal = true;
    const Box4 box = spec.box;
    chart.components = [P, b, abs_factors](const Point4& p) {
        auto x = point_jets(p);
        std::array<Jet3, 4> d;
        d[0] = abs_signed((x[2] - b) * (x[3] - b));
        d[1] = abs_signed(x[2] * x[3]);
        d[2] = (x[2] - x[3]) / P.eval(x[2]);
        d[3] = (x[3] - x[2]) / P.eval(x[3]);
        if (abs_factors) {
            d[2] = abs_signed(d[2]);
            d[3] = abs_signed(d[3]);
        }
        return diagonal_metric(d);
    };
    chart.invalid_reason = [box, P, b](const Point4& p) -> std::optional<std::string> {
        if (auto bad = outside_box(box, p)) return bad;
        if (std::abs(p[2] - p[3]) < 1e-6) return std::string("coincidence locus x3 = x4");
        if (std::abs(p[2] * p[3]) < 1e-9) return std::string("coefficient x3 x4 vanishes");
        if (std::abs((p[2] - b) * (p[3] - b)) < 1e-9)
            return std::string("coefficient (x3-b)(x4-b) vanishes");
        if (std::abs(P.eval(p[2])) < 1e-9 || std::abs(P.eval(p[3])) < 1e-9)
            return std::string("P(x_i) vanishes");
        return std::nullopt;
    };

    BuiltFamily out{std::move(spec), std::move(chart)};
    out.closed_eigenvalues = [a2, a3, b](const Point4& p) -> std::optional<std::array<double, 4>> {
        const double s = p[2] + p[3];
        const double r1 = -a3 * s - 0.75 * a2;
        const double r2 = r1 + 0.5 * b * a3;
        const double r3 = -a3 * (1.5 * p[2] + p[3]) - 0.75 * a2 + 0.5 * b * a3;
        const double r4 = -a3 * (1.5 * p[3] + p[2]) - 0.75 * a2 + 0.5 * b * a3;
        return sorted_desc({r1, r2, r3, r4});
    };
    return out;
}

// ------------------------------------------------------------------
// the ten separable Staeckel solutions
// ------------------------------------------------------------------

inline void scan_positive(const FamilySpec& s, int axis, const ProfileExpr& f,
                          const std::string& what) {
    scan_or_throw(s, axis, [&](double x) -> std::optional<std::string> {
        if (f.eval(x) < 1e-9) return what + " not positive";
        return std::nullopt;
    });
}

inline void scan_nonvanishing_derivative(const FamilySpec& s, int axis, const ProfileExpr& f,
                                         const std::string& what) {
    const ProfileExpr fp = f.derivative();
    scan_or_throw(s, axis, [&](double x) -> std::optional<std::string> {
        if (std::abs(fp.eval(x)) < 1e-9) return what + " has vanishing derivative";
        return std::nullopt;
    });
}

inline BuiltFamily make_diagonal_family(FamilySpec spec, const std::string& name,
                                        std::function<std::array<Jet3, 4>(const std::array<Jet3, 4>&)>
                                            diag,
                                        std::function<std::optional<std::string>(const Point4&)>
                                            extra_domain = nullptr) {
    MetricChart chart;
    chart.name = name;
    chart.diagonal = true;
    const Box4 box = spec.box;
    chart.components = [diag](const Point4& p) { return diagonal_metric(diag(point_jets(p))); };
    chart.invalid_reason = [box, extra_domain](const Point4& p) -> std::optional<std::string> {
        if (auto bad = outside_box(box, p)) return bad;
        if (extra_domain) return extra_domain(p);
        return std::nullopt;
    };
    return BuiltFamily{std::move(spec), std::move(chart)};
}

inline BuiltFamily build_S(FamilySpec spec) {
    const Family fam = spec.family;
    switch (fam) {
        case Family::S1: {
            const ProfileExpr eta = profile(spec, "eta"), psi = profile(spec, "psi"),
                              phi = profile(spec, "phi");
            scan_positive(spec, 0, eta, "eta");
            scan_nonvanishing_derivative(spec, 0, eta, "eta");
            scan_positive(spec, 1, psi, "psi");
            scan_positive(spec, 1, phi, "phi");
            return make_diagonal_family(std::move(spec), "stackel_warped_one",
                                        [eta, psi, phi](const std::array<Jet3, 4>& x) {
                                            const Jet3 e = eta.eval(x[0]);
                                            return std::array<Jet3, 4>{Jet3(1.0), e,
                                                                       e * psi.eval(x[1]),
                                                                       e * phi.eval(x[1])};
                                        });
        }
        case Family::S2: {
            const ProfileExpr phi = profile(spec, "phi"), xi = profile(spec, "xi"),
                              zeta = profile(spec, "zeta"), eta = profile(spec, "eta");
            scan_positive(spec, 0, phi, "phi");
            scan_nonvanishing_derivative(spec, 2, zeta, "zeta");
            scan_nonvanishing_derivative(spec, 3, eta, "eta");
            check_ranges_separated(spec, {1, 2, 3});
            return make_diagonal_family(
                std::move(spec), "stackel_elliptic_three",
                [phi, xi, zeta, eta](const std::array<Jet3, 4>& x) {
                    const Jet3 f = phi.eval(x[0]);
                    const Jet3 u = xi.eval(x[1]), v = zeta.eval(x[2]), w = eta.eval(x[3]);
                    return std::array<Jet3, 4>{
                        Jet3(1.0), f * abs_signed(u - v) * abs_signed(u - w),
                        f * abs_signed(v - u) * abs_signed(v - w),
                        f * abs_signed(w - u) * abs_signed(w - v)};
                });
        }
        case Family::S3: {
            const ProfileExpr eta = profile(spec, "eta"), xi = profile(spec, "xi"),
                              phi = profile(spec, "phi"), psi = profile(spec, "psi");
            scan_positive(spec, 0, eta, "eta");
            scan_positive(spec, 1, xi, "xi");
            require(spec.box[0][0] > 0.0, "S3 requires x1 > 0 on the box");
            require(spec.box[1][0] > 0.0, "S3 requires x2 > 0 on the box");
            return make_diagonal_family(
                std::move(spec), "stackel_nested_product",
                [eta, xi, phi, psi](const std::array<Jet3, 4>& x) {
                    const Jet3 pair = x[0] * x[1] * (phi.eval(x[2]) + psi.eval(x[3]));
                    return std::array<Jet3, 4>{eta.eval(x[0]), x[0] * xi.eval(x[1]), pair, pair};
                });
        }
        case Family::S4: {
            const ProfileExpr phi = profile(spec, "phi"), psi = profile(spec, "psi"),
                              xi = profile(spec, "xi"), eta = profile(spec, "eta");
            return make_diagonal_family(
                std::move(spec), "stackel_double_liouville",
                [phi, psi, xi, eta](const std::array<Jet3, 4>& x) {
                    const Jet3 a = phi.eval(x[0]) + psi.eval(x[1]);
                    const Jet3 b = xi.eval(x[2]) + eta.eval(x[3]);
                    return std::array<Jet3, 4>{a, a, b, b};
                });
        }
        case Family::S5: {
            const ProfileExpr xi = profile(spec, "xi"), eta = profile(spec, "eta"),
                              psi = profile(spec, "psi"), phi = profile(spec, "phi");
            scan_nonvanishing_derivative(spec, 0, xi, "xi");
            scan_nonvanishing_derivative(spec, 1, eta, "eta");
            return make_diagonal_family(
                std::move(spec), "stackel_liouville_product",
                [xi, eta, psi, phi](const std::array<Jet3, 4>& x) {
                    const Jet3 u = xi.eval(x[0]), v = eta.eval(x[1]);
                    const Jet3 a = abs_signed(u - v);
                    const Jet3 b = u * v * (psi.eval(x[2]) + phi.eval(x[3]));
                    return std::array<Jet3, 4>{a, a, b, b};
                });
        }
        case Family::S6: {
            const ProfileExpr phi = profile(spec, "phi"), psi = profile(spec, "psi"),
                              xi = profile(spec, "xi"), eta = profile(spec, "eta");
            scan_positive(spec, 0, phi, "phi");
            scan_positive(spec, 0, psi, "psi");
            require(spec.box[0][0] > 0.0, "S6 requires x1 > 0 on the box");
            return make_diagonal_family(
                std::move(spec), "stackel_half_warped_pair",
                [phi, psi, xi, eta](const std::array<Jet3, 4>& x) {
                    const Jet3 b = x[0] * (xi.eval(x[2]) + eta.eval(x[3]));
                    return std::array<Jet3, 4>{phi.eval(x[0]), psi.eval(x[0]), b, b};
                });
        }
        case Family::S7: {
            const ProfileExpr phi = profile(spec, "phi"), psi = profile(spec, "psi"),
                              eta = profile(spec, "eta");
            scan_positive(spec, 0, phi, "phi");
            scan_positive(spec, 0, psi, "psi");
            scan_positive(spec, 0, eta, "eta");
            return make_diagonal_family(std::move(spec), "stackel_curve_dependent",
                                        [phi, psi, eta](const std::array<Jet3, 4>& x) {
                                            return std::array<Jet3, 4>{Jet3(1.0), phi.eval(x[0]),
                                                                       psi.eval(x[0]),
                                                                       eta.eval(x[0])};
                                        });
        }
        case Family::S8: {
            BuiltFamily built = build_VII(std::move(spec), /*abs_factors=*/true);
            built.closed_eigenvalues = [](const Point4&) { return std::nullopt; };
            return built;
        }
        case Family::S9: {
            BuiltFamily built = build_VIII(std::move(spec), /*abs_factors=*/true);
            built.closed_eigenvalues = [](const Point4&) { return std::nullopt; };
            return built;
        }
        case Family::S10: {
            BuiltFamily built = build_IX(std::move(spec), /*abs_factors=*/true);
            built.closed_eigenvalues = [](const Point4&) { return std::nullopt; };
            return built;
        }
        default: throw ConstructionError("not a Staeckel family tag");
    }
}

} // namespace detail

inline BuiltFamily build_family(const FamilySpec& spec) {
    using namespace detail;
    BuiltFamily out;
    switch (spec.family) {
        case Family::I: out = build_I(spec); break;
        case Family::II: out = build_II(spec); break;
        case Family::III1: out = build_III1(spec); break;
        case Family::III2: out = build_III2(spec); break;
        case Family::IV: out = build_IV(spec); break;
        case Family::V: out = build_V(spec); break;
        case Family::VI: out = build_VI(spec); break;
        case Family::VII: out = build_VII(spec); break;
        case Family::VIII: out = build_VIII(spec); break;
        case Family::IX: out = build_IX(spec); break;
        case Family::R2a:
        case Family::R2b:
        case Family::R2c: out = build_R2(spec); break;
        default: out = build_S(spec); break;
    }
    detail::verify_positive_definite(out.chart, out.spec);
    return out;
}

inline std::optional<std::array<double, 4>> closed_form_eigenvalues(const BuiltFamily& bf,
                                                                    const Point4& p) {
    return bf.closed_eigenvalues(p);
}

/// Spec-signature convenience: builds the family, then evaluates.
inline std::optional<std::array<double, 4>> closed_form_eigenvalues(const FamilySpec& spec,
                                                                    const Point4& p) {
    return closed_form_eigenvalues(build_family(spec), p);
}

// --------------------------------------------------------------------
// recorded defaults
// --------------------------------------------------------------------

inline FamilySpec default_spec(Family f) {
    FamilySpec s;
    s.family = f;
    const Box4 unit{{{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}};
    const Box4 sym{{{-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}}};
    switch (f) {
        case Family::I:
            s.params["k"] = 1.0;
            s.box = sym;
            break;
        case Family::II:
            s.params["k"] = 1.0;
            s.box = sym;
            break;
        case Family::III1:
            s.params["K_N"] = 1.0;
            s.profiles["f"] = ProfileExpr::poly({1.0, 0.0, 1.0}); // 1 + x^2
            s.box = {{{0.0, 1.0}, {-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}}};
            break;
        case Family::III2:
            s.params["K_N"] = 1.0;
            s.params["c"] = 1.0;
            s.params["F0"] = 1.0;
            s.params["F0p"] = 0.0;
            s.box = {{{-0.3, 0.3}, {-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}}};
            s.satisfied_tol = 1e-6;
            break;
        case Family::IV:
            s.params["K_N"] = 1.0;
            s.params["c"] = 1.0;
            s.params["A"] = 1.0;
            s.profiles["K"] = ProfileExpr::poly({0.0, 1.0});     // K(x) = x
            s.profiles["alpha"] = ProfileExpr::poly({0.0});      // alpha = 0
            s.box = sym;
            break;
        case Family::V:
            s.params["K_N"] = 1.0;
            s.params["c"] = 1.0;
            s.params["C"] = 0.0;
            s.params["e"] = 1.0;
            s.params["mu0"] = 0.5;
            s.params["y0"] = 0.0;
            s.profiles["D"] = ProfileExpr::poly({0.0, 1.0}); // D(x) = x
            s.box = {{{-0.5, 0.5}, {-0.5, 0.5}, {0.75, 1.25}, {0.0, 0.25}}};
            s.satisfied_tol = 1e-6;
            break;
        case Family::VI:
            s.params["a"] = 1.0;
            s.params["b"] = 2.0;
            s.params["q"] = 1.0;
            s.params["r"] = 1.0;
            s.params["phi0"] = 1.0;
            s.params["phi_branch"] = 1.0;
            s.box = {{{-0.25, 0.25}, {0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}};
            break;
        case Family::VII:
            // roots interlace the four coordinate ranges so every mu_i^2 > 0;
            // the negative roots balance the sum so a5 = 0
            s.profiles["P"] =
                poly_from_roots({1.5, 3.5, 5.5, -3.0, -3.25, -4.25}, 1.0);
            s.box = {{{0.0, 1.0}, {2.0, 3.0}, {4.0, 5.0}, {6.0, 7.0}}};
            break;
        case Family::S8:
            s.profiles["P"] = ProfileExpr::poly({1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0}); // x^6+1
            s.box = {{{0.0, 1.0}, {2.0, 3.0}, {4.0, 5.0}, {6.0, 7.0}}};
            break;
        case Family::VIII:
            // x (x - 1.75)(x - 2.75)(x^2 + 1): P(0) = 0 and the real roots
            // interlace the three separated ranges
            s.profiles["P"] = ProfileExpr::poly({0.0, 4.8125, -4.5, 5.8125, -4.5, 1.0});
            s.box = {{{0.0, 1.0}, {1.0, 1.5}, {2.0, 2.5}, {3.0, 3.5}}};
            break;
        case Family::S9:
            s.profiles["P"] = ProfileExpr::poly({0.0, 1.0, 0.0, 0.0, 0.0, 1.0}); // x^5+x
            s.box = {{{0.0, 1.0}, {1.0, 1.5}, {2.0, 2.5}, {3.0, 3.5}}};
            break;
        case Family::IX:
            // cubic factor x(x - 2.25)(x + 1) changes sign between the x3 and
            // x4 ranges
            s.params["b"] = 1.0;
            s.params["a1"] = -2.25;
            s.params["a2"] = -1.25;
            s.params["a3"] = 1.0;
            s.box = {{{0.0, 1.0}, {0.0, 1.0}, {1.5, 2.0}, {2.5, 3.0}}};
            break;
        case Family::S10:
            s.params["b"] = 1.0;
            s.params["a1"] = 1.0;
            s.params["a2"] = 0.0;
            s.params["a3"] = 1.0;
            s.box = {{{0.0, 1.0}, {0.0, 1.0}, {1.5, 2.0}, {2.5, 3.0}}};
            break;
        case Family::S1:
            s.profiles["eta"] = ProfileExpr::exp2(1.0, 0.0, 1.0);  // e^x
            s.profiles["psi"] = ProfileExpr::poly({1.0, 0.0, 1.0});
            s.profiles["phi"] = ProfileExpr::poly({2.0, 0.0, 1.0});
            s.box = unit;
            break;
        case Family::S2:
            s.profiles["phi"] = ProfileExpr::poly({1.0, 0.0, 1.0});
            s.profiles["xi"] = ProfileExpr::poly({0.0, 1.0});
            s.profiles["zeta"] = ProfileExpr::poly({0.0, 1.0});
            s.profiles["eta"] = ProfileExpr::poly({0.0, 1.0});
            s.box = {{{0.0, 1.0}, {0.0, 1.0}, {2.0, 3.0}, {4.0, 5.0}}};
            break;
        case Family::S3:
            s.profiles["eta"] = ProfileExpr::poly({1.0, 0.0, 1.0});
            s.profiles["xi"] = ProfileExpr::poly({1.0, 0.0, 1.0});
            s.profiles["phi"] = ProfileExpr::poly({0.0, 0.0, 1.0});
            s.profiles["psi"] = ProfileExpr::poly({1.0, 0.0, 1.0});
            s.box = {{{0.5, 1.5}, {0.5, 1.5}, {0.0, 1.0}, {0.0, 1.0}}};
            break;
        case Family::S4:
            s.profiles["phi"] = ProfileExpr::poly({0.0, 0.0, 1.0});
            s.profiles["psi"] = ProfileExpr::poly({1.0, 0.0, 1.0});
            s.profiles["xi"] = ProfileExpr::poly({0.0, 0.0, 1.0});
            s.profiles["eta"] = ProfileExpr::poly({1.0, 0.0, 1.0});
            s.box = unit;
            break;
        case Family::S5:
            s.profiles["xi"] = ProfileExpr::poly({4.0, 1.0});
            s.profiles["eta"] = ProfileExpr::poly({1.0, 0.0, 1.0});
            s.profiles["psi"] = ProfileExpr::poly({0.0, 0.0, 1.0});
            s.profiles["phi"] = ProfileExpr::poly({1.0, 0.0, 1.0});
            s.box = unit;
            break;
        case Family::S6:
            s.profiles["phi"] = ProfileExpr::poly({1.0, 0.0, 1.0});
            s.profiles["psi"] = ProfileExpr::poly({2.0, 0.0, 1.0});
            s.profiles["xi"] = ProfileExpr::poly({0.0, 0.0, 1.0});
            s.profiles["eta"] = ProfileExpr::poly({1.0, 0.0, 1.0});
            s.box = {{{0.5, 1.5}, {0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}};
            break;
        case Family::S7:
            s.profiles["phi"] = ProfileExpr::poly({1.0, 0.0, 1.0});
            s.profiles["psi"] = ProfileExpr::poly({2.0, 0.0, 1.0});
            s.profiles["eta"] = ProfileExpr::poly({3.0, 0.0, 1.0});
            s.box = unit;
            break;
        case Family::R2a:
            s.params["K_N"] = 1.0;
            s.params["b"] = 1.0;
            s.params["eps"] = 1.0;
            s.box = {{{0.0, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}}};
            break;
        case Family::R2b:
            s.params["C"] = 1.0;
            s.params["D"] = 1.0;
            s.params["a"] = 1.0;
            s.box = {{{0.0, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}}};
            break;
        case Family::R2c:
            s.params["C"] = 1.0;
            s.params["D"] = 1.0;
            s.params["a"] = 1.0;
            s.box = {{{0.0, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}}};
            break;
    }
    return s;
}

} // namespace curv4::catalog
