#pragma once

// Closed-form profile expressions (the functions the classification leaves
// free) and ODE-backed profile functions.  Closed forms evaluate directly as
// jets; ODE profiles combine an adaptive trajectory for the value with an
// exact jet completion from the defining equation, so the only error a
// profile jet carries is the integration error of the value itself.

#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "curv4/errors.hpp"
#include "curv4/jet.hpp"
#include "curv4/ode.hpp"

namespace curv4::catalog {

struct ProfileExpr {
    enum class Kind { Poly, Exp2, SinCos, RecipPoly };

    Kind kind = Kind::Poly;
    // Poly/RecipPoly: coefficients a0..an.  Exp2: {C, D, a} for C e^{ax} + D e^{-ax}.
    // SinCos: {C, D, a} for C sin(ax) + D cos(ax).
    std::vector<double> coeffs;

    static ProfileExpr poly(std::vector<double> c) { return {Kind::Poly, std::move(c)}; }
    static ProfileExpr exp2(double C, double D, double a) { return {Kind::Exp2, {C, D, a}}; }
    static ProfileExpr sincos(double C, double D, double a) { return {Kind::SinCos, {C, D, a}}; }
    static ProfileExpr recip_poly(std::vector<double> c) {
        return {Kind::RecipPoly, std::move(c)};
    }

    template <class T>
    T eval_generic(const T& x) const {
        switch (kind) {
            case Kind::Poly:
            case Kind::RecipPoly: {
                T acc = T(coeffs.empty() ? 0.0 : coeffs.back());
                for (int i = static_cast<int>(coeffs.size()) - 2; i >= 0; --i)
                    acc = acc * x + coeffs[i];
                if (kind == Kind::Poly) return acc;
                return T(1.0) / acc;
            }
            case Kind::Exp2: {
                using std::exp;
                return coeffs[0] * exp(coeffs[2] * x) + coeffs[1] * exp(-coeffs[2] * x);
            }
            case Kind::SinCos: {
                using std::cos;
                using std::sin;
                return coeffs[0] * sin(coeffs[2] * x) + coeffs[1] * cos(coeffs[2] * x);
            }
        }
        return T(0.0);
    }

    Jet3 eval(const Jet3& x) const { return eval_generic<Jet3>(x); }
    double eval(double x) const { return eval_generic<double>(x); }

    /// Exact derivative expression; the reciprocal-polynomial kind is not
    /// closed under differentiation and is rejected where a derivative is
    /// structurally required.
    ProfileExpr derivative() const {
        switch (kind) {
            case Kind::Poly: {
                std::vector<double> d;
                for (std::size_t i = 1; i < coeffs.size(); ++i)
                    d.push_back(coeffs[i] * static_cast<double>(i));
                if (d.empty()) d.push_back(0.0);
                return poly(std::move(d));
            }
            case Kind::Exp2:
                return exp2(coeffs[0] * coeffs[2], -coeffs[1] * coeffs[2], coeffs[2]);
            case Kind::SinCos:
                return sincos(-coeffs[1] * coeffs[2], coeffs[0] * coeffs[2], coeffs[2]);
            case Kind::RecipPoly:
                throw ConstructionError(
                    "profile of reciprocal-polynomial kind cannot appear where its "
                    "derivative is required");
        }
        return poly({0.0});
    }

    std::string describe() const {
        std::ostringstream os;
        switch (kind) {
            case Kind::Poly: os << "poly"; break;
            case Kind::RecipPoly: os << "recip_poly"; break;
            case Kind::Exp2: os << "exp2"; break;
            case Kind::SinCos: os << "sincos"; break;
        }
        os << "(";
        for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i];
        os << ")";
        return os.str();
    }
};

/// A profile usable wherever a family needs a scalar function of one
/// coordinate as a jet: either a closed form or a solved trajectory plus the
/// jet completion from its defining ODE.
struct ProfileFunction {
    enum class Kind { ClosedForm, OdeTrajectory };

    Kind kind = Kind::ClosedForm;
    ProfileExpr expr;                                        // ClosedForm payload
    std::shared_ptr<const ode::Trajectory<double>> forward;  // OdeTrajectory payload
    std::shared_ptr<const ode::Trajectory<double>> backward;
    std::function<Jet3(double x, int var)> complete;         // state -> jet for OdeTrajectory
    std::array<double, 2> domain{0.0, 0.0};

    std::vector<double> state_at(double x) const {
        const double x0 = forward->t_begin();
        if (x >= x0) return forward->eval(x);
        return backward->eval(x);
    }

    Jet3 jet_at(double x, int var) const {
        if (kind == Kind::ClosedForm) return expr.eval(Jet3::variable(x, var));
        return complete(x, var);
    }

    double value_at(double x) const {
        if (kind == Kind::ClosedForm) return expr.eval(x);
        return state_at(x)[0];
    }
};

/// Expands scale * prod (x - root_i) into polynomial coefficients.
inline ProfileExpr poly_from_roots(const std::vector<double>& roots, double scale = 1.0) {
    std::vector<double> c{1.0};
    for (double r : roots) {
        std::vector<double> n(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            n[i + 1] += c[i];
            n[i] -= r * c[i];
        }
        c = std::move(n);
    }
    for (auto& v : c) v *= scale;
    return ProfileExpr::poly(std::move(c));
}

/// phi' = sign * sqrt(phi^4 + (a+b) phi^2 + ab); the radicand is strictly
/// positive for a, b > 0, so the branch never changes.  The initial value sits
/// at `anchor` (span start when omitted).
inline ProfileFunction solve_phi_profile(double a, double b, double phi0, int sign,
                                         std::array<double, 2> span, double tol = 1e-10,
                                         std::optional<double> anchor = std::nullopt) {
    if (!(a > 0.0) || !(b > 0.0))
        throw ConstructionError("phi profile requires a > 0 and b > 0");
    if (sign != 1 && sign != -1) throw ConstructionError("phi branch must be +1 or -1");
    const double s = static_cast<double>(sign);
    ode::Rhs<double> rhs = [a, b, s](double, const std::vector<double>& y) {
        const double p2 = y[0] * y[0];
        return std::vector<double>{s * std::sqrt(p2 * p2 + (a + b) * p2 + a * b)};
    };
    const double x0 = anchor.value_or(span[0]);
    ProfileFunction pf;
    pf.kind = ProfileFunction::Kind::OdeTrajectory;
    pf.domain = span;
    pf.forward = std::make_shared<ode::Trajectory<double>>(
        ode::integrate<double>(rhs, {phi0}, x0, span[1], tol));
    pf.backward = std::make_shared<ode::Trajectory<double>>(
        ode::integrate<double>(rhs, {phi0}, x0, span[0], tol));
    auto fwd = pf.forward;
    auto bwd = pf.backward;
    pf.complete = [fwd, bwd, x0, a, b, s](double x, int var) {
        const auto st = x >= x0 ? fwd->eval(x) : bwd->eval(x);
        const auto jet_rhs = [a, b, s](const Jet3& m) {
            const Jet3 m2 = m * m;
            return s * sqrt(m2 * m2 + (a + b) * m2 + a * b);
        };
        return ode::ode_jet_complete(Jet3::constant(st[0]), jet_rhs, var);
    };
    return pf;
}

/// F'' = 2 K_N F^3 + c F with F > 0 along the span; initial data at `anchor`
/// (span start when omitted).
inline ProfileFunction solve_F_profile(double K_N, double c, double F0, double F0p,
                                       std::array<double, 2> span, double tol = 1e-10,
                                       std::optional<double> anchor = std::nullopt) {
    if (!(F0 > 0.0)) throw ConstructionError("F profile requires F(x0) > 0");
    ode::Rhs<double> rhs = [K_N, c](double, const std::vector<double>& y) {
        return std::vector<double>{y[1], 2.0 * K_N * y[0] * y[0] * y[0] + c * y[0]};
    };
    const double x0 = anchor.value_or(span[0]);
    ProfileFunction pf;
    pf.kind = ProfileFunction::Kind::OdeTrajectory;
    pf.domain = span;
    pf.forward = std::make_shared<ode::Trajectory<double>>(
        ode::integrate<double>(rhs, {F0, F0p}, x0, span[1], tol));
    pf.backward = std::make_shared<ode::Trajectory<double>>(
        ode::integrate<double>(rhs, {F0, F0p}, x0, span[0], tol));
    for (const auto* traj : {pf.forward.get(), pf.backward.get()})
        for (std::size_t i = 0; i < traj->grid.size(); ++i)
            if (traj->states[i][0] <= 1e-8)
                throw ConstructionError("F profile reaches zero inside the span; domain "
                                        "truncated at x = " +
                                        std::to_string(traj->grid[i]));
    auto fwd = pf.forward;
    auto bwd = pf.backward;
    pf.complete = [fwd, bwd, x0, K_N, c](double x, int var) {
        const auto st = x >= x0 ? fwd->eval(x) : bwd->eval(x);
        const auto jet_rhs = [K_N, c](const std::vector<Jet3>& y) {
            return std::vector<Jet3>{y[1], 2.0 * K_N * y[0] * y[0] * y[0] + c * y[0]};
        };
        const auto jets = ode::ode_jet_complete_system(
            {Jet3::constant(st[0]), Jet3::constant(st[1])}, jet_rhs, var);
        return jets[0];
    };
    return pf;
}

/// Base profile of the two-surface warped family: mu(x, y) solved in y with x
/// carried as a jet parameter (variable 2), together with the variational
/// state d(mu)/dx so that the chart coefficient a = mu_x / mu_y keeps full jet
/// order.
struct MuProfile {
    ProfileExpr D, Dp;
    double C, c, e, K_N, mu0, y0;
    double sign = 1.0;
    double ode_tol = 1e-10;

    // mu_y^2 = (2 mu / (mu + D)) (2 K_N / c - mu((mu + C)^2 + e)); with the
    // opposite radicand sign the equation still has solutions, but the charts
    // they generate fail the conformal-flatness residuals (the acceptance
    // suite records that check).
    template <class T>
    T radicand(const T& mu, const T& Dv) const {
        const T N = numerator(mu);
        return N / (mu + Dv);
    }
    template <class T>
    T numerator(const T& mu) const {
        const T w = T(2.0 * K_N / c);
        return 2.0 * mu * (w - mu * ((mu + C) * (mu + C) + e));
    }
    template <class T>
    T numerator_dmu(const T& mu) const {
        return T(2.0 * (2.0 * K_N / c)) - 4.0 * mu * ((mu + C) * (mu + C) + e) -
               4.0 * (mu * mu) * (mu + C);
    }

    double value(double x, double y) const {
        const double Dv = D.eval(x);
        ode::Rhs<double> rhs = [this, Dv](double, const std::vector<double>& s) {
            const double q = radicand(s[0], Dv);
            if (q < 1e-10)
                throw IntegrationError("mu profile: radicand sign failure (mu = " +
                                       std::to_string(s[0]) + ")");
            return std::vector<double>{sign * std::sqrt(q)};
        };
        return ode::integrate<double>(rhs, {mu0}, y0, y, ode_tol).final_state()[0];
    }

    struct Jets {
        Jet3 mu, mu_x, mu_y;
    };

    Jets jets(double x, double y) const {
        const Jet3 Dj = D.eval(Jet3::variable(x, 2));
        const Jet3 Dpj = Dp.eval(Jet3::variable(x, 2));

        auto G = [this, &Dj](const Jet3& mu) {
            const Jet3 q = radicand(mu, Dj);
            if (q.value() < 1e-10)
                throw IntegrationError("mu profile: radicand sign failure (mu = " +
                                       std::to_string(mu.value()) + ")");
            return sign * sqrt(q);
        };
        // d(nu)/dy for nu = d(mu)/dx, from the variational equation
        auto H = [this, &Dj, &Dpj, &G](const Jet3& mu, const Jet3& nu) {
            const Jet3 N = numerator(mu);
            const Jet3 Np = numerator_dmu(mu);
            const Jet3 denom = mu + Dj;
            const Jet3 Qmu = (Np * denom - N) / (denom * denom);
            const Jet3 QD = -N / (denom * denom);
            return (Qmu * nu + QD * Dpj) / (2.0 * G(mu));
        };

        ode::Rhs<Jet3> rhs = [&G, &H](double, const std::vector<Jet3>& s) {
            return std::vector<Jet3>{G(s[0]), H(s[0], s[1])};
        };
        const auto traj =
            ode::integrate<Jet3>(rhs, {Jet3::constant(mu0), Jet3::constant(0.0)}, y0, y, ode_tol);
        const auto st = traj.final_state();

        const auto jet_rhs = [&G, &H](const std::vector<Jet3>& s) {
            return std::vector<Jet3>{G(s[0]), H(s[0], s[1])};
        };
        const auto full = ode::ode_jet_complete_system({st[0], st[1]}, jet_rhs, 3);
        return Jets{full[0], full[1], G(full[0])};
    }
};

/// Rejects degenerate inputs (the family requires D != 0 and D' != 0) and
/// packages the mu equation for evaluation at arbitrary (x, y).
inline MuProfile solve_mu_profile(const ProfileExpr& D, double C, double c, double e,
                                  double K_N, double mu0, double y0, int sign = 1,
                                  double tol = 1e-10) {
    if (c == 0.0) throw ConstructionError("mu profile requires c != 0");
    if (sign != 1 && sign != -1) throw ConstructionError("mu branch must be +1 or -1");
    const ProfileExpr Dp = D.derivative();
    bool dp_zero = true;
    for (double coef : Dp.coeffs)
        if (coef != 0.0) dp_zero = false;
    if (Dp.kind == ProfileExpr::Kind::Poly && dp_zero)
        throw ConstructionError("mu profile requires D'(x) != 0 (constant D rejected)");
    return MuProfile{D, Dp, C, c, e, K_N, mu0, y0, static_cast<double>(sign), tol};
}

/// Residuals of the profile equation for F = 1/f in both printed variants:
/// first the second-order form F'' = 2 K_N F^3 + c F, then the squared form
/// (F'')^2 = 2 K_N F^3 + c F.  Evaluated from exact jets of the closed form.
inline std::pair<double, double> warp_ode_residuals(const ProfileExpr& f, double K_N, double c,
                                                    double x) {
    const Jet3 F = 1.0 / f.eval(Jet3::variable(x, 0));
    const double Fpp = F.partial(0, 0);
    const double rhs = 2.0 * K_N * std::pow(F.value(), 3) + c * F.value();
    return {std::abs(Fpp - rhs), std::abs(Fpp * Fpp - rhs)};
}

} // namespace curv4::catalog
