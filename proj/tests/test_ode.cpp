#include <doctest.h>

#include <cmath>
#include <vector>

#include "curv4/jet.hpp"
#include "curv4/ode.hpp"

using curv4::Jet3;
namespace ode = curv4::ode;

namespace {

ode::Rhs<double> scalar_rhs(double (*f)(double, double)) {
    return [f](double t, const std::vector<double>& y) { return std::vector<double>{f(t, y[0])}; };
}

} // namespace

TEST_CASE("exponential growth reaches e") {
    auto traj = ode::integrate<double>(
        scalar_rhs([](double, double y) { return y; }), {1.0}, 0.0, 1.0, 1e-10);
    CHECK(traj.final_state()[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-9));

    // backward span
    auto back = ode::integrate<double>(
        scalar_rhs([](double, double y) { return y; }), {1.0}, 0.0, -1.0, 1e-10);
    CHECK(back.final_state()[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("jet-valued states integrate like scalars") {
    ode::Rhs<Jet3> rhs = [](double, const std::vector<Jet3>& y) {
        return std::vector<Jet3>{y[0]};
    };
    auto traj = ode::integrate<Jet3>(rhs, {Jet3::constant(1.0)}, 0.0, 1.0, 1e-10);
    CHECK(traj.final_state()[0].value() == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
}

TEST_CASE("dense output: exact at nodes, integrator-accurate between") {
    ode::Rhs<double> rhs = [](double t, const std::vector<double>& y) {
        return std::vector<double>{std::sin(t) * y[0] + std::cos(2.0 * t)};
    };
    auto traj = ode::integrate<double>(rhs, {0.3}, 0.0, 2.0, 1e-10);
    REQUIRE(traj.grid.size() > 2);

    // grid states reproduced exactly
    for (std::size_t i = 0; i < traj.grid.size(); ++i)
        CHECK(traj.eval(traj.grid[i])[0] == traj.states[i][0]);

    // interior query agrees with a direct integration to the same abscissa
    const double t = 1.234567;
    auto direct = ode::integrate<double>(rhs, {0.3}, 0.0, t, 1e-12);
    CHECK(std::abs(traj.eval(t)[0] - direct.final_state()[0]) < 1e-8);

    CHECK_THROWS_AS(traj.eval(2.5), curv4::ArgumentError);
    CHECK_THROWS_AS(ode::integrate<double>(rhs, {0.3}, 0.0, 1.0, 0.0), curv4::ArgumentError);
}

TEST_CASE("tolerance scaling: tol vs tol/10 agree within 10*tol") {
    ode::Rhs<double> rhs = [](double t, const std::vector<double>& y) {
        return std::vector<double>{std::sin(t) * y[0] + std::cos(2.0 * t)};
    };
    for (double tol : {1e-6, 1e-8, 1e-10}) {
        auto a = ode::integrate<double>(rhs, {0.3}, 0.0, 2.0, tol);
        auto b = ode::integrate<double>(rhs, {0.3}, 0.0, 2.0, tol / 10.0);
        CHECK(std::abs(a.final_state()[0] - b.final_state()[0]) < 10.0 * tol);
    }
}

TEST_CASE("step underflow near a singularity reports the abscissa") {
    // y' = y / (1 - t) blows up at t = 1
    ode::Rhs<double> rhs = [](double t, const std::vector<double>& y) {
        return std::vector<double>{y[0] / (1.0 - t)};
    };
    CHECK_THROWS_AS(ode::integrate<double>(rhs, {1.0}, 0.0, 2.0, 1e-10),
                    curv4::IntegrationError);
}

TEST_CASE("profile ODE F'' = 2 K F^3 + c F reproduces 1/(x+b)") {
    // K=1, c=0, F(0)=1, F'(0)=-1 has the closed form F = 1/(x+1)
    ode::Rhs<double> rhs = [](double, const std::vector<double>& y) {
        return std::vector<double>{y[1], 2.0 * y[0] * y[0] * y[0]};
    };
    auto traj = ode::integrate<double>(rhs, {1.0, -1.0}, 0.0, 0.5, 1e-11);
    for (double x : {0.1, 0.3, 0.5}) {
        auto s = traj.eval(x);
        CHECK(std::abs(s[0] - 1.0 / (x + 1.0)) < 1e-9);
        CHECK(std::abs(s[1] + 1.0 / ((x + 1.0) * (x + 1.0))) < 1e-9);
    }
}

TEST_CASE("jet completion from a first-order flow") {
    // phi' = sqrt(phi^4 + 3 phi^2 + 2)  (the a=1, b=2 radicand), phi(0)=1:
    // phi'(0) = sqrt(6), phi''(0) = 2 phi^3 + 3 phi = 5, phi''' = (6 phi^2 + 3) phi'
    const auto rhs = [](const Jet3& m) { return sqrt(m * m * m * m + 3.0 * m * m + 2.0); };
    Jet3 phi = ode::ode_jet_complete(Jet3::constant(1.0), rhs, 0);
    CHECK(phi.value() == doctest::Approx(1.0));
    CHECK(phi.partial(0) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-13));
    CHECK(phi.partial(0, 0) == doctest::Approx(5.0).epsilon(1e-13));
    CHECK(phi.partial(0, 0, 0) == doctest::Approx(9.0 * std::sqrt(6.0)).epsilon(1e-13));
}

TEST_CASE("jet completion of a second-order system carries parameters") {
    // F'' = 2 F^3 with parameter dependence through the initial value carried
    // as a jet in x2: F(0) = 1 + s, F'(0) = -1; closed form at s=0 known above.
    std::vector<Jet3> base{Jet3::variable(1.0, 2), Jet3::constant(-1.0)};
    const auto rhs = [](const std::vector<Jet3>& y) {
        return std::vector<Jet3>{y[1], 2.0 * y[0] * y[0] * y[0]};
    };
    auto jets = ode::ode_jet_complete_system(base, rhs, 0);
    CHECK(jets[0].partial(0) == doctest::Approx(-1.0));
    CHECK(jets[0].partial(0, 0) == doctest::Approx(2.0));  // F'' = 2 F^3 at F=1
    CHECK(jets[1].partial(0) == doctest::Approx(2.0));
    // mixed partial d/ds d/dx F = dF''/ds ... first order in each:
    // d/ds F''(0) = 6 F^2 dF/ds = 6 -> d/ds F'(x) slot:
    CHECK(jets[1].partial(2) == doctest::Approx(0.0));
    CHECK(jets[0].partial(0, 2) == doctest::Approx(0.0));
    CHECK(jets[1].partial(0, 2) == doctest::Approx(6.0)); // d/ds of F''
}
