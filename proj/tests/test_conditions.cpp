#include <doctest.h>

#include <cmath>

#include "curv4/conditions.hpp"
#include "test_charts.hpp"

using namespace curv4;

namespace {

// Staeckel solution of the first kind: mu1^2=1, mu2^2=eta(x1),
// mu3^2=eta(x1)psi(x2), mu4^2=eta(x1)phi(x2)
MetricChart stackel_one(bool trivial_fibers) {
    MetricChart c;
    c.name = "stackel_one";
    c.diagonal = true;
    c.components = [trivial_fibers](const Point4& p) {
        auto x = point_jets(p);
        const Jet3 eta = exp(x[0]);
        const Jet3 psi = trivial_fibers ? Jet3::constant(1.0) : 1.0 + x[1] * x[1];
        const Jet3 phi = trivial_fibers ? Jet3::constant(1.0) : 2.0 + x[1] * x[1];
        return diagonal_metric({Jet3::constant(1.0), eta, eta * psi, eta * phi});
    };
    return c;
}

MetricChart negative_control_exponential() {
    MetricChart c;
    c.name = "exp_x1x2";
    c.diagonal = true;
    c.components = [](const Point4& p) {
        auto x = point_jets(p);
        return diagonal_metric({Jet3::constant(1.0), Jet3::constant(1.0), exp(x[0] * x[1]),
                                Jet3::constant(1.0)});
    };
    return c;
}

MetricChart off_diagonal_chart() {
    MetricChart c;
    c.name = "off_diagonal";
    c.diagonal = false;
    c.components = [](const Point4&) {
        Mat4Jet g{};
        for (int i = 0; i < 4; ++i) g[m4(i, i)] = Jet3::constant(1.0);
        g[m4(0, 1)] = g[m4(1, 0)] = Jet3::constant(0.1);
        return g;
    };
    return c;
}

} // namespace

TEST_CASE("space form: every condition residual vanishes") {
    auto chart = testch::space_form(1.0);
    auto b = curvature_bundle(chart, {0.2, 0.1, -0.3, 0.4});
    const auto dirs = DirectionSet::make(12345);
    const ResidualSet r = evaluate_residuals(chart, b, dirs);
    CHECK(r.weyl_norm < 1e-12);
    CHECK(r.cotton < 1e-12);
    CHECK(r.q_general < 1e-12);
    CHECK(r.q_explicit < 1e-12);
    CHECK(r.p_commutator < 1e-12);
    CHECK(r.p_quadratic < 1e-12);
    CHECK(r.codazzi < 1e-12);
    CHECK(r.killing < 1e-12);
    CHECK(r.nabla_ricci < 1e-12);
}

TEST_CASE("the two Q-space forms agree to rounding everywhere") {
    const auto dirs = DirectionSet::make(12345);
    for (const auto& chart : {testch::space_form(-0.5), testch::generic_diagonal(),
                              testch::surface_product(1.0, 1.0), testch::conformal_quadratic()}) {
        for (const Point4& p :
             {Point4{0.2, 0.1, -0.3, 0.4}, Point4{-0.4, 0.3, 0.2, -0.1}}) {
            auto b = curvature_bundle(chart, p);
            const auto [qg, qe] = q_residual(b);
            CHECK(std::abs(qg - qe) / (1.0 + std::max(qg, qe)) < 1e-12);
        }
    }
}

TEST_CASE("Cotton identity holds on conformally flat charts") {
    for (const auto& chart : {testch::space_form(1.0), testch::surface_product(1.0, -1.0),
                              testch::conformal_quadratic()}) {
        auto b = curvature_bundle(chart, {0.25, 0.1, -0.2, 0.3});
        REQUIRE(weyl_norm_residual(b) < 1e-9);
        CHECK(cotton_residual(b) < 1e-7);
    }
    // not asserted for a non-LCF chart, only recorded
    auto b = curvature_bundle(testch::surface_product(1.0, 1.0), {0.25, 0.1, -0.2, 0.3});
    MESSAGE("cotton residual on S2 x S2: ", cotton_residual(b));
}

TEST_CASE("structureless diagonal metric is not a P-space (negative control)") {
    auto chart = testch::generic_diagonal();
    auto b = curvature_bundle(chart, {0.3, 0.2, -0.4, 0.6});
    const auto dirs = DirectionSet::make(12345);
    const auto [pc, pq] = p_residual(b, dirs);
    CHECK(pc > 1e-3);
    CHECK(pq > 1e-6);
}

TEST_CASE("P-quadratic and P-commutator verdicts coincide under W = 0") {
    const auto dirs = DirectionSet::make(12345);
    for (const auto& chart : {testch::space_form(1.0), testch::surface_product(1.0, -1.0),
                              testch::conformal_quadratic()}) {
        for (const Point4& p : {Point4{0.2, 0.1, -0.3, 0.4}, Point4{0.05, -0.2, 0.4, 0.15}}) {
            auto b = curvature_bundle(chart, p);
            if (weyl_norm_residual(b) >= 1e-8) continue;
            const auto [pc, pq] = p_residual(b, dirs);
            const bool small_c = pc < 1e-7, small_q = pq < 1e-7;
            CHECK_MESSAGE(small_c == small_q, chart.name, " pc=", pc, " pq=", pq);
        }
    }
}

TEST_CASE("Staeckel residuals: solution, negative control, argument guard") {
    auto good = stackel_one(true);
    CHECK(stackel_residual(good, {0.3, 0.2, 0.1, 0.4}) < 1e-10);
    auto good2 = stackel_one(false);
    CHECK(stackel_residual(good2, {0.3, 0.2, 0.1, 0.4}) < 1e-10);

    auto bad = negative_control_exponential();
    CHECK(stackel_residual(bad, {0.7, 0.4, 0.1, 0.2}) == doctest::Approx(0.5).epsilon(1e-9));

    CHECK_THROWS_AS(stackel_residual(off_diagonal_chart(), {0, 0, 0, 0}), ArgumentError);
}

TEST_CASE("d1 combination equals the same Weyl combination on any diagonal chart") {
    auto chart = testch::generic_diagonal();
    const Point4 p{0.3, 0.2, -0.4, 0.6};
    auto b = curvature_bundle(chart, p);
    auto pair_sum = [&](const Ten4& T) {
        auto K = [&](int a, int c) {
            return T[t4(a, c, c, a)] / (b.g[m4(a, a)].value() * b.g[m4(c, c)].value());
        };
        return std::array<double, 3>{K(0, 1) + K(2, 3), K(0, 2) + K(1, 3), K(0, 3) + K(1, 2)};
    };
    const auto from_R = pair_sum(b.riemann_values());
    const auto from_W = pair_sum(b.weyl);
    for (int c = 0; c < 3; ++c)
        for (int d = c + 1; d < 3; ++d)
            CHECK(std::abs((from_R[c] - from_R[d]) - (from_W[c] - from_W[d])) < 1e-9);
}

TEST_CASE("diagonal checks: applicable on a Staeckel chart, guarded otherwise") {
    auto good = stackel_one(false);
    const Point4 p{0.3, 0.2, 0.1, 0.4};
    const auto checks = diagonal_condition_checks(good, p);
    REQUIRE_MESSAGE(checks.applicable, checks.reason);
    MESSAGE("stackel_one d1=", checks.d1, " p1=", checks.p1);

    const auto blocked = diagonal_condition_checks(negative_control_exponential(), {0.7, 0.4, 0.1, 0.2});
    CHECK_FALSE(blocked.applicable);
    CHECK(blocked.reason == "Staeckel residual above threshold");
}
