#include <doctest.h>

#include <cstdlib>

#include "curv4/classify.hpp"
#include "curv4/report.hpp"
#include "test_charts.hpp"

using namespace curv4;
using catalog::Family;

namespace {

ConditionReport classify_family(Family f, std::array<int, 4> counts) {
    auto spec = catalog::default_spec(f);
    spec.grid_counts = counts;
    return classify(catalog::build_family(spec));
}

} // namespace

TEST_CASE("space form report: everything satisfied, pattern [4]") {
    const auto rep = classify_family(Family::I, {3, 3, 3, 3});
    for (const char* key : {"lcf", "p", "q", "parallel_ricci", "constant_eigenvalues"})
        CHECK_MESSAGE(rep.verdict(key) == Verdict::satisfied, key);
    CHECK(rep.modal_pattern == std::vector<int>{4});
    CHECK(rep.points.size() == 81);
}

TEST_CASE("sextic family report: LCF/P/Q hold, Ricci neither parallel nor constant") {
    const auto rep = classify_family(Family::VII, {3, 3, 3, 3});
    CHECK(rep.verdict("lcf") == Verdict::satisfied);
    CHECK(rep.verdict("p") == Verdict::satisfied);
    CHECK(rep.verdict("q") == Verdict::satisfied);
    CHECK(rep.verdict("parallel_ricci") == Verdict::violated);
    CHECK(rep.verdict("constant_eigenvalues") == Verdict::violated);
    CHECK(rep.modal_pattern == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("generic 1-3 warped product: P-space but not Q-space") {
    const auto rep = classify_family(Family::III1, {4, 3, 3, 3});
    CHECK(rep.verdict("lcf") == Verdict::satisfied);
    CHECK(rep.verdict("p") == Verdict::satisfied);
    CHECK(rep.verdict("q") == Verdict::violated);
    CHECK(rep.max_residuals.q_explicit > 1e-4);
}

TEST_CASE("quartic-profile family: Ricci never parallel") {
    const auto rep = classify_family(Family::VI, {4, 2, 2, 2});
    CHECK(rep.verdict("parallel_ricci") == Verdict::violated);
    CHECK(rep.max_residuals.nabla_ricci > 1e-3);
    CHECK(rep.verdict("constant_eigenvalues") == Verdict::violated);
}

TEST_CASE("constant eigenvalues and parallel Ricci coincide on LCF samples") {
    for (Family f : {Family::I, Family::II, Family::R2a, Family::R2b, Family::R2c, Family::VI,
                     Family::VII, Family::III1}) {
        CAPTURE(catalog::family_name(f));
        const auto rep = classify_family(f, {3, 2, 2, 2});
        if (rep.verdict("lcf") != Verdict::satisfied) continue;
        const bool constant = rep.verdict("constant_eigenvalues") == Verdict::satisfied;
        const bool parallel = rep.verdict("parallel_ricci") == Verdict::satisfied;
        CHECK(constant == parallel);
    }
}

TEST_CASE("aggregates: max dominates median, eigen ranges ordered") {
    const auto rep = classify_family(Family::VI, {3, 2, 2, 2});
    CHECK(rep.max_residuals.weyl_norm >= rep.median_residuals.weyl_norm);
    CHECK(rep.max_residuals.q_explicit >= rep.median_residuals.q_explicit);
    for (int s = 0; s < 4; ++s) CHECK(rep.eigen_range[s][0] <= rep.eigen_range[s][1]);
    REQUIRE(rep.max_residuals.stackel.has_value());
    CHECK(*rep.max_residuals.stackel < 1e-9);
}

TEST_CASE("classification is deterministic, also across thread counts") {
    const auto r1 = classify_family(Family::VI, {3, 2, 2, 2});
    const auto r2 = classify_family(Family::VI, {3, 2, 2, 2});
    CHECK(report::to_json(r1) == report::to_json(r2));

    setenv("CURV4_THREADS", "3", 1);
    const auto r3 = classify_family(Family::VI, {3, 2, 2, 2});
    unsetenv("CURV4_THREADS");
    CHECK(report::to_json(r1) == report::to_json(r3));
}

TEST_CASE("grid refinement does not flip verdicts") {
    for (Family f : {Family::II, Family::VII}) {
        CAPTURE(catalog::family_name(f));
        const auto coarse = classify_family(f, {3, 3, 3, 3});
        const auto fine = classify_family(f, {6, 6, 6, 6});
        REQUIRE(coarse.verdicts.size() == fine.verdicts.size());
        for (std::size_t i = 0; i < coarse.verdicts.size(); ++i) {
            CHECK(coarse.verdicts[i].first == fine.verdicts[i].first);
            CHECK(coarse.verdicts[i].second == fine.verdicts[i].second);
        }
    }
}

TEST_CASE("the two P-space formulations agree pointwise under W = 0") {
    for (Family f : {Family::I, Family::III1, Family::IV, Family::VI, Family::VIII}) {
        CAPTURE(catalog::family_name(f));
        const auto rep = classify_family(f, {3, 2, 2, 2});
        for (const auto& p : rep.points) {
            if (p.residuals.weyl_norm >= 1e-8) continue;
            CHECK((p.residuals.p_quadratic < 1e-7) == (p.residuals.p_commutator < 1e-7));
        }
    }
}

TEST_CASE("on Staeckel charts the cross-pairing identity tracks the Weyl tensor") {
    // d1 < 1e-8 iff weyl < 1e-8, pointwise: an LCF family and a non-LCF one
    for (Family f : {Family::VII, Family::S1, Family::S4}) {
        CAPTURE(catalog::family_name(f));
        const auto rep = classify_family(f, {2, 3, 3, 3});
        for (const auto& p : rep.points) {
            if (!p.residuals.d1) continue;
            CHECK((*p.residuals.d1 < 1e-8) == (p.residuals.weyl_norm < 1e-8));
        }
    }
}

TEST_CASE("empty grids are rejected") {
    // every grid point violates the conformal-factor domain of a k < 0 space form
    auto spec = catalog::default_spec(Family::I);
    spec.params["k"] = -4.0;
    spec.box = {{{0.9, 1.2}, {0.9, 1.2}, {0.9, 1.2}, {0.9, 1.2}}};
    SampleGrid grid{spec.box, {2, 2, 2, 2}, 0.05};
    MetricChart chart = testch::space_form(-4.0);
    CHECK_THROWS_AS(classify(chart, spec, grid, Tolerances{}), ArgumentError);
}

TEST_CASE("seed changes the direction set but not the verdicts") {
    auto spec = catalog::default_spec(Family::IV);
    spec.grid_counts = {2, 2, 3, 3};
    const auto bf = catalog::build_family(spec);
    const auto ra = classify(bf, 12345);
    const auto rb = classify(bf, 999);
    CHECK(report::to_json(ra) != report::to_json(rb)); // provenance and residual extrema differ
    for (std::size_t i = 0; i < ra.verdicts.size(); ++i)
        CHECK(ra.verdicts[i].second == rb.verdicts[i].second);
}
