// Acceptance suite: one pass/fail line per criterion, exit status = number of
// failed criteria.  Thresholds are fixed here, not tunable from outside.

#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "curv4/app.hpp"
#include "curv4/catalog.hpp"
#include "curv4/classify.hpp"
#include "curv4/conditions.hpp"
#include "curv4/oracle.hpp"
#include "curv4/report.hpp"
#include "curv4/rng.hpp"
#include "residual_checks.hpp"

using namespace curv4;
using catalog::BuiltFamily;
using catalog::Family;
using catalog::FamilySpec;
using catalog::ProfileExpr;

namespace {

Jet3 conf2_factor_local(double k, const Jet3& u, const Jet3& v) {
    const Jet3 w = 1.0 + (k / 4.0) * (u * u + v * v);
    return reciprocal(w * w);
}

int g_failures = 0;

void outcome(int idx, const std::string& what, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s - %s (%s)\n", idx, pass ? "PASS" : "FAIL", what.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

std::string num(double v) { return report::fmt(v); }

struct Defaults {
    std::map<Family, BuiltFamily> built;
    std::map<Family, ConditionReport> reports;
};

Defaults compute_defaults() {
    Defaults d;
    for (Family f : catalog::all_families()) {
        d.built.emplace(f, catalog::build_family(catalog::default_spec(f)));
        d.reports.emplace(f, classify(d.built.at(f)));
    }
    return d;
}

// 1. Riemann symmetries, first and contracted second Bianchi, Weyl traces.
void criterion1(const Defaults& d) {
    double worst = 0.0;
    std::string where;
    long points = 0;
    for (const auto& [fam, bf] : d.built) {
        SampleGrid grid{bf.spec.box, bf.spec.grid_counts, bf.spec.grid_margin};
        for (const auto& p : grid.points(bf.chart)) {
            const auto b = curvature_bundle(bf.chart, p);
            const double r = std::max({testres::riemann_symmetry_residual(b),
                                       testres::contracted_bianchi_residual(b),
                                       testres::weyl_trace_residual(b)});
            ++points;
            if (r > worst) {
                worst = r;
                where = catalog::family_name(fam);
            }
        }
    }
    outcome(1, "tensor identities below 1e-8 on every catalog grid point", worst < 1e-8,
            "worst " + num(worst) + " at family " + where + ", " + std::to_string(points) +
                " points");
}

// 2. Pipeline curvature equals the diagonal-metric formulas from the nu-jets.
void criterion2(const Defaults& d) {
    const std::vector<Family> diag = {Family::S1, Family::S2, Family::S3, Family::S4,
                                      Family::S5, Family::S6, Family::S7, Family::S8,
                                      Family::S9, Family::S10, Family::VI, Family::VII,
                                      Family::VIII, Family::IX};
    double worst = 0.0;
    std::string where;
    for (Family f : diag) {
        const auto& bf = d.built.at(f);
        SampleGrid grid{bf.spec.box, bf.spec.grid_counts, bf.spec.grid_margin};
        for (const auto& p : grid.points(bf.chart)) {
            const auto b = curvature_bundle(bf.chart, p);
            const auto nu = oracle::log_coefficients(b.g);
            double scale = 1.0, resid = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    if (i == j) continue;
                    int rest[2], n = 0;
                    for (int m = 0; m < 4; ++m)
                        if (m != i && m != j) rest[n++] = m;
                    const double o1 = oracle::diag_R_jij(b.g, nu, i, j, rest[0], rest[1]);
                    const double p1 =
                        b.g_inv[m4(i, i)].value() * b.riemann[t4(i, j, j, i)].value();
                    scale = std::max(scale, std::abs(o1));
                    resid = std::max(resid, std::abs(o1 - p1));
                    for (int k = 0; k < 4; ++k) {
                        if (k == i || k == j) continue;
                        const double o2 = oracle::diag_R_kij(nu, i, j, k);
                        const double p2 =
                            b.g_inv[m4(i, i)].value() * b.riemann[t4(i, j, k, i)].value();
                        scale = std::max(scale, std::abs(o2));
                        resid = std::max(resid, std::abs(o2 - p2));
                    }
                }
            if (resid / scale > worst) {
                worst = resid / scale;
                where = catalog::family_name(f);
            }
        }
    }
    outcome(2, "diagonal-formula oracle equivalence below 1e-10", worst < 1e-10,
            "worst " + num(worst) + " at family " + where);
}

// 3. Classification matrix.
void criterion3(const Defaults& d) {
    bool pass = true;
    std::ostringstream detail;
    for (Family f : {Family::I, Family::II, Family::III2, Family::IV, Family::V, Family::VI,
                     Family::VII, Family::VIII, Family::IX}) {
        const auto& rep = d.reports.at(f);
        const bool ok = rep.verdict("lcf") == Verdict::satisfied &&
                        rep.verdict("p") == Verdict::satisfied &&
                        rep.verdict("q") == Verdict::satisfied;
        if (!ok) {
            pass = false;
            detail << catalog::family_name(f) << "{lcf=" << verdict_name(rep.verdict("lcf"))
                   << ",p=" << verdict_name(rep.verdict("p"))
                   << ",q=" << verdict_name(rep.verdict("q")) << "} ";
        }
    }
    {
        const auto& rep = d.reports.at(Family::III1); // default warp f = 1 + x^2
        const bool ok = rep.verdict("lcf") == Verdict::satisfied &&
                        rep.verdict("p") == Verdict::satisfied &&
                        rep.verdict("q") == Verdict::violated &&
                        rep.max_residuals.q_explicit > 1e-4;
        if (!ok) {
            pass = false;
            detail << "III1{lcf=" << verdict_name(rep.verdict("lcf"))
                   << ",p=" << verdict_name(rep.verdict("p"))
                   << ",q=" << verdict_name(rep.verdict("q"))
                   << ",max_q=" << num(rep.max_residuals.q_explicit) << "} ";
        }
    }
    outcome(3, "classification matrix (I..IX all LCF/P/Q; III1 fails Q only)", pass,
            pass ? "all verdict rows match" : detail.str());
}

// 4. Closed-form eigenvalue reproduction.
void criterion4(const Defaults& d) {
    bool pass = true;
    std::ostringstream detail;

    { // type VI at phi^2 = 1 (x1 = 0 lies on the default grid)
        const auto& bf = d.built.at(Family::VI);
        const auto s = ricci_spectrum(curvature_bundle(bf.chart, {0.0, 0.3, 0.5, 0.7}));
        const double want[4] = {-6.0, -8.0, -10.0, -12.0};
        double err = 0.0;
        for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(s.eigenvalues[i] - want[i]));
        if (err > 1e-6) pass = false;
        detail << "VI err " << num(err);
    }
    { // type VII with a6 = 4, a5 = 0
        auto spec = catalog::default_spec(Family::VII);
        spec.profiles["P"] = catalog::poly_from_roots({1.5, 3.5, 5.5, -3.0, -3.25, -4.25}, 4.0);
        const auto bf = catalog::build_family(spec);
        SampleGrid grid{spec.box, spec.grid_counts, spec.grid_margin};
        double err = 0.0;
        for (const auto& p : grid.points(bf.chart)) {
            const auto s = ricci_spectrum(curvature_bundle(bf.chart, p));
            // coordinates ascend across the separated ranges, eigenvalues descend
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    err = std::max(err, std::abs((s.eigenvalues[i] - s.eigenvalues[j]) -
                                                 (-2.0) * (p[i] - p[j])));
        }
        if (err > 1e-6) pass = false;
        detail << "; VII err " << num(err);
    }
    { // type III1 with f = x, K_N = 1: flat
        auto spec = catalog::default_spec(Family::III1);
        spec.profiles["f"] = ProfileExpr::poly({0.0, 1.0});
        spec.box[0] = {0.5, 1.5};
        const auto bf = catalog::build_family(spec);
        SampleGrid grid{spec.box, spec.grid_counts, spec.grid_margin};
        double err = 0.0;
        for (const auto& p : grid.points(bf.chart)) {
            const auto s = ricci_spectrum(curvature_bundle(bf.chart, p));
            for (double ev : s.eigenvalues) err = std::max(err, std::abs(ev));
        }
        if (err > 1e-8) pass = false;
        detail << "; III1(f=x) err " << num(err);
    }
    outcome(4, "closed-form eigenvalue reproduction (VI, VII, III1)", pass, detail.str());
}

// 5. Parallel-Ricci warp profiles and the profile-equation form.
void criterion5(const Defaults& d) {
    bool pass = true;
    std::ostringstream detail;
    for (Family f : {Family::R2a, Family::R2b, Family::R2c}) {
        const double nr = d.reports.at(f).max_residuals.nabla_ricci;
        if (nr >= 1e-7) pass = false;
        detail << catalog::family_name(f) << " nabla_ricci " << num(nr) << "; ";
    }
    // the second-order profile equation: unsquared holds, squared does not
    const struct {
        const char* tag;
        ProfileExpr f;
        double K_N, c;
    } cases[] = {
        {"R2a", ProfileExpr::poly({1.0, 1.0}), 1.0, 0.0},
        {"R2b", ProfileExpr::exp2(1.0, 1.0, 1.0), -4.0, 1.0},
    };
    for (const auto& cs : cases) {
        double lin = 0.0, sq = 0.0;
        for (int i = 0; i <= 16; ++i) {
            const double x = 0.025 + (0.475 - 0.025) * i / 16.0;
            const auto [l, s] = catalog::warp_ode_residuals(cs.f, cs.K_N, cs.c, x);
            lin = std::max(lin, l);
            sq = std::max(sq, s);
        }
        if (lin >= 1e-9 || sq <= 1e-2) pass = false;
        detail << cs.tag << " unsquared " << num(lin) << ", squared " << num(sq) << "; ";
    }
    outcome(5, "parallel-Ricci regression and profile-equation form", pass, detail.str());
}

// 6. Staeckel suite with the mixed-exponential negative control.
void criterion6(const Defaults& d) {
    bool pass = true;
    double worst = 0.0;
    for (Family f : {Family::S1, Family::S2, Family::S3, Family::S4, Family::S5, Family::S6,
                     Family::S7, Family::S8, Family::S9, Family::S10}) {
        const auto& mx = d.reports.at(f).max_residuals;
        if (!mx.stackel || *mx.stackel >= 1e-9) pass = false;
        if (mx.stackel) worst = std::max(worst, *mx.stackel);
    }

    MetricChart control;
    control.name = "exp_x1x2_control";
    control.diagonal = true;
    control.components = [](const Point4& p) {
        auto x = point_jets(p);
        return diagonal_metric({Jet3(1.0), Jet3(1.0), exp(x[0] * x[1]), Jet3(1.0)});
    };
    SampleGrid grid{{{{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}}, {5, 5, 5, 5}, 0.05};
    double control_err = 0.0;
    for (const auto& p : grid.points(control))
        control_err = std::max(control_err, std::abs(stackel_residual(control, p) - 0.5));
    if (control_err >= 1e-9) pass = false;

    outcome(6, "Staeckel residuals < 1e-9 on S1..S10; control reports 0.5", pass,
            "worst family residual " + num(worst) + ", control deviation " + num(control_err));
}

// 7. No sampled point is conformally flat and Q without being P.
void criterion7(const Defaults& d) {
    long checked = 0;
    long violations = 0;
    std::string where;
    auto scan = [&](const ConditionReport& rep, const std::string& tag) {
        for (const auto& p : rep.points) {
            ++checked;
            if (p.residuals.weyl_norm < 1e-8 && p.residuals.q_explicit < 1e-7 &&
                p.residuals.p_commutator > 1e-6) {
                ++violations;
                where = tag;
            }
        }
    };
    for (const auto& [fam, rep] : d.reports) scan(rep, catalog::family_name(fam));

    // 50 randomized parameter draws per classified family on a coarse grid
    SplitMix64 rng(20240817);
    const std::array<int, 4> coarse{2, 2, 2, 2};
    auto draw_spec = [&](Family f) {
        FamilySpec s = catalog::default_spec(f);
        s.grid_counts = coarse;
        switch (f) {
            case Family::I: s.params["k"] = rng.uniform(-2.0, 2.0); break;
            case Family::II: s.params["k"] = rng.uniform(0.3, 2.0); break;
            case Family::III1:
                s.params["K_N"] = rng.uniform(-1.5, 1.5);
                s.profiles["f"] = ProfileExpr::poly(
                    {rng.uniform(0.6, 2.0), rng.uniform(-0.4, 0.4), rng.uniform(0.0, 1.0)});
                break;
            case Family::III2:
                s.params["K_N"] = rng.uniform(-1.5, 1.5);
                s.params["c"] = rng.uniform(-1.0, 1.0);
                s.params["F0"] = rng.uniform(0.6, 1.4);
                s.params["F0p"] = rng.uniform(-0.4, 0.4);
                break;
            case Family::IV:
                s.params["K_N"] = rng.uniform(0.6, 1.4);
                s.params["c"] = rng.uniform(0.6, 1.4);
                s.params["A"] = rng.uniform(0.8, 1.3);
                break;
            case Family::V:
                s.params["mu0"] = rng.uniform(0.4, 0.6);
                s.params["e"] = rng.uniform(0.6, 1.4);
                s.params["C"] = rng.uniform(-0.15, 0.15);
                s.params["K_N"] = rng.uniform(0.85, 1.15);
                s.params["c"] = rng.uniform(0.85, 1.15);
                break;
            case Family::VI: {
                const double a = rng.uniform(0.5, 2.0);
                double b = rng.uniform(0.5, 2.5);
                if (std::abs(a - b) < 0.1) b += 0.25;
                s.params["a"] = a;
                s.params["b"] = b;
                s.params["q"] = rng.uniform(0.5, 2.0);
                s.params["r"] = rng.uniform(0.5, 2.0);
                s.params["phi0"] = rng.uniform(0.6, 1.1);
                break;
            }
            case Family::VII:
                s.profiles["P"] = catalog::poly_from_roots(
                    {rng.uniform(1.2, 1.8), rng.uniform(3.2, 3.8), rng.uniform(5.2, 5.8),
                     rng.uniform(-3.4, -2.6), rng.uniform(-3.6, -2.9), rng.uniform(-4.6, -3.9)},
                    rng.uniform(0.5, 3.0));
                break;
            case Family::VIII: {
                const double r1 = rng.uniform(1.6, 1.9), r2 = rng.uniform(2.6, 2.9);
                const double u = rng.uniform(0.5, 2.0);
                // x (x - r1)(x - r2)(x^2 + u)
                const double s3 = 1.0, s2 = -(r1 + r2), s1 = r1 * r2;
                s.profiles["P"] =
                    ProfileExpr::poly({0.0, s1 * u, s2 * u, s3 * u + s1, s2, s3});
                break;
            }
            case Family::IX: {
                const double r = rng.uniform(2.1, 2.4), t = rng.uniform(0.7, 1.3);
                s.params["b"] = rng.uniform(0.8, 1.2);
                s.params["a3"] = 1.0;
                s.params["a2"] = t - r;
                s.params["a1"] = -r * t;
                break;
            }
            default: break;
        }
        return s;
    };
    for (Family f : {Family::I, Family::II, Family::III1, Family::III2, Family::IV, Family::V,
                     Family::VI, Family::VII, Family::VIII, Family::IX}) {
        int done = 0, attempts = 0;
        while (done < 50 && attempts < 400) {
            ++attempts;
            try {
                const auto rep = classify(catalog::build_family(draw_spec(f)));
                scan(rep, catalog::family_name(f) + "(draw)");
                ++done;
            } catch (const Error&) {
                continue; // rejected draw; redraw deterministically
            }
        }
        if (done < 50) {
            ++violations;
            where = catalog::family_name(f) + " only " + std::to_string(done) + " draws";
        }
    }
    outcome(7, "no point with W < 1e-8 and Q < 1e-7 has P > 1e-6 (LCF and Q imply P)",
            violations == 0,
            std::to_string(checked) + " points checked" +
                (violations ? ", first failure: " + where : ""));
}

// 8. Jets against finite differences; pipeline Weyl against the direct form.
void criterion8(const Defaults& d) {
    double worst_fd = 0.0;
    int samples = 0;
    SplitMix64 rng(97531);
    for (Family f : {Family::II, Family::VII}) {
        const auto& bf = d.built.at(f);
        int done = 0, attempts = 0;
        while (done < 50 && attempts < 1000) {
            ++attempts;
            Point4 p;
            for (int dd = 0; dd < 4; ++dd) {
                const double w = bf.spec.box[dd][1] - bf.spec.box[dd][0];
                p[dd] = rng.uniform(bf.spec.box[dd][0] + 0.12 * w, bf.spec.box[dd][1] - 0.12 * w);
            }
            if (!bf.chart.valid(p)) continue;
            const int row = static_cast<int>(rng.next() % 4);
            const int col = static_cast<int>(rng.next() % 4);
            std::array<int, 4> alpha{};
            const int order = 1 + static_cast<int>(rng.next() % 3);
            for (int k = 0; k < order; ++k) ++alpha[rng.next() % 4];
            double fd = 0.0;
            try {
                fd = oracle::fd_metric_partial(bf.chart, p, row, col, alpha);
            } catch (const ArgumentError&) {
                continue;
            }
            const Mat4Jet g = bf.chart.components(p);
            std::vector<int> dirs;
            for (int dd = 0; dd < 4; ++dd)
                for (int r = 0; r < alpha[dd]; ++r) dirs.push_back(dd);
            double jet = 0.0;
            switch (dirs.size()) {
                case 1: jet = g[m4(row, col)].partial(dirs[0]); break;
                case 2: jet = g[m4(row, col)].partial(dirs[0], dirs[1]); break;
                default: jet = g[m4(row, col)].partial(dirs[0], dirs[1], dirs[2]); break;
            }
            worst_fd = std::max(worst_fd, std::abs(jet - fd) / (1.0 + std::abs(fd)));
            ++done;
            ++samples;
        }
    }

    double worst_weyl = 0.0;
    for (const auto& [fam, bf] : d.built) {
        SampleGrid grid{bf.spec.box, {2, 2, 2, 2}, bf.spec.grid_margin};
        for (const auto& p : grid.points(bf.chart)) {
            const auto b = curvature_bundle(bf.chart, p);
            const Ten4 w = oracle::brute_force_weyl(b.riemann_values(), b.ricci_values(),
                                                    b.scalar.value(), value_matrix(b.g));
            double resid = 0.0;
            for (int s = 0; s < 256; ++s) resid = std::max(resid, std::abs(w[s] - b.weyl[s]));
            worst_weyl = std::max(worst_weyl, resid / (1.0 + frob(b.weyl)));
        }
    }
    outcome(8, "oracle agreement (fd vs jets 1e-5; direct Weyl 1e-10)",
            samples == 100 && worst_fd < 1e-5 && worst_weyl < 1e-10,
            std::to_string(samples) + " fd samples, worst " + num(worst_fd) +
                "; worst Weyl deviation " + num(worst_weyl));
}

// 9. Byte-identical repeated classification.
void criterion9() {
    auto run = [] {
        const auto bf = catalog::build_family(catalog::default_spec(Family::VI));
        return report::to_json(classify(bf));
    };
    const std::string a = run();
    const std::string b = run();
    setenv("CURV4_THREADS", "2", 1);
    const std::string c = run();
    unsetenv("CURV4_THREADS");
    outcome(9, "repeated classify runs are byte-identical (also across thread counts)",
            a == b && a == c, std::to_string(a.size()) + " bytes");
}

// adjudication record for the base-profile equation of family V: the
// opposite radicand sign admits solutions, but they are not conformally flat
void adjudicate_type_v_sign() {
    // mu_y^2 = + (2 mu / (mu + D)) [ mu((mu+C)^2 + e) - 2 K_N / c ],  D = x
    const double C = 0.0, e = 1.0, K_N = 1.0, c = 1.0, mu0 = 2.0, y0 = 0.0;
    auto mu_value = [&](double x, double y) {
        ode::Rhs<double> rhs = [&](double, const std::vector<double>& s) {
            const double m = s[0];
            const double q = (2.0 * m / (m + x)) * (m * ((m + C) * (m + C) + e) - 2.0 * K_N / c);
            return std::vector<double>{std::sqrt(std::max(q, 1e-12))};
        };
        return ode::integrate<double>(rhs, {mu0}, y0, y, 1e-10).final_state()[0];
    };
    auto mu_jets = [&](double x, double y) {
        const Jet3 Dj = Jet3::variable(x, 2);
        auto G = [&](const Jet3& m) {
            const Jet3 q = (2.0 * m / (m + Dj)) * (m * ((m + C) * (m + C) + e) - 2.0 * K_N / c);
            return sqrt(q);
        };
        ode::Rhs<Jet3> rhs = [&](double, const std::vector<Jet3>& s) {
            return std::vector<Jet3>{G(s[0])};
        };
        const auto st = ode::integrate<Jet3>(rhs, {Jet3::constant(mu0)}, y0, y, 1e-10)
                            .final_state();
        Jet3 full = ode::ode_jet_complete(st[0], G, 3);
        return std::pair{full, G(full)};
    };
    MetricChart chart;
    chart.name = "type_v_flipped_sign";
    chart.diagonal = false;
    chart.components = [&](const Point4& p) {
        auto x = point_jets(p);
        auto [mu, mu_y] = mu_jets(p[2], p[3]);
        const Jet3 Dj = x[2];
        const Jet3 Ej = 1.0 / (2.0 * Dj * Dj * ((Dj - C) * (Dj - C) + (2.0 * K_N / c) / Dj + e));
        const Jet3 mu_x = mu.derivative(2); // order loss acceptable for a value-level check
        const Jet3 a = mu_x / mu_y;
        Mat4Jet g{};
        const Jet3 w = c * Dj * mu * conf2_factor_local(K_N, x[0], x[1]);
        g[m4(0, 0)] = w;
        g[m4(1, 1)] = w;
        g[m4(2, 2)] = Ej * (mu + Dj) + a * a;
        g[m4(2, 3)] = g[m4(3, 2)] = a;
        g[m4(3, 3)] = Jet3(1.0);
        return g;
    };
    (void)mu_value;
    const Point4 p{0.1, -0.1, 1.0, 0.05};
    const auto b = curvature_bundle(chart, p);
    const double wn = weyl_norm_residual(b);
    std::printf("note: family V with the flipped radicand sign has weyl_norm %s "
                "(not conformally flat); the sign used by the catalog passes criterion 3\n",
                num(wn).c_str());
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    const Defaults d = compute_defaults();
    criterion1(d);
    criterion2(d);
    criterion3(d);
    criterion4(d);
    criterion5(d);
    criterion6(d);
    criterion7(d);
    criterion8(d);
    criterion9();
    adjudicate_type_v_sign();
    std::printf(g_failures == 0 ? "acceptance: all criteria PASS\n"
                                : "acceptance: %d criteria FAILED\n",
                g_failures);
    return g_failures;
}
