#pragma once

// Command implementations behind the CLI: building charts from spec files,
// classification runs, oracle cross-checks and the eigenvalue table.  Kept in
// the library so tests can drive the commands in-process; the binary in
// tools/ only parses arguments.  Spec files are JSON with the top-level keys
// family / params / profiles / box / grid / tolerances; missing keys fall
// back to the family's recorded defaults.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "curv4/catalog.hpp"
#include "curv4/classify.hpp"
#include "curv4/oracle.hpp"
#include "curv4/report.hpp"
#include "curv4/rng.hpp"

namespace curv4::app {

struct RunConfig {
    std::string spec_path;  // JSON spec file; empty when --family is used
    std::string family;     // catalog tag; empty when --spec is used
    std::optional<std::array<int, 4>> grid_counts;
    std::optional<double> grid_margin;
    std::optional<double> satisfied_tol;
    std::optional<double> violated_tol;
    std::optional<double> ode_tol;
    std::uint64_t seed = 12345; // the documented default
    std::string output_path;    // empty writes to stdout
    std::string format = "json";
    int verify_samples = 100;
};

namespace detail {

inline catalog::ProfileExpr profile_from_json(const std::string& key, const nlohmann::json& j) {
    using catalog::ProfileExpr;
    if (!j.is_object() || !j.contains("kind") || !j.contains("coeffs"))
        throw ConstructionError("spec profile '" + key +
                                "' must be an object with 'kind' and 'coeffs'");
    const std::string kind = j["kind"].get<std::string>();
    std::vector<double> coeffs = j["coeffs"].get<std::vector<double>>();
    if (kind == "poly") return ProfileExpr::poly(std::move(coeffs));
    if (kind == "recip_poly") return ProfileExpr::recip_poly(std::move(coeffs));
    if (kind == "exp2" || kind == "sincos") {
        if (coeffs.size() != 3)
            throw ConstructionError("spec profile '" + key + "' of kind '" + kind +
                                    "' needs coeffs [C, D, a]");
        return kind == "exp2" ? ProfileExpr::exp2(coeffs[0], coeffs[1], coeffs[2])
                              : ProfileExpr::sincos(coeffs[0], coeffs[1], coeffs[2]);
    }
    throw ConstructionError("spec profile '" + key + "' has unknown kind '" + kind +
                            "' (expected poly, recip_poly, exp2 or sincos)");
}

inline catalog::FamilySpec spec_from_json(const nlohmann::json& j) {
    if (!j.contains("family"))
        throw ConstructionError("spec file: missing required field 'family'");
    const std::string tag = j["family"].get<std::string>();
    const auto fam = catalog::family_from_name(tag);
    if (!fam) throw ConstructionError("spec file: unknown family tag '" + tag + "'");
    catalog::FamilySpec s = catalog::default_spec(*fam);

    if (j.contains("params")) {
        if (!j["params"].is_object())
            throw ConstructionError("spec file: 'params' must be an object of numbers");
        for (const auto& [k, v] : j["params"].items()) {
            if (!v.is_number())
                throw ConstructionError("spec file: parameter '" + k + "' must be a number");
            s.params[k] = v.get<double>();
        }
    }
    if (j.contains("profiles")) {
        if (!j["profiles"].is_object())
            throw ConstructionError("spec file: 'profiles' must be an object");
        for (const auto& [k, v] : j["profiles"].items())
            s.profiles[k] = profile_from_json(k, v);
    }
    if (j.contains("box")) {
        const auto& b = j["box"];
        if (!b.is_array() || b.size() != 4)
            throw ConstructionError("spec file: 'box' must be an array of 4 [lo, hi] pairs");
        for (int d = 0; d < 4; ++d) {
            if (!b[d].is_array() || b[d].size() != 2)
                throw ConstructionError("spec file: 'box' entry " + std::to_string(d) +
                                        " must be a [lo, hi] pair");
            s.box[d] = {b[d][0].get<double>(), b[d][1].get<double>()};
            if (!(s.box[d][0] < s.box[d][1]))
                throw ConstructionError("spec file: 'box' entry " + std::to_string(d) +
                                        " must satisfy lo < hi");
        }
    }
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        if (g.contains("counts")) {
            const auto c = g["counts"].get<std::vector<int>>();
            if (c.size() != 4)
                throw ConstructionError("spec file: 'grid.counts' must have 4 entries");
            for (int d = 0; d < 4; ++d) s.grid_counts[d] = c[d];
        }
        if (g.contains("margin")) s.grid_margin = g["margin"].get<double>();
    }
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        if (t.contains("satisfied")) s.satisfied_tol = t["satisfied"].get<double>();
        if (t.contains("violated")) s.violated_tol = t["violated"].get<double>();
        if (t.contains("ode_tol")) s.ode_tol = t["ode_tol"].get<double>();
    }
    return s;
}

inline void check_ranges(const catalog::FamilySpec& s) {
    for (int d = 0; d < 4; ++d)
        if (s.grid_counts[d] < 1 || s.grid_counts[d] > 33)
            throw ConstructionError("grid counts must lie in [1, 33]");
    if (s.grid_margin < 0.0 || s.grid_margin > 0.45)
        throw ConstructionError("grid margin must lie in [0, 0.45]");
    if (!(s.satisfied_tol > 0.0) || !(s.violated_tol > s.satisfied_tol))
        throw ConstructionError("tolerances must satisfy 0 < satisfied < violated");
    if (!(s.ode_tol > 0.0)) throw ConstructionError("ode_tol must be positive");
}

} // namespace detail

inline catalog::FamilySpec resolve_spec(const RunConfig& cfg) {
    catalog::FamilySpec s;
    if (!cfg.spec_path.empty()) {
        std::ifstream in(cfg.spec_path);
        if (!in) throw IoError("cannot open spec file: " + cfg.spec_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConstructionError("spec file is not valid JSON: " + std::string(e.what()));
        }
        s = detail::spec_from_json(j);
    } else if (!cfg.family.empty()) {
        const auto fam = catalog::family_from_name(cfg.family);
        if (!fam) throw ConstructionError("unknown family tag '" + cfg.family + "'");
        s = catalog::default_spec(*fam);
    } else {
        throw ConstructionError("either a spec file or a family tag is required");
    }
    if (cfg.grid_counts) s.grid_counts = *cfg.grid_counts;
    if (cfg.grid_margin) s.grid_margin = *cfg.grid_margin;
    if (cfg.satisfied_tol) s.satisfied_tol = *cfg.satisfied_tol;
    if (cfg.violated_tol) s.violated_tol = *cfg.violated_tol;
    if (cfg.ode_tol) s.ode_tol = *cfg.ode_tol;
    detail::check_ranges(s);
    return s;
}

/// Maps exceptions to the documented exit codes: 1 construction/constraint,
/// 2 internal consistency, 3 I/O.
template <class Fn>
int run_guarded(Fn&& fn, std::ostream& err) {
    try {
        return fn();
    } catch (const ConsistencyError& e) {
        err << "internal consistency error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

inline int cmd_list(std::ostream& out) {
    out << "catalog families (tag: parameters | profiles)\n";
    struct Row {
        const char* tag;
        const char* params;
        const char* profiles;
    };
    const Row rows[] = {
        {"I", "k (sectional curvature)", "-"},
        {"II", "k != 0 (surface curvatures +k, -k)", "-"},
        {"III1", "K_N (leaf curvature)", "f: warp function, positive on the box"},
        {"III2", "K_N, c, F0 > 0, F0p, x0 (anchor)", "- (F solved from F'' = 2 K_N F^3 + c F)"},
        {"IV", "K_N, c != 0, A != 0", "K: base curvature profile (K' != 0); alpha"},
        {"V", "K_N, c != 0, C, e, mu0, y0, mu_branch", "D: base profile (D != 0, D' != 0)"},
        {"VI", "a, b, q, r > 0, a != b, phi0, phi_branch, x0", "- (phi solved from the quartic ODE)"},
        {"VII", "-", "P: degree-6 polynomial, a6 != 0, interlacing the ranges"},
        {"VIII", "-", "P: degree-5 polynomial, P(0) = 0, a5 != 0, interlacing"},
        {"IX", "b != 0, a1, a2, a3 != 0", "- (P = (x-b)(a3 x^3 + a2 x^2 + a1 x))"},
        {"S1", "-", "eta(x1) (eta' != 0), psi(x2), phi(x2)"},
        {"S2", "-", "phi(x1), xi(x2), zeta(x3) (zeta' != 0), eta(x4) (eta' != 0)"},
        {"S3", "-", "eta(x1), xi(x2), phi(x3), psi(x4); x1, x2 > 0"},
        {"S4", "-", "phi(x1), psi(x2), xi(x3), eta(x4)"},
        {"S5", "-", "xi(x1) (xi' != 0), eta(x2) (eta' != 0), psi(x3), phi(x4)"},
        {"S6", "-", "phi(x1) > 0, psi(x1) > 0, xi(x3), eta(x4); x1 > 0"},
        {"S7", "-", "phi(x1), psi(x1), eta(x1), all positive"},
        {"S8", "-", "P: degree-6 polynomial, positive on the ranges"},
        {"S9", "-", "P: degree-5 polynomial, P(0) = 0, positive on the ranges"},
        {"S10", "b != 0, a1, a2, a3 != 0", "- (P as family IX, positive on the ranges)"},
        {"R2a", "K_N > 0, b, eps = +-1 (f = eps sqrt(K_N) x + b)", "-"},
        {"R2b", "C, D, a (f = C e^{ax} + D e^{-ax}; K_N = -4 C D a^2)", "-"},
        {"R2c", "C, D, a (f = C sin(ax) + D cos(ax); K_N = a^2(C^2+D^2))", "-"},
    };
    for (const auto& r : rows)
        out << "  " << r.tag << ": " << r.params << " | " << r.profiles << "\n";
    return 0;
}

inline int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_guarded(
        [&] {
            const auto spec = resolve_spec(cfg);
            const auto bf = catalog::build_family(spec);
            out << "family " << catalog::family_name(spec.family) << " (" << bf.chart.name
                << "): constraints hold and the metric is positive definite on the declared box\n";
            return 0;
        },
        err);
}

inline int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_guarded(
        [&] {
            const auto spec = resolve_spec(cfg);
            const auto bf = catalog::build_family(spec);
            const auto rep = classify(bf, cfg.seed);
            const std::string body =
                cfg.format == "csv" ? report::to_csv(rep) : report::to_json(rep);
            if (cfg.output_path.empty()) {
                out << body;
                if (cfg.format != "csv") out << "\n";
            } else {
                std::ofstream f(cfg.output_path, std::ios::binary);
                if (!f) throw IoError("cannot open output file: " + cfg.output_path);
                f << body;
                if (cfg.format != "csv") f << "\n";
                if (!f) throw IoError("failed writing output file: " + cfg.output_path);
            }
            return 0;
        },
        err);
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_guarded(
        [&] {
            const auto spec = resolve_spec(cfg);
            const auto bf = catalog::build_family(spec);

            // jets against central differences on random interior points
            SplitMix64 rng(cfg.seed);
            double worst_fd = 0.0;
            int done = 0, attempts = 0;
            while (done < cfg.verify_samples && attempts < cfg.verify_samples * 20) {
                ++attempts;
                Point4 p;
                for (int d = 0; d < 4; ++d) {
                    const double w = spec.box[d][1] - spec.box[d][0];
                    p[d] = rng.uniform(spec.box[d][0] + 0.12 * w, spec.box[d][1] - 0.12 * w);
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
                    continue; // stencil margin; resample
                }
                const Mat4Jet g = bf.chart.components(p);
                std::vector<int> dirs;
                for (int d = 0; d < 4; ++d)
                    for (int r = 0; r < alpha[d]; ++r) dirs.push_back(d);
                double jet = 0.0;
                switch (dirs.size()) {
                    case 1: jet = g[m4(row, col)].partial(dirs[0]); break;
                    case 2: jet = g[m4(row, col)].partial(dirs[0], dirs[1]); break;
                    default: jet = g[m4(row, col)].partial(dirs[0], dirs[1], dirs[2]); break;
                }
                worst_fd = std::max(worst_fd, std::abs(jet - fd) / (1.0 + std::abs(fd)));
                ++done;
            }

            // pipeline Weyl against the explicit subtraction on the grid
            SampleGrid grid{spec.box, {3, 3, 3, 3}, spec.grid_margin};
            double worst_weyl = 0.0;
            for (const auto& p : grid.points(bf.chart)) {
                const auto b = curvature_bundle(bf.chart, p);
                const Ten4 w = oracle::brute_force_weyl(b.riemann_values(), b.ricci_values(),
                                                        b.scalar.value(), value_matrix(b.g));
                double resid = 0.0;
                for (int s = 0; s < 256; ++s)
                    resid = std::max(resid, std::abs(w[s] - b.weyl[s]));
                worst_weyl = std::max(worst_weyl, resid / (1.0 + frob(b.weyl)));
            }

            out << "fd-vs-jet samples: " << done << ", worst relative deviation: "
                << report::fmt(worst_fd) << " (bound 1e-5)\n";
            out << "pipeline-vs-direct Weyl: worst relative deviation: "
                << report::fmt(worst_weyl) << " (bound 1e-10)\n";
            const bool ok = worst_fd < 1e-5 && worst_weyl < 1e-10 && done > 0;
            out << (ok ? "verify: PASS\n" : "verify: FAIL\n");
            return ok ? 0 : 1;
        },
        err);
}

inline int cmd_eigen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_guarded(
        [&] {
            const auto spec = resolve_spec(cfg);
            const auto bf = catalog::build_family(spec);
            SampleGrid grid{spec.box, spec.grid_counts, spec.grid_margin};
            out << "point | pipeline eigenvalues | closed-form eigenvalues\n";
            for (const auto& p : grid.points(bf.chart)) {
                const auto s = ricci_spectrum(curvature_bundle(bf.chart, p));
                out << "(" << report::fmt(p[0]) << ", " << report::fmt(p[1]) << ", "
                    << report::fmt(p[2]) << ", " << report::fmt(p[3]) << ") |";
                for (double ev : s.eigenvalues) out << " " << report::fmt(ev);
                out << " |";
                if (const auto closed = bf.closed_eigenvalues(p)) {
                    for (double ev : *closed) out << " " << report::fmt(ev);
                } else {
                    out << " n/a";
                }
                out << "\n";
            }
            return 0;
        },
        err);
}

} // namespace curv4::app
