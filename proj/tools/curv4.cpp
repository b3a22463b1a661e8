// Command-line front end: builds charts from spec files, runs the
// classification, and exposes the oracle cross-checks.

#include <CLI11.hpp>

#include "curv4/app.hpp"

namespace {

void add_spec_options(CLI::App* cmd, curv4::app::RunConfig& cfg) {
    auto* spec = cmd->add_option("--spec", cfg.spec_path,
                                 "JSON spec file (family/params/profiles/box/grid)");
    cmd->add_option("--family", cfg.family, "catalog family tag (built-in defaults)")
        ->excludes(spec);
    cmd->add_option("--seed", cfg.seed, "seed for direction sampling (default 12345)");
}

void add_grid_options(CLI::App* cmd, curv4::app::RunConfig& cfg,
                      std::vector<int>& counts_opt) {
    cmd->add_option("--counts", counts_opt, "grid samples per coordinate (4 values)")
        ->expected(4);
    cmd->add_option("--margin", cfg.grid_margin, "grid margin as a fraction of the box width");
    cmd->add_option("--satisfied-tol", cfg.satisfied_tol, "verdict threshold: satisfied");
    cmd->add_option("--violated-tol", cfg.violated_tol, "verdict threshold: violated");
    cmd->add_option("--ode-tol", cfg.ode_tol, "profile ODE tolerance");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App cli{"numerical verification of the classified conformally flat 4-metric families"};
    cli.require_subcommand(1);

    curv4::app::RunConfig cfg;
    std::vector<int> counts_opt;

    auto* list = cli.add_subcommand("list", "print the catalog and per-family parameters");

    auto* check = cli.add_subcommand("check", "build a chart and validate its constraints");
    add_spec_options(check, cfg);

    auto* classify = cli.add_subcommand("classify", "run the full condition report over the grid");
    add_spec_options(classify, cfg);
    add_grid_options(classify, cfg, counts_opt);
    classify->add_option("--out", cfg.output_path, "output file (default stdout)");
    classify->add_option("--format", cfg.format, "json or csv summary")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* verify = cli.add_subcommand("verify", "finite-difference and direct-Weyl cross-checks");
    add_spec_options(verify, cfg);
    verify->add_option("--samples", cfg.verify_samples, "number of fd-vs-jet samples");

    auto* eigen = cli.add_subcommand("eigen", "pipeline vs closed-form eigenvalues, side by side");
    add_spec_options(eigen, cfg);
    eigen->add_option("--counts", counts_opt, "grid samples per coordinate (4 values)")
        ->expected(4);
    eigen->add_option("--margin", cfg.grid_margin, "grid margin as a fraction of the box width");

    CLI11_PARSE(cli, argc, argv);

    if (counts_opt.size() == 4)
        cfg.grid_counts = std::array<int, 4>{counts_opt[0], counts_opt[1], counts_opt[2],
                                             counts_opt[3]};

    if (list->parsed()) return curv4::app::cmd_list(std::cout);
    if (check->parsed()) return curv4::app::cmd_check(cfg, std::cout, std::cerr);
    if (classify->parsed()) return curv4::app::cmd_classify(cfg, std::cout, std::cerr);
    if (verify->parsed()) return curv4::app::cmd_verify(cfg, std::cout, std::cerr);
    if (eigen->parsed()) return curv4::app::cmd_eigen(cfg, std::cout, std::cerr);
    return 1;
}
