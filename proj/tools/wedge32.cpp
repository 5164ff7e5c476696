#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "wedge32/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "wedge32: exact construction of a rank-4 complex reflection group of order 155520 "
        "from the type-E6 Weyl group via the exterior square, with a machine verification "
        "battery"};
    app.fallthrough();
    app.require_subcommand(1);

    wedge32::RunConfig cfg;
    std::string cache_dir = cfg.cache_dir.string();
    app.add_option("--cache-dir", cache_dir, "directory for stage caches")
        ->envname("WEDGE32_CACHE_DIR")
        ->capture_default_str();
    app.add_option("--jobs", cfg.jobs, "worker threads (0 = all cores)")
        ->envname("WEDGE32_JOBS")
        ->capture_default_str();
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "suppress progress notes");

    auto* build = app.add_subcommand("build", "build and cache every construction stage");

    auto* verify =
        app.add_subcommand("verify", "run the verification battery and emit a report");
    verify->add_option("--checks", cfg.checks, "comma-separated check-id substrings")
        ->delimiter(',')
        ->envname("WEDGE32_CHECKS");
    verify->add_option("--format", cfg.format, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->envname("WEDGE32_FORMAT")
        ->capture_default_str();
    verify->add_option("--truncation", cfg.truncation, "Molien series truncation (>= 85)")
        ->check(CLI::Range(85u, 4096u))
        ->envname("WEDGE32_TRUNCATION")
        ->capture_default_str();
    verify->add_option("--seed", cfg.seed, "seed for the randomized property suites only")
        ->envname("WEDGE32_SEED")
        ->capture_default_str();
    verify->add_flag("--build-missing", cfg.build_missing,
                     "build stages whose caches are missing or invalid");

    auto* exp = app.add_subcommand("export",
                                   "write generators and the transport matrix as JSON");
    exp->add_option("--select", cfg.export_select,
                    "comma list among reflections,scalars,reduced,transport (empty = none)")
        ->capture_default_str();
    exp->add_flag("--build-missing", cfg.build_missing,
                  "build stages whose caches are missing or invalid");

    auto* clean = app.add_subcommand("clean", "remove cache files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.cache_dir = cache_dir;
    cfg.verbosity = quiet ? 0 : 1;
    if (build->parsed()) return wedge32::cmd_build(cfg);
    if (verify->parsed()) return wedge32::cmd_verify(cfg);
    if (exp->parsed()) return wedge32::cmd_export(cfg);
    if (clean->parsed()) return wedge32::cmd_clean(cfg);
    std::cerr << "no subcommand\n";
    return 2;
}
