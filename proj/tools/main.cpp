#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "triality/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact verification of twisted-triality character sums and "
                 "the degree-bound inequality ledger"};
    app.require_subcommand(1);

    triality::RunConfig cfg;
    std::uint64_t q = 0;
    std::string family;
    unsigned k = 0;
    std::string format = "json";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json or markdown")
            ->check(CLI::IsMember({"json", "markdown"}));
        sub->add_option("--threads", cfg.threads,
                        "worker count (default: TRIALITY_THREADS, then "
                        "hardware)");
        sub->add_option("--size-cap", cfg.size_cap,
                        "largest permitted field size");
        sub->add_flag("--force", cfg.force, "override the workload guardrail");
        sub->add_option("--report-file", cfg.report_path,
                        "where the JSON-lines report is written");
    };

    CLI::App* va = app.add_subcommand(
        "verify-appendix",
        "evaluate every character sum at q and check all stated constraints");
    va->add_option("--q", q, "prime power")->required();
    add_common(va);

    CLI::App* vr = app.add_subcommand(
        "verify-reduction", "check the degree-bound inequality ledger");
    vr->add_option("--q-max", cfg.q_max, "numeric sweep bound (default 100)");
    vr->add_flag("--symbolic", cfg.symbolic,
                 "Sturm certificates for all real q instead of the sweep");
    add_common(vr);

    CLI::App* cs = app.add_subcommand(
        "charsum", "evaluate a single character sum exactly");
    cs->add_option("--q", q, "prime power")->required();
    cs->add_option("--family", family, "chi16, chi18_19 or chi20")->required();
    cs->add_option("--k", k, "index within the family")->required();
    add_common(cs);

    CLI::App* rp = app.add_subcommand(
        "report", "re-render the saved JSON report as markdown");
    rp->add_option("--report-file", cfg.report_path,
                   "JSON-lines report to read");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (va->parsed()) {
        cfg.command = triality::Command::VerifyAppendix;
        cfg.q = q;
    } else if (vr->parsed()) {
        cfg.command = triality::Command::VerifyReduction;
    } else if (cs->parsed()) {
        cfg.command = triality::Command::Charsum;
        cfg.q = q;
        cfg.family = family;
        cfg.k = k;
    } else {
        cfg.command = triality::Command::Report;
    }
    cfg.format = format == "markdown" ? triality::OutputFormat::Markdown
                                      : triality::OutputFormat::Json;

    return triality::run(cfg, std::cout, std::cerr);
}
