#include "qf/arith.hpp"
#include "qf/report.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace qf;

int main(int argc, char** argv)
{
    CLI::App app{"Recompute and check the registered claims"};
    bool all = false, list = false;
    std::string globs, json_path, text_path;
    RunConfig cfg;

    auto* o_all = app.add_flag("--all", all, "run every registered claim");
    auto* o_claims = app.add_option("--claims", globs, "comma-separated id globs")->envname("QF_VERIFY_CLAIMS");
    o_all->excludes(o_claims);
    app.add_flag("--list", list, "list matching claims without running them");
    app.add_option("--field", cfg.field, "field for kraus.window.field")
        ->check(CLI::IsMember({"q2q3", "q2q11"}))
        ->envname("QF_VERIFY_FIELD");
    app.add_option("--json", json_path, "write the JSON report here")->envname("QF_VERIFY_JSON");
    app.add_option("--text", text_path, "write the text report here")->envname("QF_VERIFY_TEXT");
    app.add_option("--height-bound", cfg.height_bound, "height bound for point searches")
        ->check(CLI::PositiveNumber)
        ->envname("QF_VERIFY_HEIGHT_BOUND");
    app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber)->envname("QF_VERIFY_THREADS");
    app.add_option("--sample-primes", cfg.sample_primes, "primes for sampled map checks")
        ->check(CLI::Range(3, 64))
        ->envname("QF_VERIFY_SAMPLE_PRIMES");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : ExitUsage;
    }

    if (!all && globs.empty() && !list) {
        std::cerr << "nothing selected; use --all or --claims\n";
        return ExitUsage;
    }
    std::vector<ClaimRecord> sel = list_claims(all ? "" : globs);
    if (list) {
        for (const ClaimRecord& r : sel)
            std::cout << r.id << "  " << r.description << "\n";
        return ExitOk;
    }
    if (sel.empty()) {
        std::cerr << "no claim matches " << globs << "\n";
        return ExitUsage;
    }
    std::vector<std::string> ids;
    for (const ClaimRecord& r : sel)
        ids.push_back(r.id);

    std::vector<ReportEntry> entries;
    try {
        entries = run_claims(ids, cfg);
    } catch (const domain_error& e) {
        std::cerr << e.what() << "\n";
        return ExitUsage;
    }
    std::cout << report_text(entries);
    try {
        if (!json_path.empty())
            emit_report(entries, cfg, "json", json_path);
        if (!text_path.empty())
            emit_report(entries, cfg, "text", text_path);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return ExitIO;
    }
    return exit_code_for(entries);
}
