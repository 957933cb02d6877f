#ifndef QF_REPORT_HPP
#define QF_REPORT_HPP

#include <string>
#include <vector>

namespace qf {

inline constexpr const char* tool_version = "1.0.0";

struct RunConfig {
    long height_bound = 10000;
    int threads = 1;
    int sample_primes = 3;
    std::string field = "q2q3"; // q2q3 or q2q11; used by kraus.window.field
};

enum class Status { Verified, Refuted, Inconclusive, Skipped };
const char* status_name(Status s);

struct ClaimRecord {
    std::string id;
    std::string description;
    std::string entry;    // operation that produces the value
    std::string expected; // as it appears in reports
    std::string paper_ref;
};

struct ReportEntry {
    std::string id;
    Status status = Status::Inconclusive;
    std::string expected;
    std::string computed;
    long elapsed_ms = 0;
    std::string paper_ref;
    std::string evidence_note; // "fixture: ..." or "evidence: ..." when not recomputed
};

/* sorted by id */
const std::vector<ClaimRecord>& claim_registry();

/* comma-separated shell globs; empty selects everything */
bool glob_match(const std::string& pattern, const std::string& s);
std::vector<ClaimRecord> list_claims(const std::string& filter = "");

/* unknown ids raise domain_error; entries come back sorted by id */
std::vector<ReportEntry> run_claims(const std::vector<std::string>& ids, const RunConfig& cfg);

enum ExitCode { ExitOk = 0, ExitRefuted = 2, ExitInconclusive = 3, ExitUsage = 64, ExitIO = 74 };
int exit_code_for(const std::vector<ReportEntry>& entries);

std::string report_json(const std::vector<ReportEntry>& entries, const RunConfig& cfg);
std::string report_text(const std::vector<ReportEntry>& entries);
/* format "json" or "text"; throws std::runtime_error when path is not writable */
void emit_report(const std::vector<ReportEntry>& entries, const RunConfig& cfg, const std::string& format,
                 const std::string& path);

/* report JSON with every elapsed_ms set to 0 */
std::string strip_elapsed(const std::string& json);

} // namespace qf

#endif
