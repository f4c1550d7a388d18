#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "triality/field.hpp"

namespace triality {

enum class Command { VerifyAppendix, VerifyReduction, Charsum, Report };
enum class OutputFormat { Json, Markdown };

struct RunConfig {
    Command command = Command::VerifyAppendix;
    std::optional<std::uint64_t> q; // required for verify-appendix and charsum
    std::uint64_t q_max = 100;      // verify-reduction sweep bound
    bool symbolic = false;          // verify-reduction: certificates instead of sweep
    std::optional<std::string> family;
    std::optional<unsigned> k;
    OutputFormat format = OutputFormat::Json;
    unsigned threads = 0; // 0 = TRIALITY_THREADS env var, then hardware
    std::uint64_t size_cap = kDefaultSizeCap;
    bool force = false; // override the workload guardrail
    std::string report_path = "triality_report.jsonl";
};

// One output row. Serialized keys, in fixed order: kind, id, q, mode, status,
// y, m, scalar_product, witness. Absent values serialize as null so the
// schema is identical across kinds. elapsed_ms is measured but never
// serialized: output bytes must not depend on timing or thread count.
struct ReportRow {
    std::string kind; // "appendix" | "ledger"
    std::string id;
    std::optional<std::uint64_t> q;
    std::string mode;   // "exact" | "numeric" | "symbolic"
    std::string status; // "verified" | "violated" | "inapplicable" | "error"
    std::optional<long long> y;
    std::optional<long long> m;
    std::optional<long long> scalar_product;
    std::optional<std::string> witness;
    long long elapsed_ms = 0;

    // Sort keys so rows emit in a schedule-independent order: appendix rows
    // by (family, k), ledger rows by (case id, q).
    int family_order = 0;
    unsigned sort_k = 0;
};

bool row_sort_less(const ReportRow& a, const ReportRow& b);

std::string row_to_json(const ReportRow& row);
std::optional<ReportRow> row_from_json(const std::string& line);
std::string render_markdown(const std::vector<ReportRow>& rows);

// 0 means: take TRIALITY_THREADS from the environment if set, otherwise the
// hardware concurrency (at least 1).
unsigned resolve_threads(unsigned requested);

// Exit codes: 0 all claims verified, 1 a claim is violated (or a row
// errored), 2 usage error (bad q, family/parity mismatch, k out of range,
// refused workload). Rows stream to `out`; progress and errors go to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace triality
