#include "triality/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "triality/charsum.hpp"
#include "triality/errors.hpp"
#include "triality/ledger.hpp"

namespace triality {

namespace {

using ordered_json = nlohmann::ordered_json;

long long now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

int family_sort_order(CharFamily family) {
    switch (family) {
        case CharFamily::Chi16Even: return 0;
        case CharFamily::Chi1819Odd: return 1;
        case CharFamily::Chi20Odd: return 2;
    }
    return 3;
}

// Kernel iterations for one full appendix sweep at q; used to refuse
// accidental monster workloads unless --force is given.
bool workload_excessive(std::uint64_t q, bool full_sweep, bool force) {
    if (force) return false;
    const BigInt n = BigInt(q) * q * q - 1;
    BigInt terms = n * (q - 1) * (n + 1);
    if (full_sweep) terms *= q;
    return terms > BigInt("10000000000");
}

ReportRow appendix_row(const AppendixRow& src, std::uint64_t q) {
    ReportRow row;
    row.kind = "appendix";
    row.id = std::string(family_name(src.result.spec.family)) + " k=" +
             std::to_string(src.result.spec.k);
    row.q = q;
    row.mode = "exact";
    row.status = src.status == RowStatus::Verified ? "verified" : "violated";
    if (src.status == RowStatus::Verified) {
        row.y = src.result.y;
        row.m = src.result.m;
        row.scalar_product = src.result.scalar_product;
    }
    if (!src.message.empty()) row.witness = src.message;
    row.family_order = family_sort_order(src.result.spec.family);
    row.sort_k = src.result.spec.k;
    return row;
}

ReportRow ledger_row(const Verdict& v) {
    ReportRow row;
    row.kind = "ledger";
    row.id = v.case_id;
    row.q = v.q;
    row.mode = v.symbolic ? "symbolic" : "numeric";
    row.status = verdict_status_str(v.status);
    if (!v.details.empty()) row.witness = v.details;
    return row;
}

void emit(std::vector<ReportRow>& rows, const RunConfig& cfg,
          std::ostream& out, std::ostream& err) {
    std::stable_sort(rows.begin(), rows.end(), row_sort_less);
    if (cfg.format == OutputFormat::Json) {
        for (const auto& row : rows) out << row_to_json(row) << "\n";
    } else {
        out << render_markdown(rows);
    }
    std::ofstream file(cfg.report_path);
    if (!file) {
        err << "warning: could not write " << cfg.report_path << "\n";
        return;
    }
    for (const auto& row : rows) file << row_to_json(row) << "\n";
}

int run_verify_appendix(const RunConfig& cfg, std::ostream& out,
                        std::ostream& err) {
    if (!cfg.q) {
        err << "verify-appendix requires --q\n";
        return 2;
    }
    auto pp = parse_prime_power(*cfg.q);
    if (!pp) {
        err << "q = " << *cfg.q << " is not a prime power\n";
        return 2;
    }
    if (workload_excessive(pp->q, true, cfg.force)) {
        err << "refusing q = " << pp->q
            << ": the full sweep exceeds 10^10 kernel terms; pass --force to "
               "override\n";
        return 2;
    }
    AppendixReport rep =
        verify_appendix(*pp, resolve_threads(cfg.threads), cfg.size_cap);
    std::vector<ReportRow> rows;
    for (const auto& src : rep.rows) {
        ReportRow row = appendix_row(src, pp->q);
        row.elapsed_ms = src.elapsed_ms;
        rows.push_back(std::move(row));
    }
    emit(rows, cfg, out, err);
    return rep.all_verified ? 0 : 1;
}

int run_verify_reduction(const RunConfig& cfg, std::ostream& out,
                         std::ostream& err) {
    std::vector<ReportRow> rows;
    bool violated = false;
    if (cfg.symbolic) {
        for (const auto& c : ledger_cases()) {
            long long t0 = now_ms();
            Verdict v = check_case_symbolic(c.id);
            ReportRow row = ledger_row(v);
            row.elapsed_ms = now_ms() - t0;
            violated = violated || v.status == VerdictStatus::Violated;
            rows.push_back(std::move(row));
        }
    } else {
        const auto pps = prime_powers_upto(cfg.q_max);
        for (const auto& c : ledger_cases()) {
            for (const auto& pp : pps) {
                long long t0 = now_ms();
                Verdict v = check_case(c.id, pp);
                ReportRow row = ledger_row(v);
                row.elapsed_ms = now_ms() - t0;
                violated = violated || v.status == VerdictStatus::Violated;
                rows.push_back(std::move(row));
            }
        }
    }
    emit(rows, cfg, out, err);
    return violated ? 1 : 0;
}

int run_charsum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (!cfg.q || !cfg.family || !cfg.k) {
        err << "charsum requires --q, --family and --k\n";
        return 2;
    }
    auto pp = parse_prime_power(*cfg.q);
    if (!pp) {
        err << "q = " << *cfg.q << " is not a prime power\n";
        return 2;
    }
    auto family = family_from_name(*cfg.family);
    if (!family) {
        err << "unknown family " << *cfg.family
            << " (expected chi16, chi18_19 or chi20)\n";
        return 2;
    }
    if (workload_excessive(pp->q, false, cfg.force)) {
        err << "refusing q = " << pp->q
            << ": a single sum exceeds 10^10 kernel terms; pass --force to "
               "override\n";
        return 2;
    }
    const long long t0 = now_ms();
    CharSumCtx cx = make_charsum_ctx(*pp, cfg.size_cap);
    ReportRow row;
    row.kind = "appendix";
    row.id = std::string(family_name(*family)) + " k=" + std::to_string(*cfg.k);
    row.q = pp->q;
    row.mode = "exact";
    row.family_order = family_sort_order(*family);
    row.sort_k = *cfg.k;
    int rc = 0;
    try {
        long long y = eval_y(*family, *cfg.k, cx, resolve_threads(cfg.threads));
        row.y = y;
        row.m = derive_m(y, *pp, *family);
        row.scalar_product = scalar_product_eps2(y, *pp, *family);
        row.status = "verified";
    } catch (const ClaimViolation& e) {
        row.status = "violated";
        row.witness = e.what();
        rc = 1;
    }
    row.elapsed_ms = now_ms() - t0;
    std::vector<ReportRow> rows{row};
    emit(rows, cfg, out, err);
    return rc;
}

int run_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::ifstream file(cfg.report_path);
    if (!file) {
        err << "no report at " << cfg.report_path
            << "; run a verify command first\n";
        return 2;
    }
    std::vector<ReportRow> rows;
    std::string line;
    while (std::getline(file, line)) {
        if (line.empty()) continue;
        auto row = row_from_json(line);
        if (!row) {
            err << "unparseable report line: " << line << "\n";
            return 2;
        }
        rows.push_back(std::move(*row));
    }
    out << render_markdown(rows);
    return 0;
}

} // namespace

bool row_sort_less(const ReportRow& a, const ReportRow& b) {
    auto key = [](const ReportRow& r) {
        return std::make_tuple(r.kind, r.family_order, r.sort_k, r.id,
                               r.q.value_or(0));
    };
    return key(a) < key(b);
}

std::string row_to_json(const ReportRow& row) {
    ordered_json j;
    j["kind"] = row.kind;
    j["id"] = row.id;
    if (row.q) j["q"] = *row.q; else j["q"] = nullptr;
    j["mode"] = row.mode;
    j["status"] = row.status;
    if (row.y) j["y"] = *row.y; else j["y"] = nullptr;
    if (row.m) j["m"] = *row.m; else j["m"] = nullptr;
    if (row.scalar_product) j["scalar_product"] = *row.scalar_product;
    else j["scalar_product"] = nullptr;
    if (row.witness) j["witness"] = *row.witness; else j["witness"] = nullptr;
    return j.dump();
}

std::optional<ReportRow> row_from_json(const std::string& line) {
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    ReportRow row;
    try {
        row.kind = j.at("kind").get<std::string>();
        row.id = j.at("id").get<std::string>();
        if (!j.at("q").is_null()) row.q = j.at("q").get<std::uint64_t>();
        row.mode = j.at("mode").get<std::string>();
        row.status = j.at("status").get<std::string>();
        if (!j.at("y").is_null()) row.y = j.at("y").get<long long>();
        if (!j.at("m").is_null()) row.m = j.at("m").get<long long>();
        if (!j.at("scalar_product").is_null())
            row.scalar_product = j.at("scalar_product").get<long long>();
        if (!j.at("witness").is_null())
            row.witness = j.at("witness").get<std::string>();
    } catch (const ordered_json::exception&) {
        return std::nullopt;
    }
    return row;
}

std::string render_markdown(const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    auto cell = [](const auto& opt) {
        return opt ? std::to_string(*opt) : std::string();
    };
    bool any_appendix = false, any_ledger = false;
    for (const auto& r : rows) {
        if (r.kind == "appendix") any_appendix = true;
        if (r.kind == "ledger") any_ledger = true;
    }
    if (any_appendix) {
        out << "## appendix\n\n"
            << "| id | q | mode | status | y | m | scalar_product | note |\n"
            << "|---|---|---|---|---|---|---|---|\n";
        for (const auto& r : rows) {
            if (r.kind != "appendix") continue;
            out << "| " << r.id << " | " << cell(r.q) << " | " << r.mode
                << " | " << r.status << " | " << cell(r.y) << " | "
                << cell(r.m) << " | " << cell(r.scalar_product) << " | "
                << r.witness.value_or("") << " |\n";
        }
        out << "\n";
    }
    if (any_ledger) {
        out << "## ledger\n\n"
            << "| id | q | mode | status | witness |\n"
            << "|---|---|---|---|---|\n";
        for (const auto& r : rows) {
            if (r.kind != "ledger") continue;
            out << "| " << r.id << " | " << cell(r.q) << " | " << r.mode
                << " | " << r.status << " | " << r.witness.value_or("")
                << " |\n";
        }
        out << "\n";
    }
    return out.str();
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("TRIALITY_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return unsigned(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.command) {
            case Command::VerifyAppendix:
                return run_verify_appendix(cfg, out, err);
            case Command::VerifyReduction:
                return run_verify_reduction(cfg, out, err);
            case Command::Charsum:
                return run_charsum(cfg, out, err);
            case Command::Report:
                return run_report(cfg, out, err);
        }
        err << "unknown command\n";
        return 2;
    } catch (const ClaimViolation& e) {
        err << "claim violated: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace triality
