#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "dmsparse/errors.hpp"
#include "dmsparse/harness.hpp"

namespace dmsparse {

namespace {

// Both emitters round through the same 4-decimal text so CSV and JSON
// parse back to identical values.
double round4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return std::strtod(buf, nullptr);
}

std::string fmt4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

std::string report_csv(const ReportTable& table) {
    std::string out =
        "method,delta,p,mean_snr_db,success_rate_pct,frames,failures\n";
    for (const auto& r : table.rows) {
        out += r.method;
        out += ',' + fmt4(r.delta);
        out += ',' + fmt4(r.p);
        out += ',' + fmt4(r.mean_snr_db);
        out += ',' + fmt4(r.success_rate_pct);
        out += ',' + std::to_string(r.frames);
        out += ',' + std::to_string(r.failures);
        out += '\n';
    }
    return out;
}

std::string report_json(const ReportTable& table) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
        rows.push_back({{"method", r.method},
                        {"delta", round4(r.delta)},
                        {"p", round4(r.p)},
                        {"mean_snr_db", round4(r.mean_snr_db)},
                        {"success_rate_pct", round4(r.success_rate_pct)},
                        {"frames", r.frames},
                        {"failures", r.failures}});
    }
    return rows.dump(2) + "\n";
}

void emit_report(const ReportTable& table, ReportFormat format,
                 const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << (format == ReportFormat::csv ? report_csv(table)
                                        : report_json(table));
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace dmsparse
