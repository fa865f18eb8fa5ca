#include <charconv>
#include <cmath>
#include <fstream>

#include "json.hpp"

#include "tcr/errors.hpp"
#include "tcr/experiment.hpp"

namespace tcr {

namespace {

constexpr const char* kColumns[] = {
    "n",         "m",          "algorithm", "mode",        "policy",       "result",
    "oracle",    "abs_err",    "rel_err",   "sim_steps",   "pred_steps",   "match",
    "speedup_obs", "speedup_pred", "levels", "mma_cycles",
};
constexpr const char* kPctColumn = "pct_loss";

// Shortest representation that parses back to the same double; inf/nan
// spelled "inf", "-inf", "nan".
std::string number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string number(const std::optional<double>& v) { return v ? number(*v) : std::string(); }

nlohmann::ordered_json json_number(double v) {
    if (!std::isfinite(v)) return number(v);
    return v;
}

nlohmann::ordered_json json_number(const std::optional<double>& v) {
    if (!v) return nullptr;
    return json_number(*v);
}

std::string emit_csv(const ExperimentReport& report) {
    std::string out;
    for (std::size_t i = 0; i < std::size(kColumns); ++i) {
        if (i) out += ',';
        out += kColumns[i];
    }
    if (report.has_pct_loss) {
        out += ',';
        out += kPctColumn;
    }
    out += '\n';
    for (const ReportRow& r : report.rows) {
        const std::string fields[] = {
            std::to_string(r.n),        std::to_string(r.m),          r.algorithm,
            r.mode,                     r.policy,                     number(r.result),
            number(r.oracle),           number(r.abs_err),            number(r.rel_err),
            std::to_string(r.sim_steps), std::to_string(r.pred_steps), r.match ? "true" : "false",
            number(r.speedup_obs),      number(r.speedup_pred),       std::to_string(r.levels),
            std::to_string(r.mma_cycles),
        };
        for (std::size_t i = 0; i < std::size(fields); ++i) {
            if (i) out += ',';
            out += fields[i];
        }
        if (report.has_pct_loss) {
            out += ',';
            out += number(r.pct_loss);
        }
        out += '\n';
    }
    return out;
}

std::string emit_json(const ExperimentReport& report) {
    auto rows = nlohmann::ordered_json::array();
    for (const ReportRow& r : report.rows) {
        nlohmann::ordered_json o;
        o["n"] = r.n;
        o["m"] = r.m;
        o["algorithm"] = r.algorithm;
        o["mode"] = r.mode;
        o["policy"] = r.policy;
        o["result"] = json_number(r.result);
        o["oracle"] = json_number(r.oracle);
        o["abs_err"] = json_number(r.abs_err);
        o["rel_err"] = json_number(r.rel_err);
        o["sim_steps"] = r.sim_steps;
        o["pred_steps"] = r.pred_steps;
        o["match"] = r.match;
        o["speedup_obs"] = json_number(r.speedup_obs);
        o["speedup_pred"] = json_number(r.speedup_pred);
        o["levels"] = r.levels;
        o["mma_cycles"] = r.mma_cycles;
        if (report.has_pct_loss) o[kPctColumn] = json_number(r.pct_loss);
        rows.push_back(std::move(o));
    }
    return rows.dump(2) + "\n";
}

} // namespace

std::string emit_report(const ExperimentReport& report, OutputFormat format) {
    return format == OutputFormat::Json ? emit_json(report) : emit_csv(report);
}

void write_report(const ExperimentReport& report, OutputFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << emit_report(report, format);
    out.flush();
    if (!out) {
        throw IoError("write to '" + path + "' failed");
    }
}

} // namespace tcr
