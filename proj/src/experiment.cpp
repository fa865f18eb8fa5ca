#include "tcr/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <tuple>

#include "tcr/cost_model.hpp"
#include "tcr/errors.hpp"
#include "tcr/reduce.hpp"
#include "tcr/summation.hpp"

namespace tcr {

void ExperimentConfig::validate() const {
    if (n_list.empty()) {
        throw ConfigError("n list is empty");
    }
    if (m_list.empty()) {
        throw ConfigError("m list is empty");
    }
    for (int m : m_list) {
        if (m < 2) throw ConfigError("tile dimension must be >= 2, got " + std::to_string(m));
    }
    if (w < 1) {
        throw ConfigError("non-coalesced penalty must be >= 1");
    }
    if (distribution.kind == Distribution::UniformInt && distribution.int_lo > distribution.int_hi) {
        throw ConfigError("empty integer range");
    }
    if (distribution.kind == Distribution::Constant && !std::isfinite(distribution.constant)) {
        throw ConfigError("constant must be finite");
    }
}

namespace {

bool is_power_of(std::uint64_t n, std::uint64_t base) {
    if (n < 1) return false;
    while (n % base == 0) n /= base;
    return n == 1;
}

struct Measured {
    Scalar value;
    CostLedger ledger;
};

struct RowRun {
    std::string algorithm;
    PrecisionMode mode;
    Measured measured;
    std::uint64_t predicted = 0;
    std::uint64_t levels = 0;
};

void fill_error(ReportRow& row, const Scalar& result, const Rational& oracle) {
    row.oracle = oracle.to_double();
    row.result = result.to_double();
    if (!result.is_finite()) {
        row.abs_err = std::isnan(row.result) ? row.result : INFINITY;
        row.exact_error_free = false;
        if (oracle.sign() != 0) row.rel_err = row.abs_err;
        return;
    }
    const Rational diff = (result.to_rational() - oracle).abs();
    row.exact_error_free = diff.is_zero();
    row.abs_err = diff.to_double();
    if (oracle.sign() != 0) {
        row.rel_err = (diff / oracle.abs()).to_double();
    }
}

std::vector<Scalar> quantize_all(const std::vector<double>& raw, PrecisionMode mode) {
    std::vector<Scalar> xs;
    xs.reserve(raw.size());
    for (double v : raw) xs.push_back(Scalar::quantize(v, mode));
    return xs;
}

ReportRow make_row(std::uint64_t n, int m, const RowRun& run, const Rational& oracle,
                   std::optional<double> speedup_obs) {
    ReportRow row;
    row.n = n;
    row.m = m;
    row.algorithm = run.algorithm;
    row.mode = std::string(to_string(run.mode.tag));
    row.policy = run.mode.is_mixed() ? std::string(to_string(run.mode.policy)) : "none";
    fill_error(row, run.measured.value, oracle);
    row.sim_steps = run.measured.ledger.total_time();
    row.pred_steps = run.predicted;
    row.match = row.sim_steps == row.pred_steps;
    row.speedup_obs = speedup_obs;
    row.speedup_pred = speedup(m);
    row.levels = run.levels;
    row.mma_cycles = run.measured.ledger.mma_ops();
    return row;
}

Measured run_sequential(const std::vector<Scalar>& xs, PrecisionMode mode, std::uint64_t w) {
    CostLedger ledger(w);
    Scalar v = reduce_sequential(xs, mode, ledger);
    return {std::move(v), ledger};
}

Measured run_pairwise(const std::vector<Scalar>& xs, PrecisionMode mode, std::uint64_t w) {
    CostLedger ledger(w);
    Scalar v = reduce_pairwise(xs, mode, ledger);
    return {std::move(v), ledger};
}

Measured run_tensor(const std::vector<Scalar>& xs, int m, PrecisionMode mode, std::uint64_t w) {
    CostLedger ledger(w);
    Scalar v = reduce_tensor(xs, m, mode, ledger);
    return {std::move(v), ledger};
}

Measured run_compensated(const std::vector<Scalar>& xs, PrecisionMode mode, std::uint64_t w) {
    CostLedger ledger(w);
    Scalar v = compensated_sum(xs, mode);
    // Four dependent floating operations per element.
    ledger.charge(OpClass::ClassicAdd, 4 * xs.size());
    return {std::move(v), ledger};
}

std::uint64_t pred_classic(std::uint64_t n) { return n < 2 ? 0 : predict_classic(n).steps; }
std::uint64_t pred_tensor(std::uint64_t n, int m) { return n < 2 ? 0 : predict_tensor(n, m).steps; }

RowRun sequential_run(const std::vector<Scalar>& xs, PrecisionMode mode, std::uint64_t w) {
    const std::uint64_t n = xs.size();
    return {"sequential", mode, run_sequential(xs, mode, w), predict_sequential(n).steps,
            n == 0 ? 0 : n - 1};
}

RowRun pairwise_run(const std::vector<Scalar>& xs, PrecisionMode mode, std::uint64_t w) {
    const std::uint64_t n = xs.size();
    return {"pairwise", mode, run_pairwise(xs, mode, w), pred_classic(n), ceil_log(n, 2)};
}

RowRun tensor_run(const std::vector<Scalar>& xs, int m, PrecisionMode mode, std::uint64_t w) {
    const std::uint64_t n = xs.size();
    const auto group = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(m);
    return {"tensor", mode, run_tensor(xs, m, mode, w), pred_tensor(n, m), ceil_log(n, group)};
}

std::optional<double> observed_speedup(const CostLedger& classic, const CostLedger& tensor) {
    if (tensor.total_time() == 0) return std::nullopt;
    return static_cast<double>(classic.total_time()) / static_cast<double>(tensor.total_time());
}

void sort_rows(std::vector<ReportRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
        return std::tie(a.n, a.m, a.algorithm, a.mode, a.policy) <
               std::tie(b.n, b.m, b.algorithm, b.mode, b.policy);
    });
}

std::vector<std::uint64_t> sorted_unique(std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

std::vector<std::string> ExperimentReport::violations() const {
    std::vector<std::string> out;
    for (const ReportRow& r : rows) {
        const std::string where = "n=" + std::to_string(r.n) + " m=" + std::to_string(r.m) + " " +
                                  r.algorithm + " " + r.mode;
        if (r.mode == "exact" && !r.exact_error_free) {
            out.push_back(where + ": nonzero error in exact mode");
        }
        bool power = true;
        if (r.algorithm == "pairwise") {
            power = is_power_of(r.n, 2);
        } else if (r.algorithm == "tensor") {
            power = is_power_of(r.n, static_cast<std::uint64_t>(r.m) * static_cast<std::uint64_t>(r.m));
        }
        if (power && !r.match) {
            out.push_back(where + ": simulated " + std::to_string(r.sim_steps) + " != predicted " +
                          std::to_string(r.pred_steps));
        }
    }
    return out;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentReport report;
    for (std::uint64_t n : sorted_unique(config.n_list)) {
        const std::vector<double> raw = generate_inputs(config.distribution, n, config.seed);
        const Rational oracle = exact_sum(std::span<const double>(raw));
        const std::vector<Scalar> xs = quantize_all(raw, config.mode);
        const RowRun seq = sequential_run(xs, config.mode, config.w);
        const RowRun pair = pairwise_run(xs, config.mode, config.w);
        for (int m : sorted_unique(config.m_list)) {
            const RowRun tensor = tensor_run(xs, m, config.mode, config.w);
            const auto obs = observed_speedup(pair.measured.ledger, tensor.measured.ledger);
            for (const RowRun* run : {&seq, &pair, &tensor}) {
                report.rows.push_back(make_row(n, m, *run, oracle, obs));
            }
        }
    }
    sort_rows(report.rows);
    return report;
}

ExperimentReport precision_sweep(const ExperimentConfig& config) {
    config.validate();
    if (config.mode.is_exact()) {
        throw ConfigError("precision sweep needs a floating mode; exact mode has nothing to sweep");
    }
    const PrecisionMode acc32 = PrecisionMode::mixed(RoundingPolicy::Fp32Accumulate);
    const PrecisionMode strict = PrecisionMode::mixed(RoundingPolicy::StrictFp16);

    ExperimentReport report;
    report.has_pct_loss = true;
    for (std::uint64_t n : sorted_unique(config.n_list)) {
        const std::vector<double> raw = generate_inputs(config.distribution, n, config.seed);
        const Rational oracle = exact_sum(std::span<const double>(raw));
        const std::vector<Scalar> base = quantize_all(raw, config.mode);
        const std::vector<Scalar> xs_acc32 = quantize_all(raw, acc32);
        const std::vector<Scalar> xs_strict = quantize_all(raw, strict);

        std::vector<RowRun> baselines;
        baselines.push_back(pairwise_run(base, config.mode, config.w));
        baselines.push_back(sequential_run(base, config.mode, config.w));
        baselines.push_back({"compensated", config.mode, run_compensated(base, config.mode, config.w),
                             predict_compensated(n).steps, n});
        if (!(config.mode == strict)) {
            baselines.push_back(sequential_run(xs_strict, strict, config.w));
        }
        const CostLedger& classic = baselines.front().measured.ledger;

        for (int m : sorted_unique(config.m_list)) {
            std::vector<RowRun> runs = baselines;
            runs.push_back(tensor_run(xs_acc32, m, acc32, config.w));
            runs.push_back(tensor_run(xs_strict, m, strict, config.w));
            const auto obs = observed_speedup(classic, runs.back().measured.ledger);
            for (const RowRun& run : runs) {
                ReportRow row = make_row(n, m, run, oracle, obs);
                if (row.rel_err) row.pct_loss = 100.0 * *row.rel_err;
                report.rows.push_back(std::move(row));
            }
        }
    }
    sort_rows(report.rows);
    return report;
}

namespace {

std::uint64_t parse_u64(const std::string& text) {
    std::uint64_t v = 0;
    const char* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end || text.empty()) {
        throw ConfigError("not a non-negative integer: '" + text + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        parts.push_back(item);
    }
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

} // namespace

std::vector<std::uint64_t> parse_size_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    for (const std::string& item : split(text, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_u64(item));
            continue;
        }
        const std::uint64_t lo = parse_u64(item.substr(0, dots));
        std::string rest = item.substr(dots + 2);
        std::string step_text = "1";
        if (const auto colon = rest.find(':'); colon != std::string::npos) {
            step_text = rest.substr(colon + 1);
            rest = rest.substr(0, colon);
        }
        const std::uint64_t hi = parse_u64(rest);
        if (lo > hi) throw ConfigError("empty range '" + item + "'");
        const bool geometric = !step_text.empty() && step_text.front() == '*';
        const std::uint64_t step = parse_u64(geometric ? step_text.substr(1) : step_text);
        if (geometric ? (step < 2 || lo == 0) : step == 0) {
            throw ConfigError("range step does not advance in '" + item + "'");
        }
        for (std::uint64_t v = lo; v <= hi;) {
            out.push_back(v);
            const std::uint64_t next = geometric ? v * step : v + step;
            if (next <= v) break;
            v = next;
        }
    }
    if (out.empty()) throw ConfigError("n list is empty");
    return out;
}

std::vector<int> parse_tile_list(const std::string& text) {
    std::vector<int> out;
    for (const std::string& item : split(text, ',')) {
        const std::uint64_t v = parse_u64(item);
        if (v < 2 || v > 4096) throw ConfigError("tile dimension out of range: '" + item + "'");
        out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw ConfigError("m list is empty");
    return out;
}

} // namespace tcr
