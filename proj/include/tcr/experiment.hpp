#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcr/inputs.hpp"
#include "tcr/scalar.hpp"

namespace tcr {

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    std::vector<std::uint64_t> n_list;
    std::vector<int> m_list{16};
    PrecisionMode mode = PrecisionMode::exact();
    DistributionParams distribution;
    std::uint64_t seed = 42;
    std::uint64_t w = 32;
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::string> output_path;

    /// Throws ConfigError.
    void validate() const;
};

/// One (n, m, algorithm, mode) measurement.
struct ReportRow {
    std::uint64_t n = 0;
    int m = 0;
    std::string algorithm; // sequential | pairwise | tensor | compensated
    std::string mode;      // exact | fp64 | fp32 | mixed
    std::string policy;    // fp32-acc | strict-fp16 for mixed, none otherwise
    double result = 0.0;
    double oracle = 0.0;
    double abs_err = 0.0;
    std::optional<double> rel_err; // absent when the oracle is zero
    std::uint64_t sim_steps = 0;
    std::uint64_t pred_steps = 0;
    bool match = false;
    std::optional<double> speedup_obs; // pairwise / tensor simulated time
    double speedup_pred = 0.0;
    std::uint64_t levels = 0;
    std::uint64_t mma_cycles = 0; // MMAs issued across all groups
    std::optional<double> pct_loss; // precision sweeps only

    bool exact_error_free = true; // abs_err is exactly zero (before rounding to double)
};

struct ExperimentReport {
    std::vector<ReportRow> rows;
    bool has_pct_loss = false;

    /// Exact-mode rows with nonzero error and prediction mismatches on
    /// sizes that are exact powers of the algorithm's base.
    std::vector<std::string> violations() const;
};

/// Sequential, pairwise and tensor reductions for every (n, m) against the
/// exact sum of the generated inputs. Throws ConfigError.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Tensor reduction under both mixed-precision policies plus pairwise,
/// sequential and compensated baselines in config.mode, and a binary16
/// sequential fold. Throws ConfigError for Exact mode.
ExperimentReport precision_sweep(const ExperimentConfig& config);

std::string emit_report(const ExperimentReport& report, OutputFormat format);
/// Throws IoError.
void write_report(const ExperimentReport& report, OutputFormat format, const std::string& path);

/// Parses "a,b,c", "a..b" (step 1), "a..b:step" and "a..b:*k" items,
/// comma-separated. Throws ConfigError.
std::vector<std::uint64_t> parse_size_list(const std::string& text);
std::vector<int> parse_tile_list(const std::string& text);

} // namespace tcr
