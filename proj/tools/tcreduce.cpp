// tcreduce: run MMA-reduction experiments and precision sweeps.
//
// Exit codes: 0 success, 1 invariant violation (with --check), 2 config or
// I/O error.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tcr/errors.hpp"
#include "tcr/experiment.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kConfigError = 2;

tcr::DistributionParams parse_dist(const std::string& name, const std::string& int_range, double value) {
    tcr::DistributionParams params;
    const auto kind = tcr::parse_distribution(name);
    if (!kind) throw tcr::ConfigError("unknown distribution '" + name + "'");
    params.kind = *kind;
    params.constant = value;
    const auto colon = int_range.find(':');
    if (colon == std::string::npos) throw tcr::ConfigError("--int-range expects lo:hi");
    try {
        params.int_lo = std::stoll(int_range.substr(0, colon));
        params.int_hi = std::stoll(int_range.substr(colon + 1));
    } catch (const std::exception&) {
        throw tcr::ConfigError("bad --int-range '" + int_range + "'");
    }
    return params;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tensor-core (MMA) reduction experiments on an emulated MMA engine"};

    std::string n_text = "256,4096,65536";
    std::string m_text = "16";
    std::string mode_text = "exact";
    std::string policy_text = "fp32-acc";
    std::string dist_text = "uniform01";
    std::string int_range = "-100:100";
    double value = 1.0;
    std::uint64_t seed = 42;
    std::uint64_t w = 32;
    std::string format_text = "csv";
    std::string out_path;
    bool check = false;
    bool sweep = false;

    app.add_option("--n", n_text, "sizes: comma list, a..b, a..b:step or a..b:*factor");
    app.add_option("--m", m_text, "tile dimensions, comma list");
    app.add_option("--mode", mode_text, "precision mode")
        ->check(CLI::IsMember({"exact", "fp64", "fp32", "mixed"}));
    app.add_option("--policy", policy_text, "mixed-mode rounding policy")
        ->check(CLI::IsMember({"fp32-acc", "strict-fp16"}));
    app.add_option("--dist", dist_text, "input distribution")
        ->check(CLI::IsMember({"uniform01", "uniform-int", "constant", "alternating", "adversarial"}));
    app.add_option("--int-range", int_range, "lo:hi for uniform-int");
    app.add_option("--value", value, "element value for constant");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--w", w, "non-coalesced access penalty (time units)");
    app.add_option("--format", format_text, "report format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "report path (default: stdout)");
    app.add_flag("--check", check, "exit 1 on exact-mode error or prediction mismatch");
    app.add_flag("--sweep", sweep, "run the mixed-precision sweep instead of the cost experiment");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        tcr::ExperimentConfig config;
        config.n_list = tcr::parse_size_list(n_text);
        config.m_list = tcr::parse_tile_list(m_text);
        config.mode.tag = *tcr::parse_precision_tag(mode_text);
        config.mode.policy = *tcr::parse_rounding_policy(policy_text);
        config.distribution = parse_dist(dist_text, int_range, value);
        config.seed = seed;
        config.w = w;
        config.format = format_text == "json" ? tcr::OutputFormat::Json : tcr::OutputFormat::Csv;
        if (!out_path.empty()) config.output_path = out_path;

        const tcr::ExperimentReport report =
            sweep ? tcr::precision_sweep(config) : tcr::run_experiment(config);

        if (config.output_path) {
            tcr::write_report(report, config.format, *config.output_path);
        } else {
            std::cout << tcr::emit_report(report, config.format);
        }

        if (check) {
            const auto problems = report.violations();
            for (const auto& p : problems) std::cerr << "violation: " << p << '\n';
            if (!problems.empty()) return kViolation;
        }
    } catch (const tcr::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const tcr::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kConfigError;
    }
    return kOk;
}
