// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tcr/cost_model.hpp"
#include "tcr/experiment.hpp"
#include "tcr/inputs.hpp"
#include "tcr/reduce.hpp"
#include "tcr/summation.hpp"
#include "tcr/tile.hpp"

using namespace tcr;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

std::vector<Scalar> quantize_all(const std::vector<Rational>& values, PrecisionMode mode) {
    std::vector<Scalar> out;
    out.reserve(values.size());
    for (const Rational& v : values) out.push_back(quantize(v, mode));
    return out;
}

std::vector<Scalar> quantize_all(const std::vector<double>& values, PrecisionMode mode) {
    std::vector<Scalar> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(quantize(v, mode));
    return out;
}

std::vector<Scalar> constants(std::uint64_t n, PrecisionMode mode) {
    return std::vector<Scalar>(n, Scalar::one(mode));
}

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> num(-1000, 1000);
    std::uniform_int_distribution<std::int64_t> den(1, 16);
    return Rational(num(rng), den(rng));
}

std::vector<Rational> random_rationals(std::mt19937_64& rng, std::size_t n) {
    std::vector<Rational> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(random_rational(rng));
    return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned k) {
    std::uint64_t r = 1;
    while (k-- > 0) r *= base;
    return r;
}

Rational abs_error(const Scalar& result, const Rational& oracle) {
    if (!result.is_finite()) return Rational(-1); // marker, handled by callers
    return (result.to_rational() - oracle).abs();
}

// a <= b where -1 stands for an infinite error.
bool error_le(const Rational& a, const Rational& b) {
    if (b.sign() < 0) return true;
    if (a.sign() < 0) return false;
    return a <= b;
}

// -- criteria ---------------------------------------------------------------

Outcome speedup_reproduction() {
    Outcome out;
    out.expect(speedup(4) == 3.2, "speedup(4) != 3.2");
    out.expect(speedup(16) == 6.4, "speedup(16) != 6.4");
    out.expect(speedup_exact(4) == Rational(16, 5), "speedup_exact(4) != 16/5");
    out.expect(speedup_exact(16) == Rational(32, 5), "speedup_exact(16) != 32/5");

    const PrecisionMode mode = PrecisionMode::fp32();
    const auto xs = constants(65536, mode);
    CostLedger classic;
    CostLedger tensor;
    reduce_pairwise(xs, mode, classic);
    reduce_tensor(xs, 16, mode, tensor);
    out.expect(classic.total_time() == 64, "classic ledger " + std::to_string(classic.total_time()));
    out.expect(tensor.total_time() == 10, "tensor ledger " + std::to_string(tensor.total_time()));
    const Rational ratio(static_cast<std::int64_t>(classic.total_time()),
                         static_cast<std::int64_t>(tensor.total_time()));
    out.expect(ratio == Rational(32, 5), "observed ratio " + ratio.to_string());
    out.detail = out.ok ? "classic 64, tensor 10, ratio " + ratio.to_string() : out.detail;
    return out;
}

Outcome recurrence_base_case() {
    Outcome out;
    for (int m : {2, 4, 16}) {
        const PrecisionMode mode = PrecisionMode::exact();
        const auto xs = constants(static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(m), mode);
        CostLedger ledger;
        const Scalar total = reduce_tensor(xs, m, mode, ledger);
        out.expect(ledger.total_time() == 5,
                   "m=" + std::to_string(m) + " ledger " + std::to_string(ledger.total_time()));
        out.expect(total.exact() == Rational(m * m), "m=" + std::to_string(m) + " wrong total");
    }
    return out;
}

Outcome closed_form_agreement() {
    constexpr std::uint64_t kExecuteLimit = std::uint64_t{1} << 20;
    Outcome out;
    int executed = 0;
    int scheduled = 0;
    for (int m : {2, 4, 16}) {
        const std::uint64_t group = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(m);
        for (unsigned k = 0; k <= 5; ++k) {
            const std::uint64_t n = ipow(group, k);
            const std::string tag = "m=" + std::to_string(m) + " k=" + std::to_string(k);
            const CostLedger schedule = tensor_schedule_ledger(n, m);
            out.expect(schedule.total_time() == 5 * k,
                       tag + " schedule ledger " + std::to_string(schedule.total_time()));
            if (n <= kExecuteLimit) {
                const PrecisionMode mode = PrecisionMode::fp32();
                CostLedger ledger;
                const Scalar total = reduce_tensor(constants(n, mode), m, mode, ledger);
                out.expect(ledger.total_time() == 5 * k,
                           tag + " ledger " + std::to_string(ledger.total_time()));
                out.expect(ledger == schedule, tag + " schedule disagrees with execution");
                out.expect(total.to_double() == static_cast<double>(n), tag + " wrong total");
                ++executed;
            } else {
                ++scheduled;
            }
        }
    }
    for (unsigned j = 0; j <= 20; ++j) {
        const std::uint64_t n = std::uint64_t{1} << j;
        const PrecisionMode mode = PrecisionMode::fp32();
        CostLedger ledger;
        reduce_pairwise(constants(n, mode), mode, ledger);
        out.expect(ledger.total_time() == 4 * j,
                   "classic j=" + std::to_string(j) + " ledger " + std::to_string(ledger.total_time()));
    }
    if (out.ok) {
        out.detail = std::to_string(executed) + " tensor sizes executed, " + std::to_string(scheduled) +
                     " from the schedule ledger; classic j=0..20";
    }
    return out;
}

Outcome oracle_equivalence() {
    Outcome out;
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::size_t> size(0, 100000);
    std::uniform_int_distribution<int> tile(2, 16);
    const PrecisionMode mode = PrecisionMode::exact();
    for (int c = 0; c < 1000 && out.ok; ++c) {
        const std::size_t n = size(rng);
        const int m = tile(rng);
        const auto values = random_rationals(rng, n);
        const auto xs = quantize_all(values, mode);
        const Rational oracle = exact_sum(std::span<const Rational>(values));
        CostLedger l1;
        CostLedger l2;
        const std::string tag = "case " + std::to_string(c) + " n=" + std::to_string(n) + " m=" + std::to_string(m);
        out.expect(reduce_tensor(xs, m, mode, l1).exact() == oracle, tag + " tensor");
        out.expect(reduce_pairwise(xs, mode, l2).exact() == oracle, tag + " pairwise");
        out.expect(reduce_sequential(xs, mode).exact() == oracle, tag + " sequential");
    }
    return out;
}

Outcome mma_invariants() {
    Outcome out;
    std::mt19937_64 rng(7);
    const PrecisionMode mode = PrecisionMode::exact();
    for (int m : {2, 4, 8, 16}) {
        const GroupReducer reducer(m, mode);
        for (int c = 0; c < 500 && out.ok; ++c) {
            const auto values = random_rationals(rng, static_cast<std::size_t>(m * m));
            const MatTile a = MatTile::from_entries(m, mode, quantize_all(values, mode));
            CostLedger ledger;
            const auto steps = reducer.reduce_steps(a, ledger);
            const Rational total = exact_sum(std::span<const Rational>(values));
            const std::string tag = "m=" + std::to_string(m) + " tile " + std::to_string(c);
            for (int i = 0; i < m; ++i) {
                Rational row;
                for (int k = 0; k < m; ++k) row += values[static_cast<std::size_t>(i * m + k)];
                for (int j = 0; j < m; ++j) {
                    out.expect(steps.row_sums(i, j).exact() == row, tag + " column replication");
                    out.expect(steps.totals(i, j).exact() == total, tag + " full replication");
                }
            }
        }
    }
    return out;
}

Outcome padding_permutation() {
    Outcome out;
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> size(0, 4096);
    std::uniform_int_distribution<std::size_t> pad(1, 1024);
    std::uniform_int_distribution<int> tile(2, 16);
    const PrecisionMode mode = PrecisionMode::exact();
    const auto all_equal = [&](const std::vector<Scalar>& a, const std::vector<Scalar>& b, int m) {
        CostLedger l;
        return reduce_tensor(a, m, mode, l).exact() == reduce_tensor(b, m, mode, l).exact() &&
               reduce_pairwise(a, mode, l).exact() == reduce_pairwise(b, mode, l).exact() &&
               reduce_sequential(a, mode).exact() == reduce_sequential(b, mode).exact();
    };
    for (int c = 0; c < 500 && out.ok; ++c) {
        const int m = tile(rng);
        const auto xs = quantize_all(random_rationals(rng, size(rng)), mode);
        auto padded = xs;
        padded.insert(padded.end(), pad(rng), Scalar::zero(mode));
        out.expect(all_equal(xs, padded, m), "padding case " + std::to_string(c));
    }
    for (int c = 0; c < 500 && out.ok; ++c) {
        const int m = tile(rng);
        const auto xs = quantize_all(random_rationals(rng, size(rng)), mode);
        auto shuffled = xs;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        out.expect(all_equal(xs, shuffled, m), "permutation case " + std::to_string(c));
    }
    return out;
}

Outcome brent_check() {
    Outcome out;
    for (unsigned j = 4; j <= 20; ++j) {
        const std::uint64_t n = std::uint64_t{1} << j;
        const BrentSchedule s = brent_schedule(n);
        const double cost = parallel_cost(static_cast<double>(s.steps), static_cast<double>(s.processors));
        const std::string tag = "n=2^" + std::to_string(j);
        out.expect(s.cost <= 2 * n, tag + " cost " + std::to_string(s.cost));
        out.expect(cost <= 2.0 * static_cast<double>(n), tag + " parallel_cost");
        out.expect(static_cast<double>(s.steps) <=
                       brent_bound(static_cast<double>(n), static_cast<double>(s.processors)),
                   tag + " steps exceed the Brent bound");
    }
    return out;
}

Outcome precision_study() {
    Outcome out;
    const PrecisionMode base = PrecisionMode::fp32();
    const PrecisionMode acc32 = PrecisionMode::mixed(RoundingPolicy::Fp32Accumulate);
    const PrecisionMode strict = PrecisionMode::mixed(RoundingPolicy::StrictFp16);
    const Distribution kinds[] = {Distribution::Uniform01, Distribution::UniformInt, Distribution::Constant,
                                  Distribution::AlternatingSign, Distribution::AdversarialMagnitude};
    int tensor_cases = 0;
    int baseline_cases = 0;
    std::vector<std::string> policy_violations;
    std::vector<std::string> kahan_violations;
    for (Distribution kind : kinds) {
        ExperimentConfig config;
        config.mode = base;
        config.distribution.kind = kind;
        config.m_list = {4, 16};
        for (unsigned j = 8; j <= 16; ++j) config.n_list.push_back(std::uint64_t{1} << j);
        const ExperimentReport report = precision_sweep(config);
        out.expect(report.rows.size() == config.n_list.size() * config.m_list.size() * 6,
                   std::string(to_string(kind)) + " sweep is missing rows");

        for (std::uint64_t n : config.n_list) {
            const std::string tag = std::string(to_string(kind)) + " n=" + std::to_string(n);
            const auto raw = generate_inputs(config.distribution, n, config.seed);
            const Rational oracle = exact_sum(std::span<const double>(raw));
            const auto xs = quantize_all(raw, base);
            const Rational kahan = abs_error(compensated_sum(xs, base), oracle);
            const Rational naive = abs_error(reduce_sequential(xs, base), oracle);
            if (!error_le(kahan, naive)) kahan_violations.push_back(tag);
            ++baseline_cases;
            const auto xs_acc = quantize_all(raw, acc32);
            const auto xs_strict = quantize_all(raw, strict);
            for (int m : config.m_list) {
                CostLedger l;
                const Rational e_acc = abs_error(reduce_tensor(xs_acc, m, acc32, l), oracle);
                const Rational e_strict = abs_error(reduce_tensor(xs_strict, m, strict, l), oracle);
                if (!error_le(e_acc, e_strict)) policy_violations.push_back(tag + " m=" + std::to_string(m));
                ++tensor_cases;
            }
        }
    }

    const auto ones = quantize_all(std::vector<double>(2048, 1.0), acc32);
    CostLedger l;
    const Scalar total = reduce_tensor(ones, 16, acc32, l);
    out.expect(total.to_rational() == Rational(2048), "constant(1) at n=2048 gave " + total.to_string());

    const auto summarize = [](const std::vector<std::string>& cases) {
        std::string text;
        for (std::size_t i = 0; i < cases.size() && i < 3; ++i) text += (i ? "; " : "") + cases[i];
        return text + (cases.size() > 3 ? "; ..." : "");
    };
    out.expect(kahan_violations.empty(), std::to_string(kahan_violations.size()) + "/" +
                                             std::to_string(baseline_cases) +
                                             " cases with compensated error above the naive fold (" +
                                             summarize(kahan_violations) + ")");
    out.expect(policy_violations.empty(), std::to_string(policy_violations.size()) + "/" +
                                              std::to_string(tensor_cases) +
                                              " cases with fp32-acc error above strict-fp16 (" +
                                              summarize(policy_violations) + ")");
    if (out.ok) {
        out.detail = std::to_string(tensor_cases) + " policy cases, " + std::to_string(baseline_cases) +
                     " compensated cases";
    }
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    Outcome out;
    const std::vector<std::string> suite = {
        "--n 1..64,256,4096,65536 --m 2,4,16 --mode exact --dist uniform-int",
        "--n 256,4096,65536 --m 4,16 --mode fp32 --dist uniform01",
        "--n 256,4096,65536 --m 4,16 --mode fp64 --dist alternating",
        "--n 256..65536:*2 --m 4,16 --mode mixed --policy strict-fp16 --dist adversarial",
        "--n 256..65536:*4 --m 4,16 --mode fp32 --dist adversarial --sweep",
        "--n 256..65536:*4 --m 16 --mode mixed --dist uniform01 --sweep",
    };
    std::string runs[2];
    for (int r = 0; r < 2; ++r) {
        for (std::size_t i = 0; i < suite.size(); ++i) {
            const std::string path = "acceptance_run" + std::to_string(r) + "_" + std::to_string(i) + ".csv";
            const std::string cmd = std::string(TCREDUCE_CLI) + " " + suite[i] + " --seed 1234 --out " + path;
            const int status = std::system(cmd.c_str());
            out.expect(status == 0, "command failed: " + cmd);
            const std::string text = slurp(path);
            out.expect(!text.empty(), "empty output from: " + cmd);
            runs[r] += text;
        }
    }
    out.expect(runs[0] == runs[1], "outputs differ between runs");
    if (out.ok) out.detail = std::to_string(runs[0].size()) + " bytes identical";
    return out;
}

struct Criterion {
    int id;
    const char* name;
    double limit_s; // 0 for no limit
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
    // Optional arguments select criteria by number.
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
    const Criterion criteria[] = {
        {1, "speedup reproduction", 1.0, speedup_reproduction},
        {2, "recurrence base case", 1.0, recurrence_base_case},
        {3, "closed form agrees with ledger", 10.0, closed_form_agreement},
        {4, "oracle equivalence (1000 cases)", 60.0, oracle_equivalence},
        {5, "MMA replication invariants", 0.0, mma_invariants},
        {6, "padding and permutation invariance", 0.0, padding_permutation},
        {7, "Brent schedule cost <= 2n", 0.0, brent_check},
        {8, "precision study", 0.0, precision_study},
        {9, "determinism", 0.0, determinism},
    };
    int failures = 0;
    int ran = 0;
    for (const Criterion& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        ++ran;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.ok = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (out.ok && c.limit_s > 0.0 && secs >= c.limit_s) {
            out.ok = false;
            out.detail = "over the " + std::to_string(c.limit_s) + " s budget";
        }
        if (!out.ok) ++failures;
        std::printf("[%s] criterion %d: %s (%.3f s)%s%s\n", out.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                    out.detail.empty() ? "" : " - ", out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", ran - failures, ran);
    return failures == 0 ? 0 : 1;
}
