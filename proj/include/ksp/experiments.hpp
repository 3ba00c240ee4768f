#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ksp/constants.hpp"
#include "ksp/sequences.hpp"

namespace ksp::experiments {

// A finished, replayable experiment. The config echo plus the seed and the
// generator identity are enough to reproduce the statistics bit for bit.
// `passed` is absent for trajectory-only runs (LIL), whose schema carries no
// pass/fail by design: limsup claims are not decidable at finite n.
struct ExperimentResult {
    std::string id;
    nlohmann::json config;
    nlohmann::json summary;
    std::vector<std::pair<std::string, std::vector<double>>> series;  // CSV columns
    std::optional<bool> passed;
};

nlohmann::json result_json(const ExperimentResult& r);
// Writes <prefix>.json and, when there are series, <prefix>.csv.
void write_result(const ExperimentResult& r, const std::string& prefix);

// The two 15-term mod-100 sequences: lambda under the continuous-uniform
// convention (checked against 0.70 / 0.33 within +-0.03) and under the
// discrete alternative, with Phi of each.
ExperimentResult arnold_comparison();

struct Theorem1Config {
    mp::RealSpec a = mp::RealSpec::named(mp::NamedReal::e);
    bool assume_no_rational_power = false;
    mp::RealSpec modulus = mp::RealSpec::integer(1);
    std::uint64_t n = 256;
    std::uint64_t num_starts = 2000;
    std::uint64_t seed = 0;
    double ks_threshold = 0.05;
    unsigned workers = 1;
    std::int64_t precision_ceiling_bits = sequences::kDefaultPrecisionCeilingBits;
};

// Empirical law of lambda_n(A) for a^x A mod N over uniform starts A, with
// its KS distance to the Kolmogorov distribution. num_starts == 1 runs are
// diagnostic-only and carry no pass/fail.
ExperimentResult theorem1_experiment(const Theorem1Config& config);

struct LilSource {
    enum class Kind { iid_uniform, geometric_real, constant } kind = Kind::iid_uniform;
    mp::RealSpec a = mp::RealSpec::integer(2);   // geometric only
    mp::RealSpec start = mp::RealSpec::named(mp::NamedReal::e);  // geometric A
    double constant_value = 0.5;                 // degenerate diagnostic source
};

struct LilConfig {
    LilSource source;
    std::vector<std::uint64_t> checkpoints;  // increasing, each >= 16
    std::uint64_t seed = 0;
    std::int64_t precision_ceiling_bits = sequences::kDefaultPrecisionCeilingBits;
};

// lambda_n / sqrt(log log n) trajectory with its running maximum, reported
// against the applicable iterated-logarithm constant. Never pass/fail; values
// beyond 3x the constant are flagged anomalous.
ExperimentResult lil_tracker(const LilConfig& config);

struct DecayConfig {
    mp::RealSpec k = mp::RealSpec::rational(mp::Bigint(37), mp::Bigint(100));
    std::vector<std::uint64_t> checkpoints;  // increasing; default 100 * 2^j for rational
    double epsilon = 0.1;                    // metric-rate diagnostic (irrational k)
};

// Rational steps: lambda against the discrete uniform on the q support
// points, with the q/sqrt(n) envelope asserted. Irrational steps: exact
// sqrt(n) D_n^* trajectory plus the metric-rate diagnostic.
ExperimentResult arithmetic_decay(const DecayConfig& config);

}  // namespace ksp::experiments
