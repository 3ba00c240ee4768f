#include "ksp/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "ksp/contfrac.hpp"
#include "ksp/counting.hpp"
#include "ksp/distributions.hpp"
#include "ksp/errors.hpp"
#include "ksp/parallel.hpp"
#include "ksp/rng.hpp"
#include "ksp/simulate.hpp"
#include "ksp/version.hpp"

namespace ksp::experiments {

namespace {

using Clock = std::chrono::steady_clock;

double wall_ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void stamp(ExperimentResult& r, Clock::time_point t0) {
    r.summary["tool_version"] = kToolVersion;
    r.summary["generator"] = rng::kGeneratorId;
    r.summary["normal_method"] = rng::kNormalMethod;
    r.summary["schema_version"] = 1;
    r.summary["wall_ms"] = wall_ms_since(t0);
}

double lambda_uniform01(std::vector<double> unit_values) {
    counting::Sample s(std::move(unit_values), 0.0, 1.0);
    return std::sqrt(static_cast<double>(s.size())) * counting::star_discrepancy(s);
}

}  // namespace

nlohmann::json result_json(const ExperimentResult& r) {
    nlohmann::json j;
    j["id"] = r.id;
    j["config"] = r.config;
    j["summary"] = r.summary;
    if (r.passed.has_value()) j["passed"] = *r.passed;
    return j;
}

void write_result(const ExperimentResult& r, const std::string& prefix) {
    {
        std::ofstream out(prefix + ".json");
        if (!out) throw std::runtime_error("cannot write " + prefix + ".json");
        out << result_json(r).dump(2) << "\n";
    }
    if (r.series.empty()) return;
    std::ofstream csv(prefix + ".csv");
    if (!csv) throw std::runtime_error("cannot write " + prefix + ".csv");
    csv.precision(17);
    std::size_t rows = 0;
    for (std::size_t c = 0; c < r.series.size(); ++c) {
        csv << (c ? "," : "") << r.series[c].first;
        rows = std::max(rows, r.series[c].second.size());
    }
    csv << "\n";
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t c = 0; c < r.series.size(); ++c) {
            if (c) csv << ",";
            if (i < r.series[c].second.size()) csv << r.series[c].second[i];
        }
        csv << "\n";
    }
}

ExperimentResult arnold_comparison() {
    const auto t0 = Clock::now();
    ExperimentResult r;
    r.id = "arnold";
    r.config = {{"geometric", {{"a", 3}, {"A", 1}, {"mod", 100}, {"n", 15}}},
                {"arithmetic", {{"k", 37}, {"mod", 100}, {"n", 15}}},
                {"tolerance", 0.03}};

    sequences::GeometricIntSpec geo{.ratio = 3, .start = 1, .modulus = 100, .length = 15};
    sequences::ArithmeticSpec ari{.step = mp::RealSpec::integer(37),
                                  .modulus = mp::RealSpec::integer(100),
                                  .length = 15};
    const counting::Sample geo_sample = sequences::geometric_int_mod(geo);
    const counting::Sample ari_sample = sequences::arithmetic_mod(ari);
    const auto uniform = counting::TheoreticalCdf::continuous_uniform(0.0, 100.0);
    const auto discrete = counting::TheoreticalCdf::discrete_uniform(100);

    const auto geo_cont = counting::stochasticity_parameter(geo_sample, uniform);
    const auto ari_cont = counting::stochasticity_parameter(ari_sample, uniform);
    const auto geo_disc = counting::stochasticity_parameter(geo_sample, discrete);
    const auto ari_disc = counting::stochasticity_parameter(ari_sample, discrete);

    r.summary["geometric"] = {{"lambda", geo_cont.lambda},
                              {"phi", geo_cont.phi_of_lambda},
                              {"lambda_discrete", geo_disc.lambda},
                              {"phi_discrete", geo_disc.phi_of_lambda}};
    r.summary["arithmetic"] = {{"lambda", ari_cont.lambda},
                               {"phi", ari_cont.phi_of_lambda},
                               {"lambda_discrete", ari_disc.lambda},
                               {"phi_discrete", ari_disc.phi_of_lambda}};
    r.series.emplace_back("geometric_values",
                          std::vector<double>(geo_sample.values().begin(),
                                              geo_sample.values().end()));
    r.series.emplace_back("arithmetic_values",
                          std::vector<double>(ari_sample.values().begin(),
                                              ari_sample.values().end()));
    r.passed = std::fabs(geo_cont.lambda - 0.70) <= 0.03 &&
               std::fabs(ari_cont.lambda - 0.33) <= 0.03;
    stamp(r, t0);
    return r;
}

ExperimentResult theorem1_experiment(const Theorem1Config& config) {
    const auto t0 = Clock::now();
    if (config.n == 0 || config.num_starts == 0)
        throw std::invalid_argument("theorem1: n and num_starts must be >= 1");
    if (!(config.a.no_rational_power() || config.assume_no_rational_power))
        throw std::invalid_argument(
            "theorem1: base must satisfy a^x not rational for all x (e, pi, phi qualify; "
            "pass an explicit assumption for other reals)");

    // lambda_n of a^x A mod N against uniform[0,N] equals lambda_n of the
    // scaled orbit a^x (A/N) mod 1 against uniform[0,1], so the run works on
    // [0,1) regardless of the configured modulus.
    sequences::GeometricRealSpec policy;
    policy.ratio = config.a;
    policy.start = mp::RealSpec::rational(mp::Bigint(1), mp::Bigint(2));
    policy.modulus = mp::RealSpec::integer(1);
    policy.length = config.n;
    policy.output_bits = 64;
    policy.precision_ceiling_bits = config.precision_ceiling_bits;
    const std::int64_t p = sequences::required_precision_bits(policy);
    if (p > config.precision_ceiling_bits)
        throw resource_limit_error("theorem1: required precision " + std::to_string(p) +
                                   " bits exceeds the ceiling of " +
                                   std::to_string(config.precision_ceiling_bits));
    const mp::Fixed ratio(config.a.enclosure(p).lo, p);

    std::vector<double> lambdas(config.num_starts);
    parallel_for(config.num_starts, config.workers, [&](std::uint64_t rep) {
        auto gen = rng::Xoshiro256pp::substream(config.seed, rep);
        mp::Fixed start(gen.bits(p), p);  // A/N uniform on [0,1)
        auto terms = sequences::lacunary_orbit(start, ratio, config.n, p, 72, false);
        std::vector<double> unit;
        unit.reserve(terms.size());
        for (const auto& u : terms) unit.push_back(u.to_double());
        lambdas[rep] = lambda_uniform01(std::move(unit));
    });
    std::sort(lambdas.begin(), lambdas.end());
    const double ks =
        simulate::ks_distance(lambdas, [](double x) { return distributions::kolmogorov_cdf(x); });

    ExperimentResult r;
    r.id = "theorem1";
    r.config = {{"a", config.a.text()},
                {"N", config.modulus.text()},
                {"n", config.n},
                {"num_A", config.num_starts},
                {"seed", config.seed},
                {"workers", config.workers},
                {"ks_threshold", config.ks_threshold},
                {"precision_bits", p}};
    r.summary["ks_distance_to_phi"] = ks;
    r.summary["lambda_median"] = lambdas[lambdas.size() / 2];
    r.summary["lambda_min"] = lambdas.front();
    r.summary["lambda_max"] = lambdas.back();
    r.series.emplace_back("lambda", lambdas);
    if (config.num_starts == 1)
        r.summary["diagnostic_only"] = true;  // a single draw has no law to test
    else
        r.passed = ks < config.ks_threshold;
    stamp(r, t0);
    return r;
}

ExperimentResult lil_tracker(const LilConfig& config) {
    const auto t0 = Clock::now();
    if (config.checkpoints.empty())
        throw std::invalid_argument("lil_tracker: needs at least one checkpoint");
    for (std::size_t i = 0; i < config.checkpoints.size(); ++i) {
        if (config.checkpoints[i] < 16)
            throw std::invalid_argument("lil_tracker: checkpoints must be >= 16");
        if (i > 0 && config.checkpoints[i] <= config.checkpoints[i - 1])
            throw std::invalid_argument("lil_tracker: checkpoints must be increasing");
    }
    const std::uint64_t n_max = config.checkpoints.back();

    std::vector<double> unit_values;  // sequence scaled to [0,1]
    std::string source_name;
    std::optional<double> constant;
    std::string constant_case;
    switch (config.source.kind) {
        case LilSource::Kind::iid_uniform: {
            source_name = "iid_uniform";
            auto gen = rng::Xoshiro256pp::substream(config.seed, 0);
            unit_values.reserve(n_max);
            for (std::uint64_t i = 0; i < n_max; ++i) unit_values.push_back(gen.uniform01());
            constant = 1.0 / std::sqrt(2.0);
            constant_case = "chung-smirnov";
            break;
        }
        case LilSource::Kind::geometric_real: {
            source_name = "geometric:a=" + config.source.a.text() +
                          ",A=" + config.source.start.text();
            sequences::GeometricRealSpec spec;
            spec.ratio = config.source.a;
            spec.start = config.source.start;
            spec.length = n_max;
            spec.precision_ceiling_bits = config.precision_ceiling_bits;
            auto terms = sequences::geometric_real_terms(spec);
            unit_values.reserve(terms.size());
            for (const auto& u : terms) unit_values.push_back(u.to_double());
            // Classify the base for the four-case constant table.
            if (config.source.a.is_rational()) {
                auto [num, den] = config.source.a.as_ratio();
                if (den == mp::Bigint(1) && num.fits_u64()) {
                    const std::uint64_t a = num.to_u64();
                    if (a == 2) {
                        constant = distributions::lil_constant(
                            2.0, distributions::PowerClass::integer_two);
                        constant_case = "a=2";
                    } else if (a >= 4 && a % 2 == 0) {
                        constant = distributions::lil_constant(
                            static_cast<double>(a),
                            distributions::PowerClass::integer_even_ge4);
                        constant_case = "even integer";
                    } else if (a >= 3) {
                        constant = distributions::lil_constant(
                            static_cast<double>(a), distributions::PowerClass::integer_odd_ge3);
                        constant_case = "odd integer";
                    }
                }
            } else if (config.source.a.no_rational_power()) {
                constant = distributions::lil_constant(
                    config.source.a.to_double(), distributions::PowerClass::no_rational_power);
                constant_case = "no rational power";
            }
            break;
        }
        case LilSource::Kind::constant: {
            source_name = "constant";
            unit_values.assign(n_max, config.source.constant_value);
            break;
        }
    }

    std::vector<double> lambdas, ratios;
    double running_max = 0.0;
    bool anomalous = false;
    const double reference = constant.value_or(1.0 / std::sqrt(2.0));
    for (std::uint64_t n : config.checkpoints) {
        std::vector<double> prefix(unit_values.begin(),
                                   unit_values.begin() + static_cast<std::ptrdiff_t>(n));
        const double lam = lambda_uniform01(std::move(prefix));
        const double ratio = lam / std::sqrt(std::log(std::log(static_cast<double>(n))));
        lambdas.push_back(lam);
        ratios.push_back(ratio);
        running_max = std::max(running_max, ratio);
        if (ratio > 3.0 * reference) anomalous = true;
    }

    ExperimentResult r;
    r.id = "lil";
    r.config = {{"source", source_name},
                {"seed", config.seed},
                {"checkpoints", config.checkpoints}};
    r.summary["running_max_ratio"] = running_max;
    if (constant.has_value()) {
        r.summary["lil_constant"] = *constant;
        r.summary["lil_case"] = constant_case;
    } else {
        r.summary["lil_constant"] = nullptr;
    }
    r.summary["anomalous"] = anomalous;
    r.summary["note"] = "trajectory report; limsup claims are not decidable at finite n";
    r.series.emplace_back("n", std::vector<double>(config.checkpoints.begin(),
                                                   config.checkpoints.end()));
    r.series.emplace_back("lambda", lambdas);
    r.series.emplace_back("lambda_over_sqrt_loglog_n", ratios);
    // passed intentionally left empty: the schema forbids pass/fail for LIL runs
    stamp(r, t0);
    return r;
}

ExperimentResult arithmetic_decay(const DecayConfig& config) {
    const auto t0 = Clock::now();
    ExperimentResult r;
    r.id = "decay";

    if (config.k.is_rational()) {
        auto [p, q_big] = config.k.as_ratio();
        if (!q_big.fits_u64() || !p.fits_u64())
            throw std::invalid_argument("decay: rational step too large");
        const std::uint64_t q = q_big.to_u64();
        const std::uint64_t pnum = p.to_u64() % q;
        std::vector<std::uint64_t> checkpoints = config.checkpoints;
        if (checkpoints.empty())
            for (std::uint64_t j = 0; j <= 10; ++j) checkpoints.push_back(q << j);

        // lambda against the discrete uniform on the q support points {j/q},
        // evaluated exactly from residue counts.
        std::vector<std::uint64_t> counts(q, 0);
        std::uint64_t residue = 0, x = 0;
        std::vector<double> lambdas;
        bool envelope_ok = true;
        for (std::uint64_t n : checkpoints) {
            if (n <= x) throw std::invalid_argument("decay: checkpoints must be increasing");
            for (; x < n; ++x) {
                residue += pnum;
                if (residue >= q) residue -= q;
                ++counts[residue];
            }
            double sup = 0.0;
            std::uint64_t cum = 0;
            for (std::uint64_t j = 0; j < q; ++j) {
                const double expect_left =
                    static_cast<double>(n) * (static_cast<double>(j) / static_cast<double>(q));
                sup = std::max(sup, std::fabs(static_cast<double>(cum) - expect_left));
                cum += counts[j];
                const double expect_right =
                    static_cast<double>(n) *
                    (static_cast<double>(j + 1) / static_cast<double>(q));
                sup = std::max(sup, std::fabs(static_cast<double>(cum) - expect_right));
            }
            const double lam = sup / std::sqrt(static_cast<double>(n));
            lambdas.push_back(lam);
            if (lam > static_cast<double>(q) / std::sqrt(static_cast<double>(n)))
                envelope_ok = false;
        }
        r.config = {{"k", config.k.text()}, {"convention", "discrete"},
                    {"checkpoints", checkpoints}};
        r.summary["final_lambda"] = lambdas.back();
        r.summary["envelope"] = "q/sqrt(n)";
        r.series.emplace_back("n", std::vector<double>(checkpoints.begin(), checkpoints.end()));
        r.series.emplace_back("lambda", lambdas);
        r.passed = envelope_ok;
        stamp(r, t0);
        return r;
    }

    // Irrational step: exact sqrt(n) D_n^* against the continuous uniform,
    // with the metric-rate diagnostic; trajectory only, no pass/fail.
    std::vector<std::uint64_t> checkpoints = config.checkpoints;
    if (checkpoints.empty()) checkpoints = {100, 1000, 10000, 100000, 1000000};
    std::vector<double> lambdas, rates;
    for (std::uint64_t n : checkpoints) {
        const double nd = contfrac::scaled_discrepancy_of_multiples(config.k, n);
        lambdas.push_back(nd / std::sqrt(static_cast<double>(n)));
        const double logn = std::log(static_cast<double>(n));
        rates.push_back(nd / (logn * std::pow(std::log(logn), 1.0 + config.epsilon)));
    }
    r.config = {{"k", config.k.text()},
                {"convention", "continuous"},
                {"epsilon", config.epsilon},
                {"checkpoints", checkpoints}};
    r.summary["final_lambda"] = lambdas.back();
    r.summary["final_rate"] = rates.back();
    r.series.emplace_back("n", std::vector<double>(checkpoints.begin(), checkpoints.end()));
    r.series.emplace_back("lambda", lambdas);
    r.series.emplace_back("metric_rate", rates);
    stamp(r, t0);
    return r;
}

}  // namespace ksp::experiments
