#include "ksp/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ksp/contfrac.hpp"
#include "ksp/counting.hpp"
#include "ksp/distributions.hpp"
#include "ksp/errors.hpp"
#include "ksp/experiments.hpp"
#include "ksp/rng.hpp"
#include "ksp/sequences.hpp"
#include "ksp/simulate.hpp"
#include "ksp/version.hpp"

namespace ksp::cli {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitResource = 2;
constexpr int kExitExperimentFailed = 3;

std::int64_t precision_ceiling_from_env() {
    if (const char* v = std::getenv("KSP_PRECISION_CEILING_BITS")) {
        char* end = nullptr;
        const long long parsed = std::strtoll(v, &end, 10);
        if (end && *end == '\0' && parsed > 0) return parsed;
        throw std::invalid_argument("KSP_PRECISION_CEILING_BITS must be a positive integer");
    }
    return sequences::kDefaultPrecisionCeilingBits;
}

mp::RealSpec parse_real(const std::string& text, const std::string& flag) {
    auto spec = mp::RealSpec::parse(text);
    if (!spec) throw std::invalid_argument(flag + ": cannot parse real value '" + text + "'");
    return *spec;
}

std::vector<double> read_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double v;
        while (ls >> v) values.push_back(v);
    }
    if (values.empty()) throw std::invalid_argument("input file '" + path + "' has no values");
    return values;
}

std::vector<std::uint64_t> parse_checkpoints(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const double v = std::stod(tok);
        if (!(v >= 1.0 && v < 9e18)) throw std::invalid_argument("bad checkpoint '" + tok + "'");
        out.push_back(static_cast<std::uint64_t>(std::llround(v)));
    }
    if (out.empty()) throw std::invalid_argument("empty checkpoint list");
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

struct CdfChoice {
    counting::TheoreticalCdf cdf;
    double domain_lo;
    double domain_hi;
};

CdfChoice parse_cdf(const std::string& text) {
    std::vector<std::string> parts;
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.empty()) throw std::invalid_argument("--cdf: empty spec");
    if (parts[0] == "uniform") {
        if (parts.size() != 3) throw std::invalid_argument("--cdf uniform:<lo>:<hi>");
        const double lo = std::stod(parts[1]), hi = std::stod(parts[2]);
        return {counting::TheoreticalCdf::continuous_uniform(lo, hi), lo, hi};
    }
    if (parts[0] == "discrete") {
        if (parts.size() != 2) throw std::invalid_argument("--cdf discrete:<N>");
        const auto n = static_cast<std::uint64_t>(std::stoull(parts[1]));
        return {counting::TheoreticalCdf::discrete_uniform(n), 0.0, static_cast<double>(n)};
    }
    if (parts[0] == "bernoulli") {
        if (parts.size() != 2) throw std::invalid_argument("--cdf bernoulli:<p>");
        return {counting::TheoreticalCdf::bernoulli(std::stod(parts[1])), 0.0, 1.0};
    }
    throw std::invalid_argument("--cdf: unknown kind '" + parts[0] + "'");
}

void print_values(std::ostream& out, const std::vector<double>& values, const json& meta,
                  bool as_json) {
    if (as_json) {
        json j = meta;
        j["tool_version"] = kToolVersion;
        j["values"] = values;
        out << j.dump(2) << "\n";
        return;
    }
    out << "# ksp " << kToolVersion;
    for (auto it = meta.begin(); it != meta.end(); ++it)
        out << " " << it.key() << "=" << (it->is_string() ? it->get<std::string>() : it->dump());
    out << "\n";
    out << std::setprecision(17);
    for (double v : values) out << v << "\n";
}

std::string side_name(counting::SupSide s) {
    return s == counting::SupSide::left_limit ? "left-limit" : "right-value";
}

// ----- subcommand handlers ------------------------------------------------

struct GlobalFlags {
    bool json = false;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string out_prefix;
    std::int64_t precision_ceiling = sequences::kDefaultPrecisionCeilingBits;
};

int cmd_phi(double value, bool quantile, const GlobalFlags& g, std::ostream& out,
            std::ostream& err) {
    if (quantile) {
        const double x = distributions::kolmogorov_quantile(value);
        if (g.json)
            out << json{{"p", value}, {"x", x}, {"tool_version", kToolVersion}}.dump() << "\n";
        else
            out << std::fixed << std::setprecision(12) << x << "\n";
        return kExitOk;
    }
    const double phi = distributions::kolmogorov_cdf(value);
    if (g.json)
        out << json{{"x", value}, {"phi", phi}, {"tool_version", kToolVersion}}.dump() << "\n";
    else
        out << std::fixed << std::setprecision(12) << phi << "\n";
    err << "# ksp " << kToolVersion << "\n";
    return kExitOk;
}

int cmd_lambda(const std::string& input, const std::string& cdf_text,
               const std::string& domain_text, const GlobalFlags& g, std::ostream& out,
               std::ostream& err) {
    if (!g.json) err << "# ksp " << kToolVersion << "\n";
    auto values = read_sequence_file(input);
    CdfChoice choice = parse_cdf(cdf_text);
    double lo = choice.domain_lo, hi = choice.domain_hi;
    if (!domain_text.empty()) {
        const auto colon = domain_text.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("--domain lo:hi");
        lo = std::stod(domain_text.substr(0, colon));
        hi = std::stod(domain_text.substr(colon + 1));
    }
    counting::Sample sample(std::move(values), lo, hi);
    const auto report = counting::stochasticity_parameter(sample, choice.cdf);
    if (g.json) {
        out << json{{"n", report.n},
                    {"lambda", report.lambda},
                    {"sup_deviation", report.sup_deviation},
                    {"argsup", report.argsup},
                    {"side", side_name(report.side)},
                    {"phi_of_lambda", report.phi_of_lambda},
                    {"cdf", cdf_text},
                    {"tool_version", kToolVersion}}
                    .dump(2)
            << "\n";
    } else {
        out << "n            = " << report.n << "\n"
            << "lambda       = " << std::setprecision(12) << report.lambda << "\n"
            << "sup |Cn-C0|  = " << report.sup_deviation << "\n"
            << "argsup       = " << report.argsup << " (" << side_name(report.side) << ")\n"
            << "Phi(lambda)  = " << report.phi_of_lambda << "\n";
    }
    return kExitOk;
}

int cmd_discrepancy(const std::string& input, const GlobalFlags& g, std::ostream& out,
                    std::ostream& err) {
    if (!g.json) err << "# ksp " << kToolVersion << "\n";
    auto values = read_sequence_file(input);
    counting::Sample sample(std::move(values), 0.0, 1.0);
    const double d = counting::star_discrepancy(sample);
    const double lambda = std::sqrt(static_cast<double>(sample.size())) * d;
    if (g.json)
        out << json{{"n", sample.size()},
                    {"star_discrepancy", d},
                    {"lambda", lambda},
                    {"tool_version", kToolVersion}}
                    .dump()
            << "\n";
    else
        out << std::setprecision(12) << d << "\n";
    return kExitOk;
}

int cmd_weyl(const std::string& input, long long h, const GlobalFlags& g, std::ostream& out,
             std::ostream& err) {
    if (!g.json) err << "# ksp " << kToolVersion << "\n";
    auto values = read_sequence_file(input);
    counting::Sample sample(std::move(values), 0.0, 1.0);
    const double s = counting::weyl_sum(sample, h);
    if (g.json)
        out << json{{"n", sample.size()}, {"h", h}, {"weyl_sum", s},
                    {"tool_version", kToolVersion}}
                    .dump()
            << "\n";
    else
        out << std::setprecision(12) << s << "\n";
    return kExitOk;
}

int cmd_experiment_common(experiments::ExperimentResult result, const GlobalFlags& g,
                          std::ostream& out) {
    if (!g.out_prefix.empty()) experiments::write_result(result, g.out_prefix);
    out << experiments::result_json(result).dump(2) << "\n";
    if (result.passed.has_value() && !*result.passed) return kExitExperimentFailed;
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    GlobalFlags g;

    CLI::App app{"stochasticity parameter toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may appear after the subcommand
    app.add_flag("--json", g.json, "emit JSON");
    app.add_option("--seed", g.seed, "RNG seed (default 0)");
    app.add_option("--workers", g.workers, "worker threads (must not change results)");
    app.add_option("--out", g.out_prefix, "output path prefix for result files");

    // phi
    double phi_value = 0.0;
    bool phi_quantile = false;
    auto* phi = app.add_subcommand("phi", "Kolmogorov distribution CDF / quantile");
    phi->add_option("value", phi_value, "argument x (or p with --quantile)")->required();
    phi->add_flag("--quantile", phi_quantile, "invert: return x with Phi(x) = p");

    // lambda
    std::string in_path, cdf_text = "uniform:0:1", domain_text;
    auto* lambda = app.add_subcommand("lambda", "stochasticity parameter of a sequence file");
    lambda->add_option("--input", in_path, "one value per line, # comments")->required();
    lambda->add_option("--cdf", cdf_text, "uniform:lo:hi | discrete:N | bernoulli:p");
    lambda->add_option("--domain", domain_text, "override ambient interval lo:hi");

    // discrepancy
    std::string disc_path;
    auto* disc = app.add_subcommand("discrepancy", "star-discrepancy of a [0,1] sequence file");
    disc->add_option("--input", disc_path)->required();

    // weyl
    std::string weyl_path;
    long long weyl_h = 1;
    auto* weyl = app.add_subcommand("weyl", "Weyl sum magnitude of a [0,1] sequence file");
    weyl->set_help_flag("--help", "print help");  // frees the name 'h' for the frequency
    weyl->add_option("--input", weyl_path)->required();
    weyl->add_option("--h", weyl_h, "nonzero integer frequency")->required();

    // generate
    auto* gen = app.add_subcommand("generate", "sequence generators");
    gen->require_subcommand(1);
    std::string gen_k = "1", gen_mod = "1", gen_a = "2", gen_A = "1", gen_offset = "0";
    std::uint64_t gen_n = 10;
    std::int64_t gen_bits = 64;
    bool gen_from_zero = false;
    double gen_lo = 0.0, gen_hi = 1.0;
    auto* gen_arith = gen->add_subcommand("arithmetic", "k*x + offset mod N");
    gen_arith->add_option("--k", gen_k, "step (real spec: 37, 37/100, 2.5, e, pi, sqrt2, phi)")
        ->required();
    gen_arith->add_option("--mod", gen_mod, "modulus N (rational)");
    gen_arith->add_option("--n", gen_n, "number of terms")->required();
    gen_arith->add_option("--offset", gen_offset, "start offset");
    gen_arith->add_flag("--from-zero", gen_from_zero, "index from x=0 instead of x=1");
    auto* gen_geo = gen->add_subcommand("geometric", "a^x * A mod N (integers)");
    gen_geo->add_option("--a", gen_a)->required();
    gen_geo->add_option("--A", gen_A);
    gen_geo->add_option("--mod", gen_mod)->required();
    gen_geo->add_option("--n", gen_n)->required();
    gen_geo->add_flag("--from-zero", gen_from_zero);
    auto* gen_lac = gen->add_subcommand("lacunary", "a^x * A mod N (high-precision reals)");
    gen_lac->add_option("--a", gen_a, "ratio > 1 (real spec)")->required();
    gen_lac->add_option("--A", gen_A, "start > 0 (real spec)")->required();
    gen_lac->add_option("--mod", gen_mod, "modulus (rational)");
    gen_lac->add_option("--n", gen_n)->required();
    gen_lac->add_option("--bits", gen_bits, "correct fraction bits per term");
    gen_lac->add_flag("--from-zero", gen_from_zero);
    auto* gen_iid = gen->add_subcommand("iid", "seeded uniform sample");
    gen_iid->add_option("--n", gen_n)->required();
    gen_iid->add_option("--lo", gen_lo);
    gen_iid->add_option("--hi", gen_hi);

    // contfrac
    auto* cf = app.add_subcommand("contfrac", "continued fractions");
    cf->require_subcommand(1);
    std::string cf_k = "phi";
    std::size_t cf_terms = 50;
    std::int64_t cf_bits = 0;
    std::uint64_t cf_n = 1000, cf_samples = 500, cf_jmax = 10;
    double cf_eps = 0.1;
    std::string cf_grid = "16,100,1000,10000";
    auto* cf_expand = cf->add_subcommand("expand", "certified partial quotients + convergents");
    cf_expand->add_option("--k", cf_k)->required();
    cf_expand->add_option("--terms", cf_terms);
    cf_expand->add_option("--bits", cf_bits, "enclosure precision (0 = auto)");
    auto* cf_bound = cf->add_subcommand("bound", "upper bound on n*D_n of {kx}");
    cf_bound->add_option("--k", cf_k)->required();
    cf_bound->add_option("--n", cf_n)->required();
    auto* cf_gk = cf->add_subcommand("gauss-kuzmin", "partial-quotient statistics");
    cf_gk->add_option("--k", cf_k, "single value; omit to pool random reals");
    cf_gk->add_option("--samples", cf_samples, "number of pooled random reals");
    cf_gk->add_option("--terms", cf_terms, "quotients per real");
    cf_gk->add_option("--jmax", cf_jmax);
    auto* cf_rate = cf->add_subcommand("rate", "metric discrepancy-rate diagnostic");
    cf_rate->add_option("--k", cf_k)->required();
    cf_rate->add_option("--epsilon", cf_eps);
    cf_rate->add_option("--grid", cf_grid, "comma-separated n values");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo runs");
    sim->require_subcommand(1);
    std::uint64_t sim_N = 100, sim_trials = 100000, sim_n = 10000, sim_numA = 1000;
    std::string sim_coeffs = "1", sim_thresholds = "0.5", sim_a = "e";
    std::size_t sim_segments = 4096;
    auto* sim_bridge = sim->add_subcommand("bridge-max", "law of max_m |B(m/N)|");
    sim_bridge->add_option("--N", sim_N)->required();
    sim_bridge->add_option("--trials", sim_trials);
    auto* sim_bern = sim->add_subcommand("bernoulli", "law of |sum z - n/2|/sqrt(n)");
    sim_bern->add_option("--n", sim_n)->required();
    sim_bern->add_option("--trials", sim_trials);
    std::string sim_spec_path;
    auto* sim_cov = sim->add_subcommand("covariance", "three routes to the bridge variance");
    sim_cov->add_option("--coeffs", sim_coeffs, "comma-separated b_k");
    sim_cov->add_option("--thresholds", sim_thresholds, "comma-separated t_k");
    sim_cov->add_option("--spec", sim_spec_path,
                        "JSON file with {\"coeffs\": [...], \"thresholds\": [...]}");
    auto* sim_clt = sim->add_subcommand("clt-probe", "normalized lacunary sums vs normal law");
    sim_clt->add_option("--a", sim_a);
    sim_clt->add_option("--n", sim_n);
    sim_clt->add_option("--num-A", sim_numA);
    sim_clt->add_option("--segments", sim_segments);

    // experiment
    auto* exp = app.add_subcommand("experiment", "seeded, persisted experiments");
    exp->require_subcommand(1);
    std::string exp_a = "e", exp_k = "37/100", exp_source = "iid", exp_A = "e";
    std::string exp_checkpoints;
    std::uint64_t exp_n = 256, exp_numA = 2000;
    double exp_threshold = 0.05, exp_eps = 0.1;
    bool exp_assume = false;
    exp->add_subcommand("arnold", "the two 15-term mod-100 sequences");
    auto* exp_t1 = exp->add_subcommand("theorem1", "law of lambda_n(A) vs Phi");
    exp_t1->add_option("--a", exp_a);
    exp_t1->add_option("--n", exp_n);
    exp_t1->add_option("--num-A", exp_numA);
    exp_t1->add_option("--threshold", exp_threshold, "KS pass threshold (config, not theory)");
    exp_t1->add_flag("--assume-no-rational-power", exp_assume,
                     "assert a^x is never rational for a user-supplied base");
    auto* exp_lil = exp->add_subcommand("lil", "iterated-logarithm trajectory report");
    exp_lil->add_option("--source", exp_source, "iid | geometric | constant");
    exp_lil->add_option("--a", exp_a, "geometric ratio");
    exp_lil->add_option("--A", exp_A, "geometric start");
    exp_lil->add_option("--checkpoints", exp_checkpoints, "comma-separated n values");
    auto* exp_decay = exp->add_subcommand("decay", "arithmetic-progression lambda decay");
    exp_decay->add_option("--k", exp_k);
    exp_decay->add_option("--checkpoints", exp_checkpoints);
    exp_decay->add_option("--epsilon", exp_eps);

    try {
        app.parse(argc, argv);
        g.precision_ceiling = precision_ceiling_from_env();

        if (phi->parsed()) return cmd_phi(phi_value, phi_quantile, g, out, err);
        if (lambda->parsed()) return cmd_lambda(in_path, cdf_text, domain_text, g, out, err);
        if (disc->parsed()) return cmd_discrepancy(disc_path, g, out, err);
        if (weyl->parsed()) return cmd_weyl(weyl_path, weyl_h, g, out, err);

        if (gen->parsed()) {
            if (gen_arith->parsed()) {
                sequences::ArithmeticSpec spec{.step = parse_real(gen_k, "--k"),
                                               .modulus = parse_real(gen_mod, "--mod"),
                                               .length = gen_n,
                                               .offset = parse_real(gen_offset, "--offset"),
                                               .from_zero = gen_from_zero};
                auto sample = sequences::arithmetic_mod(spec);
                print_values(out, sample.values(),
                             {{"kind", "arithmetic"}, {"k", gen_k}, {"mod", gen_mod},
                              {"n", gen_n}, {"offset", gen_offset},
                              {"from_zero", gen_from_zero}},
                             g.json);
                return kExitOk;
            }
            if (gen_geo->parsed()) {
                sequences::GeometricIntSpec spec{.ratio = std::stoull(gen_a),
                                                 .start = std::stoull(gen_A),
                                                 .modulus = std::stoull(gen_mod),
                                                 .length = gen_n,
                                                 .from_zero = gen_from_zero};
                auto sample = sequences::geometric_int_mod(spec);
                print_values(out, sample.values(),
                             {{"kind", "geometric"}, {"a", gen_a}, {"A", gen_A},
                              {"mod", gen_mod}, {"n", gen_n}, {"from_zero", gen_from_zero}},
                             g.json);
                return kExitOk;
            }
            if (gen_lac->parsed()) {
                sequences::GeometricRealSpec spec;
                spec.ratio = parse_real(gen_a, "--a");
                spec.start = parse_real(gen_A, "--A");
                spec.modulus = parse_real(gen_mod, "--mod");
                spec.length = gen_n;
                spec.output_bits = gen_bits;
                spec.precision_ceiling_bits = g.precision_ceiling;
                spec.from_zero = gen_from_zero;
                auto sample = sequences::geometric_real_mod(spec);
                print_values(out, sample.values(),
                             {{"kind", "lacunary"}, {"a", gen_a}, {"A", gen_A},
                              {"mod", gen_mod}, {"n", gen_n}, {"bits", gen_bits},
                              {"precision_bits", sequences::required_precision_bits(spec)}},
                             g.json);
                return kExitOk;
            }
            auto sample = sequences::iid_uniform(gen_n, gen_lo, gen_hi, g.seed);
            print_values(out, sample.values(),
                         {{"kind", "iid"}, {"n", gen_n}, {"lo", gen_lo}, {"hi", gen_hi},
                          {"seed", g.seed}, {"generator", rng::kGeneratorId}},
                         g.json);
            return kExitOk;
        }

        if (cf->parsed()) {
            const auto k = parse_real(cf_k, "--k");
            if (cf_expand->parsed()) {
                auto e = contfrac::expand(k, cf_terms, cf_bits);
                json j{{"k", cf_k},
                       {"a0", e.a0.str()},
                       {"terminated", e.terminated},
                       {"truncated", e.truncated},
                       {"source_precision_bits", e.source_precision_bits},
                       {"tool_version", kToolVersion}};
                for (const auto& a : e.quotients) j["quotients"].push_back(a.str());
                for (const auto& c : e.convergents)
                    j["convergents"].push_back({c.p.str(), c.q.str()});
                if (g.json) {
                    out << j.dump(2) << "\n";
                } else {
                    out << "[" << e.a0.str();
                    for (std::size_t i = 0; i < e.quotients.size(); ++i)
                        out << (i ? ", " : "; ") << e.quotients[i].str();
                    out << "]" << (e.terminated ? " (terminated)" : "")
                        << (e.truncated ? " (truncated)" : "") << "\n";
                }
                return kExitOk;
            }
            if (cf_bound->parsed()) {
                auto e = contfrac::expand(k, 1000, 0);
                const double bound = contfrac::discrepancy_bound(e, cf_n);
                if (g.json)
                    out << json{{"k", cf_k}, {"n", cf_n}, {"bound_on_n_discrepancy", bound},
                                {"tool_version", kToolVersion}}
                            .dump()
                        << "\n";
                else
                    out << bound << "\n";
                return kExitOk;
            }
            if (cf_gk->parsed()) {
                std::vector<contfrac::Expansion> pool;
                if (cf_gk->count("--k")) {
                    pool.push_back(contfrac::expand(k, cf_terms, cf_bits));
                } else {
                    const auto bits = std::max<std::int64_t>(
                        512, 4 * static_cast<std::int64_t>(cf_terms) + 128);
                    for (std::uint64_t i = 0; i < cf_samples; ++i) {
                        auto gen_rng = rng::Xoshiro256pp::substream(g.seed, i);
                        auto spec = mp::RealSpec::rational(gen_rng.bits(bits),
                                                           mp::Bigint::pow2(
                                                               static_cast<std::uint64_t>(bits)));
                        pool.push_back(contfrac::expand(spec, cf_terms, 0));
                    }
                }
                auto table = contfrac::gauss_kuzmin_frequencies(pool, cf_jmax);
                json j{{"j_max", table.j_max},
                       {"total_quotients", table.total_quotients},
                       {"empirical", table.empirical},
                       {"empirical_overflow", table.empirical_overflow},
                       {"theoretical", table.theoretical},
                       {"theoretical_overflow", table.theoretical_overflow},
                       {"seed", g.seed},
                       {"tool_version", kToolVersion}};
                out << j.dump(2) << "\n";
                return kExitOk;
            }
            // rate
            std::vector<mp::RealSpec> ks{k};
            auto report = contfrac::metric_rate_check(ks, cf_eps, parse_checkpoints(cf_grid));
            json j{{"k", cf_k},
                   {"epsilon", cf_eps},
                   {"grid", report.grid},
                   {"r_values", report.per_k[0].r_values},
                   {"max_r", report.per_k[0].max_r},
                   {"increasing_top_half", report.per_k[0].increasing_top_half},
                   {"tool_version", kToolVersion}};
            out << j.dump(2) << "\n";
            return kExitOk;
        }

        if (sim->parsed()) {
            if (sim_cov->parsed()) {
                simulate::CovarianceSpec spec;
                if (!sim_spec_path.empty()) {
                    std::ifstream in(sim_spec_path);
                    if (!in)
                        throw std::invalid_argument("cannot open spec file '" + sim_spec_path +
                                                    "'");
                    json j;
                    in >> j;
                    spec.coeffs = j.at("coeffs").get<std::vector<double>>();
                    spec.thresholds = j.at("thresholds").get<std::vector<double>>();
                } else {
                    spec.coeffs = parse_double_list(sim_coeffs);
                    spec.thresholds = parse_double_list(sim_thresholds);
                }
                auto forms = simulate::covariance_identity(spec);
                out << json{{"integral_form", forms.integral_form},
                            {"closed_form", forms.closed_form},
                            {"bridge_form", forms.bridge_form},
                            {"tool_version", kToolVersion}}
                        .dump(2)
                    << "\n";
                return kExitOk;
            }
            simulate::EmpiricalCdfEstimate est;
            json j{{"seed", g.seed},
                   {"generator", rng::kGeneratorId},
                   {"normal_method", rng::kNormalMethod},
                   {"tool_version", kToolVersion}};
            if (sim_bridge->parsed()) {
                est = simulate::discrete_bridge_max(sim_N, sim_trials, g.seed, g.workers);
                j["kind"] = "bridge-max";
                j["N"] = sim_N;
                j["trials"] = sim_trials;
                j["ks_to_kolmogorov"] = est.ks_distance_to(
                    [](double x) { return distributions::kolmogorov_cdf(x); });
                j["ks_to_half_normal_half"] = est.ks_distance_to(
                    [](double x) { return distributions::half_normal_cdf(x, 0.5); });
            } else if (sim_bern->parsed()) {
                est = simulate::bernoulli_lambda(sim_n, sim_trials, g.seed, g.workers);
                j["kind"] = "bernoulli";
                j["n"] = sim_n;
                j["trials"] = sim_trials;
                j["ks_to_half_normal_half"] = est.ks_distance_to(
                    [](double x) { return distributions::half_normal_cdf(x, 0.5); });
            } else {
                simulate::CltProbeConfig cfg;
                cfg.f = simulate::normalized_cosine(sim_segments);
                cfg.a = parse_real(sim_a, "--a");
                cfg.n = sim_n;
                cfg.num_starts = sim_numA;
                cfg.seed = g.seed;
                cfg.workers = g.workers;
                cfg.precision_ceiling_bits = g.precision_ceiling;
                est = simulate::fukuyama_clt_probe(cfg);
                j["kind"] = "clt-probe";
                j["a"] = sim_a;
                j["n"] = sim_n;
                j["num_A"] = sim_numA;
                j["ks_to_standard_normal"] =
                    est.ks_distance_to([](double x) { return rng::standard_normal_cdf(x); });
            }
            if (!g.out_prefix.empty()) {
                std::ofstream csv(g.out_prefix + ".csv");
                csv.precision(17);
                csv << "value\n";
                for (double v : est.sorted_values) csv << v << "\n";
                std::ofstream js(g.out_prefix + ".json");
                js << j.dump(2) << "\n";
            }
            out << j.dump(2) << "\n";
            return kExitOk;
        }

        // experiment
        if (exp->get_subcommand("arnold")->parsed())
            return cmd_experiment_common(experiments::arnold_comparison(), g, out);
        if (exp_t1->parsed()) {
            experiments::Theorem1Config cfg;
            cfg.a = parse_real(exp_a, "--a");
            cfg.assume_no_rational_power = exp_assume;
            cfg.n = exp_n;
            cfg.num_starts = exp_numA;
            cfg.seed = g.seed;
            cfg.ks_threshold = exp_threshold;
            cfg.workers = g.workers;
            cfg.precision_ceiling_bits = g.precision_ceiling;
            return cmd_experiment_common(experiments::theorem1_experiment(cfg), g, out);
        }
        if (exp_lil->parsed()) {
            experiments::LilConfig cfg;
            if (exp_source == "iid") {
                cfg.source.kind = experiments::LilSource::Kind::iid_uniform;
            } else if (exp_source == "geometric") {
                cfg.source.kind = experiments::LilSource::Kind::geometric_real;
                cfg.source.a = parse_real(exp_a, "--a");
                cfg.source.start = parse_real(exp_A, "--A");
            } else if (exp_source == "constant") {
                cfg.source.kind = experiments::LilSource::Kind::constant;
            } else {
                throw std::invalid_argument("--source must be iid, geometric or constant");
            }
            cfg.checkpoints = exp_checkpoints.empty()
                                  ? std::vector<std::uint64_t>{1000, 10000, 100000, 1000000}
                                  : parse_checkpoints(exp_checkpoints);
            cfg.seed = g.seed;
            cfg.precision_ceiling_bits = g.precision_ceiling;
            return cmd_experiment_common(experiments::lil_tracker(cfg), g, out);
        }
        if (exp_decay->parsed()) {
            experiments::DecayConfig cfg;
            cfg.k = parse_real(exp_k, "--k");
            if (!exp_checkpoints.empty()) cfg.checkpoints = parse_checkpoints(exp_checkpoints);
            cfg.epsilon = exp_eps;
            return cmd_experiment_common(experiments::arithmetic_decay(cfg), g, out);
        }
        err << "error: no subcommand dispatched\n";
        return kExitInvalid;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    } catch (const resource_limit_error& e) {
        err << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}

}  // namespace ksp::cli
