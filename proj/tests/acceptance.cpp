// Acceptance suite: one line per criterion, PASS/FAIL, with the thresholds
// pinned here. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "ksp/contfrac.hpp"
#include "ksp/counting.hpp"
#include "ksp/distributions.hpp"
#include "ksp/experiments.hpp"
#include "ksp/rng.hpp"
#include "ksp/sequences.hpp"
#include "ksp/simulate.hpp"

using ksp::counting::Sample;
using ksp::counting::TheoreticalCdf;
using ksp::mp::Bigint;
using ksp::mp::Fixed;
using ksp::mp::RealSpec;
namespace dist = ksp::distributions;
namespace sim = ksp::simulate;
namespace seq = ksp::sequences;
namespace cf = ksp::contfrac;
namespace xpr = ksp::experiments;

namespace {

int failures = 0;
const unsigned kWorkers = 2;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int idx, const std::string& name, bool ok, double elapsed, double limit,
            const std::string& detail) {
    const bool in_time = elapsed < limit;
    const bool pass = ok && in_time;
    if (!pass) ++failures;
    std::printf("%s criterion %d: %s [%.2fs of %.0fs] %s\n", pass ? "PASS" : "FAIL", idx,
                name.c_str(), elapsed, limit, detail.c_str());
}

double circle_dist(double a, double b) {
    const double d = std::fabs(a - b);
    return std::min(d, 1.0 - d);
}

// 1. The two 15-term mod-100 sequences under the continuous uniform law.
void criterion1() {
    Timer t;
    auto r = xpr::arnold_comparison();
    const double geo = r.summary["geometric"]["lambda"].get<double>();
    const double ari = r.summary["arithmetic"]["lambda"].get<double>();
    const bool ok = std::fabs(geo - 0.70) <= 0.03 && std::fabs(ari - 0.33) <= 0.03 &&
                    r.passed.value_or(false);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "lambda_geo=%.6f (target 0.70+-0.03), lambda_arith=%.6f "
                  "(target 0.33+-0.03)", geo, ari);
    report(1, "two mod-100 sequences reproduce lambda_15", ok, t.seconds(), 1.0, buf);
}

// 2. Kolmogorov distribution values.
void criterion2() {
    Timer t;
    const double p70 = dist::kolmogorov_cdf(0.70);
    const double p33 = dist::kolmogorov_cdf(0.33);
    const double mass = dist::kolmogorov_cdf(1.8) - dist::kolmogorov_cdf(0.4);
    const bool ok = p70 >= 0.28 && p70 <= 0.30 && p33 < 0.001 && mass > 0.99;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "Phi(0.70)=%.6f, Phi(0.33)=%.2e, Phi(1.8)-Phi(0.4)=%.6f",
                  p70, p33, mass);
    report(2, "Kolmogorov distribution values", ok, t.seconds(), 1.0, buf);
}

// 3. sqrt(n) D_n^* = lambda_n under the uniform law, 1000 random samples.
void criterion3() {
    Timer t;
    auto gen = ksp::rng::Xoshiro256pp(301);
    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = 1 + gen.next() % 512;
        std::vector<double> v;
        v.reserve(n);
        for (std::size_t i = 0; i < n; ++i) v.push_back(gen.uniform01());
        Sample s(std::move(v), 0.0, 1.0);
        const double lhs = std::sqrt(static_cast<double>(n)) * ksp::counting::star_discrepancy(s);
        const double rhs =
            ksp::counting::stochasticity_parameter(s, TheoreticalCdf::continuous_uniform(0, 1))
                .lambda;
        worst = std::max(worst, std::fabs(lhs - rhs));
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max |sqrt(n)D* - lambda| = %.2e (tol 1e-12)", worst);
    report(3, "discrepancy/stochasticity identity", worst <= 1e-12, t.seconds(), 10.0, buf);
}

// 4. Variance identity: integral = closed = bridge form, 1000 random specs.
void criterion4() {
    Timer t;
    auto gen = ksp::rng::Xoshiro256pp(401);
    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t m = 1 + gen.next() % 8;
        sim::CovarianceSpec spec;
        double tk = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            tk += gen.uniform01() * (1.0 - tk) * 0.75 + 1e-5;
            spec.thresholds.push_back(std::min(tk, 1.0));
            spec.coeffs.push_back(4.0 * gen.uniform01() - 2.0);
        }
        const auto f = sim::covariance_identity(spec);
        worst = std::max(worst, std::fabs(f.integral_form - f.closed_form));
        worst = std::max(worst, std::fabs(f.bridge_form - f.closed_form));
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max pairwise gap = %.2e (tol 1e-12)", worst);
    report(4, "bridge variance identity, three routes", worst <= 1e-12, t.seconds(), 10.0, buf);
}

// 5. Bernoulli lambda law vs half-normal(1/2).
void criterion5() {
    Timer t;
    auto est = sim::bernoulli_lambda(10'000, 100'000, 501, kWorkers);
    const double ks = est.ks_distance_to([](double x) { return dist::half_normal_cdf(x, 0.5); });
    char buf[64];
    std::snprintf(buf, sizeof(buf), "KS = %.4f (threshold 0.02)", ks);
    report(5, "Bernoulli limit law (n=1e4, 1e5 trials)", ks < 0.02, t.seconds(), 120.0, buf);
}

// 6. Discrete bridge max vs Phi at N=100 and vs half-normal at N=2.
void criterion6() {
    Timer t;
    auto est100 = sim::discrete_bridge_max(100, 100'000, 601, kWorkers);
    const double ks100 =
        est100.ks_distance_to([](double x) { return dist::kolmogorov_cdf(x); });
    auto est2 = sim::discrete_bridge_max(2, 100'000, 602, kWorkers);
    const double ks2 =
        est2.ks_distance_to([](double x) { return dist::half_normal_cdf(x, 0.5); });
    const bool ok = ks100 < 0.05 && ks2 < 0.01;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "KS(N=100 vs Phi) = %.4f (threshold 0.05), "
                  "KS(N=2 vs half-normal) = %.4f (threshold 0.01)", ks100, ks2);
    report(6, "discrete bridge max laws (1e5 trials)", ok, t.seconds(), 120.0, buf);
    if (ks100 >= 0.05) {
        // The N=100 law genuinely sits ~1/sqrt(N) away from Phi; report the
        // measured deviation as a function of N.
        std::printf("  note: the distance between the finite-grid law and Phi scales like "
                    "c/sqrt(N); measured:");
        for (std::uint64_t N : {10ULL, 100ULL, 1000ULL}) {
            auto e = sim::discrete_bridge_max(N, 50'000, 611, kWorkers);
            std::printf(" N=%llu: %.3f", static_cast<unsigned long long>(N),
                        e.ks_distance_to([](double x) { return dist::kolmogorov_cdf(x); }));
        }
        std::printf("\n");
    }
}

// 7. Desk-scale law of lambda_n(A) for a = e vs Phi, and its n-direction.
void criterion7() {
    Timer t;
    xpr::Theorem1Config cfg;
    cfg.n = 256;
    cfg.num_starts = 2000;
    cfg.seed = 11;
    cfg.workers = kWorkers;
    cfg.ks_threshold = 0.05;
    auto main_run = xpr::theorem1_experiment(cfg);
    const double ks_main = main_run.summary["ks_distance_to_phi"].get<double>();

    std::vector<double> ks64, ks256;
    for (std::uint64_t seed = 101; seed <= 105; ++seed) {
        for (std::uint64_t n : {64ULL, 256ULL}) {
            xpr::Theorem1Config c;
            c.n = n;
            c.num_starts = 2000;
            c.seed = seed;
            c.workers = kWorkers;
            auto r = xpr::theorem1_experiment(c);
            (n == 64 ? ks64 : ks256)
                .push_back(r.summary["ks_distance_to_phi"].get<double>());
        }
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    const double med64 = median(ks64), med256 = median(ks256);
    const bool ok = ks_main < 0.05 && med256 <= med64;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "KS(n=256, num_A=2000) = %.4f (threshold 0.05); "
                  "median over 5 seeds: KS(64)=%.4f >= KS(256)=%.4f", ks_main, med64, med256);
    report(7, "lambda_n(A) law for a=e approaches Phi", ok, t.seconds(), 600.0, buf);
}

// 8. Arithmetic-step decay: rational collapse and golden-ratio smallness.
void criterion8() {
    Timer t;
    xpr::DecayConfig rational;
    rational.k = RealSpec::rational(Bigint(37), Bigint(100));
    auto r = xpr::arithmetic_decay(rational);  // checkpoints 100 * 2^j, j = 0..10
    const double final_lambda = r.summary["final_lambda"].get<double>();

    const double lam_phi = cf::scaled_discrepancy_of_multiples(
                               RealSpec::named(ksp::mp::NamedReal::phi), 1'000'000) /
                           1000.0;
    const bool ok = final_lambda < 1e-6 && lam_phi < 0.05 && r.passed.value_or(false);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "lambda(37/100 at n=102400) = %.2e (threshold 1e-6), "
                  "lambda(phi at n=1e6) = %.4f (threshold 0.05)", final_lambda, lam_phi);
    report(8, "arithmetic-progression lambda decay", ok, t.seconds(), 60.0, buf);
}

// 9. Oracle suites: evaluator vs brute force, period vs orbit enumeration,
//    precision stability, rational expansion round trip.
void criterion9() {
    Timer t;
    bool ok = true;
    std::string detail;

    {  // stochasticity parameter vs brute-force sup on 1000 small instances
        auto gen = ksp::rng::Xoshiro256pp(901);
        double worst = 0.0;
        for (int rep = 0; rep < 1000; ++rep) {
            const std::size_t n_jumps = 1 + gen.next() % 8;
            std::vector<double> points, masses;
            double total = 0.0;
            for (std::size_t j = 0; j < n_jumps; ++j) {
                points.push_back(static_cast<double>(j) + gen.uniform01());
                masses.push_back(0.05 + gen.uniform01());
                total += masses.back();
            }
            for (auto& m : masses) m /= total;
            double acc = 0.0;
            for (std::size_t j = 0; j + 1 < masses.size(); ++j) acc += masses[j];
            masses.back() = 1.0 - acc;
            auto cdf = TheoreticalCdf::step(points, masses);
            const std::size_t n = 1 + gen.next() % 12;
            std::vector<double> values;
            for (std::size_t i = 0; i < n; ++i) {
                if (gen.next() % 2 == 0)
                    values.push_back(points[gen.next() % points.size()]);
                else
                    values.push_back(points.front() +
                                     gen.uniform01() * (points.back() - points.front()));
            }
            Sample s(values, points.front() - 1.0, points.back() + 1.0);
            const auto fast = ksp::counting::stochasticity_parameter(s, cdf);
            // grid + jump points, both sides, counts rescanned per candidate
            std::vector<double> cands = values;
            for (int g = 0; g <= 400; ++g)
                cands.push_back(points.front() +
                                (points.back() - points.front()) * g / 400.0);
            cands.insert(cands.end(), points.begin(), points.end());
            double sup = 0.0;
            for (double x : cands) {
                std::size_t le = 0, lt = 0;
                for (double v : values) {
                    le += v <= x;
                    lt += v < x;
                }
                sup = std::max(sup, std::fabs(static_cast<double>(le) -
                                              static_cast<double>(n) * cdf.prob(x)));
                sup = std::max(sup, std::fabs(static_cast<double>(lt) -
                                              static_cast<double>(n) * cdf.prob_left(x)));
            }
            worst = std::max(worst, std::fabs(fast.sup_deviation - sup));
        }
        ok = ok && worst <= 1e-9;
        detail += "sup-oracle gap " + std::to_string(worst) + "; ";
    }

    {  // multiplicative period vs array-indexed orbit enumeration, exact
        auto gen = ksp::rng::Xoshiro256pp(902);
        bool all = true;
        for (int rep = 0; rep < 1000; ++rep) {
            const std::uint64_t N = 3 + gen.next() % 9997;
            const std::uint64_t a = 2 + gen.next() % (N - 2);
            const std::uint64_t A = gen.next() % N;
            const auto fast = seq::multiplicative_period(a, A, N);
            std::vector<std::int32_t> seen(N, -1);
            std::uint64_t v = A % N;
            std::int32_t step = 0;
            while (seen[v] < 0) {
                seen[v] = step++;
                v = static_cast<std::uint64_t>(
                    static_cast<unsigned __int128>(v) * a % N);
            }
            const auto preperiod = static_cast<std::uint64_t>(seen[v]);
            const auto period = static_cast<std::uint64_t>(step) - preperiod;
            all = all && fast.period == period && fast.preperiod == preperiod;
        }
        ok = ok && all;
        detail += std::string("period oracle ") + (all ? "exact" : "MISMATCH") + "; ";
    }

    {  // doubled-precision stability of the high-precision generator
        auto gen = ksp::rng::Xoshiro256pp(903);
        double worst = 0.0;
        for (int rep = 0; rep < 40; ++rep) {
            seq::GeometricRealSpec spec;
            const int which = static_cast<int>(gen.next() % 3);
            spec.ratio = which == 0   ? RealSpec::named(ksp::mp::NamedReal::e)
                         : which == 1 ? RealSpec::named(ksp::mp::NamedReal::pi)
                                      : RealSpec::rational(
                                            Bigint(static_cast<long>(3 + gen.next() % 64)),
                                            Bigint(2));
            spec.start = RealSpec::rational(Bigint(static_cast<long>(1 + gen.next() % 1000)),
                                            Bigint(1024));
            spec.length = 1 + gen.next() % 300;
            spec.output_bits = 64;
            const std::int64_t p = seq::required_precision_bits(spec);
            auto [sn, sd] = spec.start.as_ratio();
            const auto base =
                seq::lacunary_orbit(Fixed::from_ratio(sn, sd, p),
                                    Fixed(spec.ratio.enclosure(p).lo, p), spec.length, p, 80,
                                    false);
            const auto fine =
                seq::lacunary_orbit(Fixed::from_ratio(sn, sd, 2 * p),
                                    Fixed(spec.ratio.enclosure(2 * p).lo, 2 * p), spec.length,
                                    2 * p, 80, false);
            for (std::size_t i = 0; i < base.size(); ++i)
                worst = std::max(worst,
                                 circle_dist(base[i].to_double(), fine[i].to_double()));
        }
        ok = ok && worst <= std::ldexp(1.0, -64);
        detail += "precision drift " + std::to_string(worst) + "; ";
    }

    {  // expand(p/q) folds back exactly
        auto gen = ksp::rng::Xoshiro256pp(904);
        bool all = true;
        for (int rep = 0; rep < 1000; ++rep) {
            const std::uint64_t den = 2 + gen.next() % 1'000'000;
            const std::uint64_t num = 1 + gen.next() % den;
            auto spec = RealSpec::rational(Bigint(static_cast<unsigned long>(num)),
                                           Bigint(static_cast<unsigned long>(den)));
            auto e = cf::expand(spec, 300);
            auto [p, q] = cf::fold(e);
            auto [rn, rd] = spec.as_ratio();
            all = all && e.terminated && p == rn && q == rd;
        }
        ok = ok && all;
        detail += std::string("rational round-trip ") + (all ? "exact" : "MISMATCH");
    }

    report(9, "independent oracle suites", ok, t.seconds(), 120.0, detail);
}

// 10. LIL trajectories report without pass/fail; anomaly guard at 3x 1/sqrt(2).
void criterion10() {
    Timer t;
    xpr::LilConfig cfg;
    cfg.source.kind = xpr::LilSource::Kind::iid_uniform;
    cfg.checkpoints = {16, 1000, 10'000, 100'000, 1'000'000};
    cfg.seed = 1001;
    auto r = xpr::lil_tracker(cfg);
    const auto j = xpr::result_json(r);
    const bool schema_ok = !j.contains("passed") && !r.passed.has_value();
    const double running = r.summary["running_max_ratio"].get<double>();
    const bool guard_ok = running < 3.0 / std::sqrt(2.0);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "running max of lambda/sqrt(log log n) = %.4f "
                  "(guard 3/sqrt(2) = %.4f), schema has no pass/fail field", running,
                  3.0 / std::sqrt(2.0));
    report(10, "iterated-logarithm trajectory report", schema_ok && guard_ok, t.seconds(),
           300.0, buf);
}

}  // namespace

int main() {
    std::printf("acceptance suite (workers=%u)\n", kWorkers);
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
