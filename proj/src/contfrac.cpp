#include "ksp/contfrac.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ksp/counting.hpp"
#include "ksp/errors.hpp"

namespace ksp::contfrac {

namespace {

void push_convergent(Expansion& e, const mp::Bigint& a) {
    const auto& c = e.convergents;
    const std::size_t i = c.size();
    if (i == 0) {
        e.convergents.push_back({a, mp::Bigint(1)});
        return;
    }
    const Convergent& prev = c[i - 1];
    const Convergent prev2 = i >= 2 ? c[i - 2] : Convergent{mp::Bigint(1), mp::Bigint(0)};
    e.convergents.push_back({a * prev.p + prev2.p, a * prev.q + prev2.q});
}

Expansion expand_rational(const mp::Bigint& num, const mp::Bigint& den, std::size_t max_terms) {
    Expansion e;
    e.terminated = true;
    mp::Bigint p = num, q = den;
    std::size_t emitted = 0;
    while (!q.is_zero() && emitted <= max_terms) {
        auto [a, r] = mp::Bigint::divmod(p, q);
        if (emitted == 0)
            e.a0 = a;
        else
            e.quotients.push_back(a);
        push_convergent(e, a);
        p = q;
        q = r;
        ++emitted;
    }
    if (!q.is_zero()) {
        e.terminated = false;  // cut off by max_terms, not by exhaustion
        e.truncated = true;
    }
    return e;
}

}  // namespace

Expansion expand(const mp::RealSpec& k, std::size_t max_terms, std::int64_t precision_bits) {
    if (max_terms == 0) throw std::invalid_argument("expand: max_terms must be >= 1");
    if (k.is_rational()) {
        auto [num, den] = k.as_ratio();
        Expansion e = expand_rational(num, den, max_terms);
        e.source_precision_bits = -1;  // exact
        return e;
    }
    if (precision_bits <= 0)
        precision_bits = std::max<std::int64_t>(512, 4 * static_cast<std::int64_t>(max_terms) + 128);

    // Interval Euclid: the enclosure lo/2^p <= k <= hi/2^p is carried as two
    // exact rationals [pl/ql, ph/qh]; a quotient is certified only while both
    // endpoints have the same integer part. Taking the reciprocal of the
    // residual interval swaps the endpoints.
    mp::Enclosure enc = k.enclosure(precision_bits);
    mp::Bigint pl = enc.lo, ql = mp::Bigint::pow2(static_cast<std::uint64_t>(precision_bits));
    mp::Bigint ph = enc.hi, qh = ql;

    Expansion e;
    e.source_precision_bits = precision_bits;
    for (std::size_t emitted = 0; emitted <= max_terms; ++emitted) {
        auto [al, rl] = mp::Bigint::divmod(pl, ql);
        auto [ah, rh] = mp::Bigint::divmod(ph, qh);
        if (al != ah) {
            e.truncated = true;
            return e;
        }
        if (emitted == 0)
            e.a0 = al;
        else
            e.quotients.push_back(al);
        push_convergent(e, al);
        if (emitted == max_terms) break;
        if (rl.is_zero() || rh.is_zero()) {
            // An enclosure endpoint landed exactly on the quotient; its
            // reciprocal is unbounded and no further term can be certified.
            e.truncated = true;
            return e;
        }
        // residual in [rl/ql, rh/qh]; its reciprocal lies in [qh/rh, ql/rl]
        mp::Bigint new_pl = qh, new_ql = rh;
        mp::Bigint new_ph = std::move(ql), new_qh = std::move(rl);
        pl = std::move(new_pl);
        ql = std::move(new_ql);
        ph = std::move(new_ph);
        qh = std::move(new_qh);
    }
    return e;
}

std::pair<mp::Bigint, mp::Bigint> fold(const Expansion& e) {
    if (e.convergents.empty()) throw std::invalid_argument("fold: empty expansion");
    const Convergent& last = e.convergents.back();
    return {last.p, last.q};
}

double gauss_kuzmin_mass(std::uint64_t j) {
    if (j == 0) throw std::invalid_argument("gauss_kuzmin_mass: j >= 1");
    const double dj = static_cast<double>(j);
    return std::log2(1.0 + 1.0 / (dj * (dj + 2.0)));
}

FrequencyTable gauss_kuzmin_frequencies(std::span<const Expansion> expansions,
                                        std::uint64_t j_max) {
    if (j_max == 0) throw std::invalid_argument("gauss_kuzmin_frequencies: j_max >= 1");
    std::uint64_t total = 0;
    for (const auto& e : expansions) total += e.quotients.size();
    if (total < 1000)
        throw std::invalid_argument("gauss_kuzmin_frequencies: needs >= 1000 partial quotients");
    FrequencyTable t;
    t.j_max = j_max;
    t.total_quotients = total;
    std::vector<std::uint64_t> counts(j_max, 0);
    std::uint64_t overflow = 0;
    const mp::Bigint cap(static_cast<long>(j_max));
    for (const auto& e : expansions) {
        for (const auto& a : e.quotients) {
            if (a <= cap)
                ++counts[a.to_u64() - 1];
            else
                ++overflow;
        }
    }
    t.empirical.resize(j_max);
    t.theoretical.resize(j_max);
    double theo_sum = 0.0;
    for (std::uint64_t j = 1; j <= j_max; ++j) {
        t.empirical[j - 1] = static_cast<double>(counts[j - 1]) / static_cast<double>(total);
        t.theoretical[j - 1] = gauss_kuzmin_mass(j);
        theo_sum += t.theoretical[j - 1];
    }
    t.empirical_overflow = static_cast<double>(overflow) / static_cast<double>(total);
    t.theoretical_overflow = 1.0 - theo_sum;
    return t;
}

double discrepancy_bound(const Expansion& e, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("discrepancy_bound: n >= 1");
    const mp::Bigint big_n(static_cast<long>(n));
    // m = max{i : q_i <= n}; the bound needs a_{m+1}, so the expansion must
    // certify one denominator beyond n (or terminate).
    std::size_t idx_past = e.convergents.size();
    for (std::size_t i = 0; i < e.convergents.size(); ++i) {
        if (e.convergents[i].q > big_n) {
            idx_past = i;
            break;
        }
    }
    double bound = 0.0;
    if (idx_past == e.convergents.size()) {
        if (!e.terminated)
            throw resource_limit_error(
                "discrepancy_bound: expansion truncated before reaching denominators > n; "
                "expand with more terms or precision");
        // Rational k = p/q with n >= q: each full period of {kx} contributes
        // exactly q * D_q^* = 1, and n D_n^* is subadditive in concatenation.
        const mp::Bigint& q = e.convergents.back().q;
        bound += (big_n / q).to_double();
        for (const auto& a : e.quotients) bound += 3.0 * a.to_double();
        return bound;
    }
    // sum a_1 .. a_{m+1} where convergent index m+1 == idx_past
    for (std::size_t i = 1; i <= idx_past && i - 1 < e.quotients.size(); ++i)
        bound += 3.0 * e.quotients[i - 1].to_double();
    return bound;
}

double scaled_discrepancy_of_multiples(const mp::RealSpec& k, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("discrepancy: n >= 1");
    constexpr std::int64_t kBits = 192;
    mp::Fixed delta = mp::Fixed(k.enclosure(kBits).lo, kBits).frac();
    std::vector<double> vals;
    vals.reserve(n);
    mp::Fixed u(mp::Bigint(0), kBits);
    for (std::uint64_t x = 0; x < n; ++x) {
        u = u.add(delta).frac();
        vals.push_back(u.to_double());
    }
    counting::Sample s(std::move(vals), 0.0, 1.0);
    return static_cast<double>(n) * counting::star_discrepancy(s);
}

RateReport metric_rate_check(std::span<const mp::RealSpec> k_samples, double epsilon,
                             std::vector<std::uint64_t> n_grid) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("metric_rate_check: epsilon > 0");
    if (n_grid.empty()) throw std::invalid_argument("metric_rate_check: empty grid");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 16 || (i > 0 && n_grid[i] <= n_grid[i - 1]))
            throw std::invalid_argument("metric_rate_check: grid must be increasing, each >= 16");
    }
    RateReport report;
    report.grid = std::move(n_grid);
    report.epsilon = epsilon;
    for (const auto& k : k_samples) {
        RateTrajectory traj;
        for (std::uint64_t n : report.grid) {
            const double nd = scaled_discrepancy_of_multiples(k, n);
            const double logn = std::log(static_cast<double>(n));
            const double denom = logn * std::pow(std::log(logn), 1.0 + epsilon);
            traj.r_values.push_back(nd / denom);
        }
        traj.max_r = *std::max_element(traj.r_values.begin(), traj.r_values.end());
        // Exceptional-k heuristic: r grows through the whole top half of the
        // grid and ends above everything seen in the lower half. Rational k
        // (whose continuous-uniform discrepancy cannot decay) trip this.
        const std::size_t half = report.grid.size() / 2;
        bool increasing = report.grid.size() >= 2;
        for (std::size_t i = std::max<std::size_t>(half, 1); i < traj.r_values.size(); ++i)
            if (traj.r_values[i] <= traj.r_values[i - 1]) increasing = false;
        for (std::size_t i = 0; i < half && increasing; ++i)
            if (traj.r_values.back() < traj.r_values[i]) increasing = false;
        traj.increasing_top_half = increasing;
        if (increasing) ++report.flagged;
        report.per_k.push_back(std::move(traj));
    }
    return report;
}

}  // namespace ksp::contfrac
