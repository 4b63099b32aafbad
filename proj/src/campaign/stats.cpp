// SPDX-License-Identifier: Apache-2.0
#include "pqobs/campaign/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pqobs/common/error.hpp"

namespace pqobs::campaign {

Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z)
{
    if (n == 0 || k > n) {
        throw Error("domain_error", "wilson_interval needs 0 <= k <= n and n >= 1");
    }
    double nn = static_cast<double>(n);
    double p = static_cast<double>(k) / nn;
    double z2 = z * z;
    double denom = 1.0 + z2 / nn;
    double centre = (p + z2 / (2.0 * nn)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

McNemarResult mcnemar_test(std::uint64_t b, std::uint64_t c)
{
    McNemarResult r;
    if (b == 0 && c == 0) {
        r.degenerate = true;
        return r;
    }
    auto n = b + c;
    auto k = std::min(b, c);
    r.statistic = static_cast<double>(k);
    // P(X <= k) for X ~ Bin(n, 1/2), summed in log space.
    double nn = static_cast<double>(n);
    double log_half_n = -nn * std::log(2.0);
    double tail = 0.0;
    for (std::uint64_t i = 0; i <= k; ++i) {
        double di = static_cast<double>(i);
        double log_choose = std::lgamma(nn + 1) - std::lgamma(di + 1) - std::lgamma(nn - di + 1);
        tail += std::exp(log_choose + log_half_n);
    }
    r.p_value = std::min(1.0, 2.0 * tail);
    return r;
}

nlohmann::json to_json(const McNemarResult& r)
{
    return {{"statistic", r.statistic}, {"p_value", r.p_value}, {"variant", r.variant}, {"degenerate", r.degenerate}};
}

double quantile_sorted(const std::vector<double>& sorted, double q)
{
    if (sorted.empty()) {
        throw Error("domain_error", "quantile of an empty sample");
    }
    double h = (static_cast<double>(sorted.size()) - 1.0) * q;
    auto lo = static_cast<std::size_t>(std::floor(h));
    auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

BootstrapResult bootstrap_uplift(const std::vector<PairedOutcome>& pairs, std::size_t iterations,
                                 std::uint64_t seed)
{
    if (pairs.empty()) {
        throw Error("domain_error", "bootstrap_uplift needs at least one pair");
    }
    if (iterations < 1000) {
        throw Error("domain_error", "bootstrap_uplift needs at least 1000 iterations");
    }
    // Each pair contributes b - a in {-1, 0, 1}.
    std::vector<int> diff;
    diff.reserve(pairs.size());
    long total = 0;
    for (const auto& p : pairs) {
        diff.push_back(int(p.mode_b_hit) - int(p.mode_a_hit));
        total += diff.back();
    }
    double n = static_cast<double>(pairs.size());

    BootstrapResult r;
    r.point = static_cast<double>(total) / n;
    r.iterations = iterations;
    r.seed = seed;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    std::vector<double> stats;
    stats.reserve(iterations);
    for (std::size_t it = 0; it < iterations; ++it) {
        long s = 0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            s += diff[pick(rng)];
        }
        stats.push_back(static_cast<double>(s) / n);
    }
    std::sort(stats.begin(), stats.end());
    r.ci_low = quantile_sorted(stats, 0.025);
    r.ci_high = quantile_sorted(stats, 0.975);
    return r;
}

nlohmann::json to_json(const BootstrapResult& r)
{
    return {{"point", r.point},
            {"ci_low", r.ci_low},
            {"ci_high", r.ci_high},
            {"iterations", r.iterations},
            {"seed", r.seed}};
}

}  // namespace pqobs::campaign
