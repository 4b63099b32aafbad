// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace pqobs::campaign {

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

// Wilson score interval. Throws pqobs::Error(domain_error) for n = 0 or k > n.
Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z = 1.96);

struct McNemarResult {
    double statistic = 0.0;  // min(b, c), the binomial tail count
    double p_value = 1.0;
    std::string variant = "exact_binomial";
    bool degenerate = false;  // b = c = 0
};

McNemarResult mcnemar_test(std::uint64_t b, std::uint64_t c);

nlohmann::json to_json(const McNemarResult& r);

struct PairedOutcome {
    bool mode_a_hit = false;
    bool mode_b_hit = false;
};

struct BootstrapResult {
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t iterations = 0;
    std::uint64_t seed = 0;
};

// point = mean(b) - mean(a); 95% percentile interval over `iterations`
// resamples of the pairs drawn from mt19937_64(seed). Throws
// pqobs::Error(domain_error) for empty input or fewer than 1000 iterations.
BootstrapResult bootstrap_uplift(const std::vector<PairedOutcome>& pairs, std::size_t iterations,
                                 std::uint64_t seed);

nlohmann::json to_json(const BootstrapResult& r);

// Linear-interpolation quantile (type 7) of an ascending sample.
double quantile_sorted(const std::vector<double>& sorted, double q);

}  // namespace pqobs::campaign
