#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ppower/sumset.hpp"

// Aggregation across trials: empirical Poisson profile of r_s(A,n), sumset
// density, normalized-gap trends and power-law exponent fitting.

namespace ppower {

// Frequencies of r_s(A,n) = d for n in [n_min, N], d <= d_max, with one
// overflow bucket at the end. Counts are integers; frequencies are the
// single final division, so they sum to 1 exactly up to that division.
struct EmpiricalPmf {
    std::vector<std::uint64_t> counts;  // size d_max + 2, last = overflow
    std::vector<double> freq;
    std::uint64_t total = 0;
};

EmpiricalPmf poisson_profile(const RepCountTable& table, std::uint64_t n_min,
                             int d_max);

// Poisson(lambda) reference over the same support: pmf for d <= d_max plus
// the tail mass in the overflow bucket, summing to 1.
std::vector<double> poisson_reference(double lambda, int d_max);

// (1/2) sum |p_d - q_d|; shorter input is zero-extended. Each side must
// sum to 1 within 1e-9.
double total_variation(std::span<const double> p, std::span<const double> q);

// |sA intersect [n_min, N]| / (N - n_min + 1).
double sumset_density(const SumsetProfile& profile, std::uint64_t n_min);

// Least-squares fit of log(probability) against log(i). Points with
// probability <= 0 are excluded and counted in dropped_points.
struct PowerFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int dropped_points = 0;
};

PowerFit exponent_fit(std::span<const std::pair<double, double>> points);

// Per-trial gap/density/Poisson statistics.
struct TrialReport {
    int s = 2;
    std::uint64_t limit_n = 0;
    std::uint64_t seed = 0;
    std::uint64_t trial_index = 0;
    std::uint64_t sequence_size = 0;
    std::uint64_t n_min = 1;   // burn-in for density and histogram
    std::uint64_t min_b = 2;   // left edge of the gap window
    double sumset_density = 0.0;
    std::optional<double> max_normalized_gap;
    std::map<int, std::uint64_t> rep_histogram;  // d -> count over [n_min, N]
};

// Default burn-in: max(100, floor(sqrt(N))).
std::uint64_t default_burn_in(std::uint64_t limit_n);

// Samples one trial and derives its statistics. with_rep_histogram skips
// the representation-count pass when false (it needs O(N) memory).
TrialReport run_trial(int s, std::uint64_t limit_n, std::uint64_t seed,
                      std::uint64_t trial_index, std::uint64_t n_min,
                      std::uint64_t min_b, bool with_rep_histogram = true);

struct StatSummary {
    double mean = 0.0;
    double median = 0.0;
    double std_error = 0.0;
    std::uint64_t count = 0;
};

struct AggregateSummary {
    int s = 2;
    std::uint64_t limit_n = 0;
    std::uint64_t trials = 0;
    StatSummary sequence_size;
    StatSummary sumset_density;
    StatSummary max_normalized_gap;  // over trials that produced a gap
    std::map<int, std::uint64_t> pooled_rep_histogram;
};

// Deterministic summary, independent of report ordering. All reports must
// share (s, limit_n).
AggregateSummary aggregate(std::vector<TrialReport> reports);

}  // namespace ppower
