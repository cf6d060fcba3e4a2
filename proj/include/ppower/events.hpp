#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "ppower/model_math.hpp"

// Exact finite-universe probability machinery: enumeration of support sets
// and representation patterns, P(E_omega), the technical lemma sums, pairwise
// dependence sums, Janson sandwich bounds, and exhaustive gap-event
// probabilities with a Monte Carlo counterpart.

namespace ppower {

// Raised when a complexity guard refuses a request (distinct from domain
// errors so callers can map it to a dedicated exit code).
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One representation z = a_1 x_1 + ... + a_r x_r with x_1 < ... < x_r,
// a_i >= 1 and sum of a_i = s.
struct RepPattern {
    std::vector<std::uint64_t> xs;
    std::vector<int> coeffs;
    std::uint64_t target = 0;
};

// A support set omega with P(E_omega) = product of p_x over the support.
struct OmegaSet {
    std::vector<std::uint64_t> support;  // strictly increasing
    double prob = 0.0;
};

// The interval I_i = [i, i + alpha * ln(i)], integer members, upper
// endpoint floored.
struct IntervalSpec {
    std::uint64_t i = 2;
    double alpha = 1.0;

    std::uint64_t lo() const { return i; }
    std::uint64_t hi() const;
    std::vector<std::uint64_t> members() const;
};

// A deduplicated family of supports whose sigma(omega) meets the interval,
// capped to supports inside [1, universe_cap].
struct EventSystem {
    int s = 2;
    std::uint64_t universe_cap = 1;
    MembershipModel model;
    std::vector<OmegaSet> family;                // sorted, duplicate-free
    std::vector<std::uint64_t> interval_members;
};

struct LemmaSumResult {
    double value = 0.0;
    std::uint64_t z = 0;
    double bound_ratio = 0.0;  // value / claimed asymptotic envelope
};

// All patterns realizing z as an s-part sum with parts <= universe_cap.
std::vector<RepPattern> enumerate_patterns(std::uint64_t z, int s,
                                           std::uint64_t universe_cap);

// All distinct supports omega in [1, universe_cap] with z in sigma(omega),
// sorted lexicographically, each with P(E_omega).
std::vector<OmegaSet> enumerate_omega(std::uint64_t z, int s,
                                      std::uint64_t universe_cap,
                                      const MembershipModel* model = nullptr);

// Sum of P(E_omega) over Omega_z (universe cap z). Tends to lambda_s.
double omega_probability_sum(std::uint64_t z, int s,
                             const MembershipModel* model = nullptr);

// Sum over ordered positive (x_1..x_t), a_1 x_1 + ... + a_t x_t = z, of
// (x_1 ... x_t)^(-1+1/s). Envelope z^(-1+t/s).
LemmaSumResult lemma_sum_i(int s, std::span<const int> coeffs,
                           std::uint64_t z);

// Same constraint with strict inequality < z, each term weighted by
// (z - a.x)^(-2t/s). Envelope z^(-1/s) ln z.
LemmaSumResult lemma_sum_ii(int s, std::span<const int> coeffs,
                            std::uint64_t z);

// Sum over strictly increasing s-tuples summing to z of
// (x_1 ... x_s)^(-1+1/s). Envelope s^s lambda_s.
LemmaSumResult lemma_sum_iii(int s, std::uint64_t z);

// Sum of P(E_omega intersect E_omega') over related pairs (omega in
// Omega_z, omega' in Omega_z'), each unordered pair counted once.
double pairwise_dependence_sum(std::uint64_t z, std::uint64_t z_prime, int s,
                               const MembershipModel* model = nullptr);

// Family Omega_I over the interval [i, i + alpha ln i], supports capped
// to [1, universe_cap].
EventSystem build_interval_system(std::uint64_t i, double alpha, int s,
                                  std::uint64_t universe_cap,
                                  const MembershipModel* model = nullptr);

// Same with an explicit member list (covers the single-target case).
EventSystem build_explicit_system(std::span<const std::uint64_t> members,
                                  int s, std::uint64_t universe_cap,
                                  const MembershipModel* model = nullptr);

// Product of P(E_omega^c) over the family; empty product is 1.
double independent_product(const EventSystem& system);

struct JansonBounds {
    double lower = 1.0;
    double upper = 1.0;
    double dependence_sum = 0.0;  // sum over related unordered pairs
};

// Janson sandwich for P(no event in the family occurs). Requires every
// P(E_omega) <= 1/2.
JansonBounds janson_bounds(const EventSystem& system);

// Exact P(sA misses the members), A ranging over all subsets of
// [1, universe_cap] with product weights. Refuses universe_cap > 26.
double exact_gap_probability(int s, std::uint64_t universe_cap,
                             std::span<const std::uint64_t> interval_members,
                             const MembershipModel* model = nullptr);

inline constexpr std::uint64_t kExactUniverseCap = 26;

struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

// Monte Carlo estimate of the same miss probability over an explicit
// system (universe [1, universe_cap]).
MonteCarloEstimate montecarlo_gap_probability(
    int s, std::uint64_t universe_cap,
    std::span<const std::uint64_t> interval_members, std::uint64_t trials,
    std::uint64_t seed, const MembershipModel* model = nullptr);

// Interval form: universe [1, i + ceil(alpha ln i)], members of I_i.
MonteCarloEstimate montecarlo_gap_probability(int s, std::uint64_t i,
                                              double alpha,
                                              std::uint64_t trials,
                                              std::uint64_t seed,
                                              const MembershipModel* model =
                                                  nullptr);

}  // namespace ppower
