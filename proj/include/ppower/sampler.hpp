#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ppower/model_math.hpp"

// Seed-reproducible sampling of pseudo s-th power sequences: each n in
// [1, limit_n] enters A independently with probability p(n), one uniform
// draw per n taken from the counter-based stream keyed by (seed, trial).

namespace ppower {

// One sampled realization A intersected with [1, limit_n].
struct PseudoSequence {
    int s = 2;
    std::uint64_t limit_n = 0;
    std::uint64_t seed = 0;
    std::uint64_t trial_index = 0;
    std::vector<std::uint64_t> elements;  // strictly increasing, in [1, limit_n]
};

// Model-probability sampling. Throws std::domain_error for s < 2.
PseudoSequence sample_sequence(int s, std::uint64_t limit_n,
                               std::uint64_t seed, std::uint64_t trial_index);

// Same stream discipline with p(n) taken from `model` (override hook honored).
PseudoSequence sample_sequence(const MembershipModel& model,
                               std::uint64_t limit_n, std::uint64_t seed,
                               std::uint64_t trial_index);

// Sum of membership_probability(n, s) for n = 1..limit_n (compensated sum).
double expected_count(int s, std::uint64_t limit_n);

// Text format: `# s=<s> N=<N> seed=<seed> trial=<k>` then one element per line.
void write_sequence(std::ostream& out, const PseudoSequence& seq);

}  // namespace ppower
