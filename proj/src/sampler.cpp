#include "ppower/sampler.hpp"

#include <ostream>
#include <stdexcept>

#include "ppower/rng.hpp"

namespace ppower {

PseudoSequence sample_sequence(const MembershipModel& model,
                               std::uint64_t limit_n, std::uint64_t seed,
                               std::uint64_t trial_index) {
    if (!model.override_fn && model.s < 2)
        throw std::domain_error("sample_sequence: s must be >= 2");
    PseudoSequence seq;
    seq.s = model.s;
    seq.limit_n = limit_n;
    seq.seed = seed;
    seq.trial_index = trial_index;
    // Draw index n-1 for integer n: consumed in increasing n order, one
    // block per n, so the realization is independent of scheduling.
    for (std::uint64_t n = 1; n <= limit_n; ++n) {
        const double u = rng::uniform01(seed, trial_index, n - 1);
        if (u < model(n)) seq.elements.push_back(n);
    }
    return seq;
}

PseudoSequence sample_sequence(int s, std::uint64_t limit_n,
                               std::uint64_t seed, std::uint64_t trial_index) {
    return sample_sequence(MembershipModel{s, {}}, limit_n, seed, trial_index);
}

double expected_count(int s, std::uint64_t limit_n) {
    if (s < 2) throw std::domain_error("expected_count: s must be >= 2");
    double sum = 0.0;
    double comp = 0.0;  // Kahan compensation
    for (std::uint64_t n = 1; n <= limit_n; ++n) {
        const double term = membership_probability(n, s) - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum;
}

void write_sequence(std::ostream& out, const PseudoSequence& seq) {
    out << "# s=" << seq.s << " N=" << seq.limit_n << " seed=" << seq.seed
        << " trial=" << seq.trial_index << '\n';
    for (const std::uint64_t n : seq.elements) out << n << '\n';
}

}  // namespace ppower
