#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

// Bit-parallel s-fold sumset computation, exact representation counts and
// gap statistics. The sumset sieve is the iterated shifted-OR
// B_{k+1} = union over a in A of (B_k << a), truncated to [1, N]; word
// operations only, exact for any word size.

namespace ppower {

// Membership bitmap of sA over [1, limit_n]; bit indices are 1-based,
// index 0 is unused.
struct SumsetProfile {
    int s = 1;
    std::uint64_t limit_n = 0;
    std::vector<std::uint64_t> words;

    bool contains(std::uint64_t n) const {
        return n >= 1 && n <= limit_n &&
               (words[n >> 6] >> (n & 63) & 1ull) != 0;
    }
    // Number of members in [lo, hi] (clamped to [1, limit_n]).
    std::uint64_t count_range(std::uint64_t lo, std::uint64_t hi) const;
    std::uint64_t count() const { return count_range(1, limit_n); }
    std::vector<std::uint64_t> members() const;
};

// Exact s-fold sumset with repetition of A (subset of [1, limit_n]),
// truncated to [1, limit_n]. Empty A gives an empty profile. s >= 1.
SumsetProfile sumset(std::span<const std::uint64_t> a, int s,
                     std::uint64_t limit_n);

// counts[n] = number of non-decreasing s-tuples from A summing to n.
struct RepCountTable {
    int s = 1;
    std::uint64_t limit_n = 0;
    std::vector<std::uint32_t> counts;  // index 0 unused
};

RepCountTable representation_counts(std::span<const std::uint64_t> a, int s,
                                    std::uint64_t limit_n);

// One consecutive pair of sumset members.
struct GapRecord {
    std::uint64_t left = 0;
    std::uint64_t right = 0;
    std::uint64_t gap = 0;       // right - left
    double normalized = 0.0;     // gap / ln(left)
};

// All consecutive pairs with left >= min_b, in increasing order. The
// censored gap after the last member is excluded. min_b >= 2.
std::vector<GapRecord> gaps(const SumsetProfile& profile, std::uint64_t min_b);

// Streaming variant: invokes fn for each record without materializing.
void for_each_gap(const SumsetProfile& profile, std::uint64_t min_b,
                  const std::function<void(const GapRecord&)>& fn);

// Max of normalized over the records; nullopt on no data.
std::optional<double> max_normalized_gap(std::span<const GapRecord> records);
std::optional<double> max_normalized_gap(const SumsetProfile& profile,
                                         std::uint64_t min_b);

// CSV emission: maximal runs of members as `start,end`, gap lists as
// `left,right,gap,normalized` (reals with 17 significant digits).
void write_intervals_csv(std::ostream& out, const SumsetProfile& profile);
void write_gaps_csv(std::ostream& out, std::span<const GapRecord> records);

}  // namespace ppower
