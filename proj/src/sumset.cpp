#include "ppower/sumset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace ppower {

namespace {

std::size_t word_count(std::uint64_t limit_n) {
    return static_cast<std::size_t>((limit_n >> 6) + 1);
}

// dst |= src << shift, over bit positions [0, limit_n]; bits shifted past
// limit_n are dropped.
void or_shifted(std::vector<std::uint64_t>& dst,
                const std::vector<std::uint64_t>& src, std::uint64_t shift,
                std::uint64_t limit_n) {
    if (shift > limit_n) return;
    const std::size_t words = dst.size();
    const std::size_t off = static_cast<std::size_t>(shift >> 6);
    const unsigned r = static_cast<unsigned>(shift & 63);
    if (r == 0) {
        for (std::size_t w = words; w-- > off;) dst[w] |= src[w - off];
    } else {
        for (std::size_t w = words; w-- > off;) {
            std::uint64_t v = src[w - off] << r;
            if (w - off > 0) v |= src[w - off - 1] >> (64 - r);
            dst[w] |= v;
        }
    }
    // Mask tail bits beyond limit_n.
    const unsigned top = static_cast<unsigned>(limit_n & 63);
    if (top != 63) dst[words - 1] &= (2ull << top) - 1ull;
    dst[0] &= ~1ull;  // bit 0 unused
}

}  // namespace

std::uint64_t SumsetProfile::count_range(std::uint64_t lo,
                                         std::uint64_t hi) const {
    lo = std::max<std::uint64_t>(lo, 1);
    hi = std::min(hi, limit_n);
    if (limit_n == 0 || lo > hi) return 0;
    const std::size_t lw = static_cast<std::size_t>(lo >> 6);
    const std::size_t hw = static_cast<std::size_t>(hi >> 6);
    const std::uint64_t lmask = ~0ull << (lo & 63);
    const std::uint64_t hmask = (hi & 63) == 63 ? ~0ull : (2ull << (hi & 63)) - 1ull;
    if (lw == hw) return std::popcount(words[lw] & lmask & hmask);
    std::uint64_t total = std::popcount(words[lw] & lmask);
    for (std::size_t w = lw + 1; w < hw; ++w) total += std::popcount(words[w]);
    total += std::popcount(words[hw] & hmask);
    return total;
}

std::vector<std::uint64_t> SumsetProfile::members() const {
    std::vector<std::uint64_t> out;
    out.reserve(count());
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t bits = words[w];
        while (bits) {
            const unsigned b = std::countr_zero(bits);
            out.push_back((static_cast<std::uint64_t>(w) << 6) | b);
            bits &= bits - 1;
        }
    }
    return out;
}

SumsetProfile sumset(std::span<const std::uint64_t> a, int s,
                     std::uint64_t limit_n) {
    if (s < 1) throw std::domain_error("sumset: s must be >= 1");
    SumsetProfile profile;
    profile.s = s;
    profile.limit_n = limit_n;
    profile.words.assign(word_count(limit_n), 0ull);
    if (limit_n == 0) return profile;

    std::vector<std::uint64_t> base(profile.words.size(), 0ull);
    for (const std::uint64_t x : a) {
        if (x < 1 || x > limit_n) continue;
        base[x >> 6] |= 1ull << (x & 63);
    }
    std::vector<std::uint64_t> cur = base;
    std::vector<std::uint64_t> next(profile.words.size());
    for (int k = 2; k <= s; ++k) {
        std::fill(next.begin(), next.end(), 0ull);
        for (const std::uint64_t x : a) {
            if (x < 1 || x > limit_n) continue;
            or_shifted(next, cur, x, limit_n);
        }
        cur.swap(next);
    }
    profile.words = std::move(cur);
    return profile;
}

namespace {

void rep_count_dfs(std::span<const std::uint64_t> sorted, std::size_t from,
                   int parts_left, std::uint64_t partial, std::uint64_t limit_n,
                   std::vector<std::uint32_t>& counts) {
    if (parts_left == 0) {
        ++counts[partial];
        return;
    }
    for (std::size_t i = from; i < sorted.size(); ++i) {
        const std::uint64_t total = partial + sorted[i];
        // Remaining parts are >= sorted[i]; prune when even the cheapest
        // completion overshoots.
        if (total + static_cast<std::uint64_t>(parts_left - 1) * sorted[i] >
            limit_n)
            break;
        rep_count_dfs(sorted, i, parts_left - 1, total, limit_n, counts);
    }
}

}  // namespace

RepCountTable representation_counts(std::span<const std::uint64_t> a, int s,
                                    std::uint64_t limit_n) {
    if (s < 1) throw std::domain_error("representation_counts: s must be >= 1");
    RepCountTable table;
    table.s = s;
    table.limit_n = limit_n;
    table.counts.assign(limit_n + 1, 0);
    std::vector<std::uint64_t> sorted(a.begin(), a.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    while (!sorted.empty() && sorted.back() > limit_n) sorted.pop_back();
    if (!sorted.empty() && sorted.front() < 1)
        throw std::domain_error("representation_counts: elements must be >= 1");
    rep_count_dfs(sorted, 0, s, 0, limit_n, table.counts);
    return table;
}

void for_each_gap(const SumsetProfile& profile, std::uint64_t min_b,
                  const std::function<void(const GapRecord&)>& fn) {
    if (min_b < 2) throw std::domain_error("gaps: min_b must be >= 2");
    std::uint64_t prev = 0;
    for (std::size_t w = 0; w < profile.words.size(); ++w) {
        std::uint64_t bits = profile.words[w];
        while (bits) {
            const unsigned b = std::countr_zero(bits);
            bits &= bits - 1;
            const std::uint64_t n = (static_cast<std::uint64_t>(w) << 6) | b;
            if (prev >= min_b) {
                GapRecord rec;
                rec.left = prev;
                rec.right = n;
                rec.gap = n - prev;
                rec.normalized =
                    static_cast<double>(rec.gap) /
                    std::log(static_cast<double>(rec.left));
                fn(rec);
            }
            prev = n;
        }
    }
}

std::vector<GapRecord> gaps(const SumsetProfile& profile, std::uint64_t min_b) {
    std::vector<GapRecord> out;
    for_each_gap(profile, min_b, [&out](const GapRecord& r) { out.push_back(r); });
    return out;
}

std::optional<double> max_normalized_gap(std::span<const GapRecord> records) {
    if (records.empty()) return std::nullopt;
    double best = records.front().normalized;
    for (const GapRecord& r : records) best = std::max(best, r.normalized);
    return best;
}

std::optional<double> max_normalized_gap(const SumsetProfile& profile,
                                         std::uint64_t min_b) {
    std::optional<double> best;
    for_each_gap(profile, min_b, [&best](const GapRecord& r) {
        if (!best || r.normalized > *best) best = r.normalized;
    });
    return best;
}

void write_intervals_csv(std::ostream& out, const SumsetProfile& profile) {
    out << "start,end\n";
    std::uint64_t run_start = 0;
    std::uint64_t prev = 0;
    bool open = false;
    for (std::size_t w = 0; w < profile.words.size(); ++w) {
        std::uint64_t bits = profile.words[w];
        while (bits) {
            const unsigned b = std::countr_zero(bits);
            bits &= bits - 1;
            const std::uint64_t n = (static_cast<std::uint64_t>(w) << 6) | b;
            if (!open) {
                run_start = n;
                open = true;
            } else if (n != prev + 1) {
                out << run_start << ',' << prev << '\n';
                run_start = n;
            }
            prev = n;
        }
    }
    if (open) out << run_start << ',' << prev << '\n';
}

void write_gaps_csv(std::ostream& out, std::span<const GapRecord> records) {
    out << "left,right,gap,normalized\n";
    char buf[32];
    for (const GapRecord& r : records) {
        std::snprintf(buf, sizeof buf, "%.17g", r.normalized);
        out << r.left << ',' << r.right << ',' << r.gap << ',' << buf << '\n';
    }
}

}  // namespace ppower
