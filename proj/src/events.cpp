#include "ppower/events.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "ppower/rng.hpp"

namespace ppower {

namespace {

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double term = x - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
};

MembershipModel resolve(int s, const MembershipModel* model) {
    if (model) return *model;
    return MembershipModel{s, {}};
}

// Enumerates all non-decreasing s-part compositions of z with parts in
// [1, cap], invoking fn(parts).
template <typename Fn>
void for_each_composition(std::uint64_t z, int s, std::uint64_t cap, Fn&& fn) {
    if (s < 1 || cap < 1 || z < static_cast<std::uint64_t>(s)) return;
    std::vector<std::uint64_t> parts;
    parts.reserve(static_cast<std::size_t>(s));
    auto rec = [&](auto&& self, std::uint64_t min_part, int left,
                   std::uint64_t remaining) -> void {
        if (left == 1) {
            if (remaining >= min_part && remaining <= cap) {
                parts.push_back(remaining);
                fn(parts);
                parts.pop_back();
            }
            return;
        }
        // Smallest part of a non-decreasing split is at most remaining/left;
        // the largest completion uses cap for every later part.
        const std::uint64_t hi = remaining / static_cast<std::uint64_t>(left);
        for (std::uint64_t x = min_part; x <= hi && x <= cap; ++x) {
            if (remaining - x >
                static_cast<std::uint64_t>(left - 1) * cap)
                continue;
            parts.push_back(x);
            self(self, x, left - 1, remaining - x);
            parts.pop_back();
        }
    };
    rec(rec, 1, s, z);
}

std::vector<std::uint64_t> distinct_support(
    const std::vector<std::uint64_t>& parts) {
    std::vector<std::uint64_t> support;
    for (const std::uint64_t x : parts)
        if (support.empty() || support.back() != x) support.push_back(x);
    return support;
}

double support_probability(const std::vector<std::uint64_t>& support,
                           const MembershipModel& model) {
    double prob = 1.0;
    for (const std::uint64_t x : support) prob *= model(x);
    return prob;
}

bool related(const std::vector<std::uint64_t>& a,
             const std::vector<std::uint64_t>& b) {
    if (a == b) return false;
    auto it_a = a.begin();
    auto it_b = b.begin();
    while (it_a != a.end() && it_b != b.end()) {
        if (*it_a == *it_b) return true;
        if (*it_a < *it_b)
            ++it_a;
        else
            ++it_b;
    }
    return false;
}

double joint_probability(const std::vector<std::uint64_t>& a,
                         const std::vector<std::uint64_t>& b,
                         const MembershipModel& model) {
    // P(E_a and E_b) = product of p_x over the union of the supports.
    double prob = 1.0;
    auto it_a = a.begin();
    auto it_b = b.begin();
    while (it_a != a.end() || it_b != b.end()) {
        std::uint64_t x;
        if (it_b == b.end() || (it_a != a.end() && *it_a < *it_b)) {
            x = *it_a++;
        } else if (it_a == a.end() || *it_b < *it_a) {
            x = *it_b++;
        } else {
            x = *it_a;
            ++it_a;
            ++it_b;
        }
        prob *= model(x);
    }
    return prob;
}

std::set<std::vector<std::uint64_t>> collect_supports(
    std::span<const std::uint64_t> targets, int s, std::uint64_t cap) {
    std::set<std::vector<std::uint64_t>> supports;
    for (const std::uint64_t z : targets) {
        for_each_composition(z, s, cap,
                             [&](const std::vector<std::uint64_t>& parts) {
                                 supports.insert(distinct_support(parts));
                             });
    }
    return supports;
}

std::vector<OmegaSet> to_family(
    const std::set<std::vector<std::uint64_t>>& supports,
    const MembershipModel& model) {
    std::vector<OmegaSet> family;
    family.reserve(supports.size());
    for (const auto& support : supports)
        family.push_back({support, support_probability(support, model)});
    return family;
}

}  // namespace

std::uint64_t IntervalSpec::hi() const {
    const double top =
        static_cast<double>(i) + alpha * std::log(static_cast<double>(i));
    return static_cast<std::uint64_t>(std::floor(top));
}

std::vector<std::uint64_t> IntervalSpec::members() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t z = lo(); z <= hi(); ++z) out.push_back(z);
    return out;
}

std::vector<RepPattern> enumerate_patterns(std::uint64_t z, int s,
                                           std::uint64_t universe_cap) {
    if (s < 1) throw std::domain_error("enumerate_patterns: s must be >= 1");
    std::vector<RepPattern> patterns;
    for_each_composition(z, s, universe_cap,
                         [&](const std::vector<std::uint64_t>& parts) {
                             RepPattern pat;
                             pat.target = z;
                             for (const std::uint64_t x : parts) {
                                 if (!pat.xs.empty() && pat.xs.back() == x) {
                                     ++pat.coeffs.back();
                                 } else {
                                     pat.xs.push_back(x);
                                     pat.coeffs.push_back(1);
                                 }
                             }
                             patterns.push_back(std::move(pat));
                         });
    return patterns;
}

std::vector<OmegaSet> enumerate_omega(std::uint64_t z, int s,
                                      std::uint64_t universe_cap,
                                      const MembershipModel* model) {
    if (s < 1) throw std::domain_error("enumerate_omega: s must be >= 1");
    const MembershipModel m = resolve(s, model);
    const std::uint64_t targets[1] = {z};
    return to_family(collect_supports(targets, s, universe_cap), m);
}

double omega_probability_sum(std::uint64_t z, int s,
                             const MembershipModel* model) {
    KahanSum acc;
    for (const OmegaSet& w : enumerate_omega(z, s, z, model)) acc.add(w.prob);
    return acc.sum;
}

namespace {

// Shared recursion for the ordered lemma sums: coeffs fixed, x_i >= 1.
// When equality holds, the final variable is solved by divisibility.
void lemma_i_rec(std::span<const int> coeffs, std::size_t idx,
                 std::uint64_t remaining, double partial, double expo,
                 KahanSum& acc) {
    const std::uint64_t a = static_cast<std::uint64_t>(coeffs[idx]);
    if (idx + 1 == coeffs.size()) {
        if (remaining >= a && remaining % a == 0) {
            const double x = static_cast<double>(remaining / a);
            acc.add(partial * std::pow(x, expo));
        }
        return;
    }
    // Later variables need at least sum of their coefficients.
    std::uint64_t tail_min = 0;
    for (std::size_t j = idx + 1; j < coeffs.size(); ++j)
        tail_min += static_cast<std::uint64_t>(coeffs[j]);
    if (remaining <= tail_min) return;
    const std::uint64_t x_max = (remaining - tail_min) / a;
    for (std::uint64_t x = 1; x <= x_max; ++x) {
        lemma_i_rec(coeffs, idx + 1, remaining - a * x,
                    partial * std::pow(static_cast<double>(x), expo), expo,
                    acc);
    }
}

void lemma_ii_rec(std::span<const int> coeffs, std::size_t idx,
                  std::uint64_t z, std::uint64_t used, double partial,
                  double expo, double tail_expo, KahanSum& acc) {
    const std::uint64_t a = static_cast<std::uint64_t>(coeffs[idx]);
    const bool last = idx + 1 == coeffs.size();
    std::uint64_t tail_min = 0;
    for (std::size_t j = idx + 1; j < coeffs.size(); ++j)
        tail_min += static_cast<std::uint64_t>(coeffs[j]);
    for (std::uint64_t x = 1;; ++x) {
        const std::uint64_t total = used + a * x + tail_min;
        if (total >= z) break;
        const double factor =
            partial * std::pow(static_cast<double>(x), expo);
        if (last) {
            const double slack = static_cast<double>(z - (used + a * x));
            acc.add(factor * std::pow(slack, tail_expo));
        } else {
            lemma_ii_rec(coeffs, idx + 1, z, used + a * x, factor, expo,
                         tail_expo, acc);
        }
    }
}

void validate_coeffs(int s, std::span<const int> coeffs) {
    const int t = static_cast<int>(coeffs.size());
    if (s < 2) throw std::domain_error("lemma sum: s must be >= 2");
    if (t < 1 || t > s)
        throw std::domain_error("lemma sum: need 1 <= t <= s coefficients");
    for (const int a : coeffs)
        if (a < 1) throw std::domain_error("lemma sum: coefficients must be >= 1");
}

}  // namespace

LemmaSumResult lemma_sum_i(int s, std::span<const int> coeffs,
                           std::uint64_t z) {
    validate_coeffs(s, coeffs);
    const double t = static_cast<double>(coeffs.size());
    const double expo = -1.0 + 1.0 / static_cast<double>(s);
    KahanSum acc;
    if (z >= 1) lemma_i_rec(coeffs, 0, z, 1.0, expo, acc);
    const double envelope =
        std::pow(static_cast<double>(z), -1.0 + t / static_cast<double>(s));
    return LemmaSumResult{acc.sum, z, acc.sum / envelope};
}

LemmaSumResult lemma_sum_ii(int s, std::span<const int> coeffs,
                            std::uint64_t z) {
    validate_coeffs(s, coeffs);
    const double t = static_cast<double>(coeffs.size());
    const double expo = -1.0 + 1.0 / static_cast<double>(s);
    const double tail_expo = -2.0 * t / static_cast<double>(s);
    KahanSum acc;
    if (z >= 2) lemma_ii_rec(coeffs, 0, z, 0, 1.0, expo, tail_expo, acc);
    const double zd = static_cast<double>(z);
    const double envelope =
        std::pow(zd, -1.0 / static_cast<double>(s)) * std::log(zd);
    return LemmaSumResult{acc.sum, z,
                          envelope > 0.0 ? acc.sum / envelope : 0.0};
}

namespace {

void lemma_iii_rec(int s, int idx, std::uint64_t min_x,
                   std::uint64_t remaining, double partial, double expo,
                   KahanSum& acc) {
    if (idx == s - 1) {
        if (remaining >= min_x)
            acc.add(partial * std::pow(static_cast<double>(remaining), expo));
        return;
    }
    const int left = s - idx;  // parts still to place, current included
    for (std::uint64_t x = min_x;; ++x) {
        // Cheapest completion is x+1, x+2, ...; prune when it overshoots.
        const std::uint64_t l = static_cast<std::uint64_t>(left);
        const std::uint64_t min_needed =
            l * x + (l - 1) * l / 2;  // x + (x+1) + ... + (x+left-1)
        if (min_needed > remaining) break;
        lemma_iii_rec(s, idx + 1, x + 1, remaining - x,
                      partial * std::pow(static_cast<double>(x), expo), expo,
                      acc);
    }
}

}  // namespace

LemmaSumResult lemma_sum_iii(int s, std::uint64_t z) {
    if (s < 2) throw std::domain_error("lemma_sum_iii: s must be >= 2");
    const double expo = -1.0 + 1.0 / static_cast<double>(s);
    KahanSum acc;
    lemma_iii_rec(s, 0, 1, z, 1.0, expo, acc);
    const double envelope =
        std::pow(static_cast<double>(s), s) * lambda_s(s);
    return LemmaSumResult{acc.sum, z, acc.sum / envelope};
}

double pairwise_dependence_sum(std::uint64_t z, std::uint64_t z_prime, int s,
                               const MembershipModel* model) {
    if (z > z_prime)
        throw std::domain_error("pairwise_dependence_sum: need z <= z_prime");
    const MembershipModel m = resolve(s, model);
    const auto fam_z = enumerate_omega(z, s, z, model);
    KahanSum acc;
    if (z == z_prime) {
        for (std::size_t i = 0; i < fam_z.size(); ++i)
            for (std::size_t j = i + 1; j < fam_z.size(); ++j)
                if (related(fam_z[i].support, fam_z[j].support))
                    acc.add(joint_probability(fam_z[i].support,
                                              fam_z[j].support, m));
        return acc.sum;
    }
    const auto fam_zp = enumerate_omega(z_prime, s, z_prime, model);
    // A support can live in both families (sigma(omega) may contain both
    // targets); count each unordered pair once.
    std::set<std::vector<std::uint64_t>> in_z(
        [&] {
            std::set<std::vector<std::uint64_t>> s_;
            for (const auto& w : fam_z) s_.insert(w.support);
            return s_;
        }());
    std::set<std::vector<std::uint64_t>> in_zp;
    for (const auto& w : fam_zp) in_zp.insert(w.support);
    for (const auto& a : fam_z) {
        for (const auto& b : fam_zp) {
            if (!related(a.support, b.support)) continue;
            const bool both_ways = in_zp.count(a.support) != 0 &&
                                   in_z.count(b.support) != 0;
            if (both_ways && !(a.support < b.support)) continue;
            acc.add(joint_probability(a.support, b.support, m));
        }
    }
    return acc.sum;
}

EventSystem build_explicit_system(std::span<const std::uint64_t> members,
                                  int s, std::uint64_t universe_cap,
                                  const MembershipModel* model) {
    if (s < 1) throw std::domain_error("build_explicit_system: s must be >= 1");
    if (universe_cap < 1)
        throw std::domain_error("build_explicit_system: universe_cap must be >= 1");
    EventSystem system;
    system.s = s;
    system.universe_cap = universe_cap;
    system.model = resolve(s, model);
    system.interval_members.assign(members.begin(), members.end());
    std::sort(system.interval_members.begin(), system.interval_members.end());
    system.interval_members.erase(
        std::unique(system.interval_members.begin(),
                    system.interval_members.end()),
        system.interval_members.end());
    system.family =
        to_family(collect_supports(system.interval_members, s, universe_cap),
                  system.model);
    return system;
}

EventSystem build_interval_system(std::uint64_t i, double alpha, int s,
                                  std::uint64_t universe_cap,
                                  const MembershipModel* model) {
    if (i < 2) throw std::domain_error("build_interval_system: i must be >= 2");
    if (!(alpha > 0.0))
        throw std::domain_error("build_interval_system: alpha must be > 0");
    const IntervalSpec interval{i, alpha};
    const auto members = interval.members();
    return build_explicit_system(members, s, universe_cap, model);
}

double independent_product(const EventSystem& system) {
    double product = 1.0;
    for (const OmegaSet& w : system.family) product *= 1.0 - w.prob;
    return product;
}

JansonBounds janson_bounds(const EventSystem& system) {
    for (const OmegaSet& w : system.family)
        if (w.prob > 0.5)
            throw std::domain_error(
                "janson_bounds: requires P(E_omega) <= 1/2 for every event");
    JansonBounds bounds;
    bounds.lower = independent_product(system);
    KahanSum dep;
    const auto& fam = system.family;
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j)
            if (related(fam[i].support, fam[j].support))
                dep.add(joint_probability(fam[i].support, fam[j].support,
                                          system.model));
    bounds.dependence_sum = dep.sum;
    bounds.upper = bounds.lower * std::exp(2.0 * dep.sum);
    return bounds;
}

namespace {

// Sumset reachability state for incremental subset construction: bit v of
// row k set iff v is a sum of exactly k chosen parts (repetition allowed),
// tracked up to max_value.
struct SumState {
    int s;
    std::size_t words;
    std::uint64_t max_value;
    std::vector<std::uint64_t> rows;  // (s+1) x words, row 0 = {0}

    SumState(int s_, std::uint64_t max_value_)
        : s(s_),
          words((static_cast<std::size_t>(max_value_) >> 6) + 1),
          max_value(max_value_),
          rows(static_cast<std::size_t>(s_ + 1) * words, 0ull) {
        rows[0] = 1ull;  // empty sum
    }

    std::uint64_t* row(int k) { return rows.data() + static_cast<std::size_t>(k) * words; }
    const std::uint64_t* row(int k) const {
        return rows.data() + static_cast<std::size_t>(k) * words;
    }

    // Adds element n to the chosen set. Updating k upward reuses the
    // already-updated row k-1, which realizes arbitrary multiplicity of n.
    void add(std::uint64_t n) {
        if (n > max_value) return;
        const std::size_t off = static_cast<std::size_t>(n >> 6);
        const unsigned r = static_cast<unsigned>(n & 63);
        const unsigned top = static_cast<unsigned>(max_value & 63);
        for (int k = 1; k <= s; ++k) {
            const std::uint64_t* src = row(k - 1);
            std::uint64_t* dst = row(k);
            if (r == 0) {
                for (std::size_t w = words; w-- > off;) dst[w] |= src[w - off];
            } else {
                for (std::size_t w = words; w-- > off;) {
                    std::uint64_t v = src[w - off] << r;
                    if (w - off > 0) v |= src[w - off - 1] >> (64 - r);
                    dst[w] |= v;
                }
            }
            if (top != 63) dst[words - 1] &= (2ull << top) - 1ull;
        }
    }

    bool hits(const std::vector<std::uint64_t>& mask) const {
        const std::uint64_t* top_row = row(s);
        for (std::size_t w = 0; w < words; ++w)
            if (top_row[w] & mask[w]) return true;
        return false;
    }
};

struct MissProblem {
    int s;
    std::uint64_t universe_cap;
    std::uint64_t max_member;
    std::uint64_t relevant_max;  // largest element that can matter
    std::vector<std::uint64_t> mask;
    bool trivial = false;  // no reachable member: miss is certain

    MissProblem(int s_, std::uint64_t cap,
                std::span<const std::uint64_t> members)
        : s(s_), universe_cap(cap), max_member(0), relevant_max(0) {
        const std::uint64_t lo = static_cast<std::uint64_t>(s_);
        const std::uint64_t hi = lo * cap;  // largest s-fold sum of parts <= cap
        for (const std::uint64_t z : members)
            if (z >= lo && z <= hi) max_member = std::max(max_member, z);
        if (max_member == 0) {
            trivial = true;
            return;
        }
        mask.assign((static_cast<std::size_t>(max_member) >> 6) + 1, 0ull);
        for (const std::uint64_t z : members)
            if (z >= lo && z <= max_member)
                mask[z >> 6] |= 1ull << (z & 63);
        relevant_max =
            std::min(cap, max_member - static_cast<std::uint64_t>(s_) + 1);
    }
};

double exact_miss_dfs(const MissProblem& prob, const MembershipModel& model,
                      std::uint64_t n, const SumState& state) {
    if (n > prob.relevant_max) return 1.0;
    const double pn = model(n);
    double result = 0.0;
    if (pn < 1.0)
        result = (1.0 - pn) * exact_miss_dfs(prob, model, n + 1, state);
    if (pn > 0.0) {
        SumState included = state;
        included.add(n);
        if (!included.hits(prob.mask))
            result += pn * exact_miss_dfs(prob, model, n + 1, included);
    }
    return result;
}

}  // namespace

double exact_gap_probability(int s, std::uint64_t universe_cap,
                             std::span<const std::uint64_t> interval_members,
                             const MembershipModel* model) {
    if (s < 1) throw std::domain_error("exact_gap_probability: s must be >= 1");
    if (universe_cap < 1)
        throw std::domain_error("exact_gap_probability: universe_cap must be >= 1");
    if (universe_cap > kExactUniverseCap)
        throw GuardError(
            "exact_gap_probability: universe_cap exceeds the exhaustive "
            "enumeration cap (26); use the Monte Carlo estimator");
    const MembershipModel m = resolve(s, model);
    const MissProblem prob(s, universe_cap, interval_members);
    if (prob.trivial) return 1.0;
    const SumState state(s, prob.max_member);
    return exact_miss_dfs(prob, m, 1, state);
}

MonteCarloEstimate montecarlo_gap_probability(
    int s, std::uint64_t universe_cap,
    std::span<const std::uint64_t> interval_members, std::uint64_t trials,
    std::uint64_t seed, const MembershipModel* model) {
    if (trials < 1)
        throw std::domain_error("montecarlo_gap_probability: trials must be >= 1");
    if (s < 1) throw std::domain_error("montecarlo_gap_probability: s must be >= 1");
    const MembershipModel m = resolve(s, model);
    const MissProblem prob(s, universe_cap, interval_members);
    MonteCarloEstimate out;
    out.trials = trials;
    if (prob.trivial) {
        out.estimate = 1.0;
        out.std_error = 0.0;
        return out;
    }
    std::vector<double> p(static_cast<std::size_t>(universe_cap) + 1, 0.0);
    for (std::uint64_t n = 1; n <= universe_cap; ++n)
        p[static_cast<std::size_t>(n)] = m(n);

    std::uint64_t misses = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        SumState state(s, prob.max_member);
        bool hit = false;
        for (std::uint64_t n = 1; n <= universe_cap && !hit; ++n) {
            const double u = rng::uniform01(seed, trial, n - 1);
            if (u >= p[static_cast<std::size_t>(n)]) continue;
            if (n > prob.relevant_max) continue;  // cannot reach any member
            state.add(n);
            hit = state.hits(prob.mask);
        }
        if (!hit) ++misses;
    }
    const double est = static_cast<double>(misses) / static_cast<double>(trials);
    out.estimate = est;
    out.std_error = std::sqrt(est * (1.0 - est) / static_cast<double>(trials));
    return out;
}

MonteCarloEstimate montecarlo_gap_probability(int s, std::uint64_t i,
                                              double alpha,
                                              std::uint64_t trials,
                                              std::uint64_t seed,
                                              const MembershipModel* model) {
    if (i < 2)
        throw std::domain_error("montecarlo_gap_probability: i must be >= 2");
    if (!(alpha > 0.0))
        throw std::domain_error("montecarlo_gap_probability: alpha must be > 0");
    const IntervalSpec interval{i, alpha};
    const std::uint64_t cap =
        i + static_cast<std::uint64_t>(
                std::ceil(alpha * std::log(static_cast<double>(i))));
    const auto members = interval.members();
    return montecarlo_gap_probability(s, cap, members, trials, seed, model);
}

}  // namespace ppower
