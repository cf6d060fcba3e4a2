#include "ppower/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ppower/model_math.hpp"
#include "ppower/sampler.hpp"

namespace ppower {

EmpiricalPmf poisson_profile(const RepCountTable& table, std::uint64_t n_min,
                             int d_max) {
    if (n_min < 1) throw std::domain_error("poisson_profile: n_min must be >= 1");
    if (d_max < 0) throw std::domain_error("poisson_profile: d_max must be >= 0");
    if (n_min > table.limit_n)
        throw std::domain_error("poisson_profile: n_min beyond the table (no data)");
    EmpiricalPmf pmf;
    pmf.counts.assign(static_cast<std::size_t>(d_max) + 2, 0);
    for (std::uint64_t n = n_min; n <= table.limit_n; ++n) {
        const std::uint32_t d = table.counts[n];
        if (d <= static_cast<std::uint32_t>(d_max))
            ++pmf.counts[d];
        else
            ++pmf.counts.back();
    }
    pmf.total = table.limit_n - n_min + 1;
    pmf.freq.resize(pmf.counts.size());
    for (std::size_t k = 0; k < pmf.counts.size(); ++k)
        pmf.freq[k] = static_cast<double>(pmf.counts[k]) /
                      static_cast<double>(pmf.total);
    return pmf;
}

std::vector<double> poisson_reference(double lambda, int d_max) {
    std::vector<double> ref(static_cast<std::size_t>(d_max) + 2, 0.0);
    double head = 0.0;
    for (int d = 0; d <= d_max; ++d) {
        ref[static_cast<std::size_t>(d)] = poisson_pmf(lambda, static_cast<unsigned>(d));
        head += ref[static_cast<std::size_t>(d)];
    }
    ref.back() = std::max(0.0, 1.0 - head);
    return ref;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    double sum_p = 0.0;
    double sum_q = 0.0;
    for (const double v : p) sum_p += v;
    for (const double v : q) sum_q += v;
    if (std::abs(sum_p - 1.0) > 1e-9 || std::abs(sum_q - 1.0) > 1e-9)
        throw std::domain_error("total_variation: distributions must sum to 1");
    const std::size_t len = std::max(p.size(), q.size());
    double dist = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
        const double pv = k < p.size() ? p[k] : 0.0;
        const double qv = k < q.size() ? q[k] : 0.0;
        dist += std::abs(pv - qv);
    }
    return 0.5 * dist;
}

double sumset_density(const SumsetProfile& profile, std::uint64_t n_min) {
    if (n_min > profile.limit_n)
        throw std::domain_error("sumset_density: n_min beyond the profile");
    const std::uint64_t lo = std::max<std::uint64_t>(n_min, 1);
    const std::uint64_t span = profile.limit_n - lo + 1;
    return static_cast<double>(profile.count_range(lo, profile.limit_n)) /
           static_cast<double>(span);
}

PowerFit exponent_fit(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3)
        throw std::domain_error("exponent_fit: need at least 3 points");
    PowerFit fit;
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& [i, p] : points) {
        if (!(p > 0.0)) {
            ++fit.dropped_points;
            continue;
        }
        xs.push_back(std::log(i));
        ys.push_back(std::log(p));
    }
    const std::size_t n = xs.size();
    if (n < 2)
        throw std::domain_error("exponent_fit: fewer than 2 usable points");
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mean_x += xs[k];
        mean_y += ys[k];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double dx = xs[k] - mean_x;
        const double dy = ys[k] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0)
        throw std::domain_error("exponent_fit: degenerate abscissae");
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

std::uint64_t default_burn_in(std::uint64_t limit_n) {
    const std::uint64_t root = static_cast<std::uint64_t>(
        std::floor(std::sqrt(static_cast<double>(limit_n))));
    return std::max<std::uint64_t>(100, root);
}

TrialReport run_trial(int s, std::uint64_t limit_n, std::uint64_t seed,
                      std::uint64_t trial_index, std::uint64_t n_min,
                      std::uint64_t min_b, bool with_rep_histogram) {
    TrialReport report;
    report.s = s;
    report.limit_n = limit_n;
    report.seed = seed;
    report.trial_index = trial_index;
    report.n_min = std::min(std::max<std::uint64_t>(n_min, 1), limit_n);
    report.min_b = std::max<std::uint64_t>(min_b, 2);

    const PseudoSequence seq = sample_sequence(s, limit_n, seed, trial_index);
    report.sequence_size = seq.elements.size();

    const SumsetProfile profile = sumset(seq.elements, s, limit_n);
    report.sumset_density = sumset_density(profile, report.n_min);
    report.max_normalized_gap = max_normalized_gap(profile, report.min_b);

    if (with_rep_histogram) {
        const RepCountTable table =
            representation_counts(seq.elements, s, limit_n);
        for (std::uint64_t n = report.n_min; n <= limit_n; ++n)
            ++report.rep_histogram[static_cast<int>(table.counts[n])];
    }
    return report;
}

namespace {

StatSummary summarize(std::vector<double> values) {
    StatSummary out;
    out.count = values.size();
    if (values.empty()) return out;
    double sum = 0.0;
    for (const double v : values) sum += v;
    out.mean = sum / static_cast<double>(values.size());
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    out.median = sorted.size() % 2 == 1
                     ? sorted[mid]
                     : 0.5 * (sorted[mid - 1] + sorted[mid]);
    if (values.size() > 1) {
        double ss = 0.0;
        for (const double v : values) ss += (v - out.mean) * (v - out.mean);
        const double variance = ss / static_cast<double>(values.size() - 1);
        out.std_error =
            std::sqrt(variance / static_cast<double>(values.size()));
    }
    return out;
}

}  // namespace

AggregateSummary aggregate(std::vector<TrialReport> reports) {
    if (reports.empty())
        throw std::invalid_argument("aggregate: no reports");
    for (const TrialReport& r : reports)
        if (r.s != reports.front().s || r.limit_n != reports.front().limit_n)
            throw std::invalid_argument("aggregate: mixed (s, limit_n) parameters");
    std::sort(reports.begin(), reports.end(),
              [](const TrialReport& a, const TrialReport& b) {
                  if (a.seed != b.seed) return a.seed < b.seed;
                  return a.trial_index < b.trial_index;
              });
    AggregateSummary summary;
    summary.s = reports.front().s;
    summary.limit_n = reports.front().limit_n;
    summary.trials = reports.size();

    std::vector<double> sizes;
    std::vector<double> densities;
    std::vector<double> gaps;
    for (const TrialReport& r : reports) {
        sizes.push_back(static_cast<double>(r.sequence_size));
        densities.push_back(r.sumset_density);
        if (r.max_normalized_gap) gaps.push_back(*r.max_normalized_gap);
        for (const auto& [d, count] : r.rep_histogram)
            summary.pooled_rep_histogram[d] += count;
    }
    summary.sequence_size = summarize(std::move(sizes));
    summary.sumset_density = summarize(std::move(densities));
    summary.max_normalized_gap = summarize(std::move(gaps));
    return summary;
}

}  // namespace ppower
