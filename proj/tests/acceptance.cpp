// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. argv[1] must point at the ppower CLI binary (used by the
// determinism criterion).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ppower/events.hpp"
#include "ppower/model_math.hpp"
#include "ppower/parallel.hpp"
#include "ppower/rng.hpp"
#include "ppower/sampler.hpp"
#include "ppower/statistics.hpp"
#include "ppower/sumset.hpp"

#include "oracles.hpp"

using namespace ppower;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr std::uint64_t kMasterSeed = 20260808;

std::string cli_path;
int failures = 0;

void report(int id, const std::string& name, bool pass, double seconds,
            const std::string& detail) {
    std::printf("[%s] criterion %2d (%s): %s  [%.1fs]\n",
                pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str(),
                seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

template <typename Fn>
void criterion(int id, const std::string& name, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        pass = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    report(id, name, pass, seconds, detail);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

// ---------------------------------------------------------------------
// 1. Closed-form constants.
// ---------------------------------------------------------------------
bool c1_constants(std::string& detail) {
    const bool lam_ok = rel_err(lambda_s(2), kPi / 8.0) <= 1e-10;
    const bool gap_ok = rel_err(gap_constant(2), 8.0 / kPi) <= 1e-10;
    const bool g1 = rel_err(gamma_reciprocal_power(1), 1.0) <= 1e-12;
    const bool g2 =
        rel_err(gamma_reciprocal_power(2), 1.7724538509055160273) <= 1e-12;
    const bool g3 =
        rel_err(gamma_reciprocal_power(3), 2.6789385347077476337) <= 1e-12;
    detail = "lambda_2=" + fmt(lambda_s(2)) + " gap_2=" + fmt(gap_constant(2)) +
             " Gamma(1)=" + fmt(gamma_reciprocal_power(1)) +
             " Gamma(1/2)=" + fmt(gamma_reciprocal_power(2)) +
             " Gamma(1/3)=" + fmt(gamma_reciprocal_power(3));
    return lam_ok && gap_ok && g1 && g2 && g3;
}

// ---------------------------------------------------------------------
// 2. Oracle equivalence of the sumset engine.
// ---------------------------------------------------------------------
bool c2_oracle_equivalence(std::string& detail) {
    int mismatches = 0;
    const int instances = 200;
    for (int id = 0; id < instances; ++id) {
        const int s = 2 + id % 3;
        const std::uint64_t uid = static_cast<std::uint64_t>(id);
        const std::uint64_t limit =
            40 + static_cast<std::uint64_t>(rng::uniform01(kMasterSeed, uid, 0) *
                                            460.0);
        const std::uint64_t size =
            1 + static_cast<std::uint64_t>(rng::uniform01(kMasterSeed, uid, 1) *
                                           29.0);
        std::set<std::uint64_t> values;
        for (std::uint64_t k = 0; values.size() < size && k < 150; ++k)
            values.insert(1 +
                          static_cast<std::uint64_t>(
                              rng::uniform01(kMasterSeed, uid, k + 2) *
                              static_cast<double>(limit - 1)));
        const std::vector<std::uint64_t> a(values.begin(), values.end());

        const SumsetProfile profile = sumset(a, s, limit);
        const RepCountTable table = representation_counts(a, s, limit);
        const auto want_members = oracle::sumset_members(a, s, limit);
        const auto want_counts = oracle::rep_counts(a, s, limit);
        for (std::uint64_t n = 1; n <= limit; ++n) {
            if (profile.contains(n) != (want_members.count(n) != 0))
                ++mismatches;
            const auto it = want_counts.find(n);
            const std::uint64_t want = it == want_counts.end() ? 0 : it->second;
            if (table.counts[n] != want) ++mismatches;
        }
    }
    detail = std::to_string(instances) + " instances, " +
             std::to_string(mismatches) + " mismatches";
    return mismatches == 0;
}

// ---------------------------------------------------------------------
// 3. Janson sandwich on randomized systems (M <= 20, s in {2,3}).
// ---------------------------------------------------------------------
bool c3_janson_sandwich(std::string& detail) {
    int violations = 0;
    int nontrivial = 0;
    const int systems = 100;
    for (int id = 0; id < systems; ++id) {
        const std::uint64_t uid = static_cast<std::uint64_t>(id);
        const int s = 2 + id % 2;
        const std::uint64_t m =
            4 + static_cast<std::uint64_t>(
                    rng::uniform01(kMasterSeed + 3, uid, 0) * 17.0);
        const std::uint64_t top = static_cast<std::uint64_t>(s) * m;
        const std::uint64_t i =
            2 + static_cast<std::uint64_t>(
                    rng::uniform01(kMasterSeed + 3, uid, 1) *
                    static_cast<double>(top - 2));
        const double alpha =
            0.5 + 2.0 * rng::uniform01(kMasterSeed + 3, uid, 2);
        const EventSystem system = build_interval_system(i, alpha, s, m);
        const JansonBounds bounds = janson_bounds(system);
        const double exact = exact_gap_probability(s, m, system.interval_members);
        if (!(bounds.lower <= exact + 1e-9 && exact <= bounds.upper + 1e-9))
            ++violations;
        if (!system.family.empty()) ++nontrivial;
    }
    detail = std::to_string(systems) + " systems (" +
             std::to_string(nontrivial) + " nontrivial), " +
             std::to_string(violations) + " sandwich violations";
    return violations == 0;
}

// ---------------------------------------------------------------------
// 4. Exact vs Monte Carlo on >= 20 systems, 1e5 trials.
// ---------------------------------------------------------------------
bool c4_exact_vs_mc(std::string& detail) {
    struct System {
        int s;
        std::uint64_t m;
        std::vector<std::uint64_t> members;
        double exact;
    };
    std::vector<System> systems;
    // Worked M=3 example first; frozen by the enumeration oracle.
    systems.push_back({2, 3, {4, 5}, exact_gap_probability(2, 3, std::vector<std::uint64_t>{4, 5})});
    if (rel_err(systems[0].exact, 0.5531400784173027) > 1e-12) {
        detail = "worked example exact=" + fmt(systems[0].exact) +
                 " drifted from the frozen oracle value";
        return false;
    }
    for (std::uint64_t id = 0; systems.size() < 20 && id < 400; ++id) {
        const int s = 2 + static_cast<int>(id % 2);
        const std::uint64_t m =
            3 + static_cast<std::uint64_t>(
                    rng::uniform01(kMasterSeed + 4, id, 0) * 9.0);
        const std::uint64_t top = static_cast<std::uint64_t>(s) * m;
        const std::uint64_t i =
            2 + static_cast<std::uint64_t>(
                    rng::uniform01(kMasterSeed + 4, id, 1) *
                    static_cast<double>(top - 2));
        const double alpha =
            0.5 + 2.0 * rng::uniform01(kMasterSeed + 4, id, 2);
        const IntervalSpec spec{i, alpha};
        const auto members = spec.members();
        const double exact = exact_gap_probability(s, m, members);
        if (exact < 0.02 || exact > 0.98) continue;  // keep the 3-SE test sharp
        systems.push_back({s, m, members, exact});
    }
    const std::uint64_t trials = 100000;
    int disagreements = 0;
    std::vector<double> deviations(systems.size(), 0.0);
    parallel_for_index(systems.size(), 2, [&](std::size_t k) {
        const System& sys = systems[k];
        const MonteCarloEstimate est = montecarlo_gap_probability(
            sys.s, sys.m, sys.members, trials, kMasterSeed + 100 + k);
        const double se = std::max(
            est.std_error,
            std::sqrt(sys.exact * (1.0 - sys.exact) /
                      static_cast<double>(trials)));
        deviations[k] = std::abs(est.estimate - sys.exact) / se;
    });
    double worst = 0.0;
    for (const double d : deviations) {
        worst = std::max(worst, d);
        if (d > 3.0) ++disagreements;
    }
    detail = std::to_string(systems.size()) + " systems, worst |dev| " +
             fmt(worst) + " SE, " + std::to_string(disagreements) +
             " beyond 3 SE (worked example exact " + fmt(systems[0].exact) +
             ")";
    return disagreements == 0;
}

// ---------------------------------------------------------------------
// 5. Convergence of the increasing-tuple sum to s^s * lambda_s.
// ---------------------------------------------------------------------
bool c5_lemma_iii(std::string& detail) {
    const double target2 = kPi / 2.0;
    const double v3 = lemma_sum_iii(2, 1000).value;
    const double v4 = lemma_sum_iii(2, 10000).value;
    const double v5 = lemma_sum_iii(2, 100000).value;
    const double e3 = std::abs(v3 - target2);
    const double e4 = std::abs(v4 - target2);
    const double e5 = std::abs(v5 - target2);
    const bool s2_ok = (e4 / target2 < 0.02) && e4 < e3 && e5 < e4;

    const double target3 = 27.0 * lambda_s(3);
    const double w = lemma_sum_iii(3, 3000).value;
    const double dev3 = std::abs(w - target3) / target3;
    const bool s3_ok = dev3 <= 0.10;

    detail = "s=2: value(1e4)=" + fmt(v4) + " vs pi/2=" + fmt(target2) +
             " (" + fmt(100.0 * e4 / target2) + "%), errors " + fmt(e3) +
             " > " + fmt(e4) + " > " + fmt(e5) + "; s=3: value(3e3)=" +
             fmt(w) + " vs 27*lambda_3=" + fmt(target3) + " (" +
             fmt(100.0 * dev3) + "%, band 10%)";
    return s2_ok && s3_ok;
}

// ---------------------------------------------------------------------
// 6. Convergence of the omega probability sum to lambda_s.
// ---------------------------------------------------------------------
bool c6_omega_sum(std::string& detail) {
    const double lam = kPi / 8.0;
    const double v2 = omega_probability_sum(100, 2);
    const double v3 = omega_probability_sum(1000, 2);
    const double v4 = omega_probability_sum(10000, 2);
    const double e2 = std::abs(v2 - lam);
    const double e3 = std::abs(v3 - lam);
    const double e4 = std::abs(v4 - lam);
    detail = "sum(1e2)=" + fmt(v2) + " sum(1e3)=" + fmt(v3) + " sum(1e4)=" +
             fmt(v4) + " vs pi/8=" + fmt(lam) + "; final dev " +
             fmt(100.0 * e4 / lam) + "%";
    return e3 < e2 && e4 < e3 && e4 / lam < 0.05;
}

// ---------------------------------------------------------------------
// 7. Poisson profile and sumset density.
// ---------------------------------------------------------------------
bool c7_poisson_profile(std::string& detail) {
    const int d_max = 12;
    const std::uint64_t trials = 5;
    std::vector<TrialReport> reports(trials);
    parallel_for_index(trials, 2, [&](std::size_t t) {
        reports[t] = run_trial(2, 1000000, kMasterSeed + 7, t, 1000, 1000, true);
    });
    const AggregateSummary agg = aggregate(reports);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(d_max) + 2, 0);
    std::uint64_t total = 0;
    for (const auto& [d, c] : agg.pooled_rep_histogram) {
        if (d <= d_max)
            counts[static_cast<std::size_t>(d)] += c;
        else
            counts.back() += c;
        total += c;
    }
    std::vector<double> freq(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k)
        freq[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
    const double tv =
        total_variation(freq, poisson_reference(kPi / 8.0, d_max));

    // Density at N=1e7: the clause does not fix a trial count and the
    // per-realization spread is ~0.009, so the mean over a fixed trial set
    // is the statistic that the +-0.01 band can meaningfully gate.
    const std::uint64_t big_trials = 8;
    std::vector<TrialReport> big(big_trials);
    parallel_for_index(big_trials, 2, [&](std::size_t t) {
        big[t] = run_trial(2, 10000000, kMasterSeed + 7, t, 1000, 1000, false);
    });
    const double mean_density =
        aggregate(big).sumset_density.mean;
    const double want_density = 1.0 - std::exp(-kPi / 8.0);
    const double density_dev = std::abs(mean_density - want_density);

    detail = "pooled TV=" + fmt(tv) + " (< 0.02); density(N=1e7, " +
             std::to_string(big_trials) + "-trial mean)=" + fmt(mean_density) +
             " vs " + fmt(want_density) + " (dev " + fmt(density_dev) +
             ", band 0.01)";
    return tv < 0.02 && density_dev <= 0.01;
}

// ---------------------------------------------------------------------
// 8. Normalized-gap trend at N = 1e7 over 10 trials.
// ---------------------------------------------------------------------
bool c8_gap_trend(std::string& detail) {
    const std::uint64_t trials = 10;
    std::vector<double> maxima(trials, 0.0);
    std::vector<bool> has_gap(trials, false);
    parallel_for_index(trials, 2, [&](std::size_t t) {
        const TrialReport rep =
            run_trial(2, 10000000, kMasterSeed + 8, t, 1000, 1000, false);
        if (rep.max_normalized_gap) {
            maxima[t] = *rep.max_normalized_gap;
            has_gap[t] = true;
        }
    });
    bool all_in_band = true;
    std::vector<double> sorted;
    for (std::uint64_t t = 0; t < trials; ++t) {
        if (!has_gap[t]) {
            all_in_band = false;
            continue;
        }
        if (maxima[t] < 1.2 || maxima[t] > 4.8) all_in_band = false;
        sorted.push_back(maxima[t]);
    }
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted.empty()
                              ? 0.0
                              : (sorted.size() % 2 == 1
                                     ? sorted[sorted.size() / 2]
                                     : 0.5 * (sorted[sorted.size() / 2 - 1] +
                                              sorted[sorted.size() / 2]));
    std::string values;
    for (const double v : sorted) values += fmt(v) + " ";
    detail = "per-trial max gaps: " + values + "| median " + fmt(median) +
             " (bands [1.2,4.8] per trial, [1.7,3.6] median; 8/pi=" +
             fmt(8.0 / kPi) + ")";
    return all_in_band && median >= 1.7 && median <= 3.6;
}

// ---------------------------------------------------------------------
// 9. Exponent fit of Monte Carlo P(F_i).
// ---------------------------------------------------------------------
bool c9_exponent_fit(std::string& detail) {
    const double alpha = 2.0;
    const std::vector<std::uint64_t> grid{200, 400, 800, 1600};
    const std::uint64_t trials = 100000;
    std::vector<MonteCarloEstimate> estimates(grid.size());
    parallel_for_index(grid.size(), 2, [&](std::size_t k) {
        const std::uint64_t point_seed =
            rng::block64(kMasterSeed + 9, 0xA11CEu, k);
        estimates[k] = montecarlo_gap_probability(2, grid[k], alpha, trials,
                                                  point_seed);
    });
    std::vector<std::pair<double, double>> points;
    std::string rows;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        points.emplace_back(static_cast<double>(grid[k]),
                            estimates[k].estimate);
        rows += "P(F_" + std::to_string(grid[k]) + ")=" +
                fmt(estimates[k].estimate) + " ";
    }
    const PowerFit fit = exponent_fit(points);
    const double target = -alpha * lambda_s(2);  // -pi/4
    const double dev = std::abs(fit.slope - target) / std::abs(target);
    detail = rows + "| slope " + fmt(fit.slope) + " vs " + fmt(target) +
             " (dev " + fmt(100.0 * dev) + "%, band 15%), r^2 " +
             fmt(fit.r_squared);
    return dev <= 0.15 && fit.r_squared > 0.9;
}

// ---------------------------------------------------------------------
// 10. CLI determinism across reruns and worker counts.
// ---------------------------------------------------------------------
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = "PPOWER_RUN_LOG=acceptance_tmp/run_log.jsonl \"" +
                            cli_path + "\" " + args +
                            " >>acceptance_tmp/cli_stdout.txt 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

bool c10_determinism(std::string& detail) {
    if (cli_path.empty()) {
        detail = "no CLI path provided (argv[1])";
        return false;
    }
    if (std::system("mkdir -p acceptance_tmp") != 0) {
        detail = "cannot create acceptance_tmp";
        return false;
    }

    // Runs the exact same config twice (only --workers differs, which is an
    // execution knob, not an experiment parameter) and snapshots between.
    auto snapshot = [](const std::string& path) {
        const std::string saved = slurp(path);
        std::remove(path.c_str());
        return saved;
    };

    if (run_cli("sample --s 2 --n 200000 --seed 99 --out acceptance_tmp/s.txt") != 0) {
        detail = "sample command failed";
        return false;
    }
    const std::string sample_first = snapshot("acceptance_tmp/s.txt");
    if (run_cli("sample --s 2 --n 200000 --seed 99 --out acceptance_tmp/s.txt") != 0) {
        detail = "sample command failed";
        return false;
    }
    const bool sample_ok =
        !sample_first.empty() && sample_first == slurp("acceptance_tmp/s.txt");

    const std::string gaps_common =
        "gaps --s 2 --n 100000 --seed 42 --trials 8 --min-b 100 "
        "--gaps-out acceptance_tmp/g.csv --summary-out acceptance_tmp/g.json ";
    if (run_cli(gaps_common + "--workers 1") != 0) {
        detail = "gaps command failed";
        return false;
    }
    const std::string gaps_csv_first = snapshot("acceptance_tmp/g.csv");
    const std::string gaps_json_first = snapshot("acceptance_tmp/g.json");
    if (run_cli(gaps_common + "--workers 8") != 0) {
        detail = "gaps command failed";
        return false;
    }
    const bool gaps_ok = !gaps_csv_first.empty() &&
                         gaps_csv_first == slurp("acceptance_tmp/g.csv") &&
                         gaps_json_first == slurp("acceptance_tmp/g.json");

    const std::string gp_common =
        "gapprob --s 2 --alpha 2 --i 50 100 200 400 --trials 5000 --seed 7 "
        "--out acceptance_tmp/p.csv --summary-out acceptance_tmp/p.json ";
    if (run_cli(gp_common + "--workers 1") != 0) {
        detail = "gapprob command failed";
        return false;
    }
    const std::string gp_csv_first = snapshot("acceptance_tmp/p.csv");
    const std::string gp_json_first = snapshot("acceptance_tmp/p.json");
    if (run_cli(gp_common + "--workers 8") != 0) {
        detail = "gapprob command failed";
        return false;
    }
    const bool gapprob_ok = !gp_csv_first.empty() &&
                            gp_csv_first == slurp("acceptance_tmp/p.csv") &&
                            gp_json_first == slurp("acceptance_tmp/p.json");

    const std::string poisson_common =
        "poisson --s 2 --n 50000 --seed 5 --trials 4 "
        "--hist-out acceptance_tmp/h.csv --summary-out acceptance_tmp/h.json ";
    if (run_cli(poisson_common + "--workers 1") != 0) {
        detail = "poisson command failed";
        return false;
    }
    const std::string hist_first = snapshot("acceptance_tmp/h.csv");
    const std::string hist_json_first = snapshot("acceptance_tmp/h.json");
    if (run_cli(poisson_common + "--workers 8") != 0) {
        detail = "poisson command failed";
        return false;
    }
    const bool poisson_ok = !hist_first.empty() &&
                            hist_first == slurp("acceptance_tmp/h.csv") &&
                            hist_json_first == slurp("acceptance_tmp/h.json");

    detail = std::string("sample rerun ") + (sample_ok ? "identical" : "DIFFERS") +
             "; gaps 1v8 workers " + (gaps_ok ? "identical" : "DIFFERS") +
             "; gapprob 1v8 workers " + (gapprob_ok ? "identical" : "DIFFERS") +
             "; poisson 1v8 workers " + (poisson_ok ? "identical" : "DIFFERS");
    return sample_ok && gaps_ok && gapprob_ok && poisson_ok;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) cli_path = argv[1];
    std::printf("acceptance suite (master seed %llu)\n",
                static_cast<unsigned long long>(kMasterSeed));

    criterion(1, "constants", c1_constants);
    criterion(2, "sumset oracle equivalence", c2_oracle_equivalence);
    criterion(3, "janson sandwich", c3_janson_sandwich);
    criterion(4, "exact vs monte carlo", c4_exact_vs_mc);
    criterion(5, "lemma_sum_iii convergence", c5_lemma_iii);
    criterion(6, "omega sum convergence", c6_omega_sum);
    criterion(7, "poisson profile and density", c7_poisson_profile);
    criterion(8, "normalized gap trend", c8_gap_trend);
    criterion(9, "gap probability exponent fit", c9_exponent_fit);
    criterion(10, "determinism", c10_determinism);

    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
