// Batch experiment driver over the ppower library: reproducible seeded
// subcommands, CSV/JSON emission and a JSONL run log with reproduction
// checks. Exit codes: 0 success, 2 config error, 3 guard violation,
// 1 internal error.

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppower/events.hpp"
#include "ppower/model_math.hpp"
#include "ppower/parallel.hpp"
#include "ppower/rng.hpp"
#include "ppower/sampler.hpp"
#include "ppower/statistics.hpp"
#include "ppower/sumset.hpp"

namespace {

using nlohmann::json;

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(v));
    return buf;
}

std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

struct OutputRecord {
    std::string path;
    std::string digest;  // fnv1a64 of the bytes (non-cryptographic)
};

OutputRecord write_output(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << body;
    out.close();
    if (!out) throw std::runtime_error("write failed: " + path);
    return OutputRecord{path, hex64(fnv1a64(body))};
}

std::string run_log_path() {
    if (const char* env = std::getenv("PPOWER_RUN_LOG"); env && *env)
        return env;
    return "ppower_run_log.jsonl";
}

// Appends one JSONL record per run and reports whether a previous run with
// the same config hash reproduced the same output digests.
void append_run_log(const std::string& command, const json& config,
                    const std::vector<OutputRecord>& outputs) {
    const std::string path = run_log_path();
    const std::string config_hash = hex64(fnv1a64(config.dump()));

    json out_list = json::array();
    for (const OutputRecord& rec : outputs)
        out_list.push_back({{"path", rec.path}, {"digest", rec.digest}});

    std::string reproduction = "new";
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        json prior = json::parse(line, nullptr, false);
        if (prior.is_discarded()) continue;
        if (prior.value("config_hash", "") != config_hash) continue;
        reproduction =
            prior.value("outputs", json::array()) == out_list ? "match"
                                                              : "mismatch";
    }
    in.close();

    json record = {{"time", iso8601_utc_now()},
                   {"command", command},
                   {"config", config},
                   {"config_hash", config_hash},
                   {"outputs", out_list},
                   {"reproduction", reproduction}};
    std::ofstream log(path, std::ios::app);
    if (log) {
        log << record.dump() << '\n';
    } else {
        std::cerr << "warning: cannot append run log at " << path << '\n';
    }
    if (reproduction != "new")
        std::cerr << "run-log: reproduction " << reproduction
                  << " for config " << config_hash << '\n';
}

// Runs fn(i) over [0, count) on the worker pool, capturing the first error.
void run_indexed(std::size_t count, unsigned workers,
                 const std::function<void(std::size_t)>& fn) {
    std::atomic<bool> failed{false};
    std::mutex mu;
    std::string message;
    ppower::parallel_for_index(count, workers, [&](std::size_t i) {
        if (failed.load(std::memory_order_relaxed)) return;
        try {
            fn(i);
        } catch (const std::exception& e) {
            failed.store(true, std::memory_order_relaxed);
            const std::lock_guard<std::mutex> lock(mu);
            if (message.empty()) message = e.what();
        }
    });
    if (failed.load()) throw std::runtime_error("worker failed: " + message);
}

json summary_stat(const ppower::StatSummary& s) {
    return {{"mean", s.mean},
            {"median", s.median},
            {"std_error", s.std_error},
            {"count", s.count}};
}

json histogram_json(const std::map<int, std::uint64_t>& hist) {
    json out = json::object();
    for (const auto& [d, count] : hist) out[std::to_string(d)] = count;
    return out;
}

// ----------------------------------------------------------------------
// sample
// ----------------------------------------------------------------------
struct SampleOpts {
    int s = 2;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::string out;
};

int cmd_sample(const SampleOpts& opt) {
    const ppower::PseudoSequence seq =
        ppower::sample_sequence(opt.s, opt.n, opt.seed, opt.trial);
    std::ostringstream body;
    ppower::write_sequence(body, seq);
    const OutputRecord rec = write_output(opt.out, body.str());
    const json config = {{"s", opt.s},      {"n", opt.n},
                         {"seed", opt.seed}, {"trial", opt.trial},
                         {"out", opt.out}};
    append_run_log("sample", config, {rec});
    std::cout << "sample: " << seq.elements.size() << " elements -> "
              << opt.out << '\n';
    return 0;
}

// ----------------------------------------------------------------------
// gaps
// ----------------------------------------------------------------------
struct GapsOpts {
    int s = 2;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t trials = 1;
    std::uint64_t min_b = 0;  // 0 = default sqrt burn-in
    std::uint64_t n_min = 0;
    unsigned workers = 1;
    std::string gaps_out;
    std::string summary_out;
    std::string intervals_out;  // optional RLE dump of trial 0's profile
};

int cmd_gaps(const GapsOpts& opt) {
    const std::uint64_t min_b =
        opt.min_b != 0 ? opt.min_b
                       : std::max<std::uint64_t>(2, ppower::default_burn_in(opt.n));
    const std::uint64_t n_min =
        opt.n_min != 0 ? opt.n_min : ppower::default_burn_in(opt.n);

    std::vector<ppower::TrialReport> reports(opt.trials);
    std::vector<std::string> segments(opt.trials);
    std::string intervals_csv;
    run_indexed(opt.trials, opt.workers, [&](std::size_t t) {
        const ppower::PseudoSequence seq =
            ppower::sample_sequence(opt.s, opt.n, opt.seed, t);
        const ppower::SumsetProfile profile =
            ppower::sumset(seq.elements, opt.s, opt.n);
        if (t == 0 && !opt.intervals_out.empty()) {
            std::ostringstream rle;
            ppower::write_intervals_csv(rle, profile);
            intervals_csv = rle.str();
        }
        ppower::TrialReport rep;
        rep.s = opt.s;
        rep.limit_n = opt.n;
        rep.seed = opt.seed;
        rep.trial_index = t;
        rep.sequence_size = seq.elements.size();
        rep.n_min = n_min;
        rep.min_b = min_b;
        rep.sumset_density = ppower::sumset_density(profile, n_min);
        std::ostringstream seg;
        double best = -1.0;
        ppower::for_each_gap(profile, min_b, [&](const ppower::GapRecord& g) {
            if (opt.trials > 1) seg << t << ',';
            seg << g.left << ',' << g.right << ',' << g.gap << ','
                << fmt_real(g.normalized) << '\n';
            best = std::max(best, g.normalized);
        });
        if (best >= 0.0) rep.max_normalized_gap = best;
        segments[t] = seg.str();
        reports[t] = std::move(rep);
    });

    std::ostringstream csv;
    csv << (opt.trials > 1 ? "trial,left,right,gap,normalized"
                           : "left,right,gap,normalized")
        << '\n';
    for (const std::string& seg : segments) csv << seg;

    const ppower::AggregateSummary agg = ppower::aggregate(reports);
    json per_trial = json::array();
    for (const ppower::TrialReport& rep : reports) {
        json entry = {{"trial", rep.trial_index},
                      {"sequence_size", rep.sequence_size},
                      {"sumset_density", rep.sumset_density}};
        if (rep.max_normalized_gap)
            entry["max_normalized_gap"] = *rep.max_normalized_gap;
        else
            entry["max_normalized_gap"] = nullptr;
        per_trial.push_back(entry);
    }
    json config = {{"s", opt.s},         {"n", opt.n},
                   {"seed", opt.seed},    {"trials", opt.trials},
                   {"min_b", min_b},      {"n_min", n_min},
                   {"gaps_out", opt.gaps_out},
                   {"summary_out", opt.summary_out}};
    if (!opt.intervals_out.empty()) config["intervals_out"] = opt.intervals_out;
    const json summary = {
        {"config", config},
        {"per_trial", per_trial},
        {"aggregate",
         {{"sumset_density", summary_stat(agg.sumset_density)},
          {"max_normalized_gap", summary_stat(agg.max_normalized_gap)},
          {"sequence_size", summary_stat(agg.sequence_size)},
          {"gap_constant", ppower::gap_constant(opt.s)}}}};

    std::vector<OutputRecord> outputs;
    outputs.push_back(write_output(opt.gaps_out, csv.str()));
    outputs.push_back(write_output(opt.summary_out, summary.dump(2) + "\n"));
    if (!opt.intervals_out.empty())
        outputs.push_back(write_output(opt.intervals_out, intervals_csv));
    append_run_log("gaps", config, outputs);
    std::cout << "gaps: " << opt.trials << " trial(s), median max gap "
              << fmt_real(agg.max_normalized_gap.median) << " -> "
              << opt.gaps_out << '\n';
    return 0;
}

// ----------------------------------------------------------------------
// poisson
// ----------------------------------------------------------------------
struct PoissonOpts {
    int s = 2;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t trials = 1;
    std::uint64_t n_min = 0;
    int d_max = 8;
    unsigned workers = 1;
    std::string hist_out;
    std::string summary_out;
};

int cmd_poisson(const PoissonOpts& opt) {
    const std::uint64_t n_min =
        opt.n_min != 0 ? opt.n_min : ppower::default_burn_in(opt.n);
    std::vector<ppower::TrialReport> reports(opt.trials);
    run_indexed(opt.trials, opt.workers, [&](std::size_t t) {
        reports[t] = ppower::run_trial(opt.s, opt.n, opt.seed, t, n_min,
                                       std::max<std::uint64_t>(2, n_min));
    });

    const ppower::AggregateSummary agg = ppower::aggregate(reports);

    // Pooled empirical frequencies over d = 0..d_max plus overflow.
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(opt.d_max) + 2,
                                      0);
    std::uint64_t total = 0;
    for (const auto& [d, count] : agg.pooled_rep_histogram) {
        if (d <= opt.d_max)
            counts[static_cast<std::size_t>(d)] += count;
        else
            counts.back() += count;
        total += count;
    }
    std::vector<double> freq(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k)
        freq[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
    const double lambda = ppower::lambda_s(opt.s);
    const std::vector<double> ref = ppower::poisson_reference(lambda, opt.d_max);
    const double tv = ppower::total_variation(freq, ref);

    std::ostringstream csv;
    csv << "d,count,frequency,poisson\n";
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (k + 1 < counts.size())
            csv << k;
        else
            csv << "overflow";
        csv << ',' << counts[k] << ',' << fmt_real(freq[k]) << ','
            << fmt_real(ref[k]) << '\n';
    }

    const json config = {{"s", opt.s},       {"n", opt.n},
                         {"seed", opt.seed},  {"trials", opt.trials},
                         {"n_min", n_min},    {"d_max", opt.d_max},
                         {"hist_out", opt.hist_out},
                         {"summary_out", opt.summary_out}};
    const json summary = {
        {"config", config},
        {"lambda_s", lambda},
        {"total_variation", tv},
        {"pooled_histogram", histogram_json(agg.pooled_rep_histogram)},
        {"sumset_density", summary_stat(agg.sumset_density)},
        {"expected_density", 1.0 - std::exp(-lambda)},
        {"sequence_size", summary_stat(agg.sequence_size)}};

    const OutputRecord hist_rec = write_output(opt.hist_out, csv.str());
    const OutputRecord summary_rec =
        write_output(opt.summary_out, summary.dump(2) + "\n");
    append_run_log("poisson", config, {hist_rec, summary_rec});
    std::cout << "poisson: TV distance to Poisson(" << fmt_real(lambda)
              << ") = " << fmt_real(tv) << " -> " << opt.hist_out << '\n';
    return 0;
}

// ----------------------------------------------------------------------
// lemma
// ----------------------------------------------------------------------
struct LemmaOpts {
    std::string which = "iii";
    int s = 2;
    std::vector<int> coeffs;
    std::vector<std::uint64_t> zs;
    std::string out;
};

int cmd_lemma(const LemmaOpts& opt) {
    std::ostringstream csv;
    csv << "z,value,envelope,bound_ratio\n";
    for (const std::uint64_t z : opt.zs) {
        double value = 0.0;
        double envelope = 0.0;
        double ratio = 0.0;
        if (opt.which == "i" || opt.which == "ii") {
            if (opt.coeffs.empty())
                throw std::domain_error("lemma i/ii needs --coeffs");
            const ppower::LemmaSumResult r =
                opt.which == "i" ? ppower::lemma_sum_i(opt.s, opt.coeffs, z)
                                 : ppower::lemma_sum_ii(opt.s, opt.coeffs, z);
            const double t = static_cast<double>(opt.coeffs.size());
            value = r.value;
            ratio = r.bound_ratio;
            envelope =
                opt.which == "i"
                    ? std::pow(static_cast<double>(z), -1.0 + t / opt.s)
                    : std::pow(static_cast<double>(z), -1.0 / opt.s) *
                          std::log(static_cast<double>(z));
        } else if (opt.which == "iii") {
            const ppower::LemmaSumResult r = ppower::lemma_sum_iii(opt.s, z);
            value = r.value;
            ratio = r.bound_ratio;
            envelope = std::pow(static_cast<double>(opt.s), opt.s) *
                       ppower::lambda_s(opt.s);
        } else {  // omega
            value = ppower::omega_probability_sum(z, opt.s);
            envelope = ppower::lambda_s(opt.s);
            ratio = value / envelope;
        }
        csv << z << ',' << fmt_real(value) << ',' << fmt_real(envelope) << ','
            << fmt_real(ratio) << '\n';
    }
    const json config = {{"which", opt.which},
                         {"s", opt.s},
                         {"coeffs", opt.coeffs},
                         {"z", opt.zs},
                         {"out", opt.out}};
    const OutputRecord rec = write_output(opt.out, csv.str());
    append_run_log("lemma", config, {rec});
    std::cout << "lemma " << opt.which << ": " << opt.zs.size()
              << " grid point(s) -> " << opt.out << '\n';
    return 0;
}

// ----------------------------------------------------------------------
// janson
// ----------------------------------------------------------------------
struct JansonOpts {
    int s = 2;
    std::uint64_t systems = 100;
    std::uint64_t max_universe = 12;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_janson(const JansonOpts& opt) {
    if (opt.max_universe > ppower::kExactUniverseCap)
        throw ppower::GuardError(
            "janson: --max-universe exceeds the exhaustive enumeration cap");
    if (opt.max_universe < 4)
        throw std::domain_error("janson: --max-universe must be >= 4");
    std::ostringstream csv;
    csv << "system,s,i,alpha,m,lower,exact,upper,sandwich_ok\n";
    std::uint64_t violations = 0;
    for (std::uint64_t k = 0; k < opt.systems; ++k) {
        const double u0 = ppower::rng::uniform01(opt.seed, k, 0);
        const double u1 = ppower::rng::uniform01(opt.seed, k, 1);
        const double u2 = ppower::rng::uniform01(opt.seed, k, 2);
        const std::uint64_t m =
            4 + static_cast<std::uint64_t>(u0 * static_cast<double>(
                                                    opt.max_universe - 3));
        const double alpha = 0.5 + 2.0 * u1;
        const std::uint64_t top = static_cast<std::uint64_t>(opt.s) * m;
        const std::uint64_t i =
            2 + static_cast<std::uint64_t>(u2 * static_cast<double>(top - 2));
        const ppower::EventSystem system =
            ppower::build_interval_system(i, alpha, opt.s, m);
        const ppower::JansonBounds bounds = ppower::janson_bounds(system);
        const double exact = ppower::exact_gap_probability(
            opt.s, m, system.interval_members);
        const double slack = 1e-9 * std::max(1.0, exact);
        const bool ok =
            bounds.lower <= exact + slack && exact <= bounds.upper + slack;
        if (!ok) ++violations;
        csv << k << ',' << opt.s << ',' << i << ',' << fmt_real(alpha) << ','
            << m << ',' << fmt_real(bounds.lower) << ',' << fmt_real(exact)
            << ',' << fmt_real(bounds.upper) << ',' << (ok ? 1 : 0) << '\n';
    }
    const json config = {{"s", opt.s},
                         {"systems", opt.systems},
                         {"max_universe", opt.max_universe},
                         {"seed", opt.seed},
                         {"out", opt.out}};
    const OutputRecord rec = write_output(opt.out, csv.str());
    append_run_log("janson", config, {rec});
    std::cout << "janson: " << opt.systems << " system(s), " << violations
              << " sandwich violation(s) -> " << opt.out << '\n';
    return violations == 0 ? 0 : 1;
}

// ----------------------------------------------------------------------
// gapprob
// ----------------------------------------------------------------------
struct GapProbOpts {
    int s = 2;
    double alpha = 2.0;
    std::vector<std::uint64_t> i_grid;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string out;
    std::string summary_out;
};

int cmd_gapprob(const GapProbOpts& opt) {
    const double lambda = ppower::lambda_s(opt.s);
    std::vector<ppower::MonteCarloEstimate> estimates(opt.i_grid.size());
    run_indexed(opt.i_grid.size(), opt.workers, [&](std::size_t k) {
        // Per-point derived seed keeps the draw streams of different grid
        // points disjoint.
        const std::uint64_t point_seed =
            ppower::rng::block64(opt.seed, 0xA11CEu, k);
        estimates[k] = ppower::montecarlo_gap_probability(
            opt.s, opt.i_grid[k], opt.alpha, opt.trials, point_seed);
    });

    std::ostringstream csv;
    csv << "i,estimate,std_error,model\n";
    std::vector<std::pair<double, double>> points;
    for (std::size_t k = 0; k < opt.i_grid.size(); ++k) {
        const double model = std::pow(static_cast<double>(opt.i_grid[k]),
                                      -opt.alpha * lambda);
        csv << opt.i_grid[k] << ',' << fmt_real(estimates[k].estimate) << ','
            << fmt_real(estimates[k].std_error) << ',' << fmt_real(model)
            << '\n';
        points.emplace_back(static_cast<double>(opt.i_grid[k]),
                            estimates[k].estimate);
    }

    json fit_json;
    if (points.size() >= 3) {
        const ppower::PowerFit fit = ppower::exponent_fit(points);
        fit_json = {{"slope", fit.slope},
                    {"intercept", fit.intercept},
                    {"r_squared", fit.r_squared},
                    {"dropped_points", fit.dropped_points},
                    {"target_slope", -opt.alpha * lambda}};
    } else {
        fit_json = nullptr;
    }
    const json config = {{"s", opt.s},        {"alpha", opt.alpha},
                         {"i", opt.i_grid},    {"trials", opt.trials},
                         {"seed", opt.seed},   {"out", opt.out},
                         {"summary_out", opt.summary_out}};
    const json summary = {{"config", config},
                          {"lambda_s", lambda},
                          {"fit", fit_json}};
    const OutputRecord rec = write_output(opt.out, csv.str());
    const OutputRecord summary_rec =
        write_output(opt.summary_out, summary.dump(2) + "\n");
    append_run_log("gapprob", config, {rec, summary_rec});
    std::cout << "gapprob: " << opt.i_grid.size() << " grid point(s) -> "
              << opt.out << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo s-th power sumset laboratory"};
    app.require_subcommand(1);
    app.set_config("--config");

    SampleOpts sample_opts;
    CLI::App* sample = app.add_subcommand(
        "sample", "sample a pseudo s-th power sequence to a text file");
    sample->add_option("--s", sample_opts.s, "exponent s")
        ->required()
        ->check(CLI::Range(2, 64));
    sample->add_option("--n", sample_opts.n, "upper limit N")->required();
    sample->add_option("--seed", sample_opts.seed, "RNG seed")->required();
    sample->add_option("--trial", sample_opts.trial, "trial index");
    sample->add_option("--out", sample_opts.out, "output path")->required();

    GapsOpts gaps_opts;
    CLI::App* gaps = app.add_subcommand(
        "gaps", "sumset gap records and normalized-gap summary");
    gaps->add_option("--s", gaps_opts.s)->required()->check(CLI::Range(2, 16));
    gaps->add_option("--n", gaps_opts.n)->required();
    gaps->add_option("--seed", gaps_opts.seed)->required();
    gaps->add_option("--trials", gaps_opts.trials)->check(CLI::Range(1, 1 << 20));
    gaps->add_option("--min-b", gaps_opts.min_b,
                     "gap window left edge (default sqrt burn-in)");
    gaps->add_option("--n-min", gaps_opts.n_min, "density burn-in");
    gaps->add_option("--workers", gaps_opts.workers)->check(CLI::Range(1, 256));
    gaps->add_option("--gaps-out", gaps_opts.gaps_out)->required();
    gaps->add_option("--summary-out", gaps_opts.summary_out)->required();
    gaps->add_option("--intervals-out", gaps_opts.intervals_out,
                     "optional run-length member intervals of trial 0");

    PoissonOpts poisson_opts;
    CLI::App* poisson = app.add_subcommand(
        "poisson", "pooled representation-count histogram vs Poisson");
    poisson->add_option("--s", poisson_opts.s)->required()->check(CLI::Range(2, 16));
    poisson->add_option("--n", poisson_opts.n)->required();
    poisson->add_option("--seed", poisson_opts.seed)->required();
    poisson->add_option("--trials", poisson_opts.trials)
        ->check(CLI::Range(1, 1 << 20));
    poisson->add_option("--n-min", poisson_opts.n_min);
    poisson->add_option("--d-max", poisson_opts.d_max)->check(CLI::Range(0, 64));
    poisson->add_option("--workers", poisson_opts.workers)
        ->check(CLI::Range(1, 256));
    poisson->add_option("--hist-out", poisson_opts.hist_out)->required();
    poisson->add_option("--summary-out", poisson_opts.summary_out)->required();

    LemmaOpts lemma_opts;
    CLI::App* lemma = app.add_subcommand(
        "lemma", "lemma-sum / omega-sum sweep over a z grid");
    lemma->add_option("--which", lemma_opts.which)
        ->check(CLI::IsMember({"i", "ii", "iii", "omega"}));
    lemma->add_option("--s", lemma_opts.s)->required()->check(CLI::Range(2, 16));
    lemma->add_option("--coeffs", lemma_opts.coeffs,
                      "coefficients a_1..a_t (lemma i/ii)");
    lemma->add_option("--z", lemma_opts.zs, "z grid")->required();
    lemma->add_option("--out", lemma_opts.out)->required();

    JansonOpts janson_opts;
    CLI::App* janson = app.add_subcommand(
        "janson", "randomized Janson sandwich table with exact check");
    janson->add_option("--s", janson_opts.s)->required()->check(CLI::Range(2, 8));
    janson->add_option("--systems", janson_opts.systems)
        ->check(CLI::Range(1, 1 << 20));
    janson->add_option("--max-universe", janson_opts.max_universe)->required();
    janson->add_option("--seed", janson_opts.seed)->required();
    janson->add_option("--out", janson_opts.out)->required();

    GapProbOpts gapprob_opts;
    CLI::App* gapprob = app.add_subcommand(
        "gapprob", "Monte Carlo P(F_i) over an i grid with exponent fit");
    gapprob->add_option("--s", gapprob_opts.s)->required()->check(CLI::Range(2, 16));
    gapprob->add_option("--alpha", gapprob_opts.alpha)->required();
    gapprob->add_option("--i", gapprob_opts.i_grid, "i grid")->required();
    gapprob->add_option("--trials", gapprob_opts.trials)
        ->check(CLI::Range(1, 1 << 30));
    gapprob->add_option("--seed", gapprob_opts.seed)->required();
    gapprob->add_option("--workers", gapprob_opts.workers)
        ->check(CLI::Range(1, 256));
    gapprob->add_option("--out", gapprob_opts.out)->required();
    gapprob->add_option("--summary-out", gapprob_opts.summary_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sample->parsed()) return cmd_sample(sample_opts);
        if (gaps->parsed()) return cmd_gaps(gaps_opts);
        if (poisson->parsed()) return cmd_poisson(poisson_opts);
        if (lemma->parsed()) return cmd_lemma(lemma_opts);
        if (janson->parsed()) return cmd_janson(janson_opts);
        if (gapprob->parsed()) return cmd_gapprob(gapprob_opts);
        return 2;
    } catch (const ppower::GuardError& e) {
        std::cerr << "guard violation: " << e.what() << '\n';
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
