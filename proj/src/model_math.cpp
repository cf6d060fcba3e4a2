#include "ppower/model_math.hpp"

#include <cmath>
#include <stdexcept>

namespace ppower {

namespace {

// Lanczos approximation, g = 7, 9 terms. Accurate to ~1e-14 relative on
// the positive real axis, comfortably inside the 1e-12 contract.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLogSqrtTwoPi = 0.91893853320467274178032973640562;

double lanczos_series(double x) {
    // x >= 0.5 expected; series in 1/(x-1+k).
    double acc = kLanczos[0];
    for (int k = 1; k < 9; ++k) acc += kLanczos[k] / (x - 1.0 + k);
    return acc;
}

// Gamma(x) for x >= 0.5 via the Lanczos product form.
double gamma_positive(double x) {
    const double t = x - 0.5 + kLanczosG;
    return std::sqrt(2.0 * kPi) * std::pow(t, x - 0.5) * std::exp(-t) *
           lanczos_series(x);
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: x must be > 0");
    if (x < 0.5) {
        // Reflection: log Gamma(x) = log(pi / sin(pi x)) - log Gamma(1-x).
        return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
    }
    const double t = x - 0.5 + kLanczosG;
    return kLogSqrtTwoPi + (x - 0.5) * std::log(t) - t +
           std::log(lanczos_series(x));
}

double gamma_reciprocal_power(int s) {
    if (s < 1) throw std::domain_error("gamma_reciprocal_power: s must be >= 1");
    const double x = 1.0 / static_cast<double>(s);
    if (x >= 0.5) return gamma_positive(x);  // s <= 2
    // Gamma(x) = pi / (sin(pi x) Gamma(1-x)) keeps the argument in the
    // well-conditioned range of the Lanczos series.
    return kPi / (std::sin(kPi * x) * gamma_positive(1.0 - x));
}

double lambda_s(int s) {
    if (s < 2) throw std::domain_error("lambda_s: s must be >= 2");
    const double g = gamma_reciprocal_power(s);
    double factorial = 1.0;
    for (int k = 2; k <= s; ++k) factorial *= k;
    return std::pow(g, s) / (std::pow(static_cast<double>(s), s) * factorial);
}

double gap_constant(int s) {
    if (s < 2) throw std::domain_error("gap_constant: s must be >= 2");
    return 1.0 / lambda_s(s);
}

double membership_probability(std::uint64_t n, int s) {
    if (n < 1) throw std::domain_error("membership_probability: n must be >= 1");
    if (s < 2) throw std::domain_error("membership_probability: s must be >= 2");
    const double inv_s = 1.0 / static_cast<double>(s);
    return inv_s * std::pow(static_cast<double>(n), inv_s - 1.0);
}

double poisson_pmf(double lambda, unsigned d) {
    if (!(lambda > 0.0)) throw std::domain_error("poisson_pmf: lambda must be > 0");
    const double dd = static_cast<double>(d);
    return std::exp(dd * std::log(lambda) - lambda - log_gamma(dd + 1.0));
}

ModelParams ModelParams::for_exponent(int s) {
    const double lam = lambda_s(s);
    return ModelParams{s, lam, 1.0 / lam};
}

double MembershipModel::operator()(std::uint64_t n) const {
    if (override_fn) return override_fn(n);
    return membership_probability(n, s);
}

}  // namespace ppower
