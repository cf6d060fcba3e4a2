#pragma once

#include <cstdint>
#include <functional>

// Closed-form constants and special functions of the Erdos-Renyi pseudo
// s-th power model: lambda_s, the gap constant 1/lambda_s, membership
// probabilities and the Poisson pmf. All functions are pure.

namespace ppower {

// Gamma(1/s). Lanczos evaluation; relative error <= 1e-12 on the domain.
// Throws std::domain_error for s < 1.
double gamma_reciprocal_power(int s);

// lambda_s = Gamma(1/s)^s / (s^s * s!). Throws std::domain_error for s < 2.
double lambda_s(int s);

// s^s * s! / Gamma(1/s)^s = 1/lambda_s. Throws std::domain_error for s < 2.
double gap_constant(int s);

// P(n in A) = (1/s) * n^(-1+1/s). Value in (0, 1/2] for s >= 2.
// Throws std::domain_error for n < 1 or s < 2.
double membership_probability(std::uint64_t n, int s);

// lambda^d e^(-lambda) / d!, computed in log space so large d cannot
// overflow. Throws std::domain_error for lambda <= 0.
double poisson_pmf(double lambda, unsigned d);

// log Gamma(x) for x > 0 (shared by poisson_pmf and the gamma routines).
double log_gamma(double x);

// The pair (s, lambda_s) plus the derived gap constant.
struct ModelParams {
    int s;
    double lambda;        // lambda_s
    double gap_constant;  // 1/lambda_s

    static ModelParams for_exponent(int s);
};

// Membership probability source. The override hook is test-only surface:
// when set it replaces (1/s) n^(-1+1/s) everywhere a module asks for p(n).
using ProbabilityFn = std::function<double(std::uint64_t)>;

struct MembershipModel {
    int s = 2;
    ProbabilityFn override_fn;  // empty => model probabilities

    double operator()(std::uint64_t n) const;
};

}  // namespace ppower
