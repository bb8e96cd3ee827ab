#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace impnoise {

// Thrown when distribution parameters are outside their admissible domain.
class ParameterError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Thrown when a numeric routine cannot reach its accuracy target
// (e.g. a PDF grid too coarse for the requested tail exponent).
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Symmetric alpha-stable law, CF convention phi(t) = exp(-gamma^alpha |t|^alpha).
struct StableParams {
    double alpha = 2.0;  // characteristic exponent, 0 < alpha <= 2
    double gamma = 1.0;  // scale, >= 0

    void validate() const;
};

// Sum of independent WGN and SaS impulsive noise.
// WGN variance is sigma^2 = 2 * gamma_g^2 (alpha = 2 stable convention).
struct MixedNoiseParams {
    double alpha = 1.5;    // impulsive exponent, 0.5 < alpha <= 2
    double gamma_s = 1.0;  // impulsive scale, >= 0
    double gamma_g = 0.0;  // Gaussian scale, >= 0

    void validate() const;
};

// Strength ratio gamma_g^2 / gamma_s^alpha. Empty when gamma_s == 0
// (pure-Gaussian limit, the ratio is infinite).
std::optional<double> lambda_of(const MixedNoiseParams& p);

// i.i.d. SaS samples via the Chambers-Mallows-Stuck transform.
// alpha == 1 uses the exact Cauchy branch. Deterministic in (params, seed).
std::vector<double> sample_sas(const StableParams& p, std::size_t n, std::uint64_t seed);

// Sum of independent Gaussian and SaS streams derived from one seed.
std::vector<double> sample_mixed(const MixedNoiseParams& p, std::size_t n, std::uint64_t seed);

// Analytic CF of the mixed law: exp(-gamma_g^2 t^2 - gamma_s^alpha |t|^alpha).
double mixed_cf(const MixedNoiseParams& p, double t);

// P(|X| <= r) for the mixed law, by Gil-Pelaez inversion of the CF.
double mixed_abs_cdf(const MixedNoiseParams& p, double r);

// Smallest radius R with P(|X| <= R) >= coverage, by bisection on the CDF.
double quantile_radius(const StableParams& p, double coverage);
double quantile_radius(const MixedNoiseParams& p, double coverage);

// Replace every sample with |x| > R by a fresh in-range draw, so the output
// is distributed as the law conditioned on |X| <= R. R is the coverage
// quantile radius. Samples already inside R pass through untouched.
std::vector<double> truncate_dynamic_range(std::span<const double> x, const StableParams& p,
                                           double coverage, std::uint64_t seed);

// Numerical PDF of the mixed law on a uniform symmetric grid, computed by
// inverting the analytic CF (Poisson-summed cosine series). Throws
// ResolutionError when the grid spacing cannot resolve the density.
std::vector<double> mixed_pdf(const MixedNoiseParams& p, std::span<const double> grid);

}  // namespace impnoise
