#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace designworld {

struct KsResult {
    double d_statistic = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
    std::size_t m = 0;
};

enum class KsMethod : std::uint8_t {
    Asymptotic,  // Kolmogorov limiting distribution
    Exact,       // lattice-path count under the permutation null; small samples only
};

// Two-sided two-sample Kolmogorov-Smirnov test. Throws std::invalid_argument
// on an empty sample.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b,
                       KsMethod method = KsMethod::Asymptotic);

// sup_x |F_a(x) - F_b(x)| with right-continuous empirical CDFs.
double ks_statistic(std::span<const double> a, std::span<const double> b);

// Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2), clamped to [0, 1].
double kolmogorov_q(double lambda);

// Asymptotic p-value of statistic d for sample sizes n and m.
double ks_asymptotic_p(double d, std::size_t n, std::size_t m);

// P(D >= d) under H0 for sample sizes n and m.
double ks_exact_p(double d, std::size_t n, std::size_t m);

// Smallest D whose asymptotic p-value is below alpha.
double ks_critical_d(double alpha, std::size_t n, std::size_t m);

double mean(std::span<const double> xs);
double median(std::span<const double> xs);

enum class Verdict : std::uint8_t { Beneficial, Detrimental, Neutral };
const char* to_string(Verdict v) noexcept;

// Samples of strategy 1 and strategy 2 at one radius.
struct RadiusSamples {
    double radius = 0.0;
    std::vector<double> first;
    std::vector<double> second;
};

struct RadiusComparison {
    double radius = 0.0;
    KsResult ks;
    double mean_difference = 0.0;  // mean(first) - mean(second)
    int direction = 0;             // sign of mean_difference

    bool significant(double alpha) const { return ks.p_value < alpha; }
};

struct Classification {
    Verdict verdict = Verdict::Neutral;
    std::vector<RadiusComparison> support;  // one entry per radius, in input order

    std::vector<double> significant_radii(int direction, double alpha = 0.05) const;
};

inline constexpr double kSignificance = 0.05;
inline constexpr int kMinSignificantRadii = 2;

// Beneficial when at least two radii differ at p < alpha with a positive
// mean difference, Detrimental when at least two do so negatively. If both
// hold, the direction with more significant radii wins; a tie is Neutral.
Classification classify(std::span<const RadiusSamples> by_radius, double alpha = kSignificance);

struct DifferencePoint {
    double radius = 0.0;
    double difference = 0.0;
};

std::vector<DifferencePoint> difference_series(std::span<const RadiusSamples> by_radius);

}  // namespace designworld
