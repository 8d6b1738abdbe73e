#include "designworld/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace designworld {

double ks_statistic(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("KS test needs two non-empty samples");
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double n = static_cast<double>(x.size());
    const double m = static_cast<double>(y.size());

    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    return d;
}

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    // The alternating series converges slowly for small lambda; there the
    // Jacobi theta form of the same distribution function is used instead.
    if (lambda < 1.18) {
        const double pi2 = std::numbers::pi * std::numbers::pi;
        const double t = -pi2 / (8.0 * lambda * lambda);
        double cdf = 0.0;
        for (int k = 1; k <= 64; ++k) {
            const double term = std::exp(static_cast<double>((2 * k - 1) * (2 * k - 1)) * t);
            cdf += term;
            if (term < 1e-16) break;
        }
        cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-8) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_asymptotic_p(double d, std::size_t n, std::size_t m) {
    const double nn = static_cast<double>(n);
    const double mm = static_cast<double>(m);
    return kolmogorov_q(d * std::sqrt(nn * mm / (nn + mm)));
}

double ks_exact_p(double d, std::size_t n, std::size_t m) {
    if (n == 0 || m == 0) throw std::invalid_argument("sample sizes must be positive");
    if (d <= 0.0) return 1.0;
    // w[i][j]: fraction of monotone paths to (i, j) that stay strictly inside
    // |i/n - j/m| < d. Normalising by C(i+j, i) keeps every entry in [0, 1].
    const double nm = static_cast<double>(n) * static_cast<double>(m);
    const double bound = d * nm - 1e-7;
    auto inside = [&](std::size_t i, std::size_t j) {
        const double gap = std::abs(static_cast<double>(i) * static_cast<double>(m) -
                                    static_cast<double>(j) * static_cast<double>(n));
        return gap < bound;
    };
    std::vector<double> row(m + 1, 0.0);
    row[0] = 1.0;
    for (std::size_t j = 1; j <= m; ++j) row[j] = inside(0, j) ? row[j - 1] : 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        row[0] = inside(i, 0) ? row[0] : 0.0;
        for (std::size_t j = 1; j <= m; ++j) {
            if (!inside(i, j)) {
                row[j] = 0.0;
                continue;
            }
            const double s = static_cast<double>(i + j);
            row[j] = (static_cast<double>(i) / s) * row[j] + (static_cast<double>(j) / s) * row[j - 1];
        }
    }
    return std::clamp(1.0 - row[m], 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b, KsMethod method) {
    KsResult r;
    r.d_statistic = ks_statistic(a, b);
    r.n = a.size();
    r.m = b.size();
    r.p_value = method == KsMethod::Exact ? ks_exact_p(r.d_statistic, r.n, r.m)
                                          : ks_asymptotic_p(r.d_statistic, r.n, r.m);
    return r;
}

double ks_critical_d(double alpha, std::size_t n, std::size_t m) {
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ks_asymptotic_p(mid, n, m) < alpha ? hi : lo) = mid;
    }
    return hi;
}

double mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean of empty sample");
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double median(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("median of empty sample");
    std::vector<double> v(xs.begin(), xs.end());
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Beneficial: return "beneficial";
        case Verdict::Detrimental: return "detrimental";
        case Verdict::Neutral: return "neutral";
    }
    return "?";
}

std::vector<double> Classification::significant_radii(int direction, double alpha) const {
    std::vector<double> out;
    for (const auto& c : support) {
        if (c.significant(alpha) && c.direction == direction) out.push_back(c.radius);
    }
    return out;
}

namespace {

void check_samples(std::span<const RadiusSamples> by_radius) {
    if (by_radius.empty()) throw std::invalid_argument("no radii to compare");
    const std::size_t n = by_radius.front().first.size();
    for (std::size_t i = 0; i < by_radius.size(); ++i) {
        const auto& r = by_radius[i];
        if (r.first.empty() || r.first.size() != n || r.second.size() != n) {
            throw std::invalid_argument("every radius needs two samples of the same size");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (by_radius[j].radius == r.radius) throw std::invalid_argument("duplicate radius in comparison");
        }
    }
}

}  // namespace

Classification classify(std::span<const RadiusSamples> by_radius, double alpha) {
    check_samples(by_radius);
    Classification out;
    for (const auto& r : by_radius) {
        RadiusComparison c;
        c.radius = r.radius;
        c.ks = ks_two_sample(r.first, r.second);
        c.mean_difference = mean(r.first) - mean(r.second);
        c.direction = (c.mean_difference > 0.0) - (c.mean_difference < 0.0);
        out.support.push_back(c);
    }
    const auto up = out.significant_radii(+1, alpha).size();
    const auto down = out.significant_radii(-1, alpha).size();
    const auto need = static_cast<std::size_t>(kMinSignificantRadii);
    if (up >= need && up > down) {
        out.verdict = Verdict::Beneficial;
    } else if (down >= need && down > up) {
        out.verdict = Verdict::Detrimental;
    }
    return out;
}

std::vector<DifferencePoint> difference_series(std::span<const RadiusSamples> by_radius) {
    check_samples(by_radius);
    std::vector<DifferencePoint> out;
    for (const auto& r : by_radius) out.push_back({r.radius, mean(r.first) - mean(r.second)});
    return out;
}

}  // namespace designworld
