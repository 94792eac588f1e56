#include "sq/stats.hpp"

#include <cmath>
#include <limits>

namespace sq {

double BatchMeans::z(double reference) const {
    if (se > 0.0) return (mean - reference) / se;
    if (mean == reference) return 0.0;
    return mean > reference ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
}

BatchMeans batch_means(const std::vector<double>& x, int target, int minimum) {
    const long n = static_cast<long>(x.size());
    long per = n / target;
    if (per < 1) per = 1;
    const int nb = static_cast<int>(n / per);
    if (nb < minimum)
        throw StatisticalRefusal("batch means: only " + std::to_string(nb) + " batches from " +
                                 std::to_string(n) + " samples, need " + std::to_string(minimum));
    BatchMeans out;
    out.batches = nb;
    out.per_batch = per;
    out.used = static_cast<long>(nb) * per;
    std::vector<double> bm(static_cast<size_t>(nb), 0.0);
    for (int b = 0; b < nb; ++b) {
        double s = 0.0;
        const long base = static_cast<long>(b) * per;
        for (long i = 0; i < per; ++i) s += x[static_cast<size_t>(base + i)];
        bm[static_cast<size_t>(b)] = s / static_cast<double>(per);
        out.mean += bm[static_cast<size_t>(b)];
    }
    out.mean /= nb;
    double ss = 0.0;
    for (double m : bm) ss += (m - out.mean) * (m - out.mean);
    out.se = std::sqrt(ss / (static_cast<double>(nb) * (nb - 1)));
    return out;
}

double two_sample_z(const BatchMeans& a, const BatchMeans& b) {
    const double s = std::sqrt(a.se * a.se + b.se * b.se);
    if (s > 0.0) return (a.mean - b.mean) / s;
    return a.mean == b.mean ? 0.0
                            : std::copysign(std::numeric_limits<double>::infinity(),
                                            a.mean - b.mean);
}

Jackknife jackknife_mean(const std::vector<double>& block_sums,
                         const std::vector<long>& block_counts) {
    if (block_sums.size() != block_counts.size())
        throw std::invalid_argument("jackknife: sums and counts differ in length");
    double total = 0.0;
    long count = 0;
    int live = 0;
    for (size_t b = 0; b < block_sums.size(); ++b) {
        if (block_counts[b] <= 0) continue;
        total += block_sums[b];
        count += block_counts[b];
        ++live;
    }
    if (live < 2 || count < 2) throw StatisticalRefusal("jackknife: fewer than two populated blocks");
    Jackknife out;
    out.value = total / static_cast<double>(count);
    std::vector<double> theta;
    theta.reserve(static_cast<size_t>(live));
    for (size_t b = 0; b < block_sums.size(); ++b) {
        if (block_counts[b] <= 0) continue;
        theta.push_back((total - block_sums[b]) /
                        static_cast<double>(count - block_counts[b]));
    }
    double tbar = 0.0;
    for (double t : theta) tbar += t;
    tbar /= static_cast<double>(theta.size());
    double ss = 0.0;
    for (double t : theta) ss += (t - tbar) * (t - tbar);
    const double nb = static_cast<double>(theta.size());
    out.se = std::sqrt((nb - 1.0) / nb * ss);
    return out;
}

double mean_of(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return x.empty() ? 0.0 : s / static_cast<double>(x.size());
}

double variance_of(const std::vector<double>& x) {
    if (x.size() < 2) return 0.0;
    const double m = mean_of(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size() - 1);
}

}  // namespace sq
