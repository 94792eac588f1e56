#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sq {

// Raised when a series is too short to yield a defensible error bar.  The
// command layer maps this onto the statistical-refusal exit status.
struct StatisticalRefusal : std::runtime_error {
    explicit StatisticalRefusal(const std::string& what) : std::runtime_error(what) {}
};

// Batch-means estimate for an autocorrelated series: the series is split
// into contiguous batches and the standard error comes from the scatter of
// the batch means, which absorbs autocorrelation at the batch scale.
struct BatchMeans {
    double mean = 0.0;
    double se = 0.0;
    int batches = 0;
    long per_batch = 0;
    long used = 0;

    double z(double reference = 0.0) const;
};

// Splits into `target` batches where possible; refuses below `minimum`.
BatchMeans batch_means(const std::vector<double>& x, int target = 32, int minimum = 16);

// z statistic of the gap between two independent batch-means estimates
double two_sample_z(const BatchMeans& a, const BatchMeans& b);

// Delete-one-block jackknife for a mean accumulated as per-block partial
// sums with (possibly uneven) per-block counts.
struct Jackknife {
    double value = 0.0;
    double se = 0.0;
};

Jackknife jackknife_mean(const std::vector<double>& block_sums,
                         const std::vector<long>& block_counts);

double mean_of(const std::vector<double>& x);
double variance_of(const std::vector<double>& x);  // unbiased

}  // namespace sq
