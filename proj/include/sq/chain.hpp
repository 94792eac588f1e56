#pragma once

#include <string>
#include <vector>

#include "sq/stats.hpp"
#include "sq/stepper.hpp"
#include "sq/torus_ops.hpp"

namespace sq {

// Scalar series of the three pairings entering the generator identities
// for one test function: x = <u, phi>, y = <drift, phi>, z = <u, (Lap-1)phi>.
struct ObservablePaths {
    std::string label;
    std::vector<double> x, y, z;
};

// Streaming accumulator for a recorded chain.  Keeps the scalar series per
// test function plus block-partitioned second moments of the spectral modes
// for covariance estimation; the fields themselves are not retained.
// Samples are assigned to contiguous blocks using the expected record
// count, so the jackknife blocks respect time ordering.
class ChainTable : public ChainObserver {
  public:
    ChainTable(const TorusGrid& g, const NoiseSpec& ns, std::vector<TestFunction> phis,
               long expected_records, int blocks = 64);

    void on_sample(double t, const Field& u, const SpectralField& u_hat,
                   const Field& drift) override;

    const TorusGrid& grid() const { return grid_; }
    const NoiseSpec& noise() const { return noise_; }
    const std::vector<TestFunction>& phis() const { return phis_; }
    const ObservablePaths& path(size_t i) const { return paths_[i]; }
    size_t n_phis() const { return phis_.size(); }
    long samples() const { return samples_; }
    const std::vector<double>& times() const { return times_; }
    int blocks() const { return nblocks_; }

    // jackknife estimate of E|u_hat(slot)|^2 over the blocks
    Jackknife mode_second_moment(long slot) const;

  private:
    TorusGrid grid_;
    NoiseSpec noise_;
    std::vector<TestFunction> phis_;
    std::vector<SpectralField> lphi_hat_;  // (Lap-1) phi, precomputed
    std::vector<ObservablePaths> paths_;
    std::vector<double> times_;
    long expected_;
    int nblocks_;
    std::vector<std::vector<double>> block_sum_;  // [block][slot]
    std::vector<long> block_count_;
    long samples_ = 0;
};

// Full-matrix second moment E[u(x)u(y)] for small grids; exists to test the
// translation-invariance assumption behind the spectral covariance table.
class DenseSecondMoment : public ChainObserver {
  public:
    explicit DenseSecondMoment(const TorusGrid& g);
    void on_sample(double t, const Field& u, const SpectralField& u_hat,
                   const Field& drift) override;
    double entry(long i, long j) const;
    long samples() const { return samples_; }
    const TorusGrid& grid() const { return grid_; }

  private:
    TorusGrid grid_;
    std::vector<double> acc_;
    long samples_ = 0;
};

// Keeps every recorded field; test helper for short runs.
class FieldRecorder : public ChainObserver {
  public:
    void on_sample(double t, const Field& u, const SpectralField& u_hat,
                   const Field& drift) override;
    const std::vector<Field>& fields() const { return fields_; }
    const std::vector<double>& times() const { return times_; }

  private:
    std::vector<Field> fields_;
    std::vector<double> times_;
};

// Records a Besov-norm series of the chain at a fixed exponent.
class BesovRecorder : public ChainObserver {
  public:
    explicit BesovRecorder(double alpha) : alpha_(alpha) {}
    void on_sample(double t, const Field& u, const SpectralField& u_hat,
                   const Field& drift) override;
    const std::vector<double>& norms() const { return norms_; }
    double alpha() const { return alpha_; }

  private:
    double alpha_;
    std::vector<double> norms_;
};

// One CSV per test function (t, x, y, z) under dir/prefix.
void write_chain_csv(const ChainTable& table, const std::string& dir,
                     const std::string& prefix);

}  // namespace sq
