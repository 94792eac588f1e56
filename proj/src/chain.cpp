#include "sq/chain.hpp"

#include <fstream>
#include <stdexcept>

#include "sq/io.hpp"

namespace sq {

namespace {

// Parseval form of the quadrature pairing: sum_k a(k) conj(b(k)).
double spectral_dot(const SpectralField& a, const SpectralField& b) {
    double s = 0.0;
    for (long i = 0; i < a.size(); ++i)
        s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    return s;
}

}  // namespace

ChainTable::ChainTable(const TorusGrid& g, const NoiseSpec& ns, std::vector<TestFunction> phis,
                       long expected_records, int blocks)
    : grid_(g), noise_(ns), phis_(std::move(phis)), expected_(expected_records), nblocks_(blocks) {
    if (expected_ < 1) throw std::invalid_argument("chain table: expected records must be >= 1");
    if (nblocks_ < 2) throw std::invalid_argument("chain table: need at least two blocks");
    for (const TestFunction& p : phis_) {
        if (p.values.grid != grid_) throw std::invalid_argument("chain table: phi grid mismatch");
        lphi_hat_.push_back(laplacian_minus_one(p.hat));
        paths_.push_back(ObservablePaths{p.label, {}, {}, {}});
    }
    block_sum_.assign(static_cast<size_t>(nblocks_),
                      std::vector<double>(static_cast<size_t>(g.sites()), 0.0));
    block_count_.assign(static_cast<size_t>(nblocks_), 0);
}

void ChainTable::on_sample(double t, const Field& u, const SpectralField& u_hat,
                           const Field& drift) {
    times_.push_back(t);
    for (size_t i = 0; i < phis_.size(); ++i) {
        paths_[i].x.push_back(pairing(u, phis_[i].values));
        paths_[i].y.push_back(pairing(drift, phis_[i].values));
        paths_[i].z.push_back(spectral_dot(u_hat, lphi_hat_[i]));
    }
    long b = samples_ * nblocks_ / expected_;
    if (b >= nblocks_) b = nblocks_ - 1;
    std::vector<double>& sums = block_sum_[static_cast<size_t>(b)];
    for (long s = 0; s < u_hat.size(); ++s) sums[static_cast<size_t>(s)] += std::norm(u_hat[s]);
    ++block_count_[static_cast<size_t>(b)];
    ++samples_;
}

Jackknife ChainTable::mode_second_moment(long slot) const {
    std::vector<double> sums(static_cast<size_t>(nblocks_), 0.0);
    for (int b = 0; b < nblocks_; ++b)
        sums[static_cast<size_t>(b)] = block_sum_[static_cast<size_t>(b)][static_cast<size_t>(slot)];
    return jackknife_mean(sums, block_count_);
}

DenseSecondMoment::DenseSecondMoment(const TorusGrid& g)
    : grid_(g), acc_(static_cast<size_t>(g.sites()) * static_cast<size_t>(g.sites()), 0.0) {}

void DenseSecondMoment::on_sample(double, const Field& u, const SpectralField&, const Field&) {
    const long m = grid_.sites();
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j)
            acc_[static_cast<size_t>(i * m + j)] += u[i] * u[j];
    ++samples_;
}

double DenseSecondMoment::entry(long i, long j) const {
    if (samples_ == 0) return 0.0;
    return acc_[static_cast<size_t>(i * grid_.sites() + j)] / static_cast<double>(samples_);
}

void FieldRecorder::on_sample(double t, const Field& u, const SpectralField&, const Field&) {
    times_.push_back(t);
    fields_.push_back(u);
}

void BesovRecorder::on_sample(double, const Field& u, const SpectralField&, const Field&) {
    norms_.push_back(besov_norm(u, alpha_));
}

void write_chain_csv(const ChainTable& table, const std::string& dir, const std::string& prefix) {
    for (size_t i = 0; i < table.n_phis(); ++i) {
        const ObservablePaths& p = table.path(i);
        std::ofstream out(dir + "/" + prefix + "obs_" + p.label + ".csv");
        if (!out) throw std::runtime_error("cannot write chain CSV in " + dir);
        out << "t,x,y,z\n";
        for (size_t s = 0; s < p.x.size(); ++s)
            out << format_double(table.times()[s]) << ',' << format_double(p.x[s]) << ','
                << format_double(p.y[s]) << ',' << format_double(p.z[s]) << '\n';
    }
}

}  // namespace sq
