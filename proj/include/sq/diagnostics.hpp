#pragma once

#include <string>
#include <vector>

#include "sq/chain.hpp"
#include "sq/nonlinearity.hpp"

namespace sq {

// One degree of the polynomial stationarity suite.  At stationarity
//   E[X^{k-1}(-Y-Z)] = ((k-1)/2) E[X^{k-2}] qv(phi,phi),
// with X = <u,phi>, Y = <drift,phi>, Z = <u,(Lap-1)phi> and qv the realised
// quadratic variation pairing; the right side is zero when k = 1.  The
// residual is estimated from the per-sample difference series so the error
// bar respects the correlation between the two sides.
struct StationarityRecord {
    int k = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double stderr_ = 0.0;
    double z = 0.0;
    long n_samples = 0;
};

std::vector<StationarityRecord> stationarity_residuals(const ChainTable& chain, size_t phi_index,
                                                       int k_max);

// Hermite-moment statistic E[Q_k(X - mean X) Y] with Q_k the monic Hermite
// polynomial at the sample variance of X.  Zero for every k >= 2 when the
// stationary law is Gaussian; the k = degree(P) statistic picks up the top
// chaos of the drift otherwise.
struct ChaosStatistic {
    int k = 0;
    double estimate = 0.0;
    double stderr_ = 0.0;
    double z = 0.0;
    double sigma2_hat = 0.0;
    bool degenerate = false;  // sample variance vanished; statistic forced to 0
};

std::vector<ChaosStatistic> nongauss_statistics(const ChainTable& chain, size_t phi_index,
                                                int k_max);

// Covariance of the stationary field as a spectral multiplier table, either
// analytic (the linear-dynamic covariance) or estimated from a chain via
// the translation-invariant form C(k) = E|u_hat(k)|^2.
struct CovarianceOperator {
    TorusGrid grid;
    std::vector<double> multiplier;
    std::vector<double> stderr_;  // empty when analytic
    bool empirical = false;
    int mode_cut = -1;  // estimated modes satisfy |k|_inf <= mode_cut; rest are zero
};

CovarianceOperator analytic_covariance(const TorusGrid& g, const NoiseSpec& ns);
CovarianceOperator scaled_identity_covariance(const TorusGrid& g, double scale);
CovarianceOperator empirical_covariance(const ChainTable& chain, int mode_cut);

Field apply(const CovarianceOperator& c, const Field& phi);

// theta * <(C phi)^p, phi>: the odd-degree pairing whose sign settles the
// Gaussianity question for the top chaos.
double top_chaos_functional(const CovarianceOperator& c, const TestFunction& phi, int p,
                            double theta);

// Generator applied to the monomial F(x_1..x_m) = prod_i x_i^{deg_i} of the
// pairings X_i = <u0, phi_i>:
//   L F = sum_i dF/dx_i (Z_i + Y_i) + (1/2) sum_ij d2F/dx_i dx_j <Cov phi_i, phi_j>
// in the unit-noise convention (plain covariance pairing in the second-order
// term; the realised dynamics carry twice that diffusion, see
// quadratic_variation_pairing).
double generator_value(const Field& u0, const Field& wick_p, const std::vector<int>& degrees,
                       const std::vector<TestFunction>& phis, const NoiseSpec& ns);

struct PhiDiagnostics {
    std::string label;
    std::vector<StationarityRecord> stationarity;
    std::vector<ChaosStatistic> chaos;
    double top_chaos = 0.0;  // empirical-covariance functional at k = degree(P)
    double top_ratio = 0.0;  // chaos estimate at k = degree over degree! * top_chaos
};

struct GaussianityReport {
    int degree = 0;
    int k_max = 0;
    bool gaussian_consistent = false;  // all chaos |z| < 3 across phis and k
    double max_abs_chaos_z = 0.0;
    std::vector<PhiDiagnostics> per_phi;
};

// k_max = 0 selects degree(P) + 1 (and at least 2).
GaussianityReport gaussianity_report(const ChainTable& chain, const NonlinearitySpec& nl,
                                     int k_max = 0);

// Two-chain comparison of the moments E<u,phi>^k, matched by label.
struct MomentGap {
    std::string label;
    int k = 0;
    double mean_a = 0.0, se_a = 0.0;
    double mean_b = 0.0, se_b = 0.0;
    double z = 0.0;
};

struct MomentCompareReport {
    bool pass = false;  // all |z| <= 3
    double max_abs_z = 0.0;
    std::vector<MomentGap> gaps;
};

MomentCompareReport moment_compare(const ChainTable& a, const ChainTable& b, int k_max);

}  // namespace sq
