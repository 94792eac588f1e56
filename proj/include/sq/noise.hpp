#pragma once

#include <cstdint>

#include "sq/field.hpp"
#include "sq/grid.hpp"

namespace sq {

// Spatial covariance family (1 - Laplacian)^beta for the driving noise,
// beta = 0 being space-time white.  In Fourier, multiplication by
// (1 + 4 pi^2 |k|^2)^beta.
struct NoiseSpec {
    double beta = 0.0;

    void validate() const;
};

double covariance_multiplier(const NoiseSpec& ns, const std::array<int, 2>& k, int dim);

// regularity offset rho = 2 - d - 2*beta of the associated free field scale
double rho_of(const NoiseSpec& ns, int dim);

// Stationary variance of mode k under the linear flow with unit mass:
// multiplier / (1 + 4 pi^2 |k|^2).
double mode_variance(const NoiseSpec& ns, const std::array<int, 2>& k, int dim);

// Renormalisation constant: sum of mode_variance over every representable
// grid frequency.  Equals the exact site variance of sample_gff draws.
struct RenormConstant {
    double value = 0.0;
    TorusGrid grid;
    double beta = 0.0;
};

RenormConstant sigma2_renorm(const TorusGrid& g, const NoiseSpec& ns);

// Draws the centred Gaussian field whose spectral modes are independent
// with variance mode_variance(k).  This is the stationary law of the
// linear dynamic and the reference measure for the diagnostics.
// The counter distinguishes successive samples under one seed; mode noise
// is keyed by frequency, so refining n keeps shared modes coupled.
Field sample_gff(const TorusGrid& g, const NoiseSpec& ns, uint64_t seed, uint64_t counter = 0);

// Hermitian Gaussian spectral field with prescribed per-mode total variance.
// Shared by the sampler and the integrator innovations.
template <typename VarFn>
void fill_hermitian_gaussian(SpectralField& out, VarFn&& variance, uint64_t seed, uint64_t tag,
                             uint64_t counter);

// <Cov phi, psi> under the covariance multiplier, spectral evaluation.
double covariance_pairing(const NoiseSpec& ns, const SpectralField& phi, const SpectralField& psi);

// Per unit time quadratic variation pairing of the simulated dynamic.  The
// integrator's innovations are normalised so that the mode_variance field is
// exactly stationary, which makes the realised quadratic variation of
// <u_t, phi> equal to 2 <Cov phi, phi> per unit time.  Stationarity
// diagnostics must use this pairing.
double quadratic_variation_pairing(const NoiseSpec& ns, const SpectralField& phi,
                                   const SpectralField& psi);

// true when rho > max{-d/p, 2*alpha}, the regularity margin needed by the
// remainder expansion at polynomial degree p and target exponent alpha
bool covariance_bound_ok(const NoiseSpec& ns, int dim, int p, double alpha);

}  // namespace sq

#include "sq/noise_impl.hpp"
