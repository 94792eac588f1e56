#include "sq/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "sq/fft.hpp"

namespace sq {

void NoiseSpec::validate() const {
    if (beta > 0.0) throw std::invalid_argument("NoiseSpec: beta must be <= 0");
}

double covariance_multiplier(const NoiseSpec& ns, const std::array<int, 2>& k, int dim) {
    if (ns.beta == 0.0) return 1.0;
    return std::pow(1.0 + lambda_of(k, dim), ns.beta);
}

double rho_of(const NoiseSpec& ns, int dim) { return 2.0 - dim - 2.0 * ns.beta; }

double mode_variance(const NoiseSpec& ns, const std::array<int, 2>& k, int dim) {
    return covariance_multiplier(ns, k, dim) / (1.0 + lambda_of(k, dim));
}

RenormConstant sigma2_renorm(const TorusGrid& g, const NoiseSpec& ns) {
    ns.validate();
    double total = 0.0;
    for_each_mode(g, [&](long, const std::array<int, 2>& k) { total += mode_variance(ns, k, g.dim); });
    return RenormConstant{total, g, ns.beta};
}

Field sample_gff(const TorusGrid& g, const NoiseSpec& ns, uint64_t seed, uint64_t counter) {
    ns.validate();
    SpectralField s(g);
    fill_hermitian_gaussian(
        s, [&](const std::array<int, 2>& k) { return mode_variance(ns, k, g.dim); }, seed,
        rng::TAG_GFF, counter);
    return from_spectral(s);
}

double covariance_pairing(const NoiseSpec& ns, const SpectralField& phi, const SpectralField& psi) {
    if (phi.grid != psi.grid) throw std::invalid_argument("covariance_pairing: grid mismatch");
    double acc = 0.0;
    for_each_mode(phi.grid, [&](long idx, const std::array<int, 2>& k) {
        acc += covariance_multiplier(ns, k, phi.grid.dim) *
               (phi[idx] * std::conj(psi[idx])).real();
    });
    return acc;
}

double quadratic_variation_pairing(const NoiseSpec& ns, const SpectralField& phi,
                                   const SpectralField& psi) {
    return 2.0 * covariance_pairing(ns, phi, psi);
}

bool covariance_bound_ok(const NoiseSpec& ns, int dim, int p, double alpha) {
    double rho = rho_of(ns, dim);
    double bound = std::max(-static_cast<double>(dim) / p, 2.0 * alpha);
    return rho > bound;
}

}  // namespace sq
