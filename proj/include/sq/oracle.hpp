#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sq/field.hpp"
#include "sq/nonlinearity.hpp"
#include "sq/stepper.hpp"

namespace sq {

// Lattice Gibbs density on the one-dimensional torus,
//   S(u) = (1/n) sum_x [ (u_{x+1}-u_x)^2/(2 h^2) + mass u_x^2/2 - W(u_x) ],
// h = 1/n, with W the antiderivative of the plain drift polynomial
// (W(0) = 0).  log_density = -S is the unnormalised invariant log-measure
// of the lattice Langevin dynamic with drift (Lap_fd - mass) u + P(u),
// using forward differences for the gradient term.
struct GibbsAction {
    TorusGrid grid;
    NonlinearitySpec nl;
    double mass = 1.0;

    void validate() const;
};

double log_density(const Field& u, const GibbsAction& a);
Field log_density_grad(const Field& u, const GibbsAction& a);

struct MalaConfig {
    long samples = 10000;  // recorded after burn-in
    int thin = 10;         // proposals per recorded sample
    long burn = 5000;      // adaptation proposals, discarded
    double step = 0.5;     // initial proposal step, adapted during burn-in
    uint64_t seed = 1;
    double target_low = 0.4;  // acceptance window targeted by the adaptation
    double target_high = 0.8;

    void validate() const;
};

struct MalaTuningError : std::runtime_error {
    double acceptance;
    double step;
    MalaTuningError(double acc, double s);
};

struct MalaResult {
    double acceptance = 0.0;  // post burn-in
    double step_used = 0.0;
    long proposals = 0;
    long accepted = 0;
};

// Metropolis-adjusted Langevin chain targeting exp(log_density), with the
// fixed circulant preconditioner M = n (mass - Lap_fd)^{-1} (the Gaussian
// covariance of the action), so proposals read
//   u' = u + step * M grad + sqrt(2 step) M^{1/2} xi.
// The step is adapted only during burn-in; the recording phase has a frozen
// kernel and exact detailed balance.  Deterministic given the seed.
// Observers receive (sample index, u, u_hat, plain drift P(u)).
MalaResult mala_chain(const GibbsAction& a, const MalaConfig& cfg,
                      const std::vector<ChainObserver*>& observers);

// symbol of the forward-difference Laplacian at frequency k
double lambda_fd(int k, int n);

}  // namespace sq
