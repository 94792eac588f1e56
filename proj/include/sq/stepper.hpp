#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sq/field.hpp"
#include "sq/noise.hpp"
#include "sq/nonlinearity.hpp"
#include "sq/wick.hpp"

namespace sq {

enum class Scheme { Split, Direct };

struct TrajectoryConfig {
    double dt = 1e-3;
    double t_end = 10.0;
    double burn_in = 5.0;
    double stride = 0.1;
    uint64_t seed = 1;
    Scheme scheme = Scheme::Split;
    std::optional<double> sigma2_override;  // forces the Wick constant, tests and studies only

    void validate() const;
    long total_steps() const;
    long burn_steps() const;
    long stride_steps() const;
};

struct BlowUpError : std::runtime_error {
    double time;
    explicit BlowUpError(double t)
        : std::runtime_error("field sup-norm exceeded 1e8 at t = " + std::to_string(t)), time(t) {}
};

constexpr double kBlowUpThreshold = 1e8;

// Per-step spectral innovations.  The per-mode total variance is
// mode_variance(k) * (1 - exp(-2 (1 + lambda_k) dt)), which keeps the
// reference Gaussian field exactly stationary under the mean decay
// exp(-(1 + lambda_k) dt).  Counter-based draws keyed by (step, frequency).
class InnovationSource {
  public:
    InnovationSource(const TorusGrid& g, const NoiseSpec& ns, double dt, uint64_t seed);
    void fill(SpectralField& out, uint64_t step) const;
    const std::vector<double>& mode_std() const { return std_; }

  private:
    TorusGrid grid_;
    uint64_t seed_;
    std::vector<double> std_;  // sqrt of per-mode total innovation variance
};

// One exponential integrator step of the linear flow for each mode:
// mode <- exp(-(1 + lambda_k) dt) mode + innovation.
void ou_step(SpectralField& psi, double dt, const SpectralField& innovation);

// Exponential integrator step of the remainder flow
//   v <- exp(dt (Lap - 1)) v + (1 - exp(dt (Lap - 1))) (1 - Lap)^{-1} rhs
// with rhs the shifted drift evaluated at the current (v, psi) pair.
void remainder_step(Field& v, const WickPowers& psi_powers, const NonlinearitySpec& nl, double dt);

// Integrator for the split scheme: psi carries the linear flow with exact
// per-mode updates, v carries the remainder with explicit drift assembled
// from the renormalised powers of psi.
class SplitStepper {
  public:
    SplitStepper(const TorusGrid& g, const NonlinearitySpec& nl, double sigma2, double dt);
    void init(const SpectralField& psi0, const Field& v0);
    void step(const SpectralField& innovation, double t_now);
    Field current_u() const;
    const SpectralField& psi_hat() const { return psi_hat_; }
    const Field& v() const { return v_; }

  private:
    TorusGrid grid_;
    NonlinearitySpec nl_;
    double sigma2_;
    double dt_;
    std::vector<double> decay_, glue_;
    SpectralField psi_hat_;
    Field v_;
};

// Integrator applying the same exponential update to the full field, with
// the drift evaluated directly through the Hermite powers of u.
class DirectStepper {
  public:
    DirectStepper(const TorusGrid& g, const NonlinearitySpec& nl, double sigma2, double dt);
    void init(const SpectralField& u0);
    void step(const SpectralField& innovation, double t_now);
    Field current_u() const;
    const SpectralField& u_hat() const { return u_hat_; }

  private:
    TorusGrid grid_;
    NonlinearitySpec nl_;
    double sigma2_;
    double dt_;
    std::vector<double> decay_, glue_;
    SpectralField u_hat_;
};

// Receives each recorded state.  The drift field is the full renormalised
// drift evaluated at the recorded u.
struct ChainObserver {
    virtual ~ChainObserver() = default;
    virtual void on_sample(double t, const Field& u, const SpectralField& u_hat,
                           const Field& drift) = 0;
};

struct SolveResult {
    double sigma2 = 0.0;
    long steps = 0;
    long records = 0;
    Field final_field;
};

// Runs one chain of the configured scheme from u0, invoking the observers
// at every recording time burn_in + m * stride.  Divergence raises
// BlowUpError.  The split scheme starts from psi_0 = u_0, v_0 = 0.
SolveResult solve_chain(const Field& u0, const NonlinearitySpec& nl, const NoiseSpec& ns,
                        const TrajectoryConfig& cfg, const std::vector<ChainObserver*>& observers);

// Effective Wick constant a run uses: the grid renormalisation constant for
// Wick drifts (or the override), zero for plain drifts.
double effective_sigma2(const TorusGrid& g, const NoiseSpec& ns, const NonlinearitySpec& nl,
                        const TrajectoryConfig& cfg);

// Split/direct agreement run: integrates the same noise path twice, once
// directly from u0 and once in split form with an independently drawn
// reference field psi0 and smoothed remainder v0 = exp(dt Lap)(u0 - psi0).
// Returns the recorded relative L2 gaps between the two solutions.
struct CrosscheckResult {
    std::vector<double> times;
    std::vector<double> rel_gap;
    double max_rel_gap = 0.0;
};

CrosscheckResult crosscheck_schemes(const Field& u0, const NonlinearitySpec& nl, const NoiseSpec& ns,
                                    const TrajectoryConfig& cfg);

}  // namespace sq
