#include "sq/oracle.hpp"

#include <cmath>
#include <string>

#include "sq/fft.hpp"
#include "sq/noise.hpp"
#include "sq/rng.hpp"
#include "sq/wick.hpp"

namespace sq {

void GibbsAction::validate() const {
    grid.validate();
    nl.validate();
    if (grid.dim != 1) throw std::invalid_argument("gibbs action: one-dimensional grids only");
    if (nl.wick)
        throw std::invalid_argument("gibbs action: drift must be plain, not Wick ordered");
    if (nl.nonlocal && !nl.nonlocal->trivial())
        throw std::invalid_argument("gibbs action: nonlocal drifts have no lattice density");
    if (!(mass > 0.0)) throw std::invalid_argument("gibbs action: mass must be positive");
}

double lambda_fd(int k, int n) {
    const double s = std::sin(M_PI * k / n);
    return 4.0 * n * static_cast<double>(n) * s * s;
}

double log_density(const Field& u, const GibbsAction& a) {
    const int n = a.grid.n;
    double s = 0.0;
    for (int x = 0; x < n; ++x) {
        const double d = u[(x + 1) % n] - u[x];
        s += 0.5 * d * d * n * n;
        s += 0.5 * a.mass * u[x] * u[x];
        double w = 0.0, xp = 1.0;
        for (size_t j = 0; j < a.nl.coeffs.size(); ++j) {
            xp *= u[x];
            w += a.nl.coeffs[j] * xp / static_cast<double>(j + 1);
        }
        s -= w;
    }
    return -s / n;
}

Field log_density_grad(const Field& u, const GibbsAction& a) {
    const int n = a.grid.n;
    Field g(a.grid);
    for (int x = 0; x < n; ++x) {
        const double lap = (u[(x + 1) % n] + u[(x + n - 1) % n] - 2.0 * u[x]) *
                           static_cast<double>(n) * n;
        g[x] = (lap - a.mass * u[x] + a.nl.eval_local(u[x])) / n;
    }
    return g;
}

void MalaConfig::validate() const {
    if (samples < 1) throw std::invalid_argument("mala: need at least one sample");
    if (thin < 1) throw std::invalid_argument("mala: thin must be >= 1");
    if (burn < 0) throw std::invalid_argument("mala: burn must be >= 0");
    if (!(step > 0.0)) throw std::invalid_argument("mala: step must be positive");
    if (!(0.0 < target_low && target_low < target_high && target_high < 1.0))
        throw std::invalid_argument("mala: acceptance targets must satisfy 0 < low < high < 1");
}

MalaTuningError::MalaTuningError(double acc, double s)
    : std::runtime_error("mala: acceptance rate " + std::to_string(acc) +
                         " outside [0.05, 0.99] at step " + std::to_string(s) +
                         "; rerun with a different initial step or longer burn-in"),
      acceptance(acc),
      step(s) {}

namespace {

struct MalaState {
    Field u;
    double logp = 0.0;
    Field mgrad;  // M grad log_density(u), site space
};

}  // namespace

MalaResult mala_chain(const GibbsAction& a, const MalaConfig& cfg,
                      const std::vector<ChainObserver*>& observers) {
    a.validate();
    cfg.validate();
    const TorusGrid& g = a.grid;
    const int n = g.n;

    std::vector<double> msym(static_cast<size_t>(n), 0.0);   // eigenvalues of M
    std::vector<double> prec(static_cast<size_t>(n), 0.0);   // mass + lambda_fd
    for (int i = 0; i < n; ++i) {
        const int k = g.freq(i);
        prec[static_cast<size_t>(i)] = a.mass + lambda_fd(k, n);
        msym[static_cast<size_t>(i)] = n / prec[static_cast<size_t>(i)];
    }

    auto apply_m = [&](const Field& f) {
        SpectralField h = to_spectral(f);
        for (long i = 0; i < h.size(); ++i) h[i] *= msym[static_cast<size_t>(i)];
        return from_spectral(h);
    };
    // r^T M^{-1} r through the spectral coefficients
    auto quad_minv = [&](const Field& r) {
        SpectralField h = to_spectral(r);
        double q = 0.0;
        for (long i = 0; i < h.size(); ++i)
            q += std::norm(h[i]) * prec[static_cast<size_t>(i)];
        return q;
    };

    MalaState cur;
    cur.u = Field(g, 0.0);
    cur.logp = log_density(cur.u, a);
    cur.mgrad = apply_m(log_density_grad(cur.u, a));

    double tau = cfg.step;
    const long total = cfg.burn + cfg.samples * cfg.thin;
    long accepted_window = 0, window = 0;
    long accepted_run = 0, proposals_run = 0;
    long recorded = 0;
    SpectralField wh(g);
    MalaResult res;

    for (long s = 0; s < total; ++s) {
        fill_hermitian_gaussian(
            wh, [&](const std::array<int, 2>& k) { return msym[static_cast<size_t>(g.slot(k[0]))] / n; },
            cfg.seed, rng::TAG_MALA_STEP, static_cast<uint64_t>(s));
        const Field w = from_spectral(wh);
        const double root = std::sqrt(2.0 * tau);

        Field up(g);
        for (int x = 0; x < n; ++x) up[x] = cur.u[x] + tau * cur.mgrad[x] + root * w[x];

        const double logp_up = log_density(up, a);
        const Field mgrad_up = apply_m(log_density_grad(up, a));
        // forward residual is sqrt(2 tau) w, so its quadratic form scales from w's
        double qw = 0.0;
        for (long i = 0; i < wh.size(); ++i)
            qw += std::norm(wh[i]) * prec[static_cast<size_t>(i)];
        const double log_q_fwd = -(2.0 * tau * qw) / (4.0 * tau);
        Field rr(g);
        for (int x = 0; x < n; ++x) rr[x] = cur.u[x] - up[x] - tau * mgrad_up[x];
        const double log_q_rev = -quad_minv(rr) / (4.0 * tau);

        const double log_alpha = logp_up - cur.logp + log_q_rev - log_q_fwd;
        const double uni = rng::uniform(cfg.seed, rng::TAG_MALA_ACCEPT, static_cast<uint64_t>(s), 0);
        const bool accept = std::log(uni) < log_alpha;
        if (accept) {
            cur.u = up;
            cur.logp = logp_up;
            cur.mgrad = mgrad_up;
        }

        if (s < cfg.burn) {
            ++window;
            if (accept) ++accepted_window;
            if (window == 250) {
                const double rate = static_cast<double>(accepted_window) / window;
                if (rate < cfg.target_low) tau *= 0.7;
                if (rate > cfg.target_high) tau *= 1.4;
                tau = std::min(std::max(tau, 1e-8), 1e4);
                window = 0;
                accepted_window = 0;
            }
        } else {
            ++proposals_run;
            if (accept) ++accepted_run;
            if ((s - cfg.burn + 1) % cfg.thin == 0) {
                const SpectralField uh = to_spectral(cur.u);
                const Field drift = wick_drift(cur.u, a.nl, 0.0);
                for (ChainObserver* ob : observers)
                    ob->on_sample(static_cast<double>(recorded), cur.u, uh, drift);
                ++recorded;
            }
        }
    }

    res.acceptance = proposals_run > 0 ? static_cast<double>(accepted_run) / proposals_run : 0.0;
    res.step_used = tau;
    res.proposals = proposals_run;
    res.accepted = accepted_run;
    if (res.acceptance < 0.05 || res.acceptance > 0.99)
        throw MalaTuningError(res.acceptance, tau);
    return res;
}

}  // namespace sq
