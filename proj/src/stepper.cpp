#include "sq/stepper.hpp"

#include <cmath>

#include "sq/fft.hpp"

namespace sq {

void TrajectoryConfig::validate() const {
    if (!(dt > 0.0) || dt > 0.5) throw std::invalid_argument("trajectory: dt must lie in (0, 0.5]");
    if (t_end <= burn_in) throw std::invalid_argument("trajectory: t_end must exceed burn_in");
    if (burn_in < 0.0) throw std::invalid_argument("trajectory: burn_in must be >= 0");
    if (stride < dt) throw std::invalid_argument("trajectory: stride must be >= dt");
    auto near_multiple = [&](double x) {
        double r = x / dt;
        return std::abs(r - std::round(r)) < 1e-9 * std::max(1.0, r);
    };
    if (!near_multiple(stride) || !near_multiple(burn_in) || !near_multiple(t_end))
        throw std::invalid_argument("trajectory: burn_in, stride and t_end must be multiples of dt");
}

long TrajectoryConfig::total_steps() const { return std::llround(t_end / dt); }
long TrajectoryConfig::burn_steps() const { return std::llround(burn_in / dt); }
long TrajectoryConfig::stride_steps() const { return std::llround(stride / dt); }

InnovationSource::InnovationSource(const TorusGrid& g, const NoiseSpec& ns, double dt, uint64_t seed)
    : grid_(g), seed_(seed), std_(static_cast<size_t>(g.sites()), 0.0) {
    for_each_mode(g, [&](long idx, const std::array<int, 2>& k) {
        const double a = 1.0 + lambda_of(k, g.dim);
        const double var = mode_variance(ns, k, g.dim) * (1.0 - std::exp(-2.0 * a * dt));
        std_[static_cast<size_t>(idx)] = std::sqrt(var);
    });
}

void InnovationSource::fill(SpectralField& out, uint64_t step) const {
    fill_hermitian_gaussian(
        out,
        [&](const std::array<int, 2>& k) {
            long idx = (grid_.dim == 1) ? grid_.slot(k[0])
                                        : static_cast<long>(grid_.slot(k[0])) * grid_.n + grid_.slot(k[1]);
            double s = std_[static_cast<size_t>(idx)];
            return s * s;
        },
        seed_, rng::TAG_DYN, step);
}

void ou_step(SpectralField& psi, double dt, const SpectralField& innovation) {
    for_each_mode(psi.grid, [&](long idx, const std::array<int, 2>& k) {
        const double a = 1.0 + lambda_of(k, psi.grid.dim);
        psi[idx] = std::exp(-a * dt) * psi[idx] + innovation[idx];
    });
}

namespace {

void exp_multipliers(const TorusGrid& g, double dt, std::vector<double>& decay,
                     std::vector<double>& glue) {
    decay.assign(static_cast<size_t>(g.sites()), 0.0);
    glue.assign(static_cast<size_t>(g.sites()), 0.0);
    for_each_mode(g, [&](long idx, const std::array<int, 2>& k) {
        const double a = 1.0 + lambda_of(k, g.dim);
        const double e = std::exp(-a * dt);
        decay[static_cast<size_t>(idx)] = e;
        glue[static_cast<size_t>(idx)] = (1.0 - e) / a;
    });
}

void check_blowup(const Field& f, double t) {
    if (!(max_abs(f) <= kBlowUpThreshold)) throw BlowUpError(t);
}

}  // namespace

void remainder_step(Field& v, const WickPowers& psi_powers, const NonlinearitySpec& nl, double dt) {
    const TorusGrid& g = v.grid;
    std::vector<double> decay, glue;
    exp_multipliers(g, dt, decay, glue);
    Field rhs = shifted_drift(v, psi_powers, nl);
    SpectralField vh = to_spectral(v);
    SpectralField rh = to_spectral(rhs);
    for (long i = 0; i < vh.size(); ++i)
        vh[i] = decay[static_cast<size_t>(i)] * vh[i] + glue[static_cast<size_t>(i)] * rh[i];
    v = from_spectral(vh);
}

SplitStepper::SplitStepper(const TorusGrid& g, const NonlinearitySpec& nl, double sigma2, double dt)
    : grid_(g), nl_(nl), sigma2_(sigma2), dt_(dt), psi_hat_(g), v_(g) {
    exp_multipliers(g, dt, decay_, glue_);
}

void SplitStepper::init(const SpectralField& psi0, const Field& v0) {
    psi_hat_ = psi0;
    v_ = v0;
}

void SplitStepper::step(const SpectralField& innovation, double t_now) {
    Field psi_site = from_spectral(psi_hat_);
    WickPowers pw = wick_powers(psi_site, nl_.max_power(), sigma2_);
    Field rhs = shifted_drift(v_, pw, nl_);
    check_blowup(v_, t_now);
    SpectralField vh = to_spectral(v_);
    SpectralField rh = to_spectral(rhs);
    for (long i = 0; i < vh.size(); ++i)
        vh[i] = decay_[static_cast<size_t>(i)] * vh[i] + glue_[static_cast<size_t>(i)] * rh[i];
    v_ = from_spectral(vh);
    for (long i = 0; i < psi_hat_.size(); ++i)
        psi_hat_[i] = decay_[static_cast<size_t>(i)] * psi_hat_[i] + innovation[i];
}

Field SplitStepper::current_u() const {
    Field psi_site = from_spectral(psi_hat_);
    Field u = v_;
    for (long i = 0; i < u.size(); ++i) u[i] += psi_site[i];
    return u;
}

DirectStepper::DirectStepper(const TorusGrid& g, const NonlinearitySpec& nl, double sigma2, double dt)
    : grid_(g), nl_(nl), sigma2_(sigma2), dt_(dt), u_hat_(g) {
    exp_multipliers(g, dt, decay_, glue_);
}

void DirectStepper::init(const SpectralField& u0) { u_hat_ = u0; }

void DirectStepper::step(const SpectralField& innovation, double t_now) {
    Field u_site = from_spectral(u_hat_);
    check_blowup(u_site, t_now);
    Field rhs = wick_drift(u_site, nl_, sigma2_);
    SpectralField rh = to_spectral(rhs);
    for (long i = 0; i < u_hat_.size(); ++i)
        u_hat_[i] = decay_[static_cast<size_t>(i)] * u_hat_[i] +
                    glue_[static_cast<size_t>(i)] * rh[i] + innovation[i];
}

Field DirectStepper::current_u() const { return from_spectral(u_hat_); }

double effective_sigma2(const TorusGrid& g, const NoiseSpec& ns, const NonlinearitySpec& nl,
                        const TrajectoryConfig& cfg) {
    if (!nl.wick) return 0.0;
    if (cfg.sigma2_override) return *cfg.sigma2_override;
    return sigma2_renorm(g, ns).value;
}

namespace {

template <typename Stepper>
SolveResult drive(Stepper& st, const TorusGrid& g, const NonlinearitySpec& nl, const NoiseSpec& ns,
                  const TrajectoryConfig& cfg, double sigma2,
                  const std::vector<ChainObserver*>& observers) {
    InnovationSource src(g, ns, cfg.dt, cfg.seed);
    SpectralField inno(g);
    SolveResult res;
    res.sigma2 = sigma2;
    const long total = cfg.total_steps();
    const long burn = cfg.burn_steps();
    const long stride = cfg.stride_steps();
    for (long s = 0; s < total; ++s) {
        const double t_now = s * cfg.dt;
        src.fill(inno, static_cast<uint64_t>(s));
        st.step(inno, t_now);
        const long done = s + 1;
        if (done >= burn && (done - burn) % stride == 0) {
            const double t = done * cfg.dt;
            Field u = st.current_u();
            check_blowup(u, t);
            SpectralField uh = to_spectral(u);
            Field drift = wick_drift(u, nl, sigma2);
            for (ChainObserver* ob : observers) ob->on_sample(t, u, uh, drift);
            ++res.records;
        }
    }
    res.steps = total;
    res.final_field = st.current_u();
    return res;
}

}  // namespace

SolveResult solve_chain(const Field& u0, const NonlinearitySpec& nl, const NoiseSpec& ns,
                        const TrajectoryConfig& cfg, const std::vector<ChainObserver*>& observers) {
    cfg.validate();
    nl.validate();
    ns.validate();
    const TorusGrid& g = u0.grid;
    const double sigma2 = effective_sigma2(g, ns, nl, cfg);
    if (cfg.scheme == Scheme::Split) {
        if (!nl.wick)
            throw std::invalid_argument("split scheme requires a Wick-ordered nonlinearity");
        SplitStepper st(g, nl, sigma2, cfg.dt);
        st.init(to_spectral(u0), Field(g, 0.0));
        return drive(st, g, nl, ns, cfg, sigma2, observers);
    }
    DirectStepper st(g, nl, sigma2, cfg.dt);
    st.init(to_spectral(u0));
    return drive(st, g, nl, ns, cfg, sigma2, observers);
}

CrosscheckResult crosscheck_schemes(const Field& u0, const NonlinearitySpec& nl, const NoiseSpec& ns,
                                    const TrajectoryConfig& cfg) {
    cfg.validate();
    if (!nl.wick) throw std::invalid_argument("crosscheck requires a Wick-ordered nonlinearity");
    const TorusGrid& g = u0.grid;
    const double sigma2 = effective_sigma2(g, ns, nl, cfg);

    DirectStepper direct(g, nl, sigma2, cfg.dt);
    direct.init(to_spectral(u0));

    // independent reference field, remainder smoothed by one heat step
    Field psi0 = sample_gff(g, ns, rng::splitmix(cfg.seed ^ 0x9d2c5680ULL), 0);
    Field diff(g);
    for (long i = 0; i < diff.size(); ++i) diff[i] = u0[i] - psi0[i];
    SpectralField dh = to_spectral(diff);
    for_each_mode(g, [&](long idx, const std::array<int, 2>& k) {
        dh[idx] *= std::exp(-cfg.dt * lambda_of(k, g.dim));
    });
    SplitStepper split(g, nl, sigma2, cfg.dt);
    split.init(to_spectral(psi0), from_spectral(dh));

    InnovationSource src(g, ns, cfg.dt, cfg.seed);
    SpectralField inno(g);
    CrosscheckResult out;
    const long total = cfg.total_steps();
    const long burn = cfg.burn_steps();
    const long stride = cfg.stride_steps();
    for (long s = 0; s < total; ++s) {
        const double t_now = s * cfg.dt;
        src.fill(inno, static_cast<uint64_t>(s));
        direct.step(inno, t_now);
        split.step(inno, t_now);
        const long done = s + 1;
        if (done >= burn && (done - burn) % stride == 0) {
            Field ua = direct.current_u();
            Field ub = split.current_u();
            double num = 0.0, den = 0.0;
            for (long i = 0; i < ua.size(); ++i) {
                const double d = ua[i] - ub[i];
                num += d * d;
                den += ua[i] * ua[i];
            }
            const double gap = std::sqrt(num / std::max(den, 1e-300));
            out.times.push_back(done * cfg.dt);
            out.rel_gap.push_back(gap);
            out.max_rel_gap = std::max(out.max_rel_gap, gap);
        }
    }
    return out;
}

}  // namespace sq
