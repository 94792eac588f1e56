// End-to-end acceptance gate.  Each criterion prints one PASS/FAIL line
// with the numbers that decided it; the process exits nonzero if any fail.
// Tolerances are fixed here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "../support.hpp"
#include "sq/chain.hpp"
#include "sq/diagnostics.hpp"
#include "sq/hermite.hpp"
#include "sq/noise.hpp"
#include "sq/oracle.hpp"
#include "sq/regimes.hpp"
#include "sq/stepper.hpp"
#include "sq/torus_ops.hpp"
#include "sq/wick.hpp"

using namespace sq;

namespace {

int failures = 0;

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int id, bool pass, const std::string& detail, double secs) {
    if (!pass) ++failures;
    std::printf("%s criterion %d: %s  [%.1f s]\n", pass ? "PASS" : "FAIL", id, detail.c_str(),
                secs);
    std::fflush(stdout);
}

ChainTable run_table(const TorusGrid& g, const NoiseSpec& ns, const NonlinearitySpec& nl,
                     const TrajectoryConfig& traj, long expected) {
    ChainTable table(g, ns, default_test_functions(g, ns), expected);
    const Field u0 = sample_gff(g, ns, traj.seed, 0);
    solve_chain(u0, nl, ns, traj, {&table});
    return table;
}

double max_stationarity_z(const ChainTable& table, int k_max) {
    double worst = 0.0;
    for (size_t i = 0; i < table.n_phis(); ++i)
        for (const StationarityRecord& r : stationarity_residuals(table, i, k_max))
            worst = std::max(worst, std::abs(r.z));
    return worst;
}

// ---- 1: Wick algebra identities ----------------------------------------

void criterion_algebra() {
    Timer tm;
    const double tol = 1e-8;
    double worst = 0.0;

    for (double sigma2 : {0.0, 0.7, 1.3}) {
        for (int n = 0; n <= kHermiteMaxDegree; ++n) {
            const HermitePoly hp = hermite_coeffs(n, sigma2);
            for (double x : {-1.6, -0.7, -0.2, 0.0, 0.5, 1.1, 1.6}) {
                const double ev = hermite_eval(n, sigma2, x);
                worst = std::max(worst, std::abs(ev - poly_eval(hp.coeffs, x)));
                worst = std::max(worst,
                                 std::abs(hermite_eval(n, sigma2, -x) -
                                          (n % 2 == 0 ? ev : -ev)));  // parity
                if (sigma2 == 0.0) worst = std::max(worst, std::abs(ev - std::pow(x, n)));
                for (double y : {-1.1, 0.3, 0.9})
                    worst = std::max(worst, std::abs(hermite_shift_eval(n, sigma2, x, y) -
                                                     hermite_eval(n, sigma2, x + y)));
            }
        }
    }

    // orthogonality under the matching Gaussian, by quadrature
    const testsup::GaussHermite gh(60);
    for (double sigma2 : {0.5, 1.3}) {
        for (int m = 0; m <= 8; ++m)
            for (int n = m; n <= 8; ++n) {
                const double got = gh.expect(sigma2, [&](double x) {
                    return hermite_eval(m, sigma2, x) * hermite_eval(n, sigma2, x);
                });
                double want = 0.0;
                if (m == n) {
                    want = 1.0;
                    for (int j = 1; j <= n; ++j) want *= j * sigma2;
                }
                worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
            }
    }

    // the same binomial identity at field level, nonlocal term included
    const double sigma2 = 1.3;
    std::vector<NonlinearitySpec> nls = {
        NonlinearitySpec{{0.0, 0.0, 0.0, -1.0}, true, std::nullopt},
        NonlinearitySpec{{0.0, 0.5, -1.0}, true, NonlocalSpec{1, {0.0, -1.0}}},
    };
    for (int dim : {1, 2}) {
        const TorusGrid g(dim, dim == 1 ? 32 : 16);
        const NoiseSpec ns{};
        const Field v = sample_gff(g, ns, 91, 0);
        const Field psi = sample_gff(g, ns, 92, 0);
        Field u(g);
        for (long i = 0; i < u.size(); ++i) u[i] = v[i] + psi[i];
        for (const NonlinearitySpec& nl : nls) {
            const Field direct = wick_drift(u, nl, sigma2);
            const Field split =
                shifted_drift(v, wick_powers(psi, nl.max_power(), sigma2), nl);
            for (long i = 0; i < u.size(); ++i)
                worst = std::max(worst, std::abs(direct[i] - split[i]));
        }
    }

    report(1, worst <= tol,
           fmt("hermite recursion/shift/parity/orthogonality and field-level binomial "
               "identity, max residual %.3g (tol %.0e)",
               worst, tol),
           tm.seconds());
}

// ---- 2: renormalisation constant ---------------------------------------

void criterion_renorm() {
    Timer tm;
    const NoiseSpec ns{};
    const double s1 = sigma2_renorm(TorusGrid(1, 512), ns).value;
    const double coth = 0.5 * std::cosh(0.5) / std::sinh(0.5);
    const double gap1 = std::abs(s1 - coth);

    const double s256 = sigma2_renorm(TorusGrid(2, 256), ns).value;
    const double s512 = sigma2_renorm(TorusGrid(2, 512), ns).value;
    const double slope = (s512 - s256) / std::log(2.0);
    const double want = 1.0 / (2.0 * M_PI);
    const double slope_err = std::abs(slope - want) / want;

    const bool pass = gap1 <= 1e-3 && slope_err <= 0.10;
    report(2, pass,
           fmt("d=1 n=512 sigma2=%.6f vs (1/2)coth(1/2)=%.6f (gap %.2e, tol 1e-3); "
               "d=2 slope (sigma2_512-sigma2_256)/log2 = %.6f vs 1/(2pi)=%.6f (err %.1f%%, "
               "tol 10%%)",
               s1, coth, gap1, slope, want, 100.0 * slope_err),
           tm.seconds());
}

// ---- 3: linear drift is Gaussian ---------------------------------------

void criterion_gaussian_control() {
    Timer tm;
    const TorusGrid g(1, 64);
    const NoiseSpec ns{};
    const NonlinearitySpec nl{{0.0, -0.5}, false, std::nullopt};
    TrajectoryConfig traj;
    traj.dt = 0.002;
    traj.t_end = 10005.0;
    traj.burn_in = 5.0;
    traj.stride = 0.1;
    traj.seed = 1;
    traj.scheme = Scheme::Direct;
    ChainTable table = run_table(g, ns, nl, traj, 100001);

    const double stat_z = max_stationarity_z(table, 4);
    const GaussianityReport rep = gaussianity_report(table, nl, 5);
    const bool pass =
        table.samples() == 100001 && stat_z <= 3.0 && rep.gaussian_consistent;
    report(3, pass,
           fmt("P = -x/2, %ld records: stationarity k<=4 max |z| = %.2f (tol 3); chaos "
               "k=2..5 max |z| = %.2f (tol 3, %s)",
               table.samples(), stat_z, rep.max_abs_chaos_z,
               rep.gaussian_consistent ? "gaussian-consistent" : "NOT consistent"),
           tm.seconds());
}

// ---- 4: quartic d=1 vs MALA oracle -------------------------------------

void criterion_oracle_match() {
    Timer tm;
    const TorusGrid g(1, 64);
    const NoiseSpec ns{};
    const NonlinearitySpec nl{{0.0, 0.0, 0.0, -1.0}, false, std::nullopt};
    TrajectoryConfig traj;
    traj.dt = 0.001;
    traj.t_end = 2005.0;
    traj.burn_in = 5.0;
    traj.stride = 0.05;
    traj.seed = 7;
    traj.scheme = Scheme::Direct;
    ChainTable dyn = run_table(g, ns, nl, traj, 40001);

    GibbsAction action{g, nl, 1.0};
    MalaConfig mc;
    mc.samples = 100000;
    mc.thin = 10;
    mc.burn = 50000;
    mc.step = 0.4;
    mc.seed = 11;
    ChainTable oracle(g, ns, default_test_functions(g, ns), mc.samples);
    const MalaResult mr = mala_chain(action, mc, {&oracle});

    const MomentCompareReport cmp = moment_compare(dyn, oracle, 4);
    double moment_z = 0.0;
    for (const MomentGap& gap : cmp.gaps)
        if (gap.k % 2 == 0) moment_z = std::max(moment_z, std::abs(gap.z));
    const double stat_z = max_stationarity_z(dyn, 4);

    const bool pass = moment_z <= 3.0 && stat_z <= 3.0;
    report(4, pass,
           fmt("quartic d=1 n=64: E<u,phi>^{2,4} dynamic vs MALA (acc %.2f) max |z| = "
               "%.2f (tol 3); stationarity k<=4 max |z| = %.2f (tol 3)",
               mr.acceptance, moment_z, stat_z),
           tm.seconds());
}

// ---- 5: Wick quartic in d=2 is non-Gaussian ----------------------------

void criterion_wick_2d() {
    Timer tm;
    const TorusGrid g(2, 64);
    const NoiseSpec ns{};
    const NonlinearitySpec nl{{0.0, 0.0, 0.0, -1.0}, true, std::nullopt};
    TrajectoryConfig traj;
    traj.dt = 0.002;
    traj.t_end = 2005.0;
    traj.burn_in = 5.0;
    traj.stride = 0.1;
    traj.seed = 3;
    traj.scheme = Scheme::Split;
    ChainTable table = run_table(g, ns, nl, traj, 20001);

    const double stat_z = max_stationarity_z(table, 3);
    const GaussianityReport rep = gaussianity_report(table, nl, 3);
    double chaos_z = 0.0, ratio = 0.0;
    for (const PhiDiagnostics& pd : rep.per_phi) {
        if (pd.label != "const") continue;
        for (const ChaosStatistic& c : pd.chaos)
            if (c.k == 3) chaos_z = c.z;
        ratio = pd.top_ratio;
    }
    const bool pass = stat_z <= 3.0 && std::abs(chaos_z) >= 5.0 && ratio > 0.0;
    report(5, pass,
           fmt("Wick quartic d=2 n=64, %ld records: stationarity k<=3 max |z| = %.2f "
               "(tol 3); chaos k=3 at const z = %.1f (need |z|>=5), sign ratio vs "
               "top-chaos functional %.3f (need > 0)",
               table.samples(), stat_z, chaos_z, ratio),
           tm.seconds());
}

// ---- 6: the counterterm is what keeps norms bounded --------------------

void criterion_renorm_necessity() {
    Timer tm;
    const NoiseSpec ns{};
    const NonlinearitySpec nl{{0.0, 0.0, 0.0, -1.0}, true, std::nullopt};
    const double alpha = -0.1;
    std::vector<double> bare, renorm;
    for (int n : {32, 64, 128}) {
        const TorusGrid g(2, n);
        for (int variant = 0; variant < 2; ++variant) {
            TrajectoryConfig traj;
            traj.dt = 0.002;
            traj.t_end = 6.0;
            traj.burn_in = 2.0;
            traj.stride = 0.05;
            traj.seed = 11;
            traj.scheme = Scheme::Split;
            if (variant == 1) traj.sigma2_override = 0.0;
            BesovRecorder rec(alpha);
            const Field u0 = sample_gff(g, ns, traj.seed, 0);
            solve_chain(u0, nl, ns, traj, {&rec});
            (variant == 0 ? renorm : bare).push_back(mean_of(rec.norms()));
        }
    }
    const bool monotone = bare[0] < bare[1] && bare[1] < bare[2];
    double lo = renorm[0], hi = renorm[0];
    for (double v : renorm) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double ratio = hi / lo;
    const bool pass = monotone && ratio < 2.0;
    report(6, pass,
           fmt("besov norm alpha=-0.1, n=32/64/128: bare (sigma2 := 0) %.3f -> %.3f -> "
               "%.3f (%s); renormalised %.3f..%.3f, max/min = %.2f (tol < 2)",
               bare[0], bare[1], bare[2], monotone ? "monotone" : "NOT monotone", lo, hi,
               ratio),
           tm.seconds());
}

// ---- 7: split and direct schemes agree pathwise ------------------------

void criterion_scheme_agreement() {
    Timer tm;
    const TorusGrid g(2, 64);
    const NoiseSpec ns{};
    const NonlinearitySpec nl{{0.0, 0.0, 0.0, -1.0}, true, std::nullopt};
    TrajectoryConfig traj;
    traj.dt = 1e-4;
    traj.t_end = 1.0;
    traj.burn_in = 0.0;
    traj.stride = 0.1;
    traj.seed = 13;
    const Field u0 = sample_gff(g, ns, traj.seed, 0);
    const CrosscheckResult r = crosscheck_schemes(u0, nl, ns, traj);
    const bool pass = r.max_rel_gap <= 1e-3;
    report(7, pass,
           fmt("remainder+free-field vs direct stepping, same noise, d=2 n=64 dt=1e-4 to "
               "t=1: max relative L2 gap %.3g (tol 1e-3)",
               r.max_rel_gap),
           tm.seconds());
}

// ---- 8: the quartic example's exact thresholds -------------------------

void criterion_regime_exact() {
    Timer tm;
    const RegimeReport sing = regime_report(3, 3, beta_from_rho(3, Rational(-1, 2)));
    const RegimeReport feas = regime_report(3, 3, beta_from_rho(3, Rational(-4, 5)));
    const bool singular_at = sing.singular == Singularity::Yes &&
                             sing.singular_bound == Rational(-1, 2) &&
                             sing.delta_effective == Rational(5, 2);
    const bool feasible_at = !feas.remainder_feasible &&
                             feas.feasibility_bound == Rational(-4, 5) &&
                             feas.delta_effective == Rational(14, 5);
    const bool window = Rational(4, 1 - 2 * 3) < Rational(-1, 3 - 1);
    const bool pass = singular_at && feasible_at && window;
    report(8, pass,
           fmt("p=3 d=3: singularity threshold delta = %s (want 5/2), remainder "
               "threshold delta = %s (want 14/5), window bound 4/(1-2p) < -1/(p-1): %s",
               rational_text(sing.delta_effective).c_str(),
               rational_text(feas.delta_effective).c_str(), window ? "yes" : "no"),
           tm.seconds());
}

// ---- 9: nonlocal cubic d=2 runs and looks stationary -------------------

void criterion_nonlocal() {
    Timer tm;
    const TorusGrid g(2, 64);
    const NoiseSpec ns{};
    const NonlinearitySpec nl{{0.0, 0.0, -1.0}, true, NonlocalSpec{1, {0.0, -1.0}}};
    TrajectoryConfig traj;
    traj.dt = 0.002;
    traj.t_end = 20.0;
    traj.burn_in = 10.0;
    traj.stride = 0.05;
    traj.seed = 5;
    traj.scheme = Scheme::Split;
    bool blew_up = false;
    double stat_z = 0.0;
    long records = 0;
    double sup = 0.0;
    try {
        ChainTable table(g, ns, default_test_functions(g, ns), 201);
        const Field u0 = sample_gff(g, ns, traj.seed, 0);
        const SolveResult res = solve_chain(u0, nl, ns, traj, {&table});
        records = table.samples();
        sup = max_abs(res.final_field);
        stat_z = max_stationarity_z(table, 1);
    } catch (const BlowUpError&) {
        blew_up = true;
    }
    const bool pass = !blew_up && records == 201 && stat_z <= 3.0;
    report(9, pass,
           fmt("nonlocal Wick cubic d=2 n=64 to t=20: %s, %ld records, final sup-norm "
               "%.2f; stationarity k=1 max |z| = %.2f (tol 3)",
               blew_up ? "BLEW UP" : "no blow-up", records, sup, stat_z),
           tm.seconds());
}

}  // namespace

int main() {
    Timer total;
    criterion_algebra();
    criterion_renorm();
    criterion_gaussian_control();
    criterion_oracle_match();
    criterion_wick_2d();
    criterion_renorm_necessity();
    criterion_scheme_agreement();
    criterion_regime_exact();
    criterion_nonlocal();
    std::printf("%d/9 criteria passed  [total %.0f s]\n", 9 - failures, total.seconds());
    return failures == 0 ? 0 : 1;
}
