#include "sq/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "sq/fft.hpp"
#include "sq/hermite.hpp"

namespace sq {

namespace {

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

std::vector<StationarityRecord> stationarity_residuals(const ChainTable& chain, size_t phi_index,
                                                       int k_max) {
    if (phi_index >= chain.n_phis()) throw std::invalid_argument("stationarity: bad phi index");
    if (k_max < 1) throw std::invalid_argument("stationarity: k_max must be >= 1");
    const ObservablePaths& p = chain.path(phi_index);
    const TestFunction& phi = chain.phis()[phi_index];
    const double qv = phi.noise_pairing;
    const long n = static_cast<long>(p.x.size());
    std::vector<StationarityRecord> out;
    std::vector<double> lhs_s(static_cast<size_t>(n)), rhs_s(static_cast<size_t>(n)),
        diff_s(static_cast<size_t>(n));
    for (int k = 1; k <= k_max; ++k) {
        for (long i = 0; i < n; ++i) {
            const size_t s = static_cast<size_t>(i);
            const double l = ipow(p.x[s], k - 1) * (-p.y[s] - p.z[s]);
            const double r = (k == 1) ? 0.0 : 0.5 * (k - 1) * ipow(p.x[s], k - 2) * qv;
            lhs_s[s] = l;
            rhs_s[s] = r;
            diff_s[s] = l - r;
        }
        const BatchMeans bl = batch_means(lhs_s);
        const BatchMeans br = batch_means(rhs_s);
        const BatchMeans bd = batch_means(diff_s);
        StationarityRecord rec;
        rec.k = k;
        rec.lhs = bl.mean;
        rec.rhs = br.mean;
        rec.residual = bd.mean;
        rec.stderr_ = bd.se;
        rec.z = bd.z();
        rec.n_samples = n;
        out.push_back(rec);
    }
    return out;
}

std::vector<ChaosStatistic> nongauss_statistics(const ChainTable& chain, size_t phi_index,
                                                int k_max) {
    if (phi_index >= chain.n_phis()) throw std::invalid_argument("nongauss: bad phi index");
    if (k_max < 2) throw std::invalid_argument("nongauss: k_max must be >= 2");
    const ObservablePaths& p = chain.path(phi_index);
    const long n = static_cast<long>(p.x.size());
    const double xbar = mean_of(p.x);
    const double s2 = variance_of(p.x);
    std::vector<ChaosStatistic> out;
    std::vector<double> series(static_cast<size_t>(n));
    for (int k = 2; k <= k_max; ++k) {
        ChaosStatistic cs;
        cs.k = k;
        cs.sigma2_hat = s2;
        if (!(s2 > 0.0)) {
            cs.degenerate = true;
            out.push_back(cs);
            continue;
        }
        for (long i = 0; i < n; ++i) {
            const size_t s = static_cast<size_t>(i);
            series[s] = hermite_eval(k, s2, p.x[s] - xbar) * p.y[s];
        }
        const BatchMeans bm = batch_means(series);
        cs.estimate = bm.mean;
        cs.stderr_ = bm.se;
        cs.z = bm.z();
        out.push_back(cs);
    }
    return out;
}

CovarianceOperator analytic_covariance(const TorusGrid& g, const NoiseSpec& ns) {
    CovarianceOperator c;
    c.grid = g;
    c.multiplier.assign(static_cast<size_t>(g.sites()), 0.0);
    for_each_mode(g, [&](long idx, const std::array<int, 2>& k) {
        c.multiplier[static_cast<size_t>(idx)] = mode_variance(ns, k, g.dim);
    });
    return c;
}

CovarianceOperator scaled_identity_covariance(const TorusGrid& g, double scale) {
    CovarianceOperator c;
    c.grid = g;
    c.multiplier.assign(static_cast<size_t>(g.sites()), scale);
    return c;
}

CovarianceOperator empirical_covariance(const ChainTable& chain, int mode_cut) {
    const TorusGrid& g = chain.grid();
    if (mode_cut < 0 || mode_cut > g.n / 2 - 1)
        throw std::invalid_argument("empirical covariance: mode_cut out of range");
    CovarianceOperator c;
    c.grid = g;
    c.empirical = true;
    c.mode_cut = mode_cut;
    c.multiplier.assign(static_cast<size_t>(g.sites()), 0.0);
    c.stderr_.assign(static_cast<size_t>(g.sites()), 0.0);
    for_each_mode(g, [&](long idx, const std::array<int, 2>& k) {
        bool keep = true;
        for (int a = 0; a < g.dim; ++a)
            if (std::abs(k[a]) > mode_cut) keep = false;
        if (!keep) return;
        const Jackknife jk = chain.mode_second_moment(idx);
        c.multiplier[static_cast<size_t>(idx)] = jk.value;
        c.stderr_[static_cast<size_t>(idx)] = jk.se;
    });
    return c;
}

Field apply(const CovarianceOperator& c, const Field& phi) {
    if (phi.grid != c.grid) throw std::invalid_argument("covariance apply: grid mismatch");
    SpectralField h = to_spectral(phi);
    for (long i = 0; i < h.size(); ++i) h[i] *= c.multiplier[static_cast<size_t>(i)];
    return from_spectral(h);
}

double top_chaos_functional(const CovarianceOperator& c, const TestFunction& phi, int p,
                            double theta) {
    if (p < 1 || p % 2 == 0) throw std::invalid_argument("top chaos: degree must be odd");
    if (theta == 0.0) return 0.0;
    const Field cphi = apply(c, phi.values);
    double s = 0.0;
    for (long i = 0; i < cphi.size(); ++i) s += ipow(cphi[i], p) * phi.values[i];
    return theta * s / static_cast<double>(cphi.size());
}

double generator_value(const Field& u0, const Field& wick_p, const std::vector<int>& degrees,
                       const std::vector<TestFunction>& phis, const NoiseSpec& ns) {
    if (degrees.size() != phis.size())
        throw std::invalid_argument("generator: one degree per test function required");
    const size_t m = phis.size();
    const SpectralField u_hat = to_spectral(u0);
    std::vector<double> x(m), drift(m);
    for (size_t i = 0; i < m; ++i) {
        if (phis[i].values.grid != u0.grid)
            throw std::invalid_argument("generator: phi grid mismatch");
        x[i] = pairing(u0, phis[i].values);
        const SpectralField lphi = laplacian_minus_one(phis[i].hat);
        double z = 0.0;
        for (long s = 0; s < u_hat.size(); ++s)
            z += u_hat[s].real() * lphi[s].real() + u_hat[s].imag() * lphi[s].imag();
        drift[i] = z + pairing(wick_p, phis[i].values);
    }
    auto partial = [&](size_t i) {
        if (degrees[i] == 0) return 0.0;
        double v = static_cast<double>(degrees[i]) * ipow(x[i], degrees[i] - 1);
        for (size_t j = 0; j < m; ++j)
            if (j != i) v *= ipow(x[j], degrees[j]);
        return v;
    };
    auto second = [&](size_t i, size_t j) {
        if (i == j) {
            if (degrees[i] < 2) return 0.0;
            double v = static_cast<double>(degrees[i]) * (degrees[i] - 1) *
                       ipow(x[i], degrees[i] - 2);
            for (size_t l = 0; l < m; ++l)
                if (l != i) v *= ipow(x[l], degrees[l]);
            return v;
        }
        if (degrees[i] == 0 || degrees[j] == 0) return 0.0;
        double v = static_cast<double>(degrees[i]) * degrees[j] * ipow(x[i], degrees[i] - 1) *
                   ipow(x[j], degrees[j] - 1);
        for (size_t l = 0; l < m; ++l)
            if (l != i && l != j) v *= ipow(x[l], degrees[l]);
        return v;
    };
    double total = 0.0;
    for (size_t i = 0; i < m; ++i) total += partial(i) * drift[i];
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            total += 0.5 * second(i, j) * covariance_pairing(ns, phis[i].hat, phis[j].hat);
    return total;
}

GaussianityReport gaussianity_report(const ChainTable& chain, const NonlinearitySpec& nl,
                                     int k_max) {
    GaussianityReport rep;
    rep.degree = nl.degree();
    rep.k_max = k_max > 0 ? k_max : std::max(rep.degree + 1, 2);
    const int cut = std::min(2, chain.grid().n / 2 - 1);
    const CovarianceOperator cemp = empirical_covariance(chain, cut);
    for (size_t i = 0; i < chain.n_phis(); ++i) {
        PhiDiagnostics pd;
        pd.label = chain.phis()[i].label;
        pd.stationarity = stationarity_residuals(chain, i, rep.k_max);
        pd.chaos = nongauss_statistics(chain, i, rep.k_max);
        const int p = rep.degree;
        if (p >= 1 && p % 2 == 1) {
            pd.top_chaos = top_chaos_functional(cemp, chain.phis()[i], p, nl.leading());
            if (p >= 2 && p <= rep.k_max && pd.top_chaos != 0.0)
                pd.top_ratio = pd.chaos[static_cast<size_t>(p - 2)].estimate /
                               (factorial(p) * pd.top_chaos);
        }
        for (const ChaosStatistic& cs : pd.chaos)
            rep.max_abs_chaos_z = std::max(rep.max_abs_chaos_z, std::abs(cs.z));
        rep.per_phi.push_back(std::move(pd));
    }
    rep.gaussian_consistent = rep.max_abs_chaos_z < 3.0;
    return rep;
}

MomentCompareReport moment_compare(const ChainTable& a, const ChainTable& b, int k_max) {
    if (k_max < 1) throw std::invalid_argument("moment compare: k_max must be >= 1");
    MomentCompareReport rep;
    for (size_t i = 0; i < a.n_phis(); ++i) {
        const std::string& label = a.phis()[i].label;
        size_t j = b.n_phis();
        for (size_t c = 0; c < b.n_phis(); ++c)
            if (b.phis()[c].label == label) j = c;
        if (j == b.n_phis())
            throw std::invalid_argument("moment compare: no matching test function " + label);
        std::vector<double> pa(a.path(i).x.size()), pb(b.path(j).x.size());
        for (int k = 1; k <= k_max; ++k) {
            for (size_t s = 0; s < pa.size(); ++s) pa[s] = ipow(a.path(i).x[s], k);
            for (size_t s = 0; s < pb.size(); ++s) pb[s] = ipow(b.path(j).x[s], k);
            const BatchMeans ma = batch_means(pa);
            const BatchMeans mb = batch_means(pb);
            MomentGap gap;
            gap.label = label;
            gap.k = k;
            gap.mean_a = ma.mean;
            gap.se_a = ma.se;
            gap.mean_b = mb.mean;
            gap.se_b = mb.se;
            gap.z = two_sample_z(ma, mb);
            rep.max_abs_z = std::max(rep.max_abs_z, std::abs(gap.z));
            rep.gaps.push_back(std::move(gap));
        }
    }
    rep.pass = rep.max_abs_z <= 3.0;
    return rep;
}

}  // namespace sq
