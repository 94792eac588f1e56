#include "sq/wick.hpp"

#include <stdexcept>

#include "sq/hermite.hpp"

namespace sq {

WickPowers wick_powers(const Field& psi, int p, double sigma2) {
    if (p < 0 || p > kHermiteMaxDegree)
        throw std::invalid_argument("wick_powers: order must lie in [0, 12]");
    WickPowers out;
    out.sigma2 = sigma2;
    out.powers.reserve(p + 1);
    out.powers.emplace_back(psi.grid, 1.0);
    if (p >= 1) out.powers.push_back(psi);
    for (int k = 2; k <= p; ++k) {
        Field h(psi.grid);
        const Field& h1 = out.powers[k - 1];
        const Field& h2 = out.powers[k - 2];
        const double c = (k - 1) * sigma2;
        for (long i = 0; i < psi.size(); ++i) h[i] = psi[i] * h1[i] - c * h2[i];
        out.powers.push_back(std::move(h));
    }
    return out;
}

namespace {

double nonlocal_moment(const WickPowers& pw) {
    const Field& h2 = pw[2];
    double acc = 0.0;
    for (double v : h2.values) acc += v;
    return acc / static_cast<double>(h2.grid.sites());
}

}  // namespace

Field wick_drift(const Field& u, const NonlinearitySpec& nl, double sigma2) {
    WickPowers pw = wick_powers(u, nl.max_power(), sigma2);
    Field out(u.grid, 0.0);
    for (size_t j = 0; j < nl.coeffs.size(); ++j) {
        const double a = nl.coeffs[j];
        if (a == 0.0) continue;
        const Field& h = pw[static_cast<int>(j)];
        for (long i = 0; i < out.size(); ++i) out[i] += a * h[i];
    }
    if (nl.nonlocal && !nl.nonlocal->trivial()) {
        const double r = poly_eval(nl.nonlocal->rcoeffs, nonlocal_moment(pw));
        const Field& ue = pw[nl.nonlocal->ell];
        for (long i = 0; i < out.size(); ++i) out[i] += r * ue[i];
    }
    return out;
}

Field shifted_drift(const Field& v, const WickPowers& psi_powers, const NonlinearitySpec& nl) {
    if (v.grid != psi_powers[0].grid) throw std::invalid_argument("shifted_drift: grid mismatch");
    const long N = v.size();

    // v^j tables up to the largest power needed
    const int pmax = nl.max_power();
    if (psi_powers.max_order() < pmax)
        throw std::invalid_argument("shifted_drift: insufficient psi powers");
    std::vector<Field> vpow;
    vpow.reserve(pmax + 1);
    vpow.emplace_back(v.grid, 1.0);
    for (int j = 1; j <= pmax; ++j) {
        Field f(v.grid);
        const Field& prev = vpow[j - 1];
        for (long i = 0; i < N; ++i) f[i] = prev[i] * v[i];
        vpow.push_back(std::move(f));
    }

    auto add_power = [&](Field& acc, int k, double a) {
        std::vector<double> binom = binomial_row(k);
        for (int j = 0; j <= k; ++j) {
            const double c = a * binom[j];
            const Field& vp = vpow[j];
            const Field& hp = psi_powers[k - j];
            for (long i = 0; i < N; ++i) acc[i] += c * vp[i] * hp[i];
        }
    };

    Field out(v.grid, 0.0);
    for (size_t j = 0; j < nl.coeffs.size(); ++j)
        if (nl.coeffs[j] != 0.0) add_power(out, static_cast<int>(j), nl.coeffs[j]);

    if (nl.nonlocal && !nl.nonlocal->trivial()) {
        Field h2(v.grid, 0.0);
        add_power(h2, 2, 1.0);
        double m = 0.0;
        for (double x : h2.values) m += x;
        m /= static_cast<double>(N);
        const double r = poly_eval(nl.nonlocal->rcoeffs, m);
        Field ue(v.grid, 0.0);
        add_power(ue, nl.nonlocal->ell, 1.0);
        for (long i = 0; i < N; ++i) out[i] += r * ue[i];
    }
    return out;
}

}  // namespace sq
