#pragma once

// Shared oracle helpers for the test binaries.  Nothing here touches the
// library under test: the quadrature and the RK4 integrator are independent
// reference implementations used to cross-check Gaussian expectations and
// the exponential-integrator stepping.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace testsup {

// Gauss-Hermite nodes and weights for the weight e^{-t^2}, found by Newton
// iteration on the orthonormal (physicists') Hermite recurrence.  Exact for
// polynomial integrands up to degree 2*points - 1.
struct GaussHermite {
    std::vector<double> nodes, weights;

    explicit GaussHermite(int points) {
        if (points < 2) throw std::invalid_argument("GaussHermite: need at least two points");
        nodes.assign(static_cast<size_t>(points), 0.0);
        weights.assign(static_cast<size_t>(points), 0.0);
        const double pim4 = 0.7511255444649425;  // pi^{-1/4}
        const int half = (points + 1) / 2;
        double z = 0.0;
        for (int i = 0; i < half; ++i) {
            if (i == 0)
                z = std::sqrt(2.0 * points + 1.0) - 1.85575 * std::pow(2.0 * points + 1.0, -1.0 / 6.0);
            else if (i == 1)
                z -= 1.14 * std::pow(points, 0.426) / z;
            else if (i == 2)
                z = 1.86 * z - 0.86 * nodes[0];
            else if (i == 3)
                z = 1.91 * z - 0.91 * nodes[1];
            else
                z = 2.0 * z - nodes[static_cast<size_t>(i - 2)];
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p1 = pim4, p2 = 0.0;
                for (int j = 1; j <= points; ++j) {
                    const double p3 = p2;
                    p2 = p1;
                    p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
                }
                pp = std::sqrt(2.0 * points) * p2;
                const double dz = p1 / pp;
                z -= dz;
                if (std::abs(dz) < 1e-15) break;
            }
            nodes[static_cast<size_t>(i)] = z;
            nodes[static_cast<size_t>(points - 1 - i)] = -z;
            weights[static_cast<size_t>(i)] = 2.0 / (pp * pp);
            weights[static_cast<size_t>(points - 1 - i)] = weights[static_cast<size_t>(i)];
        }
    }

    // E[f(X)] for X ~ N(0, sigma2)
    double expect(double sigma2, const std::function<double(double)>& f) const {
        const double scale = std::sqrt(2.0 * sigma2);
        double acc = 0.0;
        for (size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(scale * nodes[i]);
        return acc / std::sqrt(M_PI);
    }
};

// classic fixed-step RK4 for the scalar ODE u' = f(t, u)
inline double rk4(double u0, double t0, double t1, int steps,
                  const std::function<double(double, double)>& f) {
    const double h = (t1 - t0) / steps;
    double u = u0, t = t0;
    for (int s = 0; s < steps; ++s) {
        const double k1 = f(t, u);
        const double k2 = f(t + h / 2, u + h / 2 * k1);
        const double k3 = f(t + h / 2, u + h / 2 * k2);
        const double k4 = f(t + h, u + h * k3);
        u += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        t += h;
    }
    return u;
}

}  // namespace testsup
