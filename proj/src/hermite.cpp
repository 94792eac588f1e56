#include "sq/hermite.hpp"

#include <stdexcept>

namespace sq {

namespace {
void check_args(int n, double sigma2) {
    if (n < 0 || n > kHermiteMaxDegree)
        throw std::invalid_argument("hermite: degree must lie in [0, 12]");
    if (sigma2 < 0.0) throw std::invalid_argument("hermite: sigma2 must be >= 0");
}
}  // namespace

HermitePoly hermite_coeffs(int n, double sigma2) {
    check_args(n, sigma2);
    std::vector<double> cur = {1.0};
    for (int m = 1; m <= n; ++m) {
        std::vector<double> next(m + 1, 0.0);
        // x * H_{m-1}
        for (int j = 0; j < m; ++j) next[j + 1] += cur[j];
        // - sigma2 * H_{m-1}'
        for (int j = 1; j < m; ++j) next[j - 1] -= sigma2 * j * cur[j];
        cur = std::move(next);
    }
    return HermitePoly{n, sigma2, std::move(cur)};
}

double hermite_eval(int n, double sigma2, double x) {
    check_args(n, sigma2);
    if (n == 0) return 1.0;
    double hm2 = 1.0;
    double hm1 = x;
    for (int m = 2; m <= n; ++m) {
        double h = x * hm1 - (m - 1) * sigma2 * hm2;
        hm2 = hm1;
        hm1 = h;
    }
    return hm1;
}

std::vector<double> binomial_row(int n) {
    std::vector<double> row(n + 1, 1.0);
    for (int j = 1; j <= n; ++j) row[j] = row[j - 1] * (n - j + 1) / j;
    return row;
}

double hermite_shift_eval(int n, double sigma2, double x, double y) {
    check_args(n, sigma2);
    std::vector<double> binom = binomial_row(n);
    double acc = 0.0;
    double xp = 1.0;
    for (int j = 0; j <= n; ++j) {
        acc += binom[j] * xp * hermite_eval(n - j, sigma2, y);
        xp *= x;
    }
    return acc;
}

double poly_eval(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace sq
