#pragma once

#include <vector>

namespace sq {

// Monic Hermite family H_n for a centred Gaussian of variance sigma2,
// generated by H_0 = 1, H_n = x H_{n-1} - sigma2 * d/dx H_{n-1}.
// Since d/dx H_n = n H_{n-1}, evaluation uses the three-term recurrence
//   H_n(x) = x H_{n-1}(x) - (n-1) sigma2 H_{n-2}(x).
// At sigma2 = 0 the family degenerates to plain powers x^n.  Under
// X ~ N(0, sigma2) these are orthogonal with E[H_n(X)^2] = n! sigma2^n.
//
// Degrees above kHermiteMaxDegree are rejected; coefficient growth makes
// doubles unreliable past that point and nothing downstream needs more.
constexpr int kHermiteMaxDegree = 12;

struct HermitePoly {
    int degree = 0;
    double sigma2 = 0.0;
    std::vector<double> coeffs;  // ascending, coeffs[degree] == 1
};

// Coefficient vector of H_n, ascending powers.  Coefficients of x^j with
// n - j odd vanish identically.
HermitePoly hermite_coeffs(int n, double sigma2);

// H_n(x) by the three-term recurrence, no coefficient construction.
double hermite_eval(int n, double sigma2, double x);

// Evaluates the two-variable expansion sum_j binom(n,j) x^j H_{n-j}(y),
// which equals H_n(x + y) for every x, y.
double hermite_shift_eval(int n, double sigma2, double x, double y);

// binom(n, 0..n) as doubles (exact for n <= 12)
std::vector<double> binomial_row(int n);

// Evaluates an arbitrary polynomial given by ascending coefficients.
double poly_eval(const std::vector<double>& coeffs, double x);

}  // namespace sq
