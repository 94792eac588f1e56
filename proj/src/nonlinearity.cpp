#include "sq/nonlinearity.hpp"

#include <cmath>
#include <stdexcept>

#include "sq/hermite.hpp"

namespace sq {

bool NonlocalSpec::trivial() const {
    for (double c : rcoeffs)
        if (c != 0.0) return false;
    return true;
}

void NonlocalSpec::validate() const {
    if (ell < 1 || ell % 2 == 0)
        throw std::invalid_argument("nonlocal factor: ell must be a positive odd integer");
}

int NonlinearitySpec::degree() const {
    for (int j = static_cast<int>(coeffs.size()) - 1; j >= 0; --j)
        if (coeffs[j] != 0.0) return j;
    return 0;
}

double NonlinearitySpec::leading() const {
    int p = degree();
    return coeffs.empty() ? 0.0 : coeffs[p];
}

bool NonlinearitySpec::is_zero() const {
    return degree() == 0 && (coeffs.empty() || coeffs[0] == 0.0) &&
           (!nonlocal || nonlocal->trivial());
}

bool NonlinearitySpec::globally_safe() const {
    int p = degree();
    return p % 2 == 1 && leading() < 0.0;
}

int NonlinearitySpec::max_power() const {
    int m = degree();
    if (nonlocal && !nonlocal->trivial()) m = std::max({m, 2, nonlocal->ell});
    return m;
}

void NonlinearitySpec::validate() const {
    if (!coeffs.empty() && coeffs.back() == 0.0 && degree() != static_cast<int>(coeffs.size()) - 1)
        throw std::invalid_argument("nonlinearity: trailing zero coefficients, trim the list");
    if (max_power() > kHermiteMaxDegree)
        throw std::invalid_argument("nonlinearity: degree exceeds the supported cap of 12");
    if (nonlocal) nonlocal->validate();
}

double NonlinearitySpec::eval_local(double x) const { return poly_eval(coeffs, x); }

double NonlinearitySpec::eval_local_derivative(double x) const {
    double acc = 0.0;
    for (int j = static_cast<int>(coeffs.size()) - 1; j >= 1; --j) acc = acc * x + j * coeffs[j];
    return acc;
}

}  // namespace sq
