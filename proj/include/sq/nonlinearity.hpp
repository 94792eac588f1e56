#pragma once

#include <optional>
#include <vector>

#include "sq/field.hpp"

namespace sq {

// Nonlocal drift contribution m(u) := (1/n^d) sum_x H_2(u(x)) paired back as
// R(m) * u^ell, with R a polynomial and ell odd.  R identically zero
// recovers the purely local case.
struct NonlocalSpec {
    int ell = 1;
    std::vector<double> rcoeffs;  // ascending coefficients of R

    bool trivial() const;
    void validate() const;
};

// Drift polynomial P(x) = sum_j coeffs[j] x^j, optionally Wick ordered when
// assembled against a renormalisation constant, plus an optional nonlocal
// factor.  With wick set the integrators replace each power x^j by the
// Hermite polynomial H_j at the run's renormalisation constant.
struct NonlinearitySpec {
    std::vector<double> coeffs;
    bool wick = false;
    std::optional<NonlocalSpec> nonlocal;

    int degree() const;        // 0 for the zero polynomial
    double leading() const;    // 0.0 for the zero polynomial
    bool is_zero() const;
    // odd degree with negative leading coefficient: dissipative at infinity
    bool globally_safe() const;
    // largest degree the integrators must expand, including the nonlocal part
    int max_power() const;
    void validate() const;

    double eval_local(double x) const;             // plain P(x)
    double eval_local_derivative(double x) const;  // P'(x)
};

}  // namespace sq
