#pragma once

#include "sq/field.hpp"
#include "sq/nonlinearity.hpp"

namespace sq {

// Pointwise renormalised powers of a field: powers[k](x) = H_k(psi(x)) in
// the monic Hermite family at the given variance constant.  powers[0] is
// identically one and powers[1] equals the field itself.
struct WickPowers {
    double sigma2 = 0.0;
    std::vector<Field> powers;  // index 0..p

    const Field& operator[](int k) const { return powers[static_cast<size_t>(k)]; }
    int max_order() const { return static_cast<int>(powers.size()) - 1; }
};

WickPowers wick_powers(const Field& psi, int p, double sigma2);

// Drift field sum_j a_j H_j(u) plus the nonlocal term R(mean H_2(u)) u^ell.
// With sigma2 = 0 this is the plain polynomial drift.
Field wick_drift(const Field& u, const NonlinearitySpec& nl, double sigma2);

// Drift assembled in shifted form around a remainder: the renormalised power
// of v + psi expands as sum_j binom(k,j) v^j H_{k-j}(psi), evaluated with
// precomputed powers of psi.  Agrees pointwise with wick_drift(v + psi).
Field shifted_drift(const Field& v, const WickPowers& psi_powers, const NonlinearitySpec& nl);

}  // namespace sq
