#pragma once

#include <cmath>

#include "sq/rng.hpp"

namespace sq {

namespace detail {

inline bool self_conjugate(const std::array<int, 2>& k, int dim, int n) {
    for (int a = 0; a < dim; ++a)
        if (k[a] != 0 && k[a] != -n / 2) return false;
    return true;
}

// negation of k on the periodic frequency box
inline std::array<int, 2> negate_mode(const std::array<int, 2>& k, int dim, int n) {
    std::array<int, 2> m{0, 0};
    for (int a = 0; a < dim; ++a) m[a] = (k[a] == -n / 2) ? -n / 2 : -k[a];
    return m;
}

inline bool lex_ge(const std::array<int, 2>& a, const std::array<int, 2>& b) {
    if (a[0] != b[0]) return a[0] > b[0];
    return a[1] >= b[1];
}

}  // namespace detail

template <typename VarFn>
void fill_hermitian_gaussian(SpectralField& out, VarFn&& variance, uint64_t seed, uint64_t tag,
                             uint64_t counter) {
    const TorusGrid& g = out.grid;
    const int n = g.n;
    for_each_mode(g, [&](long idx, const std::array<int, 2>& k) {
        const double var = variance(k);
        if (var <= 0.0) {
            out[idx] = 0.0;
            return;
        }
        if (detail::self_conjugate(k, g.dim, n)) {
            rng::GaussPair gp = rng::gauss_pair(seed, tag, counter, rng::mode_key(k[0], k[1]));
            out[idx] = gp.a * std::sqrt(var);
            return;
        }
        const std::array<int, 2> neg = detail::negate_mode(k, g.dim, n);
        const bool is_rep = detail::lex_ge(k, neg);
        const std::array<int, 2>& rep = is_rep ? k : neg;
        rng::GaussPair gp = rng::gauss_pair(seed, tag, counter, rng::mode_key(rep[0], rep[1]));
        const double s = std::sqrt(var / 2.0);
        out[idx] = is_rep ? std::complex<double>(gp.a * s, gp.b * s)
                          : std::complex<double>(gp.a * s, -gp.b * s);
    });
}

}  // namespace sq
