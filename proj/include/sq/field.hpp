#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "sq/grid.hpp"

namespace sq {

// Real scalar field sampled at grid sites, flat row-major storage.
struct Field {
    TorusGrid grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(const TorusGrid& g, double fill = 0.0)
        : grid(g), values(static_cast<size_t>(g.sites()), fill) {}

    double& operator[](long i) { return values[static_cast<size_t>(i)]; }
    double operator[](long i) const { return values[static_cast<size_t>(i)]; }
    long size() const { return static_cast<long>(values.size()); }
};

// Complex spectral coefficients in FFT slot order.  For fields obtained from
// real data the coefficients satisfy hat(k) = conj(hat(-k)).
struct SpectralField {
    TorusGrid grid;
    std::vector<std::complex<double>> modes;

    SpectralField() = default;
    explicit SpectralField(const TorusGrid& g)
        : grid(g), modes(static_cast<size_t>(g.sites()), {0.0, 0.0}) {}

    std::complex<double>& operator[](long i) { return modes[static_cast<size_t>(i)]; }
    const std::complex<double>& operator[](long i) const { return modes[static_cast<size_t>(i)]; }
    long size() const { return static_cast<long>(modes.size()); }
};

inline Field field_from_function(const TorusGrid& g, const std::function<double(double, double)>& f) {
    Field out(g);
    if (g.dim == 1) {
        for (int j = 0; j < g.n; ++j) out[j] = f(g.coord(j), 0.0);
    } else {
        long idx = 0;
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j, ++idx) out[idx] = f(g.coord(i), g.coord(j));
    }
    return out;
}

inline double max_abs(const Field& f) {
    double m = 0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace sq
