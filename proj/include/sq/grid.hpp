#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sq {

// Uniform periodic grid on the unit torus [-1/2, 1/2)^dim with n sites per
// direction.  Sites are x_j = -1/2 + j/n.  Only power-of-two n is supported
// so spectral transforms stay radix-2 throughout.
struct TorusGrid {
    int dim = 1;
    int n = 0;

    TorusGrid() = default;
    TorusGrid(int dim_, int n_) : dim(dim_), n(n_) { validate(); }

    void validate() const {
        if (dim != 1 && dim != 2)
            throw std::invalid_argument("TorusGrid: dim must be 1 or 2");
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("TorusGrid: n must be a power of two >= 8");
    }

    long sites() const {
        long s = 1;
        for (int a = 0; a < dim; ++a) s *= n;
        return s;
    }

    double spacing() const { return 1.0 / n; }

    double coord(int j) const { return -0.5 + static_cast<double>(j) / n; }

    // integer frequency of FFT slot i, in [-n/2, n/2)
    int freq(int i) const { return i < n / 2 ? i : i - n; }

    // FFT slot of integer frequency k
    int slot(int k) const { return k >= 0 ? k : k + n; }

    bool operator==(const TorusGrid& o) const { return dim == o.dim && n == o.n; }
    bool operator!=(const TorusGrid& o) const { return !(*this == o); }

    std::string describe() const {
        return "d=" + std::to_string(dim) + " n=" + std::to_string(n);
    }
};

// |k|^2 for an integer frequency vector
inline double freq_norm2(const std::array<int, 2>& k, int dim) {
    double s = 0;
    for (int a = 0; a < dim; ++a) s += static_cast<double>(k[a]) * k[a];
    return s;
}

// eigenvalue of -Laplacian at frequency k
inline double lambda_of(const std::array<int, 2>& k, int dim) {
    constexpr double four_pi2 = 4.0 * M_PI * M_PI;
    return four_pi2 * freq_norm2(k, dim);
}

// Iterates frequency vectors of the grid in flat (row-major slot) order and
// calls f(flat_index, kvec).
template <typename F>
void for_each_mode(const TorusGrid& g, F&& f) {
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) f(static_cast<long>(i), std::array<int, 2>{g.freq(i), 0});
    } else {
        long idx = 0;
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j, ++idx)
                f(idx, std::array<int, 2>{g.freq(i), g.freq(j)});
    }
}

}  // namespace sq
