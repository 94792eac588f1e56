#include "sq/torus_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "sq/fft.hpp"

namespace sq {

double pairing(const Field& f, const Field& g) {
    if (f.grid != g.grid) throw std::invalid_argument("pairing: grid mismatch");
    double acc = 0.0;
    for (long i = 0; i < f.size(); ++i) acc += f[i] * g[i];
    return acc / static_cast<double>(f.grid.sites());
}

int besov_block_of(double kabs) {
    if (kabs <= 1.0) return 0;
    return static_cast<int>(std::floor(std::log2(kabs))) + 1;
}

double besov_norm(const Field& f, double alpha) {
    if (!(alpha > -3.0 && alpha < 1.0))
        throw std::invalid_argument("besov_norm: alpha must lie in (-3, 1)");
    const TorusGrid& g = f.grid;
    SpectralField hat = to_spectral(f);

    const double kmax = (g.n / 2.0) * std::sqrt(static_cast<double>(g.dim));
    const int jmax = besov_block_of(kmax);

    double norm = 0.0;
    SpectralField block(g);
    for (int j = 0; j <= jmax; ++j) {
        bool any = false;
        for_each_mode(g, [&](long idx, const std::array<int, 2>& k) {
            double kabs = std::sqrt(freq_norm2(k, g.dim));
            if (besov_block_of(kabs) == j) {
                block[idx] = hat[idx];
                any = true;
            } else {
                block[idx] = 0.0;
            }
        });
        if (!any) continue;
        Field piece = from_spectral(block);
        norm = std::max(norm, std::exp2(j * alpha) * max_abs(piece));
    }
    return norm;
}

SpectralField laplacian_minus_one(const SpectralField& phi) {
    SpectralField out(phi.grid);
    for_each_mode(phi.grid, [&](long idx, const std::array<int, 2>& k) {
        out[idx] = -(1.0 + lambda_of(k, phi.grid.dim)) * phi[idx];
    });
    return out;
}

TestFunction make_test_function(const Field& values, const NoiseSpec& ns, const std::string& label) {
    TestFunction tf;
    tf.label = label;
    tf.values = values;
    tf.hat = to_spectral(values);
    double qv = quadratic_variation_pairing(ns, tf.hat, tf.hat);
    if (qv <= 0.0) throw std::invalid_argument("test function has no noise content: " + label);
    const double scale = 1.0 / std::sqrt(qv);
    for (auto& v : tf.values.values) v *= scale;
    for (auto& m : tf.hat.modes) m *= scale;
    tf.noise_pairing = quadratic_variation_pairing(ns, tf.hat, tf.hat);
    return tf;
}

std::vector<TestFunction> default_test_functions(const TorusGrid& g, const NoiseSpec& ns) {
    std::vector<TestFunction> out;
    auto wave = [&](std::array<int, 2> k, bool cosine) {
        return field_from_function(g, [&](double x, double y) {
            double phase = 2.0 * M_PI * (k[0] * x + k[1] * y);
            return cosine ? std::cos(phase) : std::sin(phase);
        });
    };
    auto name = [](const char* kind, std::array<int, 2> k, int dim) {
        std::string s = std::string(kind) + std::to_string(k[0]);
        if (dim == 2) s += "_" + std::to_string(k[1]);
        return s;
    };
    out.push_back(make_test_function(Field(g, 1.0), ns, "const"));
    if (g.dim == 1) {
        out.push_back(make_test_function(wave({1, 0}, true), ns, name("cos", {1, 0}, 1)));
        out.push_back(make_test_function(wave({1, 0}, false), ns, name("sin", {1, 0}, 1)));
        out.push_back(make_test_function(wave({2, 0}, true), ns, name("cos", {2, 0}, 1)));
    } else {
        out.push_back(make_test_function(wave({1, 0}, true), ns, name("cos", {1, 0}, 2)));
        out.push_back(make_test_function(wave({0, 1}, false), ns, name("sin", {0, 1}, 2)));
        out.push_back(make_test_function(wave({1, 1}, true), ns, name("cos", {1, 1}, 2)));
    }
    return out;
}

}  // namespace sq
