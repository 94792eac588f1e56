#pragma once

#include <string>
#include <vector>

#include "sq/field.hpp"
#include "sq/noise.hpp"

namespace sq {

// L2 quadrature pairing (1/n^d) sum_x f(x) g(x)
double pairing(const Field& f, const Field& g);

// Holder-Besov norm estimate max_j 2^{j alpha} sup |block_j f|.  Frequency
// blocks: block 0 holds |k| <= 1, block j >= 1 holds 2^{j-1} <= |k| < 2^j,
// truncated at the grid's largest frequency.  alpha must lie in (-3, 1).
double besov_norm(const Field& f, double alpha);

int besov_block_of(double kabs);  // block index of a frequency radius

// Test function with its spectral transform and recorded normalisation.
struct TestFunction {
    std::string label;
    Field values;
    SpectralField hat;
    double noise_pairing = 0.0;  // quadratic_variation_pairing(phi, phi) after scaling
};

TestFunction make_test_function(const Field& values, const NoiseSpec& ns, const std::string& label);

// Single low modes (|k| <= 2 cosine/sine waves and the constant), scaled so
// the quadratic variation pairing of each with itself is exactly 1.
std::vector<TestFunction> default_test_functions(const TorusGrid& g, const NoiseSpec& ns);

// (Laplacian - 1) phi, spectral application
SpectralField laplacian_minus_one(const SpectralField& phi);

}  // namespace sq
