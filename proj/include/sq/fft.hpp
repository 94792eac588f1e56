#pragma once

#include "sq/field.hpp"

namespace sq {

// Forward transform with 1/n^d normalisation, so hat(0) is the spatial mean
// and Parseval reads (1/n^d) sum_x f(x)^2 = sum_k |hat(k)|^2.
SpectralField to_spectral(const Field& f);

// Inverse of to_spectral.  Requires Hermitian input up to roundoff; the
// residual imaginary part is checked and dropped.
Field from_spectral(const SpectralField& s);

// In-place complex FFT along a flat buffer, internal building block.
// Scratch (twiddles) is cached per thread and must not be shared.
void fft_inplace(std::complex<double>* data, int n, bool inverse);

}  // namespace sq
