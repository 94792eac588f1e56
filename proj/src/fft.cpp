#include "sq/fft.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace sq {

namespace {

struct Plan {
    std::vector<int> bitrev;
    std::vector<std::complex<double>> tw;  // forward twiddles, stage-packed
};

const Plan& plan_for(int n) {
    thread_local std::map<int, Plan> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    Plan p;
    p.bitrev.resize(n);
    int logn = 0;
    while ((1 << logn) < n) ++logn;
    for (int i = 0; i < n; ++i) {
        int r = 0;
        for (int b = 0; b < logn; ++b)
            if (i & (1 << b)) r |= 1 << (logn - 1 - b);
        p.bitrev[i] = r;
    }
    p.tw.reserve(n);
    for (int len = 2; len <= n; len <<= 1) {
        for (int j = 0; j < len / 2; ++j) {
            double ang = -2.0 * M_PI * j / len;
            p.tw.emplace_back(std::cos(ang), std::sin(ang));
        }
    }
    return cache.emplace(n, std::move(p)).first->second;
}

}  // namespace

void fft_inplace(std::complex<double>* a, int n, bool inverse) {
    const Plan& p = plan_for(n);
    for (int i = 0; i < n; ++i) {
        int r = p.bitrev[i];
        if (i < r) std::swap(a[i], a[r]);
    }
    size_t toff = 0;
    for (int len = 2; len <= n; len <<= 1) {
        int half = len / 2;
        for (int i = 0; i < n; i += len) {
            for (int j = 0; j < half; ++j) {
                std::complex<double> w = p.tw[toff + j];
                if (inverse) w = std::conj(w);
                std::complex<double> u = a[i + j];
                std::complex<double> v = a[i + j + half] * w;
                a[i + j] = u + v;
                a[i + j + half] = u - v;
            }
        }
        toff += half;
    }
}

SpectralField to_spectral(const Field& f) {
    const TorusGrid& g = f.grid;
    SpectralField out(g);
    const int n = g.n;
    for (long i = 0; i < f.size(); ++i) out[i] = f[i];
    if (g.dim == 1) {
        fft_inplace(out.modes.data(), n, false);
    } else {
        for (int r = 0; r < n; ++r) fft_inplace(out.modes.data() + static_cast<long>(r) * n, n, false);
        std::vector<std::complex<double>> col(n);
        for (int c = 0; c < n; ++c) {
            for (int r = 0; r < n; ++r) col[r] = out[static_cast<long>(r) * n + c];
            fft_inplace(col.data(), n, false);
            for (int r = 0; r < n; ++r) out[static_cast<long>(r) * n + c] = col[r];
        }
    }
    const double norm = 1.0 / static_cast<double>(g.sites());
    for (auto& z : out.modes) z *= norm;
    return out;
}

Field from_spectral(const SpectralField& s) {
    const TorusGrid& g = s.grid;
    const int n = g.n;
    std::vector<std::complex<double>> buf(s.modes);
    if (g.dim == 1) {
        fft_inplace(buf.data(), n, true);
    } else {
        for (int r = 0; r < n; ++r) fft_inplace(buf.data() + static_cast<long>(r) * n, n, true);
        std::vector<std::complex<double>> col(n);
        for (int c = 0; c < n; ++c) {
            for (int r = 0; r < n; ++r) col[r] = buf[static_cast<long>(r) * n + c];
            fft_inplace(col.data(), n, true);
            for (int r = 0; r < n; ++r) buf[static_cast<long>(r) * n + c] = col[r];
        }
    }
    Field out(g);
    for (long i = 0; i < out.size(); ++i) out[i] = buf[static_cast<size_t>(i)].real();
    return out;
}

}  // namespace sq
