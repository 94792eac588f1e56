#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "sq/fft.hpp"
#include "sq/noise.hpp"
#include "sq/torus_ops.hpp"

using namespace sq;

TEST_CASE("noise parameters reject positive exponents") {
    CHECK_THROWS_AS(NoiseSpec{0.1}.validate(), std::invalid_argument);
    CHECK_NOTHROW(NoiseSpec{0.0}.validate());
    CHECK_NOTHROW(NoiseSpec{-1.0}.validate());
}

TEST_CASE("covariance multiplier values") {
    CHECK(covariance_multiplier(NoiseSpec{0.0}, {5, -3}, 2) == 1.0);
    CHECK(covariance_multiplier(NoiseSpec{-1.0}, {1, 0}, 1) ==
          doctest::Approx(0.02470452303185764).epsilon(1e-12));
    CHECK(covariance_multiplier(NoiseSpec{-0.5}, {1, 1}, 2) ==
          doctest::Approx(0.11183357340112049).epsilon(1e-12));
}

TEST_CASE("regularity offset of the covariance family") {
    CHECK(rho_of(NoiseSpec{0.0}, 1) == doctest::Approx(1.0));
    CHECK(rho_of(NoiseSpec{0.0}, 2) == doctest::Approx(0.0));
    CHECK(rho_of(NoiseSpec{-0.5}, 2) == doctest::Approx(1.0));
    CHECK(rho_of(NoiseSpec{-0.75}, 1) == doctest::Approx(2.5));
}

TEST_CASE("stationary mode variances") {
    CHECK(mode_variance(NoiseSpec{0.0}, {0, 0}, 1) == doctest::Approx(1.0));
    CHECK(mode_variance(NoiseSpec{0.0}, {1, 0}, 1) ==
          doctest::Approx(0.02470452303185764).epsilon(1e-12));
    CHECK(mode_variance(NoiseSpec{-1.0}, {1, 0}, 1) ==
          doctest::Approx(0.0006103134582315846).epsilon(1e-12));
}

TEST_CASE("renormalisation constant matches the independent mode sums") {
    const NoiseSpec ns{};
    CHECK(sigma2_renorm(TorusGrid(1, 8), ns).value ==
          doctest::Approx(1.0691882933856713).epsilon(1e-12));
    CHECK(sigma2_renorm(TorusGrid(1, 512), ns).value ==
          doctest::Approx(1.081778813454755).epsilon(1e-9));
    CHECK(sigma2_renorm(TorusGrid(2, 32), ns).value ==
          doctest::Approx(1.520389406243726).epsilon(1e-10));
    CHECK(sigma2_renorm(TorusGrid(2, 64), ns).value ==
          doctest::Approx(1.6307659045093434).epsilon(1e-10));
    CHECK(sigma2_renorm(TorusGrid(2, 128), ns).value ==
          doctest::Approx(1.7410983907797761).epsilon(1e-10));

    // one-dimensional sums approach (1/2) coth(1/2)
    CHECK(std::abs(sigma2_renorm(TorusGrid(1, 512), ns).value - 0.5 / std::tanh(0.5)) < 1e-3);

    const RenormConstant rc = sigma2_renorm(TorusGrid(2, 32), NoiseSpec{-0.25});
    CHECK(rc.grid == TorusGrid(2, 32));
    CHECK(rc.beta == -0.25);
    CHECK(rc.value < sigma2_renorm(TorusGrid(2, 32), ns).value);
}

TEST_CASE("two-dimensional renormalisation grows logarithmically") {
    const NoiseSpec ns{};
    const double s32 = sigma2_renorm(TorusGrid(2, 32), ns).value;
    const double s128 = sigma2_renorm(TorusGrid(2, 128), ns).value;
    const double slope = (s128 - s32) / (std::log(128.0) - std::log(32.0));
    CHECK(std::abs(slope - 1.0 / (2.0 * M_PI)) < 0.1 / (2.0 * M_PI));
}

TEST_CASE("hermitian gaussian fill obeys the conjugate symmetry") {
    const TorusGrid g(2, 8);
    SpectralField s(g);
    fill_hermitian_gaussian(
        s, [](const std::array<int, 2>&) { return 1.0; }, 9, 77, 0);
    for_each_mode(g, [&](long idx, const std::array<int, 2>& k) {
        const auto neg = [&](int a) { return a == -g.n / 2 ? a : -a; };
        const long j = static_cast<long>(g.slot(neg(k[0]))) * g.n + g.slot(neg(k[1]));
        CHECK(s[idx] == std::conj(s[j]));
    });
    // self-conjugate modes are real
    CHECK(s[0].imag() == 0.0);
    CHECK(s[static_cast<long>(g.slot(-4)) * g.n + g.slot(-4)].imag() == 0.0);

    SpectralField z(g);
    fill_hermitian_gaussian(
        z, [](const std::array<int, 2>& k) { return k[0] == 0 && k[1] == 0 ? 1.0 : 0.0; }, 9, 77, 0);
    for (long i = 1; i < z.size(); ++i) CHECK(z[i] == std::complex<double>(0.0, 0.0));
}

TEST_CASE("gff draws are deterministic in seed and counter") {
    const TorusGrid g(1, 16);
    const NoiseSpec ns{};
    const Field a = sample_gff(g, ns, 42, 7);
    const Field b = sample_gff(g, ns, 42, 7);
    const Field c = sample_gff(g, ns, 42, 8);
    double same = 0.0, diff = 0.0;
    for (long i = 0; i < a.size(); ++i) {
        same = std::max(same, std::abs(a[i] - b[i]));
        diff = std::max(diff, std::abs(a[i] - c[i]));
    }
    CHECK(same == 0.0);
    CHECK(diff > 1e-3);
}

TEST_CASE("gff modes keep their noise across refinement") {
    const NoiseSpec ns{};
    const uint64_t seed = 1234;
    const SpectralField h8 = to_spectral(sample_gff(TorusGrid(1, 8), ns, seed, 3));
    const SpectralField h16 = to_spectral(sample_gff(TorusGrid(1, 16), ns, seed, 3));
    for (int k = -3; k <= 3; ++k) {
        const std::complex<double> a = h8[TorusGrid(1, 8).slot(k)];
        const std::complex<double> b = h16[TorusGrid(1, 16).slot(k)];
        CHECK(std::abs(a - b) <= 1e-14);
    }

    const TorusGrid g8(2, 8), g16(2, 16);
    const SpectralField d8 = to_spectral(sample_gff(g8, ns, seed, 0));
    const SpectralField d16 = to_spectral(sample_gff(g16, ns, seed, 0));
    for (int kx = -3; kx <= 3; ++kx)
        for (int ky = -3; ky <= 3; ++ky) {
            const std::complex<double> a = d8[static_cast<long>(g8.slot(kx)) * 8 + g8.slot(ky)];
            const std::complex<double> b = d16[static_cast<long>(g16.slot(kx)) * 16 + g16.slot(ky)];
            CHECK(std::abs(a - b) <= 1e-13);
        }
}

TEST_CASE("gff spectral law matches mode_variance") {
    const TorusGrid g(1, 16);
    const NoiseSpec ns{};
    const int draws = 4000;
    std::vector<double> acc(static_cast<size_t>(g.sites()), 0.0);
    for (int d = 0; d < draws; ++d) {
        const SpectralField h = to_spectral(sample_gff(g, ns, 77, static_cast<uint64_t>(d)));
        for (long i = 0; i < h.size(); ++i) acc[static_cast<size_t>(i)] += std::norm(h[i]);
    }
    for_each_mode(g, [&](long idx, const std::array<int, 2>& k) {
        const double got = acc[static_cast<size_t>(idx)] / draws;
        const double want = mode_variance(ns, k, 1);
        CHECK(std::abs(got - want) <= 0.1 * want);
    });
}

TEST_CASE("quadratic variation pairing is twice the covariance pairing") {
    const TorusGrid g(1, 32);
    const NoiseSpec white{};
    const NoiseSpec rough{-1.0};
    const Field c2 = field_from_function(
        g, [](double x, double) { return std::cos(4.0 * M_PI * x); });
    const SpectralField h = to_spectral(c2);
    CHECK(covariance_pairing(white, h, h) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(quadratic_variation_pairing(white, h, h) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(covariance_pairing(rough, h, h) ==
          doctest::Approx(0.0031463624160628523).epsilon(1e-12));
    for (const NoiseSpec& ns : {white, rough})
        CHECK(quadratic_variation_pairing(ns, h, h) ==
              doctest::Approx(2.0 * covariance_pairing(ns, h, h)).epsilon(1e-12));
    CHECK_THROWS_AS(covariance_pairing(white, h, SpectralField(TorusGrid(1, 16))),
                    std::invalid_argument);
}

TEST_CASE("covariance bound verdicts") {
    CHECK(covariance_bound_ok(NoiseSpec{0.0}, 2, 3, -0.4));
    CHECK_FALSE(covariance_bound_ok(NoiseSpec{0.0}, 2, 3, 0.1));
    CHECK_FALSE(covariance_bound_ok(NoiseSpec{0.0}, 2, 3, 0.0));
    CHECK(covariance_bound_ok(NoiseSpec{-0.3}, 2, 5, 0.2));
    CHECK(covariance_bound_ok(NoiseSpec{0.0}, 1, 7, 0.45));
    CHECK_FALSE(covariance_bound_ok(NoiseSpec{-0.3}, 2, 5, 0.31));
}
