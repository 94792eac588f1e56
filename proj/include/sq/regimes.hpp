#pragma once

#include <boost/rational.hpp>

#include <string>

namespace sq {

using Rational = boost::rational<long long>;

// Exact rational from "3", "-4/5" or a finite decimal like "-0.6".
Rational parse_rational(const std::string& text);
double rational_value(const Rational& r);
std::string rational_text(const Rational& r);

enum class Singularity { No, Yes, NotApplicable };  // NotApplicable: the rho = 0 log case

// Closed-form parameter-regime verdicts for drift degree p, dimension d and
// covariance exponent beta, all in exact rational arithmetic:
//   rho = 2 - d - 2 beta,
//   remainder expansion feasible  iff rho > max{4/(1-2p), -d/p},
//   exponent window (2/(1-2p), rho/2), nonempty iff rho > 4/(1-2p),
//   measure singular w.r.t. the free field (p > 1) iff rho < 0 and
//   rho <= (d-4)/(p-1); for p = 1 the criterion degenerates to d < 4
//   (still requiring rho < 0), and rho = 0 is the logarithmic case with no
//   verdict here.
struct RegimeReport {
    int p = 1;
    int d = 1;
    Rational beta{0};
    Rational rho{0};
    Rational feasibility_bound{0};  // max{4/(1-2p), -d/p}
    bool remainder_feasible = false;
    Singularity singular = Singularity::No;
    Rational singular_bound{0};  // (d-4)/(p-1); zero when p = 1
    Rational alpha_low{0};       // 2/(1-2p)
    Rational alpha_high{0};      // rho/2
    bool alpha_window_nonempty = false;
    Rational delta_effective{0};  // 2 - rho
};

RegimeReport regime_report(int p, int d, const Rational& beta);

// beta giving a prescribed rho at dimension d: beta = (2 - d - rho)/2
Rational beta_from_rho(int d, const Rational& rho);

std::string format_report(const RegimeReport& r);  // aligned plain-text table
std::string report_json(const RegimeReport& r);

}  // namespace sq
