#include "sq/regimes.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace sq {

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("rational: empty literal");
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const long long num = std::stoll(s.substr(0, slash));
        const long long den = std::stoll(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        return Rational(num, den);
    }
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0 || frac_len > 15) throw std::invalid_argument("rational: bad decimal " + s);
    long long den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(std::stoll(digits), den);
}

double rational_value(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string rational_text(const Rational& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << '/' << r.denominator();
    return os.str();
}

Rational beta_from_rho(int d, const Rational& rho) { return (Rational(2 - d) - rho) / 2; }

RegimeReport regime_report(int p, int d, const Rational& beta) {
    if (p < 1) throw std::invalid_argument("regime: p must be a positive integer");
    if (d < 1 || d > 4) throw std::invalid_argument("regime: d must lie in {1,2,3,4}");
    // note: mixed rational/int comparisons recurse forever in boost 1.74,
    // so every comparison here goes through an explicit Rational
    const Rational zero(0);
    if (beta > zero) throw std::invalid_argument("regime: beta must be <= 0");
    RegimeReport r;
    r.p = p;
    r.d = d;
    r.beta = beta;
    r.rho = Rational(2 - d) - 2 * beta;
    const Rational window_bound(4, 1 - 2 * p);
    const Rational support_bound(-d, p);
    r.feasibility_bound = std::max(window_bound, support_bound);
    r.remainder_feasible = r.rho > r.feasibility_bound;
    r.alpha_low = Rational(2, 1 - 2 * p);
    r.alpha_high = r.rho / 2;
    r.alpha_window_nonempty = r.alpha_low < r.alpha_high;
    if (p > 1) r.singular_bound = Rational(d - 4, p - 1);
    if (r.rho == zero) {
        r.singular = Singularity::NotApplicable;
    } else if (r.rho > zero) {
        r.singular = Singularity::No;
    } else if (p == 1) {
        r.singular = d < 4 ? Singularity::Yes : Singularity::No;
    } else {
        r.singular = r.rho <= r.singular_bound ? Singularity::Yes : Singularity::No;
    }
    r.delta_effective = Rational(2) - r.rho;
    return r;
}

namespace {

std::string singular_text(Singularity s) {
    switch (s) {
        case Singularity::Yes: return "yes";
        case Singularity::No: return "no";
        default: return "n/a (rho = 0 log case)";
    }
}

}  // namespace

std::string format_report(const RegimeReport& r) {
    std::ostringstream os;
    os << "p                 " << r.p << "\n"
       << "d                 " << r.d << "\n"
       << "beta              " << rational_text(r.beta) << "\n"
       << "rho               " << rational_text(r.rho) << "  (= " << rational_value(r.rho)
       << ")\n"
       << "remainder bound   " << rational_text(r.feasibility_bound) << "\n"
       << "remainder scheme  " << (r.remainder_feasible ? "feasible" : "infeasible") << "\n"
       << "alpha window      (" << rational_text(r.alpha_low) << ", " << rational_text(r.alpha_high)
       << ")" << (r.alpha_window_nonempty ? "" : "  [empty]") << "\n";
    if (r.p > 1) os << "singular bound    " << rational_text(r.singular_bound) << "\n";
    os << "singular vs free  " << singular_text(r.singular) << "\n"
       << "delta = 2 - rho   " << rational_text(r.delta_effective) << "  (= "
       << rational_value(r.delta_effective)
       << ", effective-dimension bookkeeping; general-beta reading unconfirmed)\n";
    return os.str();
}

std::string report_json(const RegimeReport& r) {
    std::ostringstream os;
    os << "{\n"
       << "  \"p\": " << r.p << ",\n"
       << "  \"d\": " << r.d << ",\n"
       << "  \"beta\": \"" << rational_text(r.beta) << "\",\n"
       << "  \"rho\": \"" << rational_text(r.rho) << "\",\n"
       << "  \"rho_value\": " << rational_value(r.rho) << ",\n"
       << "  \"feasibility_bound\": \"" << rational_text(r.feasibility_bound) << "\",\n"
       << "  \"remainder_feasible\": " << (r.remainder_feasible ? "true" : "false") << ",\n"
       << "  \"alpha_window\": [\"" << rational_text(r.alpha_low) << "\", \""
       << rational_text(r.alpha_high) << "\"],\n"
       << "  \"alpha_window_nonempty\": " << (r.alpha_window_nonempty ? "true" : "false") << ",\n"
       << "  \"singular\": \"" << singular_text(r.singular) << "\",\n"
       << "  \"delta_effective\": \"" << rational_text(r.delta_effective) << "\",\n"
       << "  \"delta_value\": " << rational_value(r.delta_effective) << "\n"
       << "}\n";
    return os.str();
}

}  // namespace sq
