#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "cuspidal/group.hpp"

namespace cuspidal {

// K-invariant test function on X_n, represented by its radial profile
// phi_bar on [2, infinity) in the coordinate r = 2cosh(4t).
//
//   PowerNu:   phi_bar(r) = r^nu
//   SchwartzM: phi_bar(r) = r^{(1-n)/4} (1 + log r)^{-m}
struct RadialProfile {
    enum class Kind { PowerNu, SchwartzM };

    Kind kind = Kind::PowerNu;
    double param = -1.0;    // nu or m
    int n = 3;
    double amplitude = 1.0; // overall scale, for linearity checks

    static RadialProfile power_nu(int n, double nu) {
        if (n < 3) throw std::invalid_argument("RadialProfile: n >= 3 required");
        return RadialProfile{Kind::PowerNu, nu, n, 1.0};
    }
    static RadialProfile schwartz_m(int n, double m) {
        if (n < 3) throw std::invalid_argument("RadialProfile: n >= 3 required");
        return RadialProfile{Kind::SchwartzM, m, n, 1.0};
    }
    RadialProfile scaled(double factor) const {
        RadialProfile p = *this;
        p.amplitude *= factor;
        return p;
    }

    // Effective power of the large-r decay (the log factor excluded).
    double decay_exponent() const {
        return kind == Kind::PowerNu ? param : 0.25 * (1.0 - n);
    }

    double operator()(double r) const {
        if (r < 2.0 - 1e-9) throw std::domain_error("RadialProfile: r < 2 is outside the range of 2cosh(4t)");
        r = std::max(r, 2.0);
        if (kind == Kind::PowerNu) return amplitude * std::pow(r, param);
        return amplitude * std::pow(r, 0.25 * (1.0 - n)) * std::pow(1.0 + std::log(r), -param);
    }

    double evaluate(const RadialCoordinate& rc) const { return (*this)(rc.value); }

    std::string label() const {
        return kind == Kind::PowerNu ? "nu=" + std::to_string(param) : "m=" + std::to_string(param);
    }
};

// Sufficient condition for phi_nu to be Schwartz: nu < (1-n)/4, strictly.
// The boundary is not decided here.
inline bool is_schwartz_power(int n, double nu) { return nu < 0.25 * (1.0 - n); }

struct SeminormResult {
    bool finite = true;
    double value = 0.0; // sup over the last grid evaluated
};

// Grid estimate of the u = 1 Schwartz seminorm
//   mu_{1,m}(phi) = sup_t (2cosh4t)^{(n-1)/4} (1+log 2cosh4t)^m |phi_bar(2cosh4t)|.
// Finiteness heuristic: double t_max twice; if the supremum grows by more
// than 1% the seminorm is flagged infinite.
inline SeminormResult seminorm_mu1m(const RadialProfile& p, double m, double t_max = 8.0,
                                    int grid = 512) {
    if (t_max <= 0.0 || grid < 2) throw std::invalid_argument("seminorm_mu1m: bad grid");
    const auto sup_on = [&](double tmax) {
        double sup = 0.0;
        for (int i = 0; i < grid; ++i) {
            const double t = tmax * static_cast<double>(i) / static_cast<double>(grid - 1);
            const double r = 2.0 * std::cosh(4.0 * t);
            const double w = std::pow(r, 0.25 * (p.n - 1)) * std::pow(1.0 + std::log(r), m);
            sup = std::max(sup, w * std::abs(p(r)));
        }
        return sup;
    };
    const double s1 = sup_on(t_max), s2 = sup_on(2.0 * t_max), s4 = sup_on(4.0 * t_max);
    const bool finite = s2 <= 1.01 * s1 && s4 <= 1.01 * s2;
    return SeminormResult{finite, s4};
}

} // namespace cuspidal
