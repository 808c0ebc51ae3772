#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "cuspidal/integrate.hpp"

namespace cuspidal {

inline int env_thread_count() {
    if (const char* env = std::getenv("CUSPIDAL_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

struct HcConfig {
    double rel_tol = 1e-8;          // per-axis quadrature target
    double s_ref = 8.0;             // evaluation point standing in for s -> infinity
    int threads = env_thread_count(); // series points evaluated independently
};

namespace detail {

// High-accuracy table of the full radial slice
//   I(c) = int_0^inf t^{d-1} phi_bar(t^2 + c) dt
// on a dense log-log grid. The HC integrand is evaluated at ~1e5 points per
// s-value and the limit checks need ~1e-8 relative accuracy, so the nodes
// are computed tightly and interpolation stays on the smooth log-log scale.
class FullSliceTable {
public:
    FullSliceTable(const RadialProfile& prof, int d) : prof_(prof), d_(d) {
        n_ = static_cast<int>((hi_ - lo_) / step_) + 1;
        logv_.resize(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            const double c = std::exp(lo_ + step_ * i);
            auto slice = [this, c](double t) { return std::pow(t, d_ - 1) * prof_(t * t + c); };
            const QuadResult q = quad::integrate_half_line(slice, 0.0, std::sqrt(c), 1e-11, 0.0, 8000);
            logv_[static_cast<size_t>(i)] = std::log(std::max(q.value, 1e-300));
        }
    }

    double eval(double c) const {
        const double t = std::log(c);
        const double hi = lo_ + step_ * (n_ - 1);
        if (t >= hi) {
            const double slope = (logv_[static_cast<size_t>(n_ - 1)] - logv_[static_cast<size_t>(n_ - 2)]) / step_;
            return std::exp(logv_[static_cast<size_t>(n_ - 1)] + slope * (t - hi));
        }
        const double x = std::max((t - lo_) / step_, 0.0);
        int i = std::clamp(static_cast<int>(std::floor(x)), 0, n_ - 2);
        const double u = x - i;
        const auto raw = [&](int j) { return logv_[static_cast<size_t>(j)]; };
        const auto at = [&](int j) {
            if (j < 0) return 3.0 * raw(0) - 3.0 * raw(1) + raw(2);
            if (j > n_ - 1) return 3.0 * raw(n_ - 1) - 3.0 * raw(n_ - 2) + raw(n_ - 3);
            return raw(j);
        };
        const double pm1 = at(i - 1), p0 = at(i), p1 = at(i + 1), p2 = at(i + 2);
        return std::exp(p0 + 0.5 * u * (p1 - pm1 + u * (2.0 * pm1 - 5.0 * p0 + 4.0 * p1 - p2 +
                                                        u * (3.0 * (p0 - p1) + p2 - pm1))));
    }

private:
    RadialProfile prof_;
    int d_;
    static constexpr double lo_ = 0.6931471805599453;
    static constexpr double hi_ = 80.0;
    static constexpr double step_ = 0.05;
    int n_ = 0;
    std::vector<double> logv_;
};

inline std::shared_ptr<const FullSliceTable> full_slice_table(const RadialProfile& prof, int d) {
    using Key = std::tuple<int, double, int, double, int>;
    static std::map<Key, std::shared_ptr<const FullSliceTable>> cache;
    static std::mutex mu;
    const Key key{static_cast<int>(prof.kind), prof.param, prof.n, prof.amplitude, d};
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ptr = std::make_shared<const FullSliceTable>(prof, d);
    cache.emplace(key, ptr);
    return ptr;
}

inline void hc_gate(int n, int k, const RadialProfile& prof) {
    const ParabolicClass p = ParabolicClass::rank1(n, k, k);
    if (!is_h_compatible(p))
        throw std::invalid_argument("hc: class (" + std::to_string(k) + "," + std::to_string(k) +
                                    ") is not h-compatible for n=" + std::to_string(n));
    const bool certified = prof.kind == RadialProfile::Kind::PowerNu
                               ? is_schwartz_power(n, prof.param)
                               : prof.param > 2.0;
    if (!certified)
        throw std::invalid_argument("hc: profile " + prof.label() +
                                    " is not certified convergent for n=" + std::to_string(n));
}

} // namespace detail

// I(s) = int_{U_{k,k}} phi(a_s u . H) du in the reduced coordinates:
//   int dz vol(d2) int rho^{d2-1} vol(d1) (f2+rho^2)^{-d1/2} I_x(f1+f3 rho^2) drho
// where d1 = n-k counts the x block and d2 = k-2 the y block. The z axis is
// split at -1, 0, 1: the mass driving the s -> +infinity limit concentrates
// in O(e^{-2s}) neighborhoods of z = +-1.
inline double hc_integral_value(int n, int k, const RadialProfile& prof, double s,
                                const HcConfig& cfg = {}) {
    detail::hc_gate(n, k, prof);
    const int d1 = n - k, d2 = k - 2;
    std::shared_ptr<const detail::FullSliceTable> table;
    if (d1 > 0) table = detail::full_slice_table(prof, d1);
    const double a1 = d1 > 0 ? quad::sphere_area(d1) : 1.0;
    const double a2 = d2 > 0 ? quad::sphere_area(d2) : 1.0;

    auto x_part = [&](double f1, double f2, double f3, double rho2) {
        const double c = f1 + f3 * rho2;
        if (d1 == 0) return prof(c);
        return a1 * std::pow(f2 + rho2, -0.5 * d1) * table->eval(c);
    };
    auto z_integrand = [&](double z) {
        const FTriple<double> f = f_triple(s, z);
        if (d2 == 0) return x_part(f.f1, f.f2, f.f3, 0.0);
        auto g = [&](double rho) { return std::pow(rho, d2 - 1) * x_part(f.f1, f.f2, f.f3, rho * rho); };
        return a2 * quad::integrate_half_line(g, 0.0, 1.0, cfg.rel_tol, 0.0).value;
    };
    return quad::integrate_real_line(z_integrand, {-1.0, 0.0, 1.0}, cfg.rel_tol, 0.0, 8000).value;
}

// The Harish-Chandra transform along a_s: e^s I(s).
inline double hc_value(int n, int k, const RadialProfile& prof, double s, const HcConfig& cfg = {}) {
    return std::exp(s) * hc_integral_value(n, k, prof, s, cfg);
}

struct HcPoint {
    double s = 0.0;
    double value = 0.0; // e^s I(s)
};

inline std::vector<HcPoint> hc_series(int n, int k, const RadialProfile& prof,
                                      const std::vector<double>& s_grid, const HcConfig& cfg = {}) {
    detail::hc_gate(n, k, prof);
    if (n - k > 0) detail::full_slice_table(prof, n - k); // build once before forking
    std::vector<HcPoint> out(s_grid.size());
    const int threads = std::max(cfg.threads, 1);
    if (threads == 1 || s_grid.size() < 2) {
        for (size_t i = 0; i < s_grid.size(); ++i)
            out[i] = HcPoint{s_grid[i], hc_value(n, k, prof, s_grid[i], cfg)};
        return out;
    }
    // points are independent; assembly by index keeps the result identical
    // for any thread count
    std::vector<std::future<void>> jobs;
    std::atomic<size_t> next{0};
    for (int t = 0; t < threads; ++t)
        jobs.push_back(std::async(std::launch::async, [&]() {
            for (size_t i = next.fetch_add(1); i < s_grid.size(); i = next.fetch_add(1))
                out[i] = HcPoint{s_grid[i], hc_value(n, k, prof, s_grid[i], cfg)};
        }));
    for (auto& j : jobs) j.get();
    return out;
}

// The s -> +infinity limit of e^s I(s) for n odd, evaluated as the rank-0
// cuspidal integral over V_{(n+1)/2}. In the Lebesgue normalization used
// throughout (pushforward coordinates on both unipotent pieces) the limit
// carries a factor 2^{(n-1)/2} relative to the plain V-integral; the factor
// was pinned down numerically from the orbit geometry, see
// orbit_limit_distance and the n-orbit scaling xi -> xi/2.
inline double limit_rhs(int n, const RadialProfile& prof, const HcConfig& cfg = {}) {
    if (n % 2 == 0) throw std::invalid_argument("limit_rhs: n must be odd");
    const int k = (n + 1) / 2;
    detail::hc_gate(n, k, prof); // same certification as the transform itself
    Rank0Evaluator ev(n, k, prof);
    double err = 0.0;
    const double v = ev.full(cfg.rel_tol, &err);
    return std::pow(2.0, 0.5 * (n - 1)) * v;
}

struct DecayPoint {
    double s = 0.0;
    double value = 0.0;    // e^s I(s)
    double weighted = 0.0; // |value| (1+|s|)^N
};

struct DecayReport {
    int n = 0, k = 0;
    int weight_power = 0;
    std::vector<DecayPoint> points;
    double argmax_s = 0.0;
    double max_weighted = 0.0;
    bool bounded = false; // max attained away from the decaying endpoint(s)
    // n odd only: behavior on the s -> +infinity side
    bool limit_checked = false;
    double limit_value = std::numeric_limits<double>::quiet_NaN();
    bool limit_gap_decreasing = false;
};

inline DecayReport decay_check(int n, int k, const RadialProfile& prof,
                               const std::vector<double>& s_grid, int weight_power,
                               const HcConfig& cfg = {}) {
    if (s_grid.size() < 3) throw std::invalid_argument("decay_check: grid too small");
    DecayReport rep;
    rep.n = n;
    rep.k = k;
    rep.weight_power = weight_power;
    for (const HcPoint& p : hc_series(n, k, prof, s_grid, cfg))
        rep.points.push_back(
            DecayPoint{p.s, p.value, std::abs(p.value) * std::pow(1.0 + std::abs(p.s), weight_power)});
    const auto it = std::max_element(rep.points.begin(), rep.points.end(),
                                     [](const DecayPoint& a, const DecayPoint& b) {
                                         return a.weighted < b.weighted;
                                     });
    rep.argmax_s = it->s;
    rep.max_weighted = it->weighted;
    const bool at_left = it == rep.points.begin();
    const bool at_right = it + 1 == rep.points.end();
    rep.bounded = n % 2 == 0 ? (!at_left && !at_right) : !at_left;
    if (n % 2 == 1) {
        std::vector<const DecayPoint*> upper;
        for (const auto& p : rep.points)
            if (p.s >= 4.0) upper.push_back(&p);
        if (upper.size() >= 2) {
            rep.limit_checked = true;
            rep.limit_value = limit_rhs(n, prof, cfg);
            rep.limit_gap_decreasing = true;
            for (size_t i = 1; i < upper.size(); ++i)
                rep.limit_gap_decreasing =
                    rep.limit_gap_decreasing && std::abs(upper[i]->value - rep.limit_value) <
                                                    std::abs(upper[i - 1]->value - rep.limit_value);
        }
    }
    return rep;
}

struct DualLimitReport {
    int n = 0;
    double s_ref = 0.0;
    double value_low_k = 0.0;
    double value_high_k = 0.0;
    double limit = 0.0;
    double rel_diff_classes = 0.0;
    double rel_diff_limit_low = 0.0;
    double rel_diff_limit_high = 0.0;
};

// The two h-compatible diagonal classes of an odd-n space approach the same
// limit; compare both transforms at a large reference s against each other
// and against the rank-0 integral.
inline DualLimitReport dual_class_limit(int n, const RadialProfile& prof, const HcConfig& cfg = {}) {
    if (n % 2 == 0) throw std::invalid_argument("dual_class_limit: n must be odd");
    DualLimitReport rep;
    rep.n = n;
    rep.s_ref = cfg.s_ref;
    rep.value_low_k = hc_value(n, (n + 1) / 2, prof, cfg.s_ref, cfg);
    rep.value_high_k = hc_value(n, (n + 3) / 2, prof, cfg.s_ref, cfg);
    rep.limit = limit_rhs(n, prof, cfg);
    rep.rel_diff_classes = std::abs(rep.value_low_k - rep.value_high_k) /
                           std::max(std::abs(rep.value_low_k), 1e-300);
    rep.rel_diff_limit_low = std::abs(rep.value_low_k - rep.limit) / std::max(std::abs(rep.limit), 1e-300);
    rep.rel_diff_limit_high = std::abs(rep.value_high_k - rep.limit) / std::max(std::abs(rep.limit), 1e-300);
    return rep;
}

} // namespace cuspidal
