#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <tuple>
#include <vector>

#include "cuspidal/catalog.hpp"
#include "cuspidal/profiles.hpp"
#include "cuspidal/quadrature.hpp"

namespace cuspidal {

enum class VerdictStatus { Convergent, Divergent, Inconclusive };
enum class Prediction { MustConverge, MustDiverge, Unknown };

inline const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Convergent: return "convergent";
        case VerdictStatus::Divergent: return "divergent";
        default: return "inconclusive";
    }
}
inline const char* to_string(Prediction p) {
    switch (p) {
        case Prediction::MustConverge: return "must_converge";
        case Prediction::MustDiverge: return "must_diverge";
        default: return "unknown";
    }
}

struct SchedulePoint {
    double radius = 0.0;
    double value = 0.0;
};

struct IntegralVerdict {
    VerdictStatus status = VerdictStatus::Inconclusive;
    double value = std::numeric_limits<double>::quiet_NaN();          // Convergent only
    double error_estimate = std::numeric_limits<double>::quiet_NaN();
    double growth_exponent = std::numeric_limits<double>::quiet_NaN(); // log-log slope of increments
    double fit_r2 = std::numeric_limits<double>::quiet_NaN();
    std::vector<SchedulePoint> schedule;
};

struct EngineConfig {
    double panel_rel_tol = 1e-4;    // full-value evaluation
    double schedule_rel_tol = 1e-3; // truncated schedule evaluation
    std::vector<double> radii = {2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
    double shrink_ratio = 0.95; // increments must shrink below this ratio to call convergence
    int fit_window = 6;
    double max_rel_error = 0.05;      // full values worse than this are inconclusive
    long slice_budget = 80'000'000;   // hard cap on integrand evaluations per verdict
    long mc_samples = 1 << 20;
    std::uint64_t seed = 0x2545F4914F6CDD1Dull;
};

// Integrals whose tail changes character far outside the truncation window
// can pass the schedule and still refuse to settle on the full domain; the
// evaluation budget turns those into a clean Inconclusive instead of an
// open-ended quadrature hunt.
struct BudgetExhausted : std::runtime_error {
    BudgetExhausted() : std::runtime_error("integration budget exhausted") {}
};

struct TailDiverges : std::runtime_error {
    TailDiverges() : std::runtime_error("tail fails the integrability probe") {}
};

namespace detail {

// Half line [0, inf) whose integrand may carry its mass on a ridge at a
// known scale: resolve [0,1] linearly, [1, scale] logarithmically, and map
// the remainder; the probe in the mapped tail then only ever sees the
// monotone far side.
template <class F>
QuadResult half_line_scaled(const F& f, double scale, double rel_tol, int max_intervals = 4000) {
    if (scale <= 1.0) return quad::integrate_half_line(f, 0.0, 1.0, rel_tol, 0.0, max_intervals);
    const QuadResult head = quad::integrate_interval(f, 0.0, 1.0, rel_tol, 0.0, max_intervals);
    const QuadResult mid = quad::integrate_log_interval(f, 1.0, scale, rel_tol, 0.0, max_intervals);
    const QuadResult tail = quad::integrate_log_tail(f, scale, rel_tol, 0.0, max_intervals);
    QuadResult res;
    res.value = head.value + mid.value + tail.value;
    res.error = head.error + mid.error + tail.error;
    res.evals = head.evals + mid.evals + tail.evals;
    res.converged = head.converged && mid.converged && tail.converged;
    return res;
}

inline void require_finite_error(const QuadResult& q) {
    if (!std::isfinite(q.error)) throw TailDiverges{};
}

} // namespace detail

// ---------------------------------------------------------------------------
// Reduced rank-1 integrand pieces

// c'(y,z): the completed-square constant term, depending on y only through
// |v| (the k-2 block) and |w| (the l-k block). Always >= 2.
inline double c_prime(double rv2, double rw2, double z) {
    const double s = rv2 + rw2 + (1.0 + z) * (1.0 + z) + 1.0;
    return (1.0 - z) * (1.0 - z) * s / (1.0 + rw2) + (z * z + 2.0 * z + rv2 + rw2);
}

// J_k(y,z) = s^{(k-n)/2} (1 + |w|^2)^{-1/2}.
inline double j_factor(int n, int k, double rv2, double rw2, double z) {
    const double s = rv2 + rw2 + (1.0 + z) * (1.0 + z) + 1.0;
    return std::pow(s, 0.5 * (k - n)) / std::sqrt(1.0 + rw2);
}

// ---------------------------------------------------------------------------
// Cached radial slice integrals
//
// The innermost reduction of every rank-1 integral is the 1-D radial slice
//   T(c, P) = int_0^P u^{d-1} phi_bar(u^2 + c) du
// evaluated at many thousands of (c, P) pairs. T is tabulated once per
// (profile, d) on a log c x log P grid (plus a P = infinity column) and
// interpolated bicubically in log T.
class RadialSliceTable {
public:
    RadialSliceTable(const RadialProfile& prof, int d)
        : prof_(prof), d_(d) {
        const double twice = 2.0 * prof.decay_exponent() + d;
        full_finite_ = twice < 0.0 ||
                       (twice == 0.0 && prof.kind == RadialProfile::Kind::SchwartzM && prof.param > 1.0);
        build();
    }

    int dim() const { return d_; }
    bool full_finite() const { return full_finite_; }

    // T(c, P); c is clamped into the tabulated range.
    double eval(double c, double P) const {
        if (P <= p_min_) { // below the first node the slice is flat in u
            return prof_(c) * std::pow(std::max(P, 0.0), d_) / d_;
        }
        const double tc = std::clamp(std::log(c), tc0_, tc0_ + dtc_ * (nc_ - 1));
        const double tp = std::log(P);
        if (tp >= tp0_ + dtp_ * (np_ - 1)) return eval_full(c);
        const double x = (tc - tc0_) / dtc_, y = (tp - tp0_) / dtp_;
        return std::exp(bicubic(x, y));
    }

    // T(c, infinity) with power-law extrapolation beyond the c grid.
    double eval_full(double c) const {
        if (!full_finite_) return std::numeric_limits<double>::infinity();
        const double tc = std::log(c);
        const double hi = tc0_ + dtc_ * (nc_ - 1);
        if (tc > hi) {
            const double slope = (logfull_[nc_ - 1] - logfull_[nc_ - 2]) / dtc_;
            return std::exp(logfull_[nc_ - 1] + slope * (tc - hi));
        }
        const double x = std::clamp((tc - tc0_) / dtc_, 0.0, double(nc_ - 1));
        return std::exp(cubic1d(logfull_, x));
    }

private:
    RadialProfile prof_;
    int d_;
    bool full_finite_ = false;

    static constexpr double tc_lo = 0.6931471805599453; // log 2
    static constexpr double tc_hi = 60.0;
    static constexpr double tp_lo = -3.0;  // log 0.05
    static constexpr double tp_hi = 21.5;  // ~ log 2.2e9
    int nc_ = 0, np_ = 0;
    double tc0_ = tc_lo, dtc_ = 0.125, tp0_ = tp_lo, dtp_ = 0.125, p_min_ = std::exp(tp_lo);
    std::vector<double> logT_;    // nc x np, row-major in c
    std::vector<double> logfull_; // nc

    void build() {
        nc_ = static_cast<int>((tc_hi - tc_lo) / dtc_) + 1;
        np_ = static_cast<int>((tp_hi - tp_lo) / dtp_) + 1;
        logT_.assign(static_cast<size_t>(nc_) * np_, 0.0);
        logfull_.assign(static_cast<size_t>(nc_), 0.0);
        std::vector<double> pnodes(static_cast<size_t>(np_));
        for (int j = 0; j < np_; ++j) pnodes[static_cast<size_t>(j)] = std::exp(tp0_ + dtp_ * j);
        for (int i = 0; i < nc_; ++i) {
            const double c = std::exp(tc0_ + dtc_ * i);
            auto slice = [this, c](double u) {
                return std::pow(u, d_ - 1) * prof_(u * u + c);
            };
            double cum = quad::integrate_interval(slice, 0.0, pnodes[0], 1e-8, 0.0).value;
            for (int j = 0; j < np_; ++j) {
                if (j > 0)
                    cum += quad::integrate_interval(slice, pnodes[static_cast<size_t>(j - 1)],
                                                    pnodes[static_cast<size_t>(j)], 1e-8, 0.0)
                               .value;
                logT_[static_cast<size_t>(i) * np_ + j] = std::log(std::max(cum, 1e-300));
            }
            if (full_finite_) {
                const double tail = quad::integrate_tail(slice, pnodes.back(), 1e-9, 0.0).value;
                logfull_[static_cast<size_t>(i)] = std::log(std::max(cum + tail, 1e-300));
            }
        }
    }

    static double catmull(double pm1, double p0, double p1, double p2, double t) {
        return p0 + 0.5 * t * (p1 - pm1 + t * (2.0 * pm1 - 5.0 * p0 + 4.0 * p1 - p2 +
                                                t * (3.0 * (p0 - p1) + p2 - pm1)));
    }

    // out-of-range stencil points are quadratically extrapolated, which keeps
    // the boundary cells cubic-accurate (a plain clamp halves the tangent there)
    template <class At>
    static double ghost(const At& at, int j, int n) {
        if (j < 0) return 3.0 * at(0) - 3.0 * at(1) + at(2);
        if (j > n - 1) return 3.0 * at(n - 1) - 3.0 * at(n - 2) + at(n - 3);
        return at(j);
    }

    double cubic1d(const std::vector<double>& v, double x) const {
        const int n = static_cast<int>(v.size());
        int i = std::clamp(static_cast<int>(std::floor(x)), 0, n - 2);
        const double t = x - i;
        const auto at = [&](int j) { return v[static_cast<size_t>(j)]; };
        const auto g = [&](int j) { return ghost(at, j, n); };
        return catmull(g(i - 1), g(i), g(i + 1), g(i + 2), t);
    }

    double bicubic(double x, double y) const {
        int i = std::clamp(static_cast<int>(std::floor(x)), 0, nc_ - 2);
        int j = std::clamp(static_cast<int>(std::floor(y)), 0, np_ - 2);
        const double tx = x - i, ty = y - j;
        double rows[4];
        for (int r = -1; r <= 2; ++r) {
            const auto at = [&](int b) {
                const int a = std::clamp(i + r, 0, nc_ - 1); // c rows ghosted below
                return logT_[static_cast<size_t>(a) * np_ + b];
            };
            const auto gp = [&](int b) { return ghost(at, b, np_); };
            rows[r + 1] = catmull(gp(j - 1), gp(j), gp(j + 1), gp(j + 2), ty);
        }
        if (i == 0) rows[0] = 3.0 * rows[1] - 3.0 * rows[2] + rows[3];
        if (i == nc_ - 2) rows[3] = 3.0 * rows[2] - 3.0 * rows[1] + rows[0];
        return catmull(rows[0], rows[1], rows[2], rows[3], tx);
    }
};

namespace detail {

inline std::shared_ptr<const RadialSliceTable> slice_table(const RadialProfile& prof, int d) {
    using Key = std::tuple<int, double, int, double, int>;
    static std::map<Key, std::shared_ptr<const RadialSliceTable>> cache;
    static std::mutex mu;
    const Key key{static_cast<int>(prof.kind), prof.param, prof.n, prof.amplitude, d};
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ptr = std::make_shared<const RadialSliceTable>(prof, d);
    cache.emplace(key, ptr);
    return ptr;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Rank-1 evaluation
//
// int dz int_{R^{l-2}} dy J_k(y,z) int_{R^{n-k}} dx phi_bar(|x|^2 + c'(y,z))
// with all three blocks reduced to radial coordinates. Truncation at radius R
// bounds |z|, |v|, |w| by R directly and the x block by |x| <= R in the
// original coordinates, i.e. |x'| <= sqrt(s) R after completing the square
// (exact for k = l, where the substitution is the isotropic scaling).
class Rank1Evaluator {
public:
    Rank1Evaluator(int n, int k, int l, const RadialProfile& prof)
        : n_(n), k_(k), l_(l), prof_(prof), dx_(n - k), dv_(k - 2), dw_(l - k) {
        if (!(2 <= k && k <= l && l <= n)) throw std::invalid_argument("Rank1Evaluator: bad (k,l)");
        if (prof.n != n) throw std::invalid_argument("Rank1Evaluator: profile dimension mismatch");
        if (dx_ > 0) table_ = detail::slice_table(prof, dx_);
        area_x_ = dx_ > 0 ? quad::sphere_area(dx_) : 1.0;
        area_v_ = dv_ > 0 ? quad::sphere_area(dv_) : 1.0;
        area_w_ = dw_ > 0 ? quad::sphere_area(dw_) : 1.0;
    }

    bool full_finite_x() const { return dx_ == 0 || table_->full_finite(); }

    void set_budget(long budget) { slice_budget_ = budget; }
    long slices_used() const { return slices_used_; }

    double truncated(double R, double rel_tol, double* err = nullptr) const {
        return evaluate(R, rel_tol, err);
    }
    double full(double rel_tol, double* err = nullptr) const {
        return evaluate(std::numeric_limits<double>::infinity(), rel_tol, err);
    }

private:
    int n_, k_, l_;
    RadialProfile prof_;
    int dx_, dv_, dw_;
    std::shared_ptr<const RadialSliceTable> table_;
    double area_x_ = 1.0, area_v_ = 1.0, area_w_ = 1.0;
    long slice_budget_ = 80'000'000;
    mutable long slices_used_ = 0;

    double x_slice(double rv2, double rw2, double z, double R) const {
        if (++slices_used_ > slice_budget_) throw BudgetExhausted{};
        const double cp = c_prime(rv2, rw2, z);
        if (!std::isfinite(cp)) return 0.0; // overflow fringe carries no mass
        const double J = j_factor(n_, k_, rv2, rw2, z);
        double X;
        if (dx_ == 0) {
            X = prof_(cp);
        } else if (std::isinf(R)) {
            X = area_x_ * table_->eval_full(cp);
        } else {
            const double s = rv2 + rw2 + (1.0 + z) * (1.0 + z) + 1.0;
            X = area_x_ * table_->eval(cp, std::sqrt(s) * R);
        }
        return J * X;
    }

    // radial scale of the (v,w) mass ridge at height z, clamped so the
    // overflow fringe of the compactified z axis cannot poison the panels
    static double ridge_scale(double z) {
        return std::min(std::abs(1.0 + z), 1e120) + 1.0;
    }

    double w_level(double rv, double z, double R, double rel_tol, double& err) const {
        if (dw_ == 0) return x_slice(rv * rv, 0.0, z, R);
        auto f = [&](double rw) { return std::pow(rw, dw_ - 1) * x_slice(rv * rv, rw * rw, z, R); };
        QuadResult q = std::isinf(R) ? detail::half_line_scaled(f, ridge_scale(z), rel_tol)
                                     : quad::integrate_half_truncated(f, R, rel_tol, 0.0);
        detail::require_finite_error(q);
        err += area_w_ * q.error;
        return area_w_ * q.value;
    }

    double v_level(double z, double R, double rel_tol, double& err) const {
        double werr = 0.0;
        if (dv_ == 0) {
            double r = w_level(0.0, z, R, rel_tol, werr);
            err += werr;
            return r;
        }
        auto f = [&](double rv) {
            double e = 0.0;
            return std::pow(rv, dv_ - 1) * w_level(rv, z, R, rel_tol, e);
        };
        QuadResult q = std::isinf(R) ? detail::half_line_scaled(f, ridge_scale(z), rel_tol)
                                     : quad::integrate_half_truncated(f, R, rel_tol, 0.0);
        detail::require_finite_error(q);
        err += area_v_ * q.error;
        return area_v_ * q.value;
    }

    double evaluate(double R, double rel_tol, double* err_out) const {
        slices_used_ = 0;
        double acc_err = 0.0;
        auto f = [&](double z) {
            double e = 0.0;
            return v_level(z, R, rel_tol, e);
        };
        QuadResult q = std::isinf(R) ? quad::integrate_real_line(f, {-1.0, 0.0, 1.0}, rel_tol, 0.0)
                                     : quad::integrate_line_truncated(f, R, rel_tol, 0.0);
        detail::require_finite_error(q);
        acc_err += q.error;
        if (err_out) *err_out = acc_err;
        return q.value;
    }
};

// ---------------------------------------------------------------------------
// Rank-0 evaluation: the product-form integrand over R^{k-1} x R^{n-k},
// reduced to two radial coordinates.
class Rank0Evaluator {
public:
    Rank0Evaluator(int n, int k, const RadialProfile& prof) : n_(n), k_(k), prof_(prof) {
        if (!(1 <= k && k <= n)) throw std::invalid_argument("Rank0Evaluator: bad k");
        if (prof.n != n) throw std::invalid_argument("Rank0Evaluator: profile dimension mismatch");
        dx_ = k - 1;
        dy_ = n - k;
        area_x_ = dx_ > 0 ? quad::sphere_area(dx_) : 1.0;
        area_y_ = dy_ > 0 ? quad::sphere_area(dy_) : 1.0;
    }

    void set_budget(long budget) { slice_budget_ = budget; }

    double truncated(double R, double rel_tol, double* err = nullptr) const {
        slices_used_ = 0;
        return evaluate(R, rel_tol, err);
    }
    double full(double rel_tol, double* err = nullptr) const {
        slices_used_ = 0;
        return evaluate(std::numeric_limits<double>::infinity(), rel_tol, err);
    }

private:
    int n_, k_, dx_, dy_;
    RadialProfile prof_;
    double area_x_ = 1.0, area_y_ = 1.0;
    long slice_budget_ = 80'000'000;
    mutable long slices_used_ = 0;

    double integrand(double rx2, double ry2) const {
        if (++slices_used_ > slice_budget_) throw BudgetExhausted{};
        return prof_(2.0 + 4.0 * rx2 + 4.0 * ry2 + 4.0 * rx2 * ry2);
    }

    double y_level(double rx, double R, double rel_tol, double& err) const {
        if (dy_ == 0) return integrand(rx * rx, 0.0);
        auto f = [&](double ry) { return std::pow(ry, dy_ - 1) * integrand(rx * rx, ry * ry); };
        QuadResult q = std::isinf(R) ? quad::integrate_half_line(f, 0.0, 1.0, rel_tol, 0.0)
                                     : quad::integrate_half_truncated(f, R, rel_tol, 0.0);
        detail::require_finite_error(q);
        err += area_y_ * q.error;
        return area_y_ * q.value;
    }

    double evaluate(double R, double rel_tol, double* err_out) const {
        double acc_err = 0.0;
        double value;
        if (dx_ == 0) {
            value = y_level(0.0, R, rel_tol, acc_err);
        } else {
            auto f = [&](double rx) {
                double e = 0.0;
                return std::pow(rx, dx_ - 1) * y_level(rx, R, rel_tol, e);
            };
            QuadResult q = std::isinf(R) ? quad::integrate_half_line(f, 0.0, 1.0, rel_tol, 0.0)
                                         : quad::integrate_half_truncated(f, R, rel_tol, 0.0);
            detail::require_finite_error(q);
            acc_err += area_x_ * q.error;
            value = area_x_ * q.value;
        }
        if (err_out) *err_out = acc_err;
        return value;
    }
};

// ---------------------------------------------------------------------------
// Schedule classification

struct ScheduleFit {
    double slope = std::numeric_limits<double>::quiet_NaN();
    double r2 = std::numeric_limits<double>::quiet_NaN();
};

// Least-squares fit of log(increment) against log(radius). For power-law
// growth or decay of the truncated tail the increments follow an exact
// power, so the fit is clean where the classification matters.
inline ScheduleFit fit_increments(const std::vector<SchedulePoint>& sched, int window) {
    std::vector<double> lx, ly;
    for (size_t i = 1; i < sched.size(); ++i) {
        const double d = sched[i].value - sched[i - 1].value;
        if (d > 0.0) {
            lx.push_back(std::log(sched[i].radius));
            ly.push_back(std::log(d));
        }
    }
    ScheduleFit fit;
    if (lx.size() < 3) return fit;
    const size_t m = std::min<size_t>(static_cast<size_t>(window), lx.size());
    const size_t off = lx.size() - m;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (size_t i = off; i < lx.size(); ++i) {
        sx += lx[i]; sy += ly[i]; sxx += lx[i] * lx[i]; sxy += lx[i] * ly[i]; syy += ly[i] * ly[i];
    }
    const double nm = static_cast<double>(m);
    const double den = nm * sxx - sx * sx;
    if (std::abs(den) < 1e-12) return fit;
    fit.slope = (nm * sxy - sx * sy) / den;
    const double ss_tot = syy - sy * sy / nm;
    double ss_res = 0.0;
    const double icpt = (sy - fit.slope * sx) / nm;
    for (size_t i = off; i < lx.size(); ++i) {
        const double r = ly[i] - (icpt + fit.slope * lx[i]);
        ss_res += r * r;
    }
    fit.r2 = ss_tot <= 1e-12 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

inline VerdictStatus classify_schedule(const std::vector<SchedulePoint>& sched,
                                       const EngineConfig& cfg) {
    if (sched.size() < 6) return VerdictStatus::Inconclusive;
    const double last = std::abs(sched.back().value);
    std::vector<double> deltas;
    for (size_t i = 1; i < sched.size(); ++i)
        deltas.push_back(std::max(sched[i].value - sched[i - 1].value, 0.0));
    // fast decay: the tail already fell below the resolution of the
    // truncated evaluations, so increment ratios would be pure noise
    const double floor = std::max(1e-6, 0.05 * cfg.schedule_rel_tol) * last + 1e-300;
    bool tiny = true;
    for (size_t i = deltas.size() - 4; i < deltas.size(); ++i)
        tiny = tiny && deltas[i] <= floor;
    if (tiny) return VerdictStatus::Convergent;

    bool all_shrink = true, none_shrink = true;
    for (size_t i = deltas.size() - 4; i < deltas.size(); ++i) {
        if (deltas[i - 1] <= 0.0) {
            // a vanishing increment followed by activity: not a clean pattern
            none_shrink = false;
            all_shrink = all_shrink && deltas[i] <= floor;
            continue;
        }
        const double ratio = deltas[i] / deltas[i - 1];
        all_shrink = all_shrink && ratio <= cfg.shrink_ratio;
        none_shrink = none_shrink && ratio > cfg.shrink_ratio;
    }
    if (all_shrink) return VerdictStatus::Convergent;
    if (none_shrink) return VerdictStatus::Divergent;
    return VerdictStatus::Inconclusive;
}

// ---------------------------------------------------------------------------
// Prediction from the convergence law

inline Prediction predicted_verdict(const ParabolicClass& p, const RadialProfile& prof) {
    if (prof.n != p.n) throw std::invalid_argument("predicted_verdict: dimension mismatch");
    const bool hcomp = is_h_compatible(p);
    if (prof.kind == RadialProfile::Kind::SchwartzM) {
        // the dominating-profile family certifies convergence only for m > 2
        return hcomp && prof.param > 2.0 ? Prediction::MustConverge : Prediction::Unknown;
    }
    const double nu = prof.param;
    if (!is_schwartz_power(p.n, nu)) return Prediction::Unknown;
    if (hcomp) return Prediction::MustConverge;
    if (p.rank == SigmaRank::Rank1) {
        const double threshold = std::min(0.5 * (p.k - p.n), 0.5 * (2 - p.l));
        return nu > threshold ? Prediction::MustDiverge : Prediction::Unknown; // boundary undecided
    }
    const double threshold = std::min(0.5 * (1 - p.k), 0.5 * (p.k - p.n));
    return nu >= threshold ? Prediction::MustDiverge : Prediction::Unknown;
}

// ---------------------------------------------------------------------------
// Public entry points

namespace detail {

template <class Eval>
IntegralVerdict run_schedule(Eval& ev, bool full_possible, const EngineConfig& cfg) {
    ev.set_budget(cfg.slice_budget);
    IntegralVerdict v;
    try {
        for (double R : cfg.radii)
            v.schedule.push_back(SchedulePoint{R, ev.truncated(R, cfg.schedule_rel_tol)});
    } catch (const BudgetExhausted&) {
        v.status = VerdictStatus::Inconclusive;
        return v;
    } catch (const TailDiverges&) {
        v.status = VerdictStatus::Inconclusive;
        return v;
    }
    v.status = classify_schedule(v.schedule, cfg);
    const ScheduleFit fit = fit_increments(v.schedule, cfg.fit_window);
    v.growth_exponent = fit.slope;
    v.fit_r2 = fit.r2;
    if (v.status == VerdictStatus::Convergent) {
        if (!full_possible) {
            v.status = VerdictStatus::Inconclusive;
            return v;
        }
        try {
            double err = 0.0;
            v.value = ev.full(cfg.panel_rel_tol, &err);
            v.error_estimate = err;
        } catch (const BudgetExhausted&) {
            v.status = VerdictStatus::Inconclusive;
            v.value = std::numeric_limits<double>::quiet_NaN();
            return v;
        } catch (const TailDiverges&) {
            // the truncation window looked settled but the far tail is not
            // integrable: refuse to certify either way
            v.status = VerdictStatus::Inconclusive;
            v.value = std::numeric_limits<double>::quiet_NaN();
            return v;
        }
        if (!(v.error_estimate <= cfg.max_rel_error * std::abs(v.value))) {
            // the schedule looked settled but the full domain refused to:
            // the tail changes character beyond the truncation window
            v.status = VerdictStatus::Inconclusive;
            v.value = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return v;
}

} // namespace detail

inline IntegralVerdict integrate_rank1(int n, int k, int l, const RadialProfile& prof,
                                       const EngineConfig& cfg = {}) {
    Rank1Evaluator ev(n, k, l, prof);
    return detail::run_schedule(ev, ev.full_finite_x(), cfg);
}

inline IntegralVerdict integrate_rank0(int n, int k, const RadialProfile& prof,
                                       const EngineConfig& cfg = {}) {
    Rank0Evaluator ev(n, k, prof);
    return detail::run_schedule(ev, true, cfg);
}

// ---------------------------------------------------------------------------
// Seeded Monte-Carlo cross-check of the full-domain value (convergent cases)

struct McResult {
    double value = 0.0;
    double std_error = 0.0;
    long samples = 0;
};

namespace detail {

// coordinate transform u in (0,1) -> [0,inf) with the same tail power as
// the quadrature maps; returns (x, jacobian)
inline std::pair<double, double> half_map(double u) {
    constexpr int p = quad::kTailPower;
    const double r = u / (1.0 - u);
    double rp = 1.0;
    for (int i = 0; i < p - 1; ++i) rp *= r;
    return {rp * r, static_cast<double>(p) * rp / ((1.0 - u) * (1.0 - u))};
}

inline std::pair<double, double> line_map(double u) {
    const double v = 2.0 * u - 1.0;
    auto [x, j] = half_map(std::abs(v));
    return {v < 0.0 ? -x : x, 2.0 * j};
}

} // namespace detail

// Samples the unreduced 3-block integral in the original (x, y, z)
// coordinates through the quadratic form, deliberately bypassing the
// completed-square reduction the quadrature path uses.
inline McResult mc_rank1(int n, int k, int l, const RadialProfile& prof, const EngineConfig& cfg = {}) {
    const int dx = n - k, dy = l - 2;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> uni(1e-12, 1.0 - 1e-12);
    quad::KahanSum sum, sumsq;
    std::vector<double> x(static_cast<size_t>(std::max(dx, 0)));
    std::vector<double> y(static_cast<size_t>(std::max(dy, 0)));
    for (long i = 0; i < cfg.mc_samples; ++i) {
        double w = 1.0;
        for (auto& xi : x) { auto [t, j] = detail::line_map(uni(rng)); xi = t; w *= j; }
        for (auto& yi : y) { auto [t, j] = detail::line_map(uni(rng)); yi = t; w *= j; }
        auto [z, jz] = detail::line_map(uni(rng));
        w *= jz;
        // x occupies slots k-2..n-3, y slots 0..l-3; pi(y) overlaps x in
        // slots k-2..l-3
        double y2 = 0.0, piy_x = 0.0, x2 = 0.0;
        for (int j = 0; j < dy; ++j) y2 += y[static_cast<size_t>(j)] * y[static_cast<size_t>(j)];
        for (int j = 0; j < dx; ++j) x2 += x[static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
        for (int slot = k - 2; slot < l - 2; ++slot)
            piy_x += y[static_cast<size_t>(slot)] * x[static_cast<size_t>(slot - (k - 2))];
        const double s = y2 + (1.0 + z) * (1.0 + z) + 1.0;
        const double form = s * (x2 + piy_x * piy_x) + 2.0 * (1.0 - z) * s * piy_x +
                            (1.0 - z) * (1.0 - z) * s + (z * z + 2.0 * z + y2);
        const double g = w * prof(form);
        sum.add(g);
        sumsq.add(g * g);
    }
    const double m = static_cast<double>(cfg.mc_samples);
    const double mean = sum.get() / m;
    const double var = std::max(sumsq.get() / m - mean * mean, 0.0);
    return McResult{mean, std::sqrt(var / m), cfg.mc_samples};
}

inline McResult mc_rank0(int n, int k, const RadialProfile& prof, const EngineConfig& cfg = {}) {
    const int dx = k - 1, dy = n - k;
    const double ax = dx > 0 ? quad::sphere_area(dx) : 1.0;
    const double ay = dy > 0 ? quad::sphere_area(dy) : 1.0;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> uni(1e-12, 1.0 - 1e-12);
    quad::KahanSum sum, sumsq;
    for (long i = 0; i < cfg.mc_samples; ++i) {
        double w = 1.0, rx = 0.0, ry = 0.0;
        if (dx > 0) { auto [r, j] = detail::half_map(uni(rng)); rx = r; w *= j * ax * std::pow(r, dx - 1); }
        if (dy > 0) { auto [r, j] = detail::half_map(uni(rng)); ry = r; w *= j * ay * std::pow(r, dy - 1); }
        const double g = w * prof(2.0 + 4.0 * rx * rx + 4.0 * ry * ry + 4.0 * rx * rx * ry * ry);
        sum.add(g);
        sumsq.add(g * g);
    }
    const double m = static_cast<double>(cfg.mc_samples);
    const double mean = sum.get() / m;
    const double var = std::max(sumsq.get() / m - mean * mean, 0.0);
    return McResult{mean, std::sqrt(var / m), cfg.mc_samples};
}

} // namespace cuspidal
