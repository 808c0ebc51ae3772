#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace cuspidal {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long evals = 0;
    bool converged = true;
};

namespace quad {

// Order-insensitive compensated accumulator (Neumaier variant).
struct KahanSum {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double get() const { return sum + comp; }
};

// Gauss 7 / Kronrod 15 nodes and weights on [-1,1].
inline constexpr double gk_nodes[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
inline constexpr double gk_wk[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};
inline constexpr double gk_wg[4] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870};

template <class F>
inline void gk15(const F& f, double a, double b, double& value, double& error) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double f0 = f(c);
    double k = gk_wk[0] * f0;
    double g = gk_wg[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * gk_nodes[i];
        const double fi = f(c + dx) + f(c - dx);
        k += gk_wk[i] * fi;
        if (i % 2 == 0) g += gk_wg[i / 2] * fi;
    }
    value = k * h;
    const double diff = std::abs(k - g) * std::abs(h);
    // sharpen the raw G-K difference once it is small relative to the value
    const double scale = std::abs(value) + 1e-300;
    error = diff * std::min(1.0, std::sqrt(200.0 * diff / scale));
}

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

// Globally adaptive bisection on [a,b]: refine the worst interval until
// the total error estimate meets max(rel*|I|, abs).
template <class F>
QuadResult integrate_interval(const F& f, double a, double b, double rel_tol, double abs_tol,
                              int max_intervals = 4000) {
    QuadResult res;
    if (a == b) return res;
    std::priority_queue<Interval> heap;
    Interval first{a, b, 0.0, 0.0};
    gk15(f, a, b, first.value, first.error);
    res.evals = 15;
    double total = first.value, toterr = first.error;
    heap.push(first);
    int count = 1;
    const double min_width = std::abs(b - a) * 1e-14;
    double best_err = toterr;
    int stalled = 0;
    while (toterr > std::max(rel_tol * std::abs(total), abs_tol) && count < max_intervals) {
        Interval worst = heap.top();
        if (std::abs(worst.b - worst.a) <= min_width) break;
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Interval left{worst.a, mid, 0.0, 0.0}, right{mid, worst.b, 0.0, 0.0};
        gk15(f, left.a, left.b, left.value, left.error);
        gk15(f, right.a, right.b, right.value, right.error);
        res.evals += 30;
        total += left.value + right.value - worst.value;
        toterr += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
        // refining against a noise floor (e.g. interpolated integrands) makes
        // no progress; give up once the estimate stops improving
        if (toterr < 0.97 * best_err) {
            best_err = toterr;
            stalled = 0;
        } else if (++stalled > 48) {
            break;
        }
    }
    // re-accumulate from the heap for a stable, order-insensitive sum
    KahanSum vs, es;
    while (!heap.empty()) {
        vs.add(heap.top().value);
        es.add(heap.top().error);
        heap.pop();
    }
    res.value = vs.get();
    res.error = es.get();
    res.converged = res.error <= std::max(rel_tol * std::abs(res.value), abs_tol) * 4.0 + 1e-300;
    return res;
}

// Tail substitution x = a + (u/(1-u))^p maps [0,1) onto [a,inf); p > 1
// softens algebraic tail decay into an integrable endpoint.
inline constexpr int kTailPower = 4;

template <class F>
QuadResult integrate_tail(const F& f, double a, double rel_tol, double abs_tol,
                          int max_intervals = 4000) {
    constexpr int p = kTailPower;
    auto g = [&f, a](double u) {
        if (u <= 0.0 || u >= 1.0) return 0.0;
        const double r = u / (1.0 - u);
        double rp = 1.0;
        for (int i = 0; i < p - 1; ++i) rp *= r;
        const double jac = static_cast<double>(p) * rp / ((1.0 - u) * (1.0 - u));
        if (!std::isfinite(jac)) return 0.0;
        const double x = a + rp * r;
        const double fx = f(x);
        const double y = fx * jac;
        return std::isfinite(y) ? y : 0.0;
    };
    return integrate_interval(g, 0.0, 1.0, rel_tol, abs_tol, max_intervals);
}

// Tail through x = a e^v composed with the power map on v: power decay in x
// turns exponential, and the logarithmically damped x^-1 tails this engine
// meets become plain power tails in v.
template <class F>
QuadResult integrate_log_tail(const F& f, double a, double rel_tol, double abs_tol,
                              int max_intervals = 4000) {
    auto g = [&f, a](double v) {
        const double x = a * std::exp(v);
        if (!std::isfinite(x)) return 0.0;
        const double y = f(x) * x;
        return std::isfinite(y) ? y : 0.0;
    };
    // A positive integrand whose transformed tail keeps growing across
    // decades has no finite integral; report that instead of accumulating
    // whatever the floating-point range happens to capture. Two consecutive
    // doublings are required so a bounded bump past the cut cannot trigger.
    const double g2 = g(2.0), g8 = g(8.0), g32 = g(32.0), g128 = g(128.0);
    if ((g2 > 0.0 && g8 >= 2.0 * g2 && g32 >= 2.0 * g8) ||
        (g8 > 0.0 && g32 >= 2.0 * g8 && g128 >= 2.0 * g32)) {
        QuadResult res;
        res.error = std::numeric_limits<double>::infinity();
        res.converged = false;
        return res;
    }
    return integrate_tail(g, 0.0, rel_tol, abs_tol, max_intervals);
}

// Integral over [a, inf) split as [a, cut] + tail; cut defaults past the
// region where the integrand has structure. Requires cut > 0.
template <class F>
QuadResult integrate_half_line(const F& f, double a, double cut, double rel_tol, double abs_tol,
                               int max_intervals = 4000) {
    QuadResult head = integrate_interval(f, a, cut, rel_tol, abs_tol, max_intervals);
    QuadResult tail = integrate_log_tail(f, cut, rel_tol, abs_tol, max_intervals);
    QuadResult res;
    res.value = head.value + tail.value;
    res.error = head.error + tail.error;
    res.evals = head.evals + tail.evals;
    res.converged = head.converged && tail.converged;
    return res;
}

// Sum of integrals over consecutive segments given by breakpoints.
template <class F>
QuadResult integrate_segments(const F& f, std::span<const double> pts, double rel_tol,
                              double abs_tol, int max_intervals = 4000) {
    QuadResult res;
    KahanSum vs;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        QuadResult r = integrate_interval(f, pts[i], pts[i + 1], rel_tol, abs_tol, max_intervals);
        vs.add(r.value);
        res.error += r.error;
        res.evals += r.evals;
        res.converged = res.converged && r.converged;
    }
    res.value = vs.get();
    return res;
}

// Integral over [a,b] with 0 < a < b through the substitution x = e^t;
// power-law decay over several decades then needs only a few panels.
template <class F>
QuadResult integrate_log_interval(const F& f, double a, double b, double rel_tol, double abs_tol,
                                  int max_intervals = 4000) {
    auto g = [&f](double t) {
        const double x = std::exp(t);
        return f(x) * x;
    };
    return integrate_interval(g, std::log(a), std::log(b), rel_tol, abs_tol, max_intervals);
}

// Truncated half line [0, R] split at 1 with the log-scaled outer part.
template <class F>
QuadResult integrate_half_truncated(const F& f, double R, double rel_tol, double abs_tol,
                                    int max_intervals = 4000) {
    if (R <= 1.0) return integrate_interval(f, 0.0, R, rel_tol, abs_tol, max_intervals);
    QuadResult head = integrate_interval(f, 0.0, 1.0, rel_tol, abs_tol, max_intervals);
    QuadResult tail = integrate_log_interval(f, 1.0, R, rel_tol, abs_tol, max_intervals);
    head.value += tail.value;
    head.error += tail.error;
    head.evals += tail.evals;
    head.converged = head.converged && tail.converged;
    return head;
}

// Truncated real line [-R, R] split at -1, 0, 1 with log-scaled outer parts.
template <class F>
QuadResult integrate_line_truncated(const F& f, double R, double rel_tol, double abs_tol,
                                    int max_intervals = 4000) {
    if (R <= 1.0) return integrate_segments(f, std::vector<double>{-R, 0.0, R}, rel_tol, abs_tol,
                                            max_intervals);
    QuadResult mid = integrate_segments(f, std::vector<double>{-1.0, 0.0, 1.0}, rel_tol, abs_tol,
                                        max_intervals);
    QuadResult right = integrate_log_interval(f, 1.0, R, rel_tol, abs_tol, max_intervals);
    auto refl = [&f](double x) { return f(-x); };
    QuadResult left = integrate_log_interval(refl, 1.0, R, rel_tol, abs_tol, max_intervals);
    QuadResult res;
    res.value = mid.value + right.value + left.value;
    res.error = mid.error + right.error + left.error;
    res.evals = mid.evals + right.evals + left.evals;
    res.converged = mid.converged && right.converged && left.converged;
    return res;
}

// Whole real line with interior breakpoints and substituted tails.
template <class F>
QuadResult integrate_real_line(const F& f, std::vector<double> interior, double rel_tol,
                               double abs_tol, int max_intervals = 4000) {
    if (interior.empty()) interior = {0.0};
    QuadResult mid = integrate_segments(f, interior, rel_tol, abs_tol, max_intervals);
    const double rcut = std::max(interior.back(), 1.0);
    const double lcut = std::max(-interior.front(), 1.0);
    QuadResult right = interior.back() < rcut
                           ? integrate_segments(f, std::vector<double>{interior.back(), rcut},
                                                rel_tol, abs_tol, max_intervals)
                           : QuadResult{};
    QuadResult rtail = integrate_log_tail(f, rcut, rel_tol, abs_tol, max_intervals);
    right.value += rtail.value;
    right.error += rtail.error;
    right.evals += rtail.evals;
    right.converged = right.converged && rtail.converged;
    auto refl = [&f](double x) { return f(-x); };
    QuadResult left = -interior.front() < lcut
                          ? integrate_segments(refl, std::vector<double>{-interior.front(), lcut},
                                               rel_tol, abs_tol, max_intervals)
                          : QuadResult{};
    QuadResult ltail = integrate_log_tail(refl, lcut, rel_tol, abs_tol, max_intervals);
    left.value += ltail.value;
    left.error += ltail.error;
    left.evals += ltail.evals;
    left.converged = left.converged && ltail.converged;
    QuadResult res;
    res.value = mid.value + right.value + left.value;
    res.error = mid.error + right.error + left.error;
    res.evals = mid.evals + right.evals + left.evals;
    res.converged = mid.converged && right.converged && left.converged;
    return res;
}

// Surface area of the unit sphere S^{d-1} in R^d: 2 pi^{d/2} / Gamma(d/2).
inline double sphere_area(int d) {
    return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

} // namespace quad

} // namespace cuspidal
