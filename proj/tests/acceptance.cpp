// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cuspidal/catalog.hpp"
#include "cuspidal/group.hpp"
#include "cuspidal/hc.hpp"
#include "cuspidal/integrate.hpp"
#include "cuspidal/profiles.hpp"
#include "cuspidal/quadrature.hpp"

using namespace cuspidal;

namespace {

struct Criterion {
    int failures = 0;
    std::string first;
    void check(bool cond, const std::string& msg) {
        if (!cond) {
            ++failures;
            if (first.empty()) first = msg;
        }
    }
};

int g_total_failures = 0;

void report(int id, const std::string& label, const std::function<void(Criterion&)>& body) {
    Criterion c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.check(false, std::string("exception: ") + e.what());
    }
    if (c.failures == 0) {
        std::printf("[PASS] criterion %2d: %s\n", id, label.c_str());
    } else {
        std::printf("[FAIL] criterion %2d: %s -- %d failure(s), first: %s\n", id, label.c_str(),
                    c.failures, c.first.c_str());
        ++g_total_failures;
    }
    std::fflush(stdout);
}

std::string kl(int n, int k, int l) {
    return "n=" + std::to_string(n) + " (" + std::to_string(k) + "," + std::to_string(l) + ")";
}

} // namespace

// 1. Classification fidelity for n = 3..8.
static void criterion1(Criterion& c) {
    for (int n = 3; n <= 8; ++n) {
        std::set<std::pair<int, int>> hc1;
        for (const auto& p : enumerate_classes(n, SigmaRank::Rank1))
            if (is_h_compatible(p)) hc1.emplace(p.k, p.l);
        std::set<std::pair<int, int>> expected1;
        if (n % 2 == 0) {
            expected1 = {{(n + 2) / 2, (n + 2) / 2}};
        } else {
            const int m = (n + 1) / 2;
            expected1 = {{m, m}, {m, m + 1}, {m + 1, m + 1}};
        }
        c.check(hc1 == expected1, "rank-1 h-compatible set wrong at n=" + std::to_string(n));
        std::set<int> hc0;
        for (const auto& q : enumerate_classes(n, SigmaRank::Rank0))
            if (is_h_compatible(q)) hc0.insert(q.k);
        const std::set<int> expected0 =
            n % 2 == 1 ? std::set<int>{(n + 1) / 2} : std::set<int>{};
        c.check(hc0 == expected0, "rank-0 h-compatible set wrong at n=" + std::to_string(n));
    }
}

// 2. Dimension bookkeeping for n = 3..12, exact.
static void criterion2(Criterion& c) {
    for (int n = 3; n <= 12; ++n) {
        for (const auto& p : enumerate_classes(n, SigmaRank::Rank1)) {
            const Dims d = dims(p);
            c.check(d.n_cap_h + d.u == n * (n - 1) / 2, "dim sum " + kl(n, p.k, p.l));
            if (p.k == p.l) c.check(d.u == n - 1, "dim u != n-1 " + kl(n, p.k, p.l));
        }
        for (const auto& q : enumerate_classes(n, SigmaRank::Rank0)) {
            const Dims d = dims(q);
            c.check(d.n_cap_h + d.u == n * (n - 1) / 2 && d.u == n - 1,
                    "rank-0 dims wrong at n=" + std::to_string(n));
        }
    }
}

// 3. Closed forms vs the matrix oracle, 1e4 samples per class, n <= 6.
static void criterion3(Criterion& c) {
    std::mt19937_64 rng(0xACCE97);
    std::uniform_real_distribution<double> u(-2.0, 2.0), us(-1.5, 1.5);
    const int samples = 10000;
    auto rv = [&](int d) {
        Vec v(d);
        for (int i = 0; i < d; ++i) v[i] = u(rng);
        return v;
    };
    for (int n = 3; n <= 6; ++n) {
        for (const auto& p : enumerate_classes(n, SigmaRank::Rank1)) {
            for (int t = 0; t < samples; ++t) {
                Vec x = Vec::Zero(n - 2), y = Vec::Zero(n - 2);
                for (int i = p.k - 2; i < n - 2; ++i) x[i] = u(rng);
                for (int i = 0; i < p.l - 2; ++i) y[i] = u(rng);
                const double z = u(rng);
                const double oracle = radial(u_elem(n, x, y, z)).value;
                if (std::abs(cosh4t_rank1(x, y, z) - oracle) > 1e-8 * std::max(1.0, oracle)) {
                    c.check(false, "cosh4t_rank1 " + kl(n, p.k, p.l));
                    break;
                }
                if (std::abs(cosh4t_rank1_reduced(n, p.k, p.l, x, y, z) - oracle) >
                    1e-8 * std::max(1.0, oracle)) {
                    c.check(false, "cosh4t_rank1_reduced " + kl(n, p.k, p.l));
                    break;
                }
            }
        }
        for (int k = 1; k <= n; ++k) {
            for (int t = 0; t < samples; ++t) {
                Vec x = Vec::Zero(n - 1), y = Vec::Zero(n - 1);
                for (int i = 0; i < k - 1; ++i) x[i] = u(rng);
                for (int i = k - 1; i < n - 1; ++i) y[i] = u(rng);
                const double oracle = radial(v_elem(n, x, y)).value;
                if (std::abs(cosh4t_rank0(x, y) - oracle) > 1e-8 * std::max(1.0, oracle)) {
                    c.check(false, "cosh4t_rank0 n=" + std::to_string(n));
                    break;
                }
            }
        }
        for (int k = 2; k <= n; ++k) {
            for (int t = 0; t < samples; ++t) {
                const double s = us(rng), z = u(rng);
                const Vec xf = rv(n - k), yf = rv(k - 2);
                Vec x = Vec::Zero(n - 2), y = Vec::Zero(n - 2);
                x.tail(n - k) = xf;
                y.head(k - 2) = yf;
                const double oracle = radial(a_t(n, s) * u_elem(n, x, y, z)).value;
                if (std::abs(cosh4t_hc(s, xf, yf, z) - oracle) > 1e-8 * std::max(1.0, oracle)) {
                    c.check(false, "cosh4t_hc " + kl(n, k, k));
                    break;
                }
            }
        }
    }
}

// 4. f2 f3 - f1 = 2 exactly over rationals; within 1e-9 at quadrature nodes.
static void criterion4(Criterion& c) {
    std::mt19937_64 rng(0xF123);
    std::uniform_int_distribution<long long> pos(1, 9), any(-9, 9);
    for (int t = 0; t < 100; ++t) {
        const Rational q(pos(rng), pos(rng));
        const Rational z(any(rng), pos(rng));
        const auto f = f_triple_from_q(q, z);
        c.check(f.f2 * f.f3 - f.f1 == Rational(2), "exact identity failed");
    }
    // float identity at Gauss-Kronrod nodes of the panels the transform uses
    for (double s : {-6.0, -2.0, 0.0, 3.0, 8.0}) {
        const std::array<std::pair<double, double>, 4> panels{
            {{-2.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}, {1.0, 2.0}}};
        for (const auto& [a, b] : panels) {
            for (int i = 0; i < 8; ++i) {
                for (double sign : {-1.0, 1.0}) {
                    const double z = 0.5 * (a + b) + sign * 0.5 * (b - a) * quad::gk_nodes[i];
                    const auto f = f_triple(s, z);
                    c.check(std::abs(f.f2 * f.f3 - f.f1 - 2.0) <= 1e-9 * std::max(1.0, f.f1),
                            "float identity at a quadrature node");
                }
            }
        }
    }
}

// 5. Convergence law sweep for n in {4,5}.
static void criterion5(Criterion& c) {
    for (int n : {4, 5}) {
        std::vector<RadialProfile> profiles;
        for (double nu : {-1.25, -1.5, -2.0})
            if (is_schwartz_power(n, nu)) profiles.push_back(RadialProfile::power_nu(n, nu));
        for (double m : {4.0, 8.0}) profiles.push_back(RadialProfile::schwartz_m(n, m));
        for (const auto& p : enumerate_classes(n, SigmaRank::Rank1)) {
            for (const auto& prof : profiles) {
                const Prediction pred = predicted_verdict(p, prof);
                const IntegralVerdict v = integrate_rank1(n, p.k, p.l, prof);
                if (pred == Prediction::Unknown) continue;
                const std::string tag = kl(n, p.k, p.l) + " " + prof.label();
                if (pred == Prediction::MustConverge) {
                    c.check(v.status == VerdictStatus::Convergent, "expected convergence " + tag);
                } else {
                    c.check(v.status == VerdictStatus::Divergent, "expected divergence " + tag);
                    c.check(v.growth_exponent > 0.0, "growth exponent not positive " + tag);
                    c.check(v.fit_r2 >= 0.99, "growth fit r2 below 0.99 " + tag);
                }
            }
        }
    }
}

// 6. Rank-1 value against the independent 1-D reduced oracle.
static void criterion6(Criterion& c) {
    auto g = [](double theta) {
        const double z = std::tan(theta);
        const double sec2 = 1.0 / (std::cos(theta) * std::cos(theta));
        return sec2 / std::sqrt((z * z * z * z + 2.0) * ((1.0 + z) * (1.0 + z) + 1.0));
    };
    const int panels = 200000;
    const double a = -M_PI / 2 + 1e-9, b = M_PI / 2 - 1e-9;
    const double h = (b - a) / (2 * panels);
    double acc = g(a) + g(b);
    for (int i = 1; i < 2 * panels; ++i) acc += g(a + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
    const double oracle = M_PI * acc * h / 3.0;
    c.check(std::abs(oracle - 5.432544834365849) < 1e-7, "oracle drifted from its frozen value");
    const auto v = integrate_rank1(3, 2, 2, RadialProfile::power_nu(3, -1.0));
    c.check(v.status == VerdictStatus::Convergent, "engine verdict not convergent");
    c.check(std::abs(v.value - oracle) <= 5e-3 * oracle, "engine value off the oracle by > 0.5%");
}

// 7. Duality of integrals across (k,l) -> (n+2-l, n+2-k).
static void criterion7(Criterion& c) {
    const RadialProfile prof = RadialProfile::power_nu(5, -1.6);
    const auto a = integrate_rank1(5, 2, 2, prof);
    const auto b = integrate_rank1(5, 5, 5, prof);
    c.check(a.status == b.status, "verdicts disagree");
    c.check(a.schedule.size() == b.schedule.size(), "schedules differ in shape");
    for (size_t i = 0; i < a.schedule.size() && i < b.schedule.size(); ++i)
        c.check(std::abs(a.schedule[i].value - b.schedule[i].value) <=
                    0.01 * std::max(std::abs(a.schedule[i].value), 1e-300),
                "truncated values differ beyond 1% at R=" +
                    std::to_string(a.schedule[i].radius));
}

// 8. The transform stabilizes at the rank-0 integral (odd n).
static void criterion8(Criterion& c) {
    struct Case { int n, k; RadialProfile prof; };
    // The n=5 power profile runs at nu=-1.25: nu=-1 sits outside the Schwartz
    // range for n=5 (threshold -1, strict), where both sides are divergent.
    const std::vector<Case> cases = {
        {3, 2, RadialProfile::power_nu(3, -1.0)},
        {3, 2, RadialProfile::schwartz_m(3, 8.0)},
        {5, 3, RadialProfile::power_nu(5, -1.25)},
        {5, 3, RadialProfile::schwartz_m(5, 8.0)},
    };
    for (const auto& cs : cases) {
        const std::string tag = "n=" + std::to_string(cs.n) + " " + cs.prof.label();
        const double lim = limit_rhs(cs.n, cs.prof);
        c.check(lim > 0.0, "limit not strictly positive " + tag);
        double prev_gap = 1e300;
        double prev = hc_value(cs.n, cs.k, cs.prof, 4.0);
        double v8 = prev;
        for (double s : {5.0, 6.0, 7.0, 8.0}) {
            v8 = hc_value(cs.n, cs.k, cs.prof, s);
            const double gap = std::abs(v8 - prev);
            c.check(gap < prev_gap, "cauchy gaps not shrinking " + tag);
            prev_gap = gap;
            prev = v8;
        }
        c.check(std::abs(v8 - lim) <= 0.02 * lim, "value at s=8 off the limit by > 2% " + tag);
    }
}

// 9. Weighted decay: two-sided for n = 4, one-sided for n = 3.
static void criterion9(Criterion& c) {
    std::vector<double> grid4;
    for (double s = -6.0; s <= 6.0 + 1e-9; s += 1.0) grid4.push_back(s);
    const auto rep4 = decay_check(4, 3, RadialProfile::schwartz_m(4, 10.0), grid4, 2);
    c.check(rep4.bounded, "n=4 weighted transform not bounded");
    c.check(std::abs(rep4.argmax_s) <= 2.0, "n=4 max not attained at |s| <= 2");

    std::vector<double> grid3;
    for (double s = -6.0; s <= 0.0 + 1e-9; s += 1.0) grid3.push_back(s);
    const auto rep3 = decay_check(3, 2, RadialProfile::schwartz_m(3, 10.0), grid3, 2);
    c.check(rep3.bounded, "n=3 weighted transform not bounded on s <= 0");
    c.check(rep3.argmax_s >= -2.0, "n=3 max not attained at s in [-2, 0]");
}

// 10. Matrix orbit limit: strictly decreasing and below 1e-3 at s = 6.
static void criterion10(Criterion& c) {
    std::mt19937_64 rng(0x0B17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {3, 5}) {
        for (int trial = 0; trial < 20; ++trial) {
            Vec xi((n - 1) / 2), eta((n - 3) / 2);
            for (int i = 0; i < xi.size(); ++i) xi[i] = u(rng);
            for (int i = 0; i < eta.size(); ++i) eta[i] = u(rng);
            const auto d = orbit_limit_check(n, xi, eta, u(rng), {2.0, 4.0, 6.0});
            c.check(d[0] > d[1] && d[1] > d[2],
                    "distance not strictly decreasing at n=" + std::to_string(n));
            c.check(d[2] < 1e-3, "distance at s=6 above 1e-3 at n=" + std::to_string(n));
        }
    }
}

// 11. Byte-identical verify reports under a fixed seed.
static void criterion11(Criterion& c) {
    const std::string cmd = std::string(CUSPIDAL_BIN) +
                            " verify --n-max 5 --seed 20260401 --output /tmp/cuspidal_accept_";
    for (const char* suffix : {"a.json", "b.json"}) {
        const int rc = std::system((cmd + suffix + " 2>/dev/null").c_str());
        c.check(rc == 0, "verify run failed");
    }
    auto slurp = [](const char* path) {
        std::string out;
        if (FILE* f = std::fopen(path, "rb")) {
            char buf[65536];
            size_t got;
            while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, got);
            std::fclose(f);
        }
        return out;
    };
    const std::string a = slurp("/tmp/cuspidal_accept_a.json");
    const std::string b = slurp("/tmp/cuspidal_accept_b.json");
    c.check(!a.empty(), "verify report missing");
    c.check(a == b, "verify reports differ between identical runs");
}

int main() {
    report(1, "classification fidelity (n = 3..8)", criterion1);
    report(2, "dimension bookkeeping (n = 3..12)", criterion2);
    report(3, "closed forms vs matrix oracle (1e4 samples/class, n <= 6)", criterion3);
    report(4, "f-triple identity, exact and at quadrature nodes", criterion4);
    report(5, "convergence law sweep (n = 4, 5)", criterion5);
    report(6, "rank-1 value vs 1-D reduced oracle (0.5%)", criterion6);
    report(7, "sigma.theta duality of truncated integrals (1%)", criterion7);
    report(8, "HC limit formula at s = 8 (2%)", criterion8);
    report(9, "weighted decay windows", criterion9);
    report(10, "N-orbit matrix limit (20 draws, s = 2,4,6)", criterion10);
    report(11, "byte-identical verify reports", criterion11);
    if (g_total_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_total_failures);
    return 1;
}
