#pragma once

#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cuspidal/catalog.hpp"
#include "cuspidal/group.hpp"
#include "cuspidal/hc.hpp"
#include "cuspidal/integrate.hpp"
#include "cuspidal/profiles.hpp"

namespace cuspidal {

struct FamilyResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

namespace verify_detail {

class Checker {
public:
    explicit Checker(std::string name) : res_{std::move(name), true, ""} {}

    void require(bool cond, const std::string& msg) {
        ++checks_;
        if (!cond && res_.pass) {
            res_.pass = false;
            res_.detail = msg;
        }
    }
    void require_close(double a, double b, double tol, const std::string& msg) {
        require(std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1.0}),
                msg + " (" + Json_like(a) + " vs " + Json_like(b) + ")");
    }
    FamilyResult finish() {
        if (res_.pass) res_.detail = std::to_string(checks_) + " checks";
        return res_;
    }

private:
    static std::string Json_like(double v) {
        std::ostringstream os;
        os.precision(10);
        os << v;
        return os.str();
    }
    FamilyResult res_;
    long checks_ = 0;
};

inline Vec random_vec(std::mt19937_64& rng, int d, double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = u(rng);
    return v;
}

inline Mat random_so_word(std::mt19937_64& rng, int n) {
    Mat X = Mat::Zero(n, n);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            X(i, j) = u(rng);
            X(j, i) = -X(i, j);
        }
    // exp via scaling and squaring on the Pade-free series is overkill here;
    // a 12-term series on a bounded skew matrix is exact to double precision
    Mat R = Mat::Identity(n, n), term = Mat::Identity(n, n);
    for (int t = 1; t <= 16; ++t) {
        term = term * X / static_cast<double>(t);
        R += term;
    }
    return R;
}

inline Mat random_h_word(std::mt19937_64& rng, int n) {
    Mat X = Mat::Zero(n, n);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) X(i, j) = u(rng);
    X = 0.5 * (X + s_matrix(n) * X * s_matrix(n)); // project to the +1 eigenspace
    X -= Mat::Identity(n, n) * (X.trace() / n);
    Mat R = Mat::Identity(n, n), term = Mat::Identity(n, n);
    for (int t = 1; t <= 18; ++t) {
        term = term * X / static_cast<double>(t);
        R += term;
    }
    return R;
}

} // namespace verify_detail

struct VerifyOptions {
    int n_max = 6;
    std::uint64_t seed = 0x2545F4914F6CDD1Dull;
    int cosh_samples = 400;     // per class; the acceptance suite uses 10^4
    int orbit_samples = 5;      // per odd n
    bool run_integrals = true;  // schedule-based families are the slow part
};

inline std::vector<FamilyResult> run_verify(const VerifyOptions& opt) {
    using verify_detail::Checker;
    using verify_detail::random_vec;
    std::vector<FamilyResult> out;
    const int n_max = std::max(opt.n_max, 3);

    { // pairing table vs half-sum definition, two independent code paths
        Checker c("root_pairing_table");
        for (int n = 3; n <= std::max(n_max, 8); ++n) {
            for (Basis b : {Basis::E, Basis::F}) {
                const Functional rho = b == Basis::E ? rho_h(n) : rho_h_bar(n);
                for (const auto& [root, val] : rho_pairing_table(b, n))
                    c.require(pair(root_functional(root, n), rho) == val,
                              "pairing table mismatch at n=" + std::to_string(n));
            }
        }
        const Functional r5 = rho_h(5);
        c.require(Rational(2) * r5.coeffs[1] == Rational(2) && r5.coeffs[0] == Rational(0),
                  "rho_h(5) coefficients");
        out.push_back(c.finish());
    }

    { // canonicalization is idempotent; pairing is gauge invariant
        Checker c("canonicalization");
        std::mt19937_64 rng(opt.seed ^ 0x11);
        std::uniform_int_distribution<long long> num(-40, 40), den(1, 12);
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 3 + static_cast<int>(rng() % 6);
            std::vector<Rational> a, b;
            for (int i = 0; i < n; ++i) {
                a.emplace_back(num(rng), den(rng));
                b.emplace_back(num(rng), den(rng));
            }
            const Functional fa = canonicalize(Basis::E, a), fb = canonicalize(Basis::E, b);
            const Functional faa = canonicalize(Basis::E, fa.coeffs);
            c.require(faa.coeffs == fa.coeffs, "canonicalization not idempotent");
            const Rational shift(7, 3);
            std::vector<Rational> ashift = a;
            for (auto& x : ashift) x += shift;
            c.require(pair(canonicalize(Basis::E, ashift), fb) == pair(fa, fb),
                      "pairing not gauge invariant");
        }
        out.push_back(c.finish());
    }

    { // sigma actions on roots and positive systems
        Checker c("sigma_theta_root_action");
        for (int n = 3; n <= std::max(n_max, 8); ++n) {
            for (const Root& r : positive_roots(Basis::E, n))
                c.require(sigma_root(sigma_root(r, n), n) == r, "sigma not an involution");
            for (const auto& p : enumerate_classes(n, SigmaRank::Rank1)) {
                const auto dual = sigma_theta_dual(p);
                std::set<Root> image, expected;
                for (const Root& r : positive_system(p).roots) {
                    const Root wr = w_root(r, n);
                    image.insert(sigma_theta_root(wr, n));
                }
                for (const Root& r : positive_system(dual).roots) expected.insert(r);
                c.require(image == expected, "sigma.theta dual positive system mismatch at n=" +
                                                 std::to_string(n));
            }
        }
        out.push_back(c.finish());
    }

    { // catalog structure: counts, parity law, p_star inclusion
        Checker c("catalog_structure");
        for (int n = 3; n <= n_max; ++n) {
            const auto r1 = enumerate_classes(n, SigmaRank::Rank1);
            c.require(static_cast<int>(r1.size()) == (n - 1) * n / 2, "rank-1 count");
            c.require(static_cast<int>(enumerate_classes(n, SigmaRank::Rank0).size()) == n,
                      "rank-0 count");
            std::vector<std::pair<int, int>> hcomp;
            for (const auto& p : r1)
                if (is_h_compatible(p)) hcomp.emplace_back(p.k, p.l);
            if (n % 2 == 0) {
                c.require(hcomp == std::vector<std::pair<int, int>>{{(n + 2) / 2, (n + 2) / 2}},
                          "even-n h-compatible set");
                for (const auto& [k, l] : hcomp)
                    c.require(k == l, "even n: h-compatible must be in P_*");
            } else {
                const int m = (n + 1) / 2;
                c.require(hcomp == std::vector<std::pair<int, int>>{{m, m}, {m, m + 1}, {m + 1, m + 1}},
                          "odd-n h-compatible set");
            }
            int hcomp0 = 0;
            for (const auto& q : enumerate_classes(n, SigmaRank::Rank0))
                if (is_h_compatible(q)) ++hcomp0;
            c.require(hcomp0 == (n % 2 == 1 ? 1 : 0), "rank-0 h-compatible count");
        }
        out.push_back(c.finish());
    }

    { // dimension bookkeeping and duality of dims
        Checker c("dimension_bookkeeping");
        for (int n = 3; n <= std::max(n_max, 12); ++n) {
            for (const auto& p : enumerate_classes(n, SigmaRank::Rank1)) {
                const Dims d = dims(p);
                c.require(d.n_cap_h + d.u == n * (n - 1) / 2, "rank-1 dim sum");
                if (p.k == p.l) c.require(d.u == n - 1, "P_* classes have dim u = n-1");
                const auto q = sigma_theta_dual(p);
                c.require(sigma_theta_dual(q) == p, "dual not an involution");
                c.require(is_h_compatible(q) == is_h_compatible(p), "dual changes h-compatibility");
                c.require(dims(q).u == d.u && dims(q).n_cap_h == d.n_cap_h,
                          "dual changes dimensions");
                c.require(q.k - 2 == n - p.l && n - q.l == p.k - 2, "dual index swap");
            }
            for (const auto& q : enumerate_classes(n, SigmaRank::Rank0)) {
                const Dims d = dims(q);
                c.require(d.n_cap_h + d.u == n * (n - 1) / 2 && d.u == n - 1, "rank-0 dims");
            }
        }
        out.push_back(c.finish());
    }

    { // h-compatibility: pairing sweep vs closed-form index test
        Checker c("h_compatibility_two_routes");
        for (int n = 3; n <= std::max(n_max, 12); ++n) {
            for (const auto& p : enumerate_classes(n, SigmaRank::Rank1))
                c.require(h_compatible_by_pairing(p) == h_compatible_by_index(p),
                          "rank-1 routes disagree");
            for (const auto& q : enumerate_classes(n, SigmaRank::Rank0))
                c.require(h_compatible_by_pairing(q) == h_compatible_by_index(q),
                          "rank-0 routes disagree");
        }
        out.push_back(c.finish());
    }

    { // permutation realization round trip
        Checker c("tau_roundtrip");
        for (int n = 3; n <= n_max; ++n) {
            for (const auto& p : enumerate_classes(n, SigmaRank::Rank1)) {
                const PositiveSystem ps = positive_system(p);
                c.require(static_cast<int>(ps.roots.size()) == n * (n - 1) / 2, "root count");
                const auto [k, l] = kl_from_tau(ps.tau, n);
                c.require(k == p.k && l == p.l, "tau does not reproduce (k,l)");
                for (const Root& r : ps.roots)
                    c.require(ps.tau[static_cast<size_t>(r.i)] < ps.tau[static_cast<size_t>(r.j)],
                              "membership rule violated");
            }
            for (const auto& q : enumerate_classes(n, SigmaRank::Rank0)) {
                const PositiveSystem ps = positive_system(q);
                c.require(static_cast<int>(ps.roots.size()) == n * (n - 1) / 2, "root count rank0");
                c.require(ps.tau[static_cast<size_t>(n)] == q.k, "tau(n) != k");
            }
        }
        out.push_back(c.finish());
    }

    { // delta exponent for the diagonal classes
        Checker c("delta_exponent");
        for (int n = 3; n <= n_max; ++n)
            for (int k = 2; k <= n; ++k)
                c.require(delta_exponent(ParabolicClass::rank1(n, k, k)) == Rational(1),
                          "delta exponent != 1");
        out.push_back(c.finish());
    }

    { // matrix constructors and the radial invariant
        Checker c("group_identities");
        std::mt19937_64 rng(opt.seed ^ 0x22);
        for (int n = 3; n <= std::min(n_max, 7); ++n) {
            c.require(std::abs(radial(Mat::Identity(n, n)).value - 2.0) < 1e-12, "radial(e) != 2");
            c.require(std::abs(radial(kappa_matrix(n)).value - 2.0) < 1e-9, "radial(kappa) != 2");
            c.require(std::abs(radial(k0_matrix(n)).value - 2.0) < 1e-9, "radial(k0) != 2");
            c.require(in_h(k0_matrix(n)), "k0 not in H");
            c.require(std::abs(kappa_matrix(n).determinant() - 1.0) < 1e-9, "det kappa");
            c.require(std::abs(k0_matrix(n).determinant() - 1.0) < 1e-9, "det k0");
            for (double t : {0.0, 0.5, -1.0}) {
                c.require(std::abs(radial(a_t(n, t)).value - 2.0 * std::cosh(4.0 * t)) <
                              1e-9 * std::cosh(4.0 * t),
                          "radial(a_t)");
            }
            for (int trial = 0; trial < 10; ++trial) {
                const Vec x = random_vec(rng, n - 2), y = random_vec(rng, n - 2);
                const double z = random_vec(rng, 1)[0];
                const Mat g = u_elem(n, x, y, z) * a_t(n, 0.3);
                c.require((sigma_of(theta_of(g)) - theta_of(sigma_of(g))).norm() < 1e-10,
                          "sigma and theta do not commute");
                c.require(std::abs(u_elem(n, x, y, z).determinant() - 1.0) < 1e-9, "det u");
                const Mat k = verify_detail::random_so_word(rng, n);
                const Mat h = verify_detail::random_h_word(rng, n);
                c.require(in_h(h, 1e-8), "random h word not in H");
                const double r0 = radial(g).value;
                c.require(std::abs(radial(k * g * h).value - r0) < 1e-8 * std::max(1.0, r0),
                          "radial not K x H invariant");
            }
        }
        out.push_back(c.finish());
    }

    { // closed forms for 2cosh(4t) against the matrix oracle
        Checker c("cosh_closed_forms");
        std::mt19937_64 rng(opt.seed ^ 0x33);
        std::uniform_real_distribution<double> u(-2.0, 2.0), us(-1.5, 1.5);
        for (int n = 3; n <= std::min(n_max, 6); ++n) {
            for (int trial = 0; trial < opt.cosh_samples; ++trial) {
                const Vec x = random_vec(rng, n - 2), y = random_vec(rng, n - 2);
                const double z = u(rng);
                const double lhs = cosh4t_rank1(x, y, z);
                const double rhs = radial(u_elem(n, x, y, z)).value;
                c.require(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, rhs), "cosh4t_rank1 vs matrix");
            }
            for (const auto& p : enumerate_classes(n, SigmaRank::Rank1)) {
                for (int trial = 0; trial < opt.cosh_samples / 10 + 4; ++trial) {
                    Vec x = Vec::Zero(n - 2), y = Vec::Zero(n - 2);
                    for (int i = p.k - 2; i < n - 2; ++i) x[i] = u(rng);
                    for (int i = 0; i < p.l - 2; ++i) y[i] = u(rng);
                    const double z = u(rng);
                    const double a = cosh4t_rank1_reduced(n, p.k, p.l, x, y, z);
                    const double b = radial(u_elem(n, x, y, z)).value;
                    c.require(std::abs(a - b) <= 1e-8 * std::max(1.0, b), "reduced form vs matrix");
                }
            }
            for (int k = 1; k <= n; ++k) {
                for (int trial = 0; trial < opt.cosh_samples / 10 + 4; ++trial) {
                    Vec x = Vec::Zero(n - 1), y = Vec::Zero(n - 1);
                    for (int i = 0; i < k - 1; ++i) x[i] = u(rng);
                    for (int i = k - 1; i < n - 1; ++i) y[i] = u(rng);
                    const double a = cosh4t_rank0(x, y);
                    const double b = radial(v_elem(n, x, y)).value;
                    c.require(std::abs(a - b) <= 1e-8 * std::max(1.0, b), "rank-0 form vs matrix");
                }
            }
            for (int k = 2; k <= n; ++k) {
                for (int trial = 0; trial < opt.cosh_samples / 10 + 4; ++trial) {
                    const double s = us(rng), z = u(rng);
                    const Vec xf = random_vec(rng, n - k), yf = random_vec(rng, k - 2);
                    Vec x = Vec::Zero(n - 2), y = Vec::Zero(n - 2);
                    x.tail(n - k) = xf;
                    y.head(k - 2) = yf;
                    const double a = cosh4t_hc(s, xf, yf, z);
                    const double b = radial(a_t(n, s) * u_elem(n, x, y, z)).value;
                    c.require(std::abs(a - b) <= 1e-8 * std::max(1.0, b), "hc form vs matrix");
                }
            }
        }
        out.push_back(c.finish());
    }

    { // f-triple identities: exact in rational arithmetic, bounded in floats
        Checker c("f_triple_identities");
        std::mt19937_64 rng(opt.seed ^ 0x44);
        std::uniform_int_distribution<long long> num(1, 9), zden(1, 7), znum(-9, 9);
        for (int trial = 0; trial < 100; ++trial) {
            const Rational q(num(rng), zden(rng));
            const Rational z(znum(rng), zden(rng));
            const auto f = f_triple_from_q(q, z);
            c.require(f.f2 * f.f3 - f.f1 == Rational(2), "f2 f3 - f1 != 2 exactly");
        }
        std::uniform_real_distribution<double> us(-3.0, 3.0), uz(-4.0, 4.0);
        for (int trial = 0; trial < 500; ++trial) {
            const double s = us(rng), z = uz(rng);
            const auto f = f_triple(s, z);
            c.require(std::abs(f.f2 * f.f3 - f.f1 - 2.0) <= 1e-9 * std::max(1.0, std::abs(f.f1)),
                      "float f identity");
            c.require(f.f1 >= 2.0 - 1e-12, "f1 >= 2");
            c.require(f.f1 >= 1.0 + z * z - 1e-12, "f1 >= 1+z^2");
            c.require(f.f1 <= f.f2 * f.f3 + 1e-12 && f.f2 * f.f3 <= 2.0 * f.f1 + 1e-9 * f.f1,
                      "f1 <= f2 f3 <= 2 f1");
        }
        out.push_back(c.finish());
    }

    { // c' lower bounds
        Checker c("c_prime_bounds");
        std::mt19937_64 rng(opt.seed ^ 0x55);
        std::uniform_real_distribution<double> u(-6.0, 6.0), up(0.0, 6.0);
        for (int trial = 0; trial < 2000; ++trial) {
            const double rv2 = up(rng) * up(rng), rw2 = up(rng) * up(rng), z = u(rng);
            const double cp = c_prime(rv2, rw2, z);
            c.require(cp >= 2.0 - 1e-9, "c' < 2");
            const double bound = 0.25 / (rw2 + 1.0) * ((1.0 - z) * (1.0 - z) + 1.0) *
                                     (rv2 + (1.0 + z) * (1.0 + z) + 1.0) +
                                 rw2 + 1.0;
            c.require(cp >= bound - 1e-9 * std::max(1.0, bound), "c' lower bound violated");
        }
        out.push_back(c.finish());
    }

    { // N-orbit limit: distances decrease and the SL(2) core converges
        Checker c("orbit_limit");
        std::mt19937_64 rng(opt.seed ^ 0x66);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int n = 3; n <= n_max; n += 2) {
            for (int trial = 0; trial < opt.orbit_samples; ++trial) {
                Vec xi(( n - 1) / 2), eta((n - 3) / 2);
                for (int i = 0; i < xi.size(); ++i) xi[i] = u(rng);
                for (int i = 0; i < eta.size(); ++i) eta[i] = u(rng);
                const double om = u(rng);
                const auto d = orbit_limit_check(n, xi, eta, om, {2.0, 4.0, 6.0});
                c.require(d[0] > d[1] && d[1] > d[2], "orbit distance not strictly decreasing");
                c.require(d[2] < 1e-3, "orbit distance at s=6 above threshold");
            }
        }
        // SL(2) core: a_s n_{-1} sigma(a_s n_{-1})^{-1} -> rotation by pi/2
        Mat nm1 = Mat::Identity(2, 2);
        nm1(0, 1) = -1.0;
        Mat kpi2 = Mat::Zero(2, 2);
        kpi2(0, 1) = -1.0;
        kpi2(1, 0) = 1.0;
        double prev = 1e9;
        for (double s : {2.0, 4.0, 6.0}) {
            Mat A = Mat::Zero(2, 2);
            A(0, 0) = std::exp(s);
            A(1, 1) = std::exp(-s);
            const Mat g = A * nm1;
            const Mat S2 = (Mat(2, 2) << 0, -1, -1, 0).finished();
            const double dist = (g * S2 * g.inverse() * S2 - kpi2).norm();
            c.require(dist < prev, "SL(2) core distance not decreasing");
            prev = dist;
        }
        c.require(prev < 1e-4, "SL(2) core distance too large at s=6");
        out.push_back(c.finish());
    }

    { // radial profiles and the u=1 seminorm estimate
        Checker c("profiles_and_seminorms");
        const RadialProfile p1 = RadialProfile::power_nu(5, -1.0);
        c.require(std::abs(p1(2.0) - 0.5) < 1e-15, "PowerNu(-1)(2)");
        const RadialProfile p2 = RadialProfile::schwartz_m(5, 0.0);
        c.require(std::abs(p2(2.0) - 0.5) < 1e-15, "SchwartzM(0)(2) at n=5");
        c.require(is_schwartz_power(5, -1.25) && !is_schwartz_power(5, -1.0) &&
                      is_schwartz_power(3, -0.6),
                  "schwartz power threshold");
        for (int n : {3, 4, 5}) {
            const RadialProfile sm = RadialProfile::schwartz_m(n, 3.0);
            const auto r = seminorm_mu1m(sm, 3.0);
            c.require(r.finite && std::abs(r.value - 1.0) < 1e-12, "weight does not cancel profile");
            c.require(!seminorm_mu1m(RadialProfile::power_nu(n, 0.0), 0.0).finite,
                      "PowerNu(0) seminorm should be infinite");
            const double nu = 0.25 * (1.0 - n) - 0.3;
            c.require(seminorm_mu1m(RadialProfile::power_nu(n, nu), 0.0).finite,
                      "schwartz power seminorm should be finite");
            // monotone decrease in r for decaying profiles
            double prev = 1e300;
            for (double r2 = 2.0; r2 < 50.0; r2 *= 1.7) {
                const double v = RadialProfile::schwartz_m(n, 2.0)(r2);
                c.require(v < prev, "profile not decreasing");
                prev = v;
            }
        }
        out.push_back(c.finish());
    }

    if (opt.run_integrals) {
        { // convergence law on a fixed sample of classes and profiles
            Checker c("convergence_law_sample");
            const EngineConfig cfg;
            struct Case { int n, k, l; double param; bool power; };
            const std::vector<Case> cases = {
                {4, 3, 3, -1.25, true}, {4, 3, 3, 8.0, false}, {5, 3, 4, -1.5, true},
                {5, 2, 2, -1.25, true}, {5, 5, 5, -1.25, true}, {5, 3, 3, 4.0, false},
                {6, 4, 4, -1.5, true},  {6, 2, 2, -1.5, true},
            };
            for (const auto& cs : cases) {
                if (cs.n > n_max) continue;
                const auto p = ParabolicClass::rank1(cs.n, cs.k, cs.l);
                const RadialProfile prof = cs.power ? RadialProfile::power_nu(cs.n, cs.param)
                                                    : RadialProfile::schwartz_m(cs.n, cs.param);
                const Prediction pred = predicted_verdict(p, prof);
                if (pred == Prediction::Unknown) continue;
                const IntegralVerdict v = integrate_rank1(cs.n, cs.k, cs.l, prof, cfg);
                const bool match = (pred == Prediction::MustConverge &&
                                    v.status == VerdictStatus::Convergent) ||
                                   (pred == Prediction::MustDiverge &&
                                    v.status == VerdictStatus::Divergent);
                c.require(match, "verdict disagrees with prediction at n=" + std::to_string(cs.n) +
                                     " (" + std::to_string(cs.k) + "," + std::to_string(cs.l) + ")");
            }
            if (n_max >= 4) {
                const auto q = integrate_rank0(4, 2, RadialProfile::power_nu(4, -0.9));
                c.require(q.status == VerdictStatus::Divergent, "rank-0 divergent case misclassified");
            }
            out.push_back(c.finish());
        }

        { // quadrature vs seeded Monte-Carlo on convergent cases
            Checker c("monte_carlo_agreement");
            EngineConfig cfg;
            cfg.mc_samples = 1 << 18;
            if (n_max >= 4) {
                const RadialProfile prof = RadialProfile::power_nu(4, -2.5);
                const IntegralVerdict v = integrate_rank1(4, 3, 3, prof, cfg);
                const McResult mc = mc_rank1(4, 3, 3, prof, cfg);
                c.require(v.status == VerdictStatus::Convergent, "expected convergent");
                c.require(std::abs(v.value - mc.value) <=
                              3.0 * mc.std_error + 1e-3 * std::abs(v.value),
                          "rank-1 MC disagrees with quadrature");
                const RadialProfile prof0 = RadialProfile::power_nu(3, -2.0);
                const IntegralVerdict v0 = integrate_rank0(3, 2, prof0, cfg);
                const McResult mc0 = mc_rank0(3, 2, prof0, cfg);
                c.require(v0.status == VerdictStatus::Convergent &&
                              std::abs(v0.value - mc0.value) <=
                                  3.0 * mc0.std_error + 1e-3 * std::abs(v0.value),
                          "rank-0 MC disagrees with quadrature");
            }
            out.push_back(c.finish());
        }

        { // duality of integrals across the index involution
            Checker c("integral_duality");
            if (n_max >= 5) {
                EngineConfig cfg;
                cfg.radii = {2, 4, 8, 16, 32, 64};
                const RadialProfile prof = RadialProfile::power_nu(5, -1.6);
                const IntegralVerdict a = integrate_rank1(5, 2, 2, prof, cfg);
                const IntegralVerdict b = integrate_rank1(5, 5, 5, prof, cfg);
                c.require(a.status == b.status, "dual verdicts differ");
                for (size_t i = 0; i < a.schedule.size(); ++i)
                    c.require(std::abs(a.schedule[i].value - b.schedule[i].value) <=
                                  0.01 * std::max(a.schedule[i].value, 1e-300),
                              "dual truncated values differ beyond 1%");
            }
            out.push_back(c.finish());
        }

        { // rank-0 integrand sandwich between product forms
            Checker c("rank0_sandwich");
            std::mt19937_64 rng(opt.seed ^ 0x77);
            std::uniform_real_distribution<double> u(0.0, 8.0);
            for (int trial = 0; trial < 2000; ++trial) {
                const double x2 = u(rng), y2 = u(rng);
                const double mid = 2.0 + 4.0 * x2 + 4.0 * y2 + 4.0 * x2 * y2;
                const double lo = (1.0 + 2.0 * x2) * (1.0 + 2.0 * y2);
                c.require(lo <= mid + 1e-12 && mid <= 2.0 * lo + 1e-12, "sandwich violated");
            }
            out.push_back(c.finish());
        }

        { // Harish-Chandra transform quick identities
            Checker c("hc_quick");
            const RadialProfile prof = RadialProfile::power_nu(3, -1.0);
            const HcConfig hcfg;
            const double at0 = hc_value(3, 2, prof, 0.0, hcfg);
            EngineConfig cfg;
            const IntegralVerdict v = integrate_rank1(3, 2, 2, prof, cfg);
            c.require(v.status == VerdictStatus::Convergent, "hc base integral not convergent");
            c.require(std::abs(at0 - v.value) <= 5e-3 * std::abs(v.value),
                      "hc at s=0 differs from the plain integral");
            const double direct = hc_value(3, 2, prof, 1.25, hcfg);
            const double refactored = std::exp(1.25) * hc_integral_value(3, 2, prof, 1.25, hcfg);
            c.require(direct == refactored, "prefactor refactoring changed the value");
            bool threw = false;
            try {
                hc_value(4, 2, RadialProfile::schwartz_m(4, 8.0), 0.0, hcfg);
            } catch (const std::invalid_argument&) {
                threw = true;
            }
            c.require(threw, "hc accepted a non-h-compatible class");
            out.push_back(c.finish());
        }
    }

    return out;
}

} // namespace cuspidal
