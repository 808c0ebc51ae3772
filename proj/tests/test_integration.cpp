#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cuspidal/integrate.hpp"

using namespace cuspidal;

namespace {

// Composite Simpson rule; deliberately independent of the adaptive engine.
template <class F>
double simpson(const F& f, double a, double b, int panels) {
    const double h = (b - a) / (2 * panels);
    double acc = f(a) + f(b);
    for (int i = 1; i < 2 * panels; ++i) acc += f(a + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// One-dimensional reduction of the (3,2,2) integral for phi_nu with nu = -1:
//   pi * int dz [(z^4+2)((1+z)^2+1)]^{-1/2},
// evaluated on a tangent-compactified Simpson grid.
double oracle_rank1_322() {
    auto g = [](double theta) {
        const double z = std::tan(theta);
        const double sec2 = 1.0 / (std::cos(theta) * std::cos(theta));
        return sec2 / std::sqrt((z * z * z * z + 2.0) * ((1.0 + z) * (1.0 + z) + 1.0));
    };
    const double eps = 1e-9;
    return M_PI * simpson(g, -M_PI / 2 + eps, M_PI / 2 - eps, 200000);
}

// Fine-grid 2-D oracle for the (3,2) rank-0 integral with nu = -1.
double oracle_rank0_32() {
    auto g = [](double alpha, double beta) {
        const double x = std::tan(alpha), y = std::tan(beta);
        const double jac = 1.0 / (std::cos(alpha) * std::cos(alpha) * std::cos(beta) * std::cos(beta));
        return jac / (2.0 + 4.0 * x * x + 4.0 * y * y + 4.0 * x * x * y * y);
    };
    const double eps = 1e-9;
    auto inner = [&](double alpha) {
        auto h = [&](double beta) { return g(alpha, beta); };
        return simpson(h, -M_PI / 2 + eps, M_PI / 2 - eps, 1200);
    };
    return simpson(inner, -M_PI / 2 + eps, M_PI / 2 - eps, 1200);
}

} // namespace

TEST_CASE("rank-1 value against the 1-D reduced oracle") {
    const double oracle = oracle_rank1_322();
    REQUIRE(oracle == Catch::Approx(5.432544834365849).epsilon(1e-8)); // frozen from the oracle
    const auto v = integrate_rank1(3, 2, 2, RadialProfile::power_nu(3, -1.0));
    REQUIRE(v.status == VerdictStatus::Convergent);
    REQUIRE(v.value == Catch::Approx(oracle).epsilon(5e-3));
}

TEST_CASE("rank-0 value against the 2-D fine-grid oracle") {
    const double oracle = oracle_rank0_32();
    REQUIRE(oracle == Catch::Approx(2.912373692708428).epsilon(1e-7)); // frozen from the oracle
    const auto v = integrate_rank0(3, 2, RadialProfile::power_nu(3, -1.0));
    REQUIRE(v.status == VerdictStatus::Convergent);
    REQUIRE(v.value == Catch::Approx(oracle).epsilon(5e-3));
}

TEST_CASE("predicted verdicts") {
    REQUIRE(predicted_verdict(ParabolicClass::rank1(5, 3, 3), RadialProfile::power_nu(5, -1.25)) ==
            Prediction::MustConverge);
    REQUIRE(predicted_verdict(ParabolicClass::rank1(5, 2, 2), RadialProfile::power_nu(5, -1.25)) ==
            Prediction::MustDiverge);
    REQUIRE(predicted_verdict(ParabolicClass::rank1(5, 3, 3), RadialProfile::power_nu(5, -1.0)) ==
            Prediction::Unknown); // boundary exponent
    REQUIRE(predicted_verdict(ParabolicClass::rank1(5, 2, 2), RadialProfile::power_nu(5, -1.5)) ==
            Prediction::Unknown); // rank-1 divergence bound is strict
    REQUIRE(predicted_verdict(ParabolicClass::rank0(4, 2), RadialProfile::power_nu(4, -1.0)) ==
            Prediction::MustDiverge); // rank-0 bound is not strict
    REQUIRE(predicted_verdict(ParabolicClass::rank0(5, 3), RadialProfile::schwartz_m(5, 3.0)) ==
            Prediction::MustConverge);
    REQUIRE(predicted_verdict(ParabolicClass::rank0(5, 3), RadialProfile::schwartz_m(5, 1.0)) ==
            Prediction::Unknown);
}

TEST_CASE("cited verdicts") {
    SECTION("rank 1") {
        REQUIRE(integrate_rank1(5, 3, 3, RadialProfile::schwartz_m(5, 8.0)).status ==
                VerdictStatus::Convergent);
        const auto d = integrate_rank1(5, 2, 2, RadialProfile::power_nu(5, -1.25));
        REQUIRE(d.status == VerdictStatus::Divergent);
        REQUIRE(d.growth_exponent > 0.0);
        REQUIRE(d.fit_r2 > 0.99);
    }
    SECTION("rank 0") {
        REQUIRE(integrate_rank0(5, 3, RadialProfile::schwartz_m(5, 3.0)).status ==
                VerdictStatus::Convergent);
        const auto d = integrate_rank0(4, 2, RadialProfile::power_nu(4, -0.9));
        REQUIRE(d.status == VerdictStatus::Divergent);
        REQUIRE(d.growth_exponent > 0.05);
        REQUIRE(d.fit_r2 > 0.99);
    }
    SECTION("log-divergent boundary case of rank 0") {
        // n=3, k=1, nu=-1: constant schedule increments, slope near zero
        const auto d = integrate_rank0(3, 1, RadialProfile::power_nu(3, -1.0));
        REQUIRE(d.status == VerdictStatus::Divergent);
        REQUIRE(std::abs(d.growth_exponent) < 0.05);
    }
}

TEST_CASE("schedule invariants") {
    SECTION("convergent schedules are Cauchy-like") {
        const auto v = integrate_rank1(4, 3, 3, RadialProfile::power_nu(4, -1.25));
        REQUIRE(v.status == VerdictStatus::Convergent);
        for (size_t i = 2; i < v.schedule.size(); ++i) {
            const double d1 = v.schedule[i].value - v.schedule[i - 1].value;
            const double d0 = v.schedule[i - 1].value - v.schedule[i - 2].value;
            if (d0 > 1e-9 * v.value) REQUIRE(d1 <= 0.95 * d0);
        }
    }
    SECTION("divergent schedules grow over at least four steps") {
        const auto v = integrate_rank1(5, 2, 2, RadialProfile::power_nu(5, -1.25));
        REQUIRE(v.schedule.size() >= 5);
        int growing = 0;
        for (size_t i = 2; i < v.schedule.size(); ++i) {
            const double d1 = v.schedule[i].value - v.schedule[i - 1].value;
            const double d0 = v.schedule[i - 1].value - v.schedule[i - 2].value;
            growing += d1 > 0.95 * d0 ? 1 : 0;
        }
        REQUIRE(growing >= 4);
    }
    SECTION("too short a schedule is inconclusive") {
        EngineConfig cfg;
        cfg.radii = {2, 4, 8, 16, 32};
        REQUIRE(integrate_rank1(4, 3, 3, RadialProfile::power_nu(4, -1.25), cfg).status ==
                VerdictStatus::Inconclusive);
    }
}

TEST_CASE("rank-0 verdicts follow the product-integral criterion") {
    // the integrand is sandwiched between product forms, so a power profile
    // converges exactly when both radial factors do
    struct Case { int n, k; double nu; bool convergent; };
    const std::vector<Case> cases = {
        {4, 2, -1.10, true}, {4, 2, -0.90, false}, {3, 2, -0.45, false},
        {3, 2, -0.75, true}, {5, 3, -1.15, true},  {5, 2, -0.60, false},
    };
    for (const auto& cs : cases) {
        const auto v = integrate_rank0(cs.n, cs.k, RadialProfile::power_nu(cs.n, cs.nu));
        REQUIRE(v.status ==
                (cs.convergent ? VerdictStatus::Convergent : VerdictStatus::Divergent));
    }
}

TEST_CASE("far tails beyond the truncation window") {
    // On these classes the dominating profile keeps shrinking within any
    // practical truncation radius, yet its far tail changes character and
    // stops being integrable; the engine must refuse to certify rather
    // than report whatever the floating-point range happens to capture.
    REQUIRE(integrate_rank1(4, 3, 4, RadialProfile::schwartz_m(4, 8.0)).status ==
            VerdictStatus::Inconclusive);
    REQUIRE(integrate_rank1(5, 4, 5, RadialProfile::schwartz_m(5, 8.0)).status ==
            VerdictStatus::Inconclusive);
    // while a log-slow but genuinely integrable tail still resolves
    const auto ok = integrate_rank1(5, 3, 4, RadialProfile::schwartz_m(5, 4.0));
    REQUIRE(ok.status == VerdictStatus::Convergent);
    REQUIRE(ok.value > 1.2);
    REQUIRE(ok.value < 1.35);
}

TEST_CASE("monotonicity in the profile parameter") {
    const double v_m4 = integrate_rank1(4, 3, 3, RadialProfile::schwartz_m(4, 4.0)).value;
    const double v_m8 = integrate_rank1(4, 3, 3, RadialProfile::schwartz_m(4, 8.0)).value;
    REQUIRE(v_m8 < v_m4);
    const double v_n1 = integrate_rank1(4, 3, 3, RadialProfile::power_nu(4, -1.25)).value;
    const double v_n2 = integrate_rank1(4, 3, 3, RadialProfile::power_nu(4, -2.0)).value;
    REQUIRE(v_n2 < v_n1);
}

TEST_CASE("duality of the cuspidal integrals") {
    const RadialProfile prof = RadialProfile::power_nu(5, -1.6);
    const auto a = integrate_rank1(5, 2, 2, prof);
    const auto b = integrate_rank1(5, 5, 5, prof);
    REQUIRE(a.status == VerdictStatus::Convergent);
    REQUIRE(b.status == VerdictStatus::Convergent);
    REQUIRE(a.value == Catch::Approx(b.value).epsilon(0.01));
    for (size_t i = 0; i < a.schedule.size(); ++i)
        REQUIRE(a.schedule[i].value == Catch::Approx(b.schedule[i].value).epsilon(0.01));
}

TEST_CASE("Monte Carlo agrees with quadrature on convergent cases") {
    EngineConfig cfg;
    cfg.mc_samples = 1 << 19;
    SECTION("rank 1") {
        const RadialProfile prof = RadialProfile::power_nu(4, -2.5);
        const auto v = integrate_rank1(4, 3, 3, prof, cfg);
        const auto mc = mc_rank1(4, 3, 3, prof, cfg);
        REQUIRE(v.status == VerdictStatus::Convergent);
        REQUIRE(std::abs(v.value - mc.value) <= 3.0 * mc.std_error + 1e-3 * v.value);
    }
    SECTION("rank 0") {
        const RadialProfile prof = RadialProfile::power_nu(3, -2.0);
        const auto v = integrate_rank0(3, 2, prof, cfg);
        const auto mc = mc_rank0(3, 2, prof, cfg);
        REQUIRE(v.status == VerdictStatus::Convergent);
        REQUIRE(std::abs(v.value - mc.value) <= 3.0 * mc.std_error + 1e-3 * v.value);
    }
    SECTION("seeded runs reproduce exactly") {
        const RadialProfile prof = RadialProfile::power_nu(3, -2.0);
        const auto m1 = mc_rank0(3, 2, prof, cfg);
        const auto m2 = mc_rank0(3, 2, prof, cfg);
        REQUIRE(m1.value == m2.value);
        REQUIRE(m1.std_error == m2.std_error);
    }
}

TEST_CASE("reduced integrand ingredients") {
    SECTION("c' is at least 2 and matches the displayed form at the origin") {
        REQUIRE(c_prime(0.0, 0.0, 0.0) == Catch::Approx(2.0));
        for (double z : {-3.0, -1.0, 0.0, 1.0, 2.5})
            for (double rv2 : {0.0, 1.0, 9.0})
                for (double rw2 : {0.0, 0.5, 4.0}) REQUIRE(c_prime(rv2, rw2, z) >= 2.0 - 1e-12);
    }
    SECTION("profile dimension mismatch is rejected") {
        REQUIRE_THROWS_AS(integrate_rank1(5, 3, 3, RadialProfile::power_nu(4, -1.25)),
                          std::invalid_argument);
    }
    SECTION("linearity in the profile") {
        const RadialProfile prof = RadialProfile::power_nu(4, -1.5);
        const auto v1 = integrate_rank1(4, 3, 3, prof);
        const auto v2 = integrate_rank1(4, 3, 3, prof.scaled(3.0));
        REQUIRE(v2.value == Catch::Approx(3.0 * v1.value).epsilon(1e-6));
    }
}
