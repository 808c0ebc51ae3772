#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "cuspidal/rational.hpp"

namespace cuspidal {

// Functionals live on one of two maximal split tori: the diagonal torus
// (basis e_1..e_n) or its kappa-conjugate inside H (basis f_1..f_n).
// The two are kept strictly apart; there is no implicit transport.
enum class Basis { E, F };

inline const char* basis_name(Basis b) { return b == Basis::E ? "e" : "f"; }

// A linear functional sum c_i e_i (or f_i), stored canonically with
// sum of coefficients equal to zero (trace-zero gauge).
struct Functional {
    Basis basis = Basis::E;
    std::vector<Rational> coeffs; // size n, canonical

    int n() const { return static_cast<int>(coeffs.size()); }

    static Functional zero(Basis b, int n) {
        Functional f;
        f.basis = b;
        f.coeffs.assign(static_cast<size_t>(n), Rational(0));
        return f;
    }
};

// Subtract the mean so that coefficients sum to zero. Idempotent.
inline Functional canonicalize(Basis basis, std::vector<Rational> coeffs) {
    Rational sum(0);
    for (const auto& c : coeffs) sum += c;
    const Rational mean = sum / Rational(static_cast<long long>(coeffs.size()));
    for (auto& c : coeffs) c -= mean;
    Functional f;
    f.basis = basis;
    f.coeffs = std::move(coeffs);
    return f;
}

inline Functional operator+(const Functional& a, const Functional& b) {
    if (a.basis != b.basis || a.n() != b.n())
        throw std::invalid_argument("functional sum: incompatible operands");
    Functional r = a;
    for (int i = 0; i < a.n(); ++i) r.coeffs[static_cast<size_t>(i)] += b.coeffs[static_cast<size_t>(i)];
    return r;
}

inline Functional operator-(const Functional& a, const Functional& b) {
    if (a.basis != b.basis || a.n() != b.n())
        throw std::invalid_argument("functional difference: incompatible operands");
    Functional r = a;
    for (int i = 0; i < a.n(); ++i) r.coeffs[static_cast<size_t>(i)] -= b.coeffs[static_cast<size_t>(i)];
    return r;
}

inline Functional operator*(const Rational& s, const Functional& a) {
    Functional r = a;
    for (auto& c : r.coeffs) c *= s;
    return r;
}

// <mu,nu> = sum_j mu_j nu_j on canonical (sum-zero) coefficients.
// Mixed-basis pairing is a usage error.
inline Rational pair(const Functional& mu, const Functional& nu) {
    if (mu.basis != nu.basis)
        throw std::invalid_argument("pair: mixed-basis pairing is not defined");
    if (mu.n() != nu.n())
        throw std::invalid_argument("pair: size mismatch");
    Rational acc(0);
    for (int i = 0; i < mu.n(); ++i)
        acc += mu.coeffs[static_cast<size_t>(i)] * nu.coeffs[static_cast<size_t>(i)];
    return acc;
}

// A root e_i - e_j (or f_i - f_j). Indices are 1-based.
struct Root {
    int i = 1;
    int j = 2;
    Basis basis = Basis::E;

    friend bool operator==(const Root& a, const Root& b) {
        return a.i == b.i && a.j == b.j && a.basis == b.basis;
    }
    friend bool operator<(const Root& a, const Root& b) {
        if (a.basis != b.basis) return a.basis < b.basis;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

inline Functional root_functional(const Root& r, int n) {
    if (r.i < 1 || r.i > n || r.j < 1 || r.j > n || r.i == r.j)
        throw std::invalid_argument("root_functional: bad indices");
    Functional f = Functional::zero(r.basis, n);
    f.coeffs[static_cast<size_t>(r.i - 1)] = Rational(1);
    f.coeffs[static_cast<size_t>(r.j - 1)] = Rational(-1);
    return f;
}

// sigma on index level: swaps 1 <-> n on the e-basis, fixes everything on
// the f-basis (all f-roots are h-roots).
inline int sigma_index(int i, int n) { return i == 1 ? n : (i == n ? 1 : i); }

inline Root sigma_root(const Root& r, int n) {
    if (r.basis == Basis::F) return r;
    return Root{sigma_index(r.i, n), sigma_index(r.j, n), Basis::E};
}

// sigma.theta sends e_1 -> -e_n, e_n -> -e_1 and e_i -> -e_i in between,
// so on roots it swaps endpoints after applying the 1<->n flip.
inline Root sigma_theta_root(const Root& r, int n) {
    if (r.basis == Basis::F)
        return Root{r.j, r.i, Basis::F};
    return Root{sigma_index(r.j, n), sigma_index(r.i, n), Basis::E};
}

// Longest Weyl element of the middle block: fixes 1 and n, reverses 2..n-1.
inline int w_index(int i, int n) { return (i == 1 || i == n) ? i : n + 1 - i; }

inline Root w_root(const Root& r, int n) {
    if (r.basis == Basis::F) throw std::invalid_argument("w_root: e-basis only");
    return Root{w_index(r.i, n), w_index(r.j, n), Basis::E};
}

// Half-sum of the fixed positive h-roots {e_i - e_j : 2 <= i < j <= n-1}.
// Closed form: 2 rho_h = sum_{i=2}^{n-1} (n+1-2i) e_i.
inline Functional rho_h(int n) {
    if (n < 3) throw std::invalid_argument("rho_h: n >= 3 required");
    std::vector<Rational> c(static_cast<size_t>(n), Rational(0));
    for (int i = 2; i <= n - 1; ++i) c[static_cast<size_t>(i - 1)] = Rational(n + 1 - 2 * i, 2);
    return canonicalize(Basis::E, std::move(c));
}

// Half-sum over {f_i - f_j : 1 <= i < j <= n-1}: 2 rho_h_bar = sum (n-2i) f_i.
inline Functional rho_h_bar(int n) {
    if (n < 3) throw std::invalid_argument("rho_h_bar: n >= 3 required");
    std::vector<Rational> c(static_cast<size_t>(n), Rational(0));
    for (int i = 1; i <= n - 1; ++i) c[static_cast<size_t>(i - 1)] = Rational(n - 2 * i, 2);
    return canonicalize(Basis::F, std::move(c));
}

// rho_0 on a_q: a_t^{rho_0} = e^{(n-1)t}.
inline Rational rho_0_exponent(int n) { return Rational(n - 1); }

// Case table for <e_i - e_j, rho_h> resp. <f_i - f_j, rho_h_bar>,
// independent of the half-sum code path above.
inline Rational rho_pairing(const Root& r, int n) {
    const int i = r.i, j = r.j;
    if (i < 1 || j < 1 || i > n || j > n || i >= j)
        throw std::invalid_argument("rho_pairing: want 1 <= i < j <= n");
    if (r.basis == Basis::E) {
        if (2 <= i && j <= n - 1) return Rational(j - i);
        if (i == 1 && j <= n - 1) return Rational(j) - Rational(n + 1, 2);
        if (2 <= i && j == n) return Rational(n + 1, 2) - Rational(i);
        return Rational(0); // i == 1 && j == n
    }
    if (j <= n - 1) return Rational(j - i);
    return Rational(n, 2) - Rational(i); // j == n
}

// All positive roots 1 <= i < j <= n in the given basis.
inline std::vector<Root> positive_roots(Basis b, int n) {
    std::vector<Root> out;
    out.reserve(static_cast<size_t>(n * (n - 1) / 2));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) out.push_back(Root{i, j, b});
    return out;
}

inline std::vector<std::pair<Root, Rational>> rho_pairing_table(Basis b, int n) {
    std::vector<std::pair<Root, Rational>> table;
    for (const Root& r : positive_roots(b, n)) table.emplace_back(r, rho_pairing(r, n));
    return table;
}

} // namespace cuspidal
