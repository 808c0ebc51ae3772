#pragma once

#include <cassert>
#include <set>
#include <stdexcept>
#include <vector>

#include "cuspidal/roots.hpp"

namespace cuspidal {

enum class SigmaRank { Rank1, Rank0 };

// Normal form of an H-conjugacy class of minimal parabolic subgroups:
// a pair (k,l) with 2 <= k <= l <= n at sigma-parabolic rank 1, or a
// single index 1 <= k <= n at rank 0. Only indices are stored; the
// subgroups themselves are never materialized.
struct ParabolicClass {
    int n = 3;
    SigmaRank rank = SigmaRank::Rank1;
    int k = 2;
    int l = 2; // rank-1 only

    static ParabolicClass rank1(int n, int k, int l) {
        if (n < 3) throw std::invalid_argument("ParabolicClass: n >= 3 required");
        if (!(2 <= k && k <= l && l <= n))
            throw std::invalid_argument("ParabolicClass: want 2 <= k <= l <= n");
        return ParabolicClass{n, SigmaRank::Rank1, k, l};
    }
    static ParabolicClass rank0(int n, int k) {
        if (n < 3) throw std::invalid_argument("ParabolicClass: n >= 3 required");
        if (!(1 <= k && k <= n))
            throw std::invalid_argument("ParabolicClass: want 1 <= k <= n");
        return ParabolicClass{n, SigmaRank::Rank0, k, k};
    }

    friend bool operator==(const ParabolicClass& a, const ParabolicClass& b) {
        return a.n == b.n && a.rank == b.rank && a.k == b.k && (a.rank == SigmaRank::Rank0 || a.l == b.l);
    }
};

inline std::vector<ParabolicClass> enumerate_classes(int n, SigmaRank rank) {
    if (n < 3) throw std::invalid_argument("enumerate_classes: n >= 3 required");
    std::vector<ParabolicClass> out;
    if (rank == SigmaRank::Rank1) {
        for (int k = 2; k <= n; ++k)
            for (int l = k; l <= n; ++l) out.push_back(ParabolicClass::rank1(n, k, l));
    } else {
        for (int k = 1; k <= n; ++k) out.push_back(ParabolicClass::rank0(n, k));
    }
    return out;
}

// A positive system together with the permutation tau realizing it:
// e_i - e_j (resp. f_i - f_j) is positive iff tau(i) < tau(j).
struct PositiveSystem {
    std::vector<Root> roots;
    std::vector<int> tau; // 1-based values at 1-based positions; tau[0] unused
};

namespace detail {

// tau for P_{k,l}: positions 2..n-1 increasing, position 1 inserted just
// before position k, position n just before position l, with 1 preceding n
// on ties. This realizes tau(k-1) <= tau(1) < tau(k), tau(l-1) < tau(n) <= tau(l).
inline std::vector<int> tau_rank1(int n, int k, int l) {
    std::vector<int> order; // indices in increasing tau-value
    order.reserve(static_cast<size_t>(n));
    for (int m = 2; m <= n; ++m) {
        if (k == m) order.push_back(1);
        if (l == m) order.push_back(n);
        if (m <= n - 1) order.push_back(m);
    }
    std::vector<int> tau(static_cast<size_t>(n + 1), 0);
    for (int v = 0; v < n; ++v) tau[static_cast<size_t>(order[static_cast<size_t>(v)])] = v + 1;
    return tau;
}

inline std::vector<int> tau_rank0(int n, int k) {
    std::vector<int> tau(static_cast<size_t>(n + 1), 0);
    for (int i = 1; i <= n - 1; ++i) tau[static_cast<size_t>(i)] = i < k ? i : i + 1;
    tau[static_cast<size_t>(n)] = k;
    return tau;
}

} // namespace detail

inline PositiveSystem positive_system(const ParabolicClass& p) {
    PositiveSystem ps;
    const int n = p.n;
    const Basis b = p.rank == SigmaRank::Rank1 ? Basis::E : Basis::F;
    ps.tau = p.rank == SigmaRank::Rank1 ? detail::tau_rank1(n, p.k, p.l)
                                        : detail::tau_rank0(n, p.k);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j && ps.tau[static_cast<size_t>(i)] < ps.tau[static_cast<size_t>(j)])
                ps.roots.push_back(Root{i, j, b});
    return ps;
}

// Recover (k,l) from tau by the defining inequalities; used as a
// round-trip check on the construction.
inline std::pair<int, int> kl_from_tau(const std::vector<int>& tau, int n) {
    int k = n, l = n;
    for (int j = 2; j <= n - 1; ++j)
        if (tau[static_cast<size_t>(j)] > tau[static_cast<size_t>(1)]) { k = j; break; }
    for (int j = 2; j <= n - 1; ++j)
        if (tau[static_cast<size_t>(j)] > tau[static_cast<size_t>(n)]) { l = j; break; }
    return {k, l};
}

inline bool h_compatible_by_pairing(const ParabolicClass& p) {
    const Functional rho = p.rank == SigmaRank::Rank1 ? rho_h(p.n) : rho_h_bar(p.n);
    for (const Root& r : positive_system(p).roots) {
        const Rational v = pair(root_functional(r, p.n), rho);
        if (p.rank == SigmaRank::Rank1 ? v < Rational(0) : v <= Rational(0)) return false;
    }
    return true;
}

inline bool h_compatible_by_index(const ParabolicClass& p) {
    if (p.rank == SigmaRank::Rank1) {
        // (n+1)/2 <= k <= l <= (n+3)/2, compared exactly
        return Rational(p.n + 1, 2) <= Rational(p.k) && Rational(p.l) <= Rational(p.n + 3, 2);
    }
    return p.n % 2 == 1 && 2 * p.k == p.n + 1;
}

// Both routes are evaluated and must agree.
inline bool is_h_compatible(const ParabolicClass& p) {
    const bool by_index = h_compatible_by_index(p);
    const bool by_pairing = h_compatible_by_pairing(p);
    if (by_index != by_pairing)
        throw std::logic_error("is_h_compatible: index criterion and pairing sweep disagree");
    return by_index;
}

inline bool is_p_star(const ParabolicClass& p) {
    if (p.rank != SigmaRank::Rank1)
        throw std::invalid_argument("is_p_star: defined for rank-1 classes only");
    return p.k == p.l;
}

struct Dims {
    int n_cap_h = 0; // dim(n_P intersect h)
    int u = 0;       // dim(n_P / (n_P intersect h))
};

inline Dims dims(const ParabolicClass& p) {
    const int n = p.n;
    if (p.rank == SigmaRank::Rank1)
        return Dims{(n - 2) * (n - 3) / 2 + (p.k - 2) + (n - p.l), 1 + (p.l - 2) + (n - p.k)};
    return Dims{(n - 1) * (n - 2) / 2, n - 1};
}

// The index involution (k,l) -> (n+2-l, n+2-k) induced by sigma.theta
// composed with the longest middle Weyl element.
inline ParabolicClass sigma_theta_dual(const ParabolicClass& p) {
    if (p.rank != SigmaRank::Rank1)
        throw std::invalid_argument("sigma_theta_dual: defined for rank-1 classes only");
    const int k2 = p.n + 2 - p.l, l2 = p.n + 2 - p.k;
    assert(2 <= k2 && k2 <= l2 && l2 <= p.n);
    return ParabolicClass::rank1(p.n, k2, l2);
}

// Half-sum of the positive roots of a class.
inline Functional rho_p(const ParabolicClass& p) {
    const Basis b = p.rank == SigmaRank::Rank1 ? Basis::E : Basis::F;
    Functional acc = Functional::zero(b, p.n);
    for (const Root& r : positive_system(p).roots) acc = acc + root_functional(r, p.n);
    return Rational(1, 2) * acc;
}

// Half-sum of the positive h-roots of a class; equals rho_h resp. rho_h_bar
// for every normal form, since the fixed positive h-system is contained in
// each positive system.
inline Functional rho_ph(const ParabolicClass& p) {
    const int n = p.n;
    const Basis b = p.rank == SigmaRank::Rank1 ? Basis::E : Basis::F;
    Functional acc = Functional::zero(b, n);
    for (const Root& r : positive_system(p).roots) {
        const bool is_h_root = b == Basis::E ? (2 <= r.i && r.i <= n - 1 && 2 <= r.j && r.j <= n - 1)
                                             : (r.i <= n - 1 && r.j <= n - 1);
        if (is_h_root) acc = acc + root_functional(r, n);
    }
    return Rational(1, 2) * acc;
}

// Exponent c with delta_P(a_t) = e^{ct} for P = P_{k,k}, computed as the
// half-sum of the non-h positive roots evaluated on diag(1,0,...,0,-1).
inline Rational delta_exponent(const ParabolicClass& p) {
    if (p.rank != SigmaRank::Rank1 || p.k != p.l)
        throw std::invalid_argument("delta_exponent: needs a rank-1 class with k == l");
    const int n = p.n;
    Rational acc(0);
    for (const Root& r : positive_system(p).roots) {
        const bool is_h_root = 2 <= r.i && r.i <= n - 1 && 2 <= r.j && r.j <= n - 1;
        if (is_h_root) continue;
        const auto value_on_v = [n](int idx) { return idx == 1 ? 1 : (idx == n ? -1 : 0); };
        acc += Rational(value_on_v(r.i) - value_on_v(r.j));
    }
    return acc / Rational(2);
}

} // namespace cuspidal
