#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cuspidal/rational.hpp"

namespace cuspidal {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// The involution datum: anti-diagonal corners -1, identity in between.
// sigma(g) = S g S^{-1} with S = S^{-1}.
inline Mat s_matrix(int n) {
    Mat S = Mat::Zero(n, n);
    S(0, n - 1) = -1.0;
    S(n - 1, 0) = -1.0;
    for (int i = 1; i < n - 1; ++i) S(i, i) = 1.0;
    return S;
}

// Rotation by pi/4 in the (1,n) coordinate plane; conjugates the block
// group S(GL(n-1) x GL(1)) onto H.
inline Mat kappa_matrix(int n) {
    Mat K = Mat::Identity(n, n);
    const double r = 1.0 / std::sqrt(2.0);
    K(0, 0) = r;
    K(0, n - 1) = r;
    K(n - 1, 0) = -r;
    K(n - 1, n - 1) = r;
    return K;
}

// Element of K cap H inverting a_q: swaps the first and last axes and
// flips the second to stay in SL.
inline Mat k0_matrix(int n) {
    if (n < 3) throw std::invalid_argument("k0_matrix: n >= 3 required");
    Mat M = Mat::Zero(n, n);
    M(0, n - 1) = 1.0;
    M(n - 1, 0) = 1.0;
    M(1, 1) = -1.0;
    for (int i = 2; i < n - 1; ++i) M(i, i) = 1.0;
    return M;
}

inline Mat a_t(int n, double t) {
    Mat A = Mat::Identity(n, n);
    A(0, 0) = std::exp(t);
    A(n - 1, n - 1) = std::exp(-t);
    return A;
}

// Upper unipotent u_{x,y,z}: first row (1, x^t, z), middle column y.
inline Mat u_elem(int n, const Vec& x, const Vec& y, double z) {
    if (x.size() != n - 2 || y.size() != n - 2)
        throw std::invalid_argument("u_elem: x,y must have length n-2");
    Mat U = Mat::Identity(n, n);
    U.block(0, 1, 1, n - 2) = x.transpose();
    U.block(1, n - 1, n - 2, 1) = y;
    U(0, n - 1) = z;
    return U;
}

// v_{x,y} = kappa exp([[0,x],[y^t,0]]) kappa^{-1} for orthogonal x,y in R^{n-1};
// built from the closed-form exponential, not a numeric exp.
inline Mat v_elem(int n, const Vec& x, const Vec& y) {
    if (x.size() != n - 1 || y.size() != n - 1)
        throw std::invalid_argument("v_elem: x,y must have length n-1");
    if (std::abs(x.dot(y)) > 1e-12 * (1.0 + x.norm() * y.norm()))
        throw std::invalid_argument("v_elem: x and y must be orthogonal");
    Mat M = Mat::Identity(n, n);
    M.block(0, 0, n - 1, n - 1) += 0.5 * x * y.transpose();
    M.block(0, n - 1, n - 1, 1) = x;
    M.block(n - 1, 0, 1, n - 1) = y.transpose();
    const Mat K = kappa_matrix(n);
    return K * M * K.transpose(); // kappa is orthogonal
}

// w(x,y,z) = exp of the matrix with corner z, middle column y, bottom row x^t
// (valid closed form for <x,y> = 0).
inline Mat w_elem(int n, const Vec& x, const Vec& y, double z) {
    if (x.size() != n - 2 || y.size() != n - 2)
        throw std::invalid_argument("w_elem: x,y must have length n-2");
    if (std::abs(x.dot(y)) > 1e-12 * (1.0 + x.norm() * y.norm()))
        throw std::invalid_argument("w_elem: x and y must be orthogonal");
    Mat W = Mat::Identity(n, n);
    W.block(0, 1, 1, n - 2) = 0.5 * z * x.transpose();
    W(0, n - 1) = z;
    W.block(1, 1, n - 2, n - 2) += 0.5 * y * x.transpose();
    W.block(1, n - 1, n - 2, 1) = y;
    W.block(n - 1, 1, 1, n - 2) = x.transpose();
    return W;
}

inline Mat sigma_of(const Mat& g) {
    const Mat S = s_matrix(static_cast<int>(g.rows()));
    return S * g * S;
}

inline Mat theta_of(const Mat& g) { return g.inverse().transpose(); }

// Membership test for H = kappa S(GL(n-1) x GL(1)) kappa^{-1}: conjugate
// back and require the (n-1|1) block pattern. Test-support helper.
inline bool in_h(const Mat& g, double tol = 1e-9) {
    const int n = static_cast<int>(g.rows());
    const Mat K = kappa_matrix(n);
    const Mat B = K.transpose() * g * K;
    double off = 0.0;
    for (int i = 0; i < n - 1; ++i) off = std::max({off, std::abs(B(i, n - 1)), std::abs(B(n - 1, i))});
    return off <= tol;
}

struct RadialCoordinate {
    double value = 2.0; // the quantity 2cosh(4t), always >= 2
};

// The K x H polar invariant: |g sigma(g)^{-1}|_HS^2 - (n-2) = 2cosh(4t).
inline RadialCoordinate radial(const Mat& g, double tol = 1e-9) {
    const int n = static_cast<int>(g.rows());
    const Mat M = g * sigma_of(g).inverse();
    const double v = M.squaredNorm() - (n - 2);
    if (!std::isfinite(v) || v < 2.0 - tol)
        throw std::runtime_error("radial: invariant below 2, matrix inconsistent");
    return RadialCoordinate{std::max(v, 2.0)};
}

// 2cosh(4t) of u_{x,y,z}.H as a polynomial in (x, y, z).
inline double cosh4t_rank1(const Vec& x, const Vec& y, double z) {
    const double xy = x.dot(y), x2 = x.squaredNorm(), y2 = y.squaredNorm();
    const double a = 1.0 - z + xy;
    return a * a * (1.0 + z) * (1.0 + z) + a * a * y2 + (xy - z) * (xy - z)
         + (1.0 + z) * (1.0 + z) * x2 + 2.0 * xy + x2 * y2 + x2 + z * z + y2 + 1.0;
}

namespace detail {
inline void check_support(const Vec& v, int lo, int hi, const char* what) {
    // free components are [lo, hi) (0-based), all others must vanish
    for (int i = 0; i < v.size(); ++i)
        if ((i < lo || i >= hi) && v[i] != 0.0)
            throw std::invalid_argument(std::string(what) + ": support pattern violated");
}
} // namespace detail

// Restriction of cosh4t_rank1 to the u_{k,l} support patterns, written as
// the quadratic form <x, A_{y,z} x> + <b_{y,z}, x> + c_{y,z}.
inline double cosh4t_rank1_reduced(int n, int k, int l, const Vec& x, const Vec& y, double z) {
    if (x.size() != n - 2 || y.size() != n - 2)
        throw std::invalid_argument("cosh4t_rank1_reduced: x,y must have length n-2");
    detail::check_support(x, k - 2, n - 2, "cosh4t_rank1_reduced x");
    detail::check_support(y, 0, l - 2, "cosh4t_rank1_reduced y");
    Vec piy = Vec::Zero(n - 2); // projection onto {0}^{k-2} x R^{l-k} x {0}^{n-l}
    for (int i = k - 2; i < l - 2; ++i) piy[i] = y[i];
    const double s = y.squaredNorm() + (1.0 + z) * (1.0 + z) + 1.0;
    const double quad = s * (x.squaredNorm() + piy.dot(x) * piy.dot(x));
    const double lin = 2.0 * (1.0 - z) * s * piy.dot(x);
    const double c = (1.0 - z) * (1.0 - z) * s + (z * z + 2.0 * z + y.squaredNorm());
    return quad + lin + c;
}

// 2cosh(4t) of v_{x,y}.H; supports R^{k-1} x 0 and 0 x R^{n-k} force <x,y> = 0.
inline double cosh4t_rank0(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("cosh4t_rank0: size mismatch");
    if (std::abs(x.dot(y)) > 1e-12 * (1.0 + x.norm() * y.norm()))
        throw std::invalid_argument("cosh4t_rank0: x and y must be orthogonal");
    const double x2 = x.squaredNorm(), y2 = y.squaredNorm();
    return 2.0 + 4.0 * x2 + 4.0 * y2 + 4.0 * x2 * y2;
}

// The coefficient triple of 2cosh(4t) = f1 + f2|x|^2 + f3|y|^2 + |x|^2|y|^2
// along a_s u_{x,y,z} (k = l case), parametrized by q = e^{2s} so the
// identity f2 f3 = f1 + 2 can be checked in exact arithmetic.
template <typename T>
struct FTriple {
    T f1, f2, f3;
};

template <typename T>
inline FTriple<T> f_triple_from_q(const T& q, const T& z) {
    const T one(1);
    const T omz = one - z, opz = one + z;
    return FTriple<T>{q * q * omz * omz * opz * opz + one / (q * q) + T(2) * z * z,
                      q * opz * opz + one / q,
                      q * omz * omz + one / q};
}

inline FTriple<double> f_triple(double s, double z) { return f_triple_from_q(std::exp(2.0 * s), z); }

inline double cosh4t_hc(double s, const Vec& x, const Vec& y, double z) {
    const auto f = f_triple(s, z);
    const double x2 = x.squaredNorm(), y2 = y.squaredNorm();
    return f.f1 + f.f2 * x2 + f.f3 * y2 + x2 * y2;
}

// Hilbert-Schmidt distance between a_s u(e^s xi, e^{-s} eta, e^{-2s} omega - 1)
// and its N-orbit limit kappa^{-1} v_{(omega,eta), xi/2}, both mapped through
// g -> g sigma(g)^{-1}. xi has (n-1)/2 free components, eta has (n-3)/2.
inline double orbit_limit_distance(int n, const Vec& xi, const Vec& eta, double omega, double s) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("orbit_limit_distance: n must be odd >= 3");
    const int k = (n + 1) / 2;
    if (xi.size() != n - k || eta.size() != k - 2)
        throw std::invalid_argument("orbit_limit_distance: xi needs (n-1)/2 entries, eta (n-3)/2");
    Vec xu = Vec::Zero(n - 2), yu = Vec::Zero(n - 2);
    xu.tail(n - k) = std::exp(s) * xi;
    yu.head(k - 2) = std::exp(-s) * eta;
    const Mat A = a_t(n, s) * u_elem(n, xu, yu, std::exp(-2.0 * s) * omega - 1.0);

    Vec xv = Vec::Zero(n - 1), yv = Vec::Zero(n - 1);
    xv[0] = omega;
    xv.segment(1, k - 2) = eta;
    yv.tail(n - k) = 0.5 * xi;
    const Mat B = kappa_matrix(n).transpose() * v_elem(n, xv, yv);

    const Mat MA = A * sigma_of(A).inverse();
    const Mat MB = B * sigma_of(B).inverse();
    return (MA - MB).norm();
}

inline std::vector<double> orbit_limit_check(int n, const Vec& xi, const Vec& eta, double omega,
                                             const std::vector<double>& s_grid) {
    std::vector<double> out;
    out.reserve(s_grid.size());
    for (double s : s_grid) out.push_back(orbit_limit_distance(n, xi, eta, omega, s));
    return out;
}

} // namespace cuspidal
