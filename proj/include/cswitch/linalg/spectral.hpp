#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "cswitch/linalg/subspace.hpp"
#include "cswitch/matrix.hpp"

namespace cswitch::linalg {

// ---------------------------------------------------------------------------
// Norms and ranks (float path; exact inputs are converted first)
// ---------------------------------------------------------------------------

/// Operator norm induced by the euclidean norm (largest singular value).
template <Field T>
double spectral_norm(const Matrix<T>& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    const Matrix<double> d = to_double(m);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(d));
    return svd.singularValues()(0);
}

inline std::size_t numeric_rank(const Matrix<double>& m, const Tolerances& tol = {}) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m));
    const auto& s = svd.singularValues();
    const double threshold = tol.rank_threshold(std::max(m.rows(), m.cols()), s(0));
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > threshold) ++r;
    return r;
}

// ---------------------------------------------------------------------------
// Exact characteristic polynomial and spectral radius
// ---------------------------------------------------------------------------

/// Coefficients low to high degree.
using Polynomial = std::vector<Rational>;

namespace detail {

inline void trim(Polynomial& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Polynomial derivative(const Polynomial& p) {
    Polynomial d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<long>(k)));
    trim(d);
    return d;
}

inline Polynomial monic(Polynomial p) {
    trim(p);
    if (p.empty()) return p;
    const Rational lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

/// Quotient and remainder of a / b.
inline std::pair<Polynomial, Polynomial> divide(Polynomial a, const Polynomial& b) {
    trim(a);
    Polynomial q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        const std::size_t shift = a.size() - b.size();
        const Rational f = a.back() / b.back();
        q[shift] = f;
        for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= f * b[k];
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline Polynomial gcd(Polynomial a, Polynomial b) {
    a = monic(std::move(a));
    b = monic(std::move(b));
    while (!b.empty()) {
        auto r = divide(a, b).second;
        a = std::move(b);
        b = monic(std::move(r));
    }
    return monic(std::move(a));
}

}  // namespace detail

/// det(xI - A) via Faddeev-LeVerrier, monic, coefficients low to high.
inline Polynomial characteristic_polynomial(const Matrix<Rational>& a) {
    const std::size_t n = a.rows();
    Polynomial c(n + 1, Rational(0));
    c[n] = 1;
    Matrix<Rational> m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
        c[n - k] = -(a * m).trace() / Rational(static_cast<long>(k));
    }
    return c;
}

/// p / gcd(p, p'): same roots as p, all simple.
inline Polynomial squarefree_part(const Polynomial& p) {
    const auto g = detail::gcd(p, detail::derivative(p));
    if (g.size() <= 1) return detail::monic(p);
    return detail::monic(detail::divide(p, g).first);
}

/// Roots of a polynomial with rational coefficients, computed in floating
/// point from its companion matrix.
inline std::vector<std::complex<double>> polynomial_roots(const Polynomial& p) {
    const auto q = detail::monic(p);
    if (q.size() <= 1) return {};
    const std::size_t d = q.size() - 1;
    if (d == 1) return {std::complex<double>(to_double(Rational(-q[0])), 0.0)};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 1; i < d; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < d; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -to_double(q[i]);
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::eigen_failure, "companion eigenvalues did not converge");
    std::vector<std::complex<double>> roots;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()(i));
    return roots;
}

inline std::vector<std::complex<double>> eigenvalues(const Matrix<double>& a) {
    if (a.rows() == 0) return {};
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(a), false);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::eigen_failure, "eigenvalues did not converge");
    std::vector<std::complex<double>> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
    return out;
}

/// Largest eigenvalue modulus. For rational input the roots are taken from
/// the square-free part of the exact characteristic polynomial, so repeated
/// eigenvalues (Jordan blocks) do not suffer the sqrt(eps) splitting of a
/// direct float eigensolve.
template <Field T>
double spectral_radius(const Matrix<T>& a) {
    std::vector<std::complex<double>> roots;
    if constexpr (is_exact_v<T>) {
        roots = polynomial_roots(squarefree_part(characteristic_polynomial(a)));
    } else {
        roots = eigenvalues(a);
    }
    double r = 0.0;
    for (const auto& z : roots) r = std::max(r, std::abs(z));
    return r;
}

// ---------------------------------------------------------------------------
// Minimal invariant subspaces of a single matrix
// ---------------------------------------------------------------------------

enum class SeedKind { real_eigenspace, complex_eigenspace };

/// A candidate minimal invariant subspace of one matrix.
///
/// Real eigenvalue with geometric multiplicity 1: an eigenline.
/// Complex pair with geometric multiplicity 1: the real plane spanned by
/// the real and imaginary parts of the eigenvector. Larger multiplicities
/// return the whole (real) eigenspace; such seeds are degenerate because
/// the minimal invariant subspaces inside them are not isolated.
struct InvariantSeed {
    Subspace<double> space;
    SeedKind kind;
    std::complex<double> eigenvalue;
    std::size_t geometric_multiplicity;

    [[nodiscard]] bool degenerate() const noexcept {
        return geometric_multiplicity > 1 || space.is_full();
    }
};

struct SeedOptions {
    double cluster_tol = 1e-4;  // eigenvalues closer than this (relative) are one eigenvalue
    double kernel_tol = 1e-8;   // relative singular value threshold for eigenvectors
    double membership_tol = Tolerances{}.membership;
};

/// True when every eigenvalue has geometric multiplicity one, i.e. the
/// seeds are exactly the minimal invariant subspaces of the matrix.
inline bool seeds_complete(const std::vector<InvariantSeed>& seeds) {
    return std::all_of(seeds.begin(), seeds.end(), [](const InvariantSeed& s) { return s.geometric_multiplicity == 1; });
}

namespace detail {

struct Cluster {
    std::complex<double> center;
    std::size_t size;
};

inline std::vector<Cluster> cluster_eigenvalues(const std::vector<std::complex<double>>& ev, double tol) {
    std::vector<bool> used(ev.size(), false);
    std::vector<Cluster> out;
    for (std::size_t i = 0; i < ev.size(); ++i) {
        if (used[i]) continue;
        std::complex<double> sum = ev[i];
        std::size_t count = 1;
        used[i] = true;
        for (std::size_t j = i + 1; j < ev.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(ev[j] - ev[i]) <= tol * std::max(1.0, std::abs(ev[i]))) {
                used[j] = true;
                sum += ev[j];
                ++count;
            }
        }
        out.push_back({sum / static_cast<double>(count), count});
    }
    return out;
}

template <class Svd>
std::size_t kernel_dimension(const Svd& svd, double tol, std::size_t cluster_size) {
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    std::size_t g = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) <= tol * std::max(1.0, smax)) ++g;
    // a cluster always has at least one eigenvector; fall back to the
    // smallest singular directions when the threshold misses them
    if (g == 0) g = 1;
    return std::min(g, cluster_size);
}

}  // namespace detail

/// Minimal invariant real subspaces of `a` read off its eigenstructure.
/// Throws EigenFailure when the eigensolver does not converge.
inline std::vector<InvariantSeed> minimal_invariant_seeds(const Matrix<double>& a, const SeedOptions& opt = {}) {
    if (!a.is_square()) throw Error(ErrorKind::dimension_mismatch, "seeds need a square matrix");
    const std::size_t n = a.rows();
    const Eigen::MatrixXd ea = to_eigen(a);
    const auto ev = eigenvalues(a);

    std::vector<std::complex<double>> real_ev, complex_ev;
    for (const auto& z : ev) {
        if (std::abs(z.imag()) <= opt.cluster_tol * std::max(1.0, std::abs(z)))
            real_ev.emplace_back(z.real(), 0.0);
        else if (z.imag() > 0)
            complex_ev.push_back(z);
    }

    std::vector<InvariantSeed> seeds;
    for (const auto& c : detail::cluster_eigenvalues(real_ev, opt.cluster_tol)) {
        const Eigen::MatrixXd shifted = ea - c.center.real() * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted, Eigen::ComputeFullV);
        const std::size_t g = detail::kernel_dimension(svd, opt.kernel_tol, c.size);
        Subspace<double> space(n, opt.membership_tol);
        for (std::size_t k = 0; k < g; ++k) {
            const Eigen::VectorXd v = svd.matrixV().col(static_cast<Eigen::Index>(n - 1 - k));
            space.add(Vector<double>(v.data(), v.data() + v.size()));
        }
        seeds.push_back({std::move(space), SeedKind::real_eigenspace, c.center, g});
    }
    for (const auto& c : detail::cluster_eigenvalues(complex_ev, opt.cluster_tol)) {
        const Eigen::MatrixXcd shifted = ea.cast<std::complex<double>>() -
                                         c.center * Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted, Eigen::ComputeFullV);
        const std::size_t g = detail::kernel_dimension(svd, opt.kernel_tol, c.size);
        Subspace<double> space(n, opt.membership_tol);
        for (std::size_t k = 0; k < g; ++k) {
            const Eigen::VectorXcd z = svd.matrixV().col(static_cast<Eigen::Index>(n - 1 - k));
            const Eigen::VectorXd re = z.real(), im = z.imag();
            space.add(Vector<double>(re.data(), re.data() + re.size()));
            space.add(Vector<double>(im.data(), im.data() + im.size()));
        }
        seeds.push_back({std::move(space), SeedKind::complex_eigenspace, c.center, g});
    }
    return seeds;
}

}  // namespace cswitch::linalg
