#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cswitch/linalg/matrix_space.hpp"
#include "cswitch/linalg/spectral.hpp"
#include "cswitch/linalg/subspace.hpp"

namespace cswitch {

enum class IrreducibilityStatus { irreducible, reducible, unknown_numerical };
enum class IrreducibilityMethod { algebra_full, seed_closure, sphere_minimization };

constexpr std::string_view to_string(IrreducibilityStatus s) {
    switch (s) {
        case IrreducibilityStatus::irreducible: return "Irreducible";
        case IrreducibilityStatus::reducible: return "Reducible";
        case IrreducibilityStatus::unknown_numerical: return "UnknownNumerical";
    }
    return "?";
}

constexpr std::string_view to_string(IrreducibilityMethod m) {
    switch (m) {
        case IrreducibilityMethod::algebra_full: return "algebra-full";
        case IrreducibilityMethod::seed_closure: return "seed-closure";
        case IrreducibilityMethod::sphere_minimization: return "sphere-minimization";
    }
    return "?";
}

/// Outcome of an irreducibility query on a set of n x n matrices.
///
/// A Reducible verdict always carries a witness that has been re-checked
/// for invariance: `witness` in the field of the input when one was found
/// (exactly, for rational input), otherwise `numeric_witness` checked with
/// `tolerance`. Rational input can have only irrational invariant
/// subspaces, which is when the numeric witness alone is reported.
template <Field T>
struct IrreducibilityVerdict {
    IrreducibilityStatus status = IrreducibilityStatus::unknown_numerical;
    IrreducibilityMethod method = IrreducibilityMethod::algebra_full;
    std::optional<linalg::Subspace<T>> witness;
    std::optional<linalg::Subspace<double>> numeric_witness;
    std::optional<double> tolerance;
    std::optional<double> achieved_minimum;
    std::size_t n = 0;
    std::size_t algebra_dim = 0;

    [[nodiscard]] bool irreducible() const noexcept { return status == IrreducibilityStatus::irreducible; }
    [[nodiscard]] bool reducible() const noexcept { return status == IrreducibilityStatus::reducible; }

    [[nodiscard]] std::size_t witness_dim() const {
        if (witness) return witness->dim();
        if (numeric_witness) return numeric_witness->dim();
        return 0;
    }
};

struct IrreducibilityOptions {
    std::size_t random_elements = 8;   // extra algebra elements seeded in layer 2
    int coefficient_range = 3;         // their integer coefficients lie in [-range, range]
    std::uint64_t seed = 0x5eedULL;
    std::size_t multistarts = 50;
    std::size_t max_iterations = 2000;
    double convergence = 1e-12;        // projected gradient norm
    double zero_threshold = 1e-8;      // smallest singular value counted as zero
    Tolerances tol;
    bool use_layer2 = true;
    bool use_layer3 = true;
};

namespace irreducibility {

namespace detail {

template <Field T>
Matrix<T> combine(const std::vector<Matrix<T>>& basis, const std::vector<int>& coeff) {
    Matrix<T> m(basis.front().rows(), basis.front().cols());
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (coeff[i] != 0) m += basis[i] * T(coeff[i]);
    return m;
}

inline std::vector<Matrix<double>> to_double_all(std::span<const Matrix<Rational>> set) {
    std::vector<Matrix<double>> out;
    for (const auto& a : set) out.push_back(to_double(a));
    return out;
}

inline std::vector<Matrix<double>> to_double_all(std::span<const Matrix<double>> set) { return {set.begin(), set.end()}; }

}  // namespace detail

/// Re-checks a float candidate and, for rational input, tries to promote it
/// to an exact witness. Fills `v` and returns true on success.
template <Field T>
bool accept_candidate(const linalg::Subspace<double>& candidate, std::span<const Matrix<T>> set, IrreducibilityMethod method,
                      const IrreducibilityOptions& opt, IrreducibilityVerdict<T>& v) {
    if (!candidate.is_proper()) return false;
    if constexpr (is_exact_v<T>) {
        if (auto exact = linalg::rationalize(candidate)) {
            if (exact->is_proper() && linalg::is_invariant(*exact, set)) {
                v.status = IrreducibilityStatus::reducible;
                v.method = method;
                v.witness = std::move(*exact);
                return true;
            }
        }
    }
    const auto dset = detail::to_double_all(set);
    linalg::Subspace<double> checked(candidate.ambient_dim(), opt.tol.membership);
    for (const auto& b : candidate.basis_vectors()) checked.add(b);
    if (!linalg::is_invariant(checked, std::span<const Matrix<double>>(dset))) return false;
    v.status = IrreducibilityStatus::reducible;
    v.method = method;
    v.tolerance = opt.tol.membership;
    if constexpr (is_exact_v<T>) {
        v.numeric_witness = std::move(checked);
    } else {
        v.witness = std::move(checked);
    }
    return true;
}

/// Layer 1: the unital algebra generated by the set is all of n x n.
template <Field T>
linalg::MatrixSpace<T> algebra(std::span<const Matrix<T>> set, std::size_t n, const IrreducibilityOptions& opt = {}) {
    return linalg::algebra_closure(set, n, opt.tol.membership);
}

/// Layer 2 on its own. Closures of coordinate lines, then closures of the
/// minimal invariant subspaces (eigenlines, eigenplanes) of each matrix in
/// the set and of random algebra elements. A proper closure is a reducing
/// subspace. If some element has only simple-geometry eigenvalues and all
/// its seed closures are full, every invariant subspace would have to
/// contain one of those seeds, so the set is irreducible.
template <Field T>
std::optional<IrreducibilityVerdict<T>> seed_closure_layer(std::span<const Matrix<T>> set, const linalg::MatrixSpace<T>& alg,
                                                           const IrreducibilityOptions& opt = {}) {
    const std::size_t n = alg.n();
    IrreducibilityVerdict<T> v;
    v.n = n;
    v.algebra_dim = alg.dim();
    const double tol = opt.tol.membership;

    for (std::size_t i = 0; i < n; ++i) {
        linalg::Subspace<T> line(n, tol);
        line.add(linalg::Subspace<T>::unit(n, i));
        auto closure = linalg::subspace_closure(line, set);
        if (closure.is_proper() && linalg::is_invariant(closure, set)) {
            v.status = IrreducibilityStatus::reducible;
            v.method = IrreducibilityMethod::seed_closure;
            v.witness = std::move(closure);
            if constexpr (!is_exact_v<T>) v.tolerance = tol;
            return v;
        }
    }

    std::vector<Matrix<T>> candidates(set.begin(), set.end());
    {
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<int> coeff(-opt.coefficient_range, opt.coefficient_range);
        for (std::size_t r = 0; r < opt.random_elements; ++r) {
            std::vector<int> c(alg.dim());
            for (auto& x : c) x = coeff(rng);
            candidates.push_back(detail::combine(alg.basis(), c));
        }
    }
    const auto dset = detail::to_double_all(set);
    const std::span<const Matrix<double>> dspan(dset);

    bool complete_and_full = false;
    for (const auto& b : candidates) {
        std::vector<linalg::InvariantSeed> seeds;
        try {
            seeds = linalg::minimal_invariant_seeds(to_double(b), {.membership_tol = tol});
        } catch (const Error&) {
            continue;
        }
        bool all_full = true;
        for (const auto& seed : seeds) {
            if (seed.space.is_full()) continue;
            if constexpr (is_exact_v<T>) {
                // a rational eigenvalue gives an exact eigenspace
                if (seed.kind == linalg::SeedKind::real_eigenspace) {
                    if (auto lambda = rationalize(seed.eigenvalue.real(), 1000000, 1e-9)) {
                        const auto ker = linalg::kernel(b - Matrix<Rational>::identity(n) * *lambda);
                        if (!ker.empty()) {
                            const auto exact = linalg::subspace_closure(linalg::Subspace<Rational>::span(n, ker), set);
                            if (exact.is_proper()) {
                                v.status = IrreducibilityStatus::reducible;
                                v.method = IrreducibilityMethod::seed_closure;
                                v.witness = exact;
                                return v;
                            }
                            if (ker.size() == seed.geometric_multiplicity) continue;
                        }
                    }
                }
            }
            const auto closure = linalg::subspace_closure(seed.space, dspan);
            if (closure.is_full()) continue;
            all_full = false;
            if (accept_candidate<T>(closure, set, IrreducibilityMethod::seed_closure, opt, v)) return v;
        }
        if (all_full && linalg::seeds_complete(seeds)) complete_and_full = true;
    }
    if (complete_and_full) {
        v.status = IrreducibilityStatus::irreducible;
        v.method = IrreducibilityMethod::seed_closure;
        v.tolerance = tol;
        return v;
    }
    return std::nullopt;
}

/// Layer 3: minimise the n-th singular value of K(v) = [B_1 v ... B_m v]
/// over unit v, B_i an orthonormal basis of the algebra. K(v) has rank
/// dim(algebra . v), which is below n exactly when v lies in a proper
/// invariant subspace. Projected gradient with backtracking, multi-start.
template <Field T>
IrreducibilityVerdict<T> sphere_layer(std::span<const Matrix<T>> set, const linalg::MatrixSpace<T>& alg,
                                      const IrreducibilityOptions& opt = {}) {
    const std::size_t n = alg.n();
    IrreducibilityVerdict<T> v;
    v.n = n;
    v.algebra_dim = alg.dim();
    v.method = IrreducibilityMethod::sphere_minimization;
    v.tolerance = opt.zero_threshold;

    // orthonormal float basis of the algebra
    linalg::MatrixSpace<double> falg(n, opt.tol.membership);
    for (const auto& b : alg.basis()) falg.insert(to_double(b));
    std::vector<Eigen::MatrixXd> basis;
    for (const auto& b : falg.basis()) basis.push_back(to_eigen(b));
    const auto m = static_cast<Eigen::Index>(basis.size());
    const auto ni = static_cast<Eigen::Index>(n);

    auto krylov = [&](const Eigen::VectorXd& x) {
        Eigen::MatrixXd k(ni, m);
        for (Eigen::Index i = 0; i < m; ++i) k.col(i) = basis[static_cast<std::size_t>(i)] * x;
        return k;
    };
    // f = sigma_n^2 and its gradient on the sphere
    auto evaluate = [&](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
        if (m < ni) {
            if (grad) *grad = Eigen::VectorXd::Zero(ni);
            return 0.0;
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(krylov(x), Eigen::ComputeFullU);
        const double s = svd.singularValues()(ni - 1);
        if (grad) {
            const Eigen::VectorXd u = svd.matrixU().col(ni - 1);
            Eigen::VectorXd g = Eigen::VectorXd::Zero(ni);
            for (const auto& b : basis) g += 2.0 * u.dot(b * x) * (b.transpose() * u);
            g -= g.dot(x) * x;
            *grad = g;
        }
        return s * s;
    };

    std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> normal;
    double best = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_x;
    for (std::size_t start = 0; start < opt.multistarts; ++start) {
        Eigen::VectorXd x(ni);
        for (Eigen::Index i = 0; i < ni; ++i) x(i) = normal(rng);
        x.normalize();
        Eigen::VectorXd g;
        double f = evaluate(x, &g);
        double eta = 1.0;
        for (std::size_t it = 0; it < opt.max_iterations && g.norm() > opt.convergence; ++it) {
            bool moved = false;
            while (eta > 1e-16) {
                Eigen::VectorXd y = (x - eta * g).normalized();
                Eigen::VectorXd gy;
                const double fy = evaluate(y, &gy);
                if (fy <= f - 1e-4 * eta * g.squaredNorm()) {
                    x = std::move(y);
                    f = fy;
                    g = std::move(gy);
                    eta *= 2.0;
                    moved = true;
                    break;
                }
                eta *= 0.5;
            }
            if (!moved) break;
        }
        if (f < best) {
            best = f;
            best_x = x;
        }
        const double sigma = std::sqrt(std::max(best, 0.0));
        if (sigma <= opt.zero_threshold) {
            // column space of K(x) is the algebra orbit of x
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(krylov(best_x), Eigen::ComputeFullU);
            const auto& s = svd.singularValues();
            linalg::Subspace<double> cand(n, opt.tol.membership);
            for (Eigen::Index i = 0; i < s.size(); ++i) {
                if (s(i) <= 1e-6 * s(0)) break;
                const Eigen::VectorXd u = svd.matrixU().col(i);
                cand.add(Vector<double>(u.data(), u.data() + u.size()));
            }
            if (accept_candidate<T>(cand, set, IrreducibilityMethod::sphere_minimization, opt, v)) {
                v.achieved_minimum = sigma;
                if (!v.tolerance) v.tolerance = opt.zero_threshold;
                return v;
            }
        }
    }
    v.status = IrreducibilityStatus::unknown_numerical;
    v.achieved_minimum = std::sqrt(std::max(best, 0.0));
    return v;
}

}  // namespace irreducibility

/// Decides whether the matrices share a non-trivial invariant subspace.
/// Layer 1 (algebra dimension) and exact seeds give exact verdicts for
/// rational input; the float layers report their tolerance.
template <Field T>
IrreducibilityVerdict<T> is_irreducible_set(std::span<const Matrix<T>> set, const IrreducibilityOptions& opt = {}) {
    if (set.empty()) throw Error(ErrorKind::invalid_argument, "irreducibility needs at least one matrix");
    const std::size_t n = set.front().rows();
    linalg::check_generators<T>(n, set);
    const auto alg = irreducibility::algebra(set, n, opt);
    if (alg.dim() == n * n) {
        IrreducibilityVerdict<T> v;
        v.status = IrreducibilityStatus::irreducible;
        v.method = IrreducibilityMethod::algebra_full;
        v.n = n;
        v.algebra_dim = alg.dim();
        if constexpr (!is_exact_v<T>) v.tolerance = opt.tol.membership;
        return v;
    }
    if (opt.use_layer2)
        if (auto v = irreducibility::seed_closure_layer(set, alg, opt)) return *v;
    if (opt.use_layer3) return irreducibility::sphere_layer(set, alg, opt);
    IrreducibilityVerdict<T> v;
    v.n = n;
    v.algebra_dim = alg.dim();
    v.status = IrreducibilityStatus::unknown_numerical;
    v.method = IrreducibilityMethod::seed_closure;
    return v;
}

template <Field T>
IrreducibilityVerdict<T> is_irreducible_set(const std::vector<Matrix<T>>& set, const IrreducibilityOptions& opt = {}) {
    return is_irreducible_set(std::span<const Matrix<T>>(set), opt);
}

/// Re-verification of a verdict's witness against the set.
template <Field T>
bool witness_verifies(const IrreducibilityVerdict<T>& v, std::span<const Matrix<T>> set) {
    if (!v.reducible()) return !v.witness && !v.numeric_witness;
    if (v.witness) return v.witness->is_proper() && linalg::is_invariant(*v.witness, set);
    if (v.numeric_witness) {
        const auto dset = irreducibility::detail::to_double_all(set);
        return v.numeric_witness->is_proper() && linalg::is_invariant(*v.numeric_witness, std::span<const Matrix<double>>(dset));
    }
    return false;
}

}  // namespace cswitch
