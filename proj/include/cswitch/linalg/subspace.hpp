#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cswitch/linalg/echelon.hpp"
#include "cswitch/matrix.hpp"

namespace cswitch::linalg {

/// A linear subspace of T^n held by a reduced basis (row-reduced for
/// rationals, orthonormal for floats). Membership is exact for rationals
/// and residual-based for floats.
template <Field T>
class Subspace {
public:
    explicit Subspace(std::size_t ambient_dim, double tol = Tolerances{}.membership)
        : basis_(ambient_dim, tol) {}

    static Subspace zero(std::size_t n, double tol = Tolerances{}.membership) { return Subspace(n, tol); }

    static Subspace full(std::size_t n, double tol = Tolerances{}.membership) {
        Subspace s(n, tol);
        for (std::size_t i = 0; i < n; ++i) s.add(unit(n, i));
        return s;
    }

    static Subspace span(std::size_t n, const std::vector<Vector<T>>& vectors, double tol = Tolerances{}.membership) {
        Subspace s(n, tol);
        for (const auto& v : vectors) s.add(v);
        return s;
    }

    /// Span of the rows of `m`.
    static Subspace row_span(const Matrix<T>& m, double tol = Tolerances{}.membership) {
        Subspace s(m.cols(), tol);
        for (std::size_t i = 0; i < m.rows(); ++i) s.add(m.row(i));
        return s;
    }

    static Vector<T> unit(std::size_t n, std::size_t i) {
        Vector<T> e(n, T(0));
        e[i] = T(1);
        return e;
    }

    [[nodiscard]] std::size_t ambient_dim() const noexcept { return basis_.dim(); }
    [[nodiscard]] std::size_t dim() const noexcept { return basis_.rank(); }
    [[nodiscard]] bool is_zero() const noexcept { return dim() == 0; }
    [[nodiscard]] bool is_full() const noexcept { return dim() == ambient_dim(); }
    [[nodiscard]] bool is_proper() const noexcept { return dim() > 0 && dim() < ambient_dim(); }
    [[nodiscard]] double tolerance() const noexcept { return basis_.tolerance(); }

    /// Basis vectors as matrix rows.
    [[nodiscard]] Matrix<T> basis() const {
        Matrix<T> m(dim(), ambient_dim());
        const auto rows = basis_.rows();
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t k = 0; k < ambient_dim(); ++k) m(i, k) = rows[i][k];
        return m;
    }

    [[nodiscard]] std::vector<Vector<T>> basis_vectors() const {
        auto rows = basis_.rows();
        return {rows.begin(), rows.end()};
    }

    /// Returns the new basis direction when v enlarged the subspace.
    std::optional<Vector<T>> add(std::span<const T> v, double scale = -1) { return basis_.insert(v, scale); }
    std::optional<Vector<T>> add(const Vector<T>& v, double scale = -1) { return add(std::span<const T>(v), scale); }

    [[nodiscard]] bool contains(std::span<const T> v, double scale = -1) const { return basis_.contains(v, scale); }
    [[nodiscard]] bool contains(const Vector<T>& v, double scale = -1) const {
        return contains(std::span<const T>(v), scale);
    }

    [[nodiscard]] bool contains(const Subspace& other) const {
        if (other.ambient_dim() != ambient_dim()) throw Error(ErrorKind::dimension_mismatch, "subspace ambient dimensions differ");
        for (const auto& v : other.basis_vectors())
            if (!contains(v)) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_dim() == b.ambient_dim() && a.dim() == b.dim() && a.contains(b);
    }

private:
    EchelonBasis<T> basis_;
};

template <Field T>
void check_generators(std::size_t n, std::span<const Matrix<T>> gens) {
    for (const auto& a : gens)
        if (a.rows() != n || a.cols() != n)
            throw Error(ErrorKind::dimension_mismatch, "generator is not " + std::to_string(n) + "x" + std::to_string(n));
}

/// True iff A x lies in X for every basis vector x of X and every A in gens.
template <Field T>
bool is_invariant(const Subspace<T>& x, std::span<const Matrix<T>> gens) {
    const std::size_t n = x.ambient_dim();
    check_generators<T>(n, gens);
    for (const auto& v : x.basis_vectors()) {
        const double vn = norm2<T>(v);
        for (const auto& a : gens) {
            const auto av = a * v;
            if (!x.contains(av, frobenius_norm(a) * vn)) return false;
        }
    }
    return true;
}

template <Field T>
bool is_invariant(const Subspace<T>& x, const std::vector<Matrix<T>>& gens) {
    return is_invariant(x, std::span<const Matrix<T>>(gens));
}

struct ClosureTrace {
    std::size_t sweeps = 0;
};

/// Smallest superspace of X invariant under every generator.
///
/// Each sweep applies the generators to the directions added by the
/// previous sweep; a sweep that adds nothing ends the iteration, so at most
/// n - dim(X) + 1 sweeps run.
template <Field T>
Subspace<T> subspace_closure(const Subspace<T>& x, std::span<const Matrix<T>> gens, ClosureTrace* trace = nullptr) {
    const std::size_t n = x.ambient_dim();
    check_generators<T>(n, gens);
    Subspace<T> y = x;
    std::vector<Vector<T>> frontier = x.basis_vectors();
    std::size_t sweeps = 0;
    while (!frontier.empty() && !y.is_full()) {
        ++sweeps;
        std::vector<Vector<T>> next;
        for (const auto& v : frontier) {
            const double vn = norm2<T>(v);
            for (const auto& a : gens) {
                if (auto added = y.add(a * v, frobenius_norm(a) * vn)) next.push_back(std::move(*added));
            }
        }
        frontier = std::move(next);
    }
    if (trace) trace->sweeps = sweeps;
    return y;
}

template <Field T>
Subspace<T> subspace_closure(const Subspace<T>& x, const std::vector<Matrix<T>>& gens, ClosureTrace* trace = nullptr) {
    return subspace_closure(x, std::span<const Matrix<T>>(gens), trace);
}

/// Basis of {x : m x = 0} read off the reduced row echelon form.
inline std::vector<Vector<Rational>> kernel(const Matrix<Rational>& m) {
    EchelonBasis<Rational> rows(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) rows.insert(m.row(i));
    const auto rref = rows.rows();
    const auto& pivots = rows.pivots();
    std::vector<Vector<Rational>> out;
    std::size_t next_pivot = 0;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (next_pivot < pivots.size() && pivots[next_pivot] == f) {
            ++next_pivot;
            continue;
        }
        Vector<Rational> x(m.cols(), Rational(0));
        x[f] = 1;
        for (std::size_t i = 0; i < rref.size(); ++i) x[pivots[i]] = -rref[i][f];
        out.push_back(std::move(x));
    }
    return out;
}

/// Exact subspace whose float basis matches `x` after reduction to row
/// echelon form and rounding every entry to a nearby small-denominator
/// rational. Nothing when rounding loses a dimension.
inline std::optional<Subspace<Rational>> rationalize(const Subspace<double>& x, std::int64_t max_den = 100000, double tol = 1e-7) {
    Matrix<double> b = x.basis();
    const std::size_t r = b.rows(), n = b.cols();
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < r; ++col) {
        std::size_t piv = row;
        for (std::size_t i = row + 1; i < r; ++i)
            if (std::fabs(b(i, col)) > std::fabs(b(piv, col))) piv = i;
        if (std::fabs(b(piv, col)) < 1e-8) continue;
        for (std::size_t k = 0; k < n; ++k) std::swap(b(row, k), b(piv, k));
        const double p = b(row, col);
        for (std::size_t k = 0; k < n; ++k) b(row, k) /= p;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == row || b(i, col) == 0.0) continue;
            const double f = b(i, col);
            for (std::size_t k = 0; k < n; ++k) b(i, k) -= f * b(row, k);
        }
        ++row;
    }
    Subspace<Rational> out(n);
    for (std::size_t i = 0; i < row; ++i) {
        Vector<Rational> v(n);
        for (std::size_t k = 0; k < n; ++k) {
            auto q = cswitch::rationalize(b(i, k), max_den, tol);
            if (!q) return std::nullopt;
            v[k] = *q;
        }
        out.add(v);
    }
    if (out.dim() != x.dim()) return std::nullopt;
    return out;
}

}  // namespace cswitch::linalg
