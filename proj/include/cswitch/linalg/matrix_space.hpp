#pragma once

#include <deque>
#include <span>
#include <vector>

#include "cswitch/linalg/echelon.hpp"
#include "cswitch/linalg/subspace.hpp"
#include "cswitch/matrix.hpp"

namespace cswitch::linalg {

/// Linear span of n x n matrices, tested for independence on their
/// vectorizations with the same kernel as Subspace.
template <Field T>
class MatrixSpace {
public:
    explicit MatrixSpace(std::size_t n, double tol = Tolerances{}.membership) : n_(n), echelon_(n * n, tol) {}

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t dim() const noexcept { return basis_.size(); }
    [[nodiscard]] bool is_zero() const noexcept { return basis_.empty(); }
    [[nodiscard]] const std::vector<Matrix<T>>& basis() const noexcept { return basis_; }

    /// Adds m; returns the new (reduced) basis element if m was independent.
    const Matrix<T>* insert(const Matrix<T>& m, double scale = -1) {
        check(m);
        auto added = echelon_.insert(m.vectorized(), scale);
        if (!added) return nullptr;
        basis_.push_back(Matrix<T>::from_vectorized(n_, *added));
        return &basis_.back();
    }

    [[nodiscard]] bool contains(const Matrix<T>& m, double scale = -1) const {
        check(m);
        return echelon_.contains(m.vectorized(), scale);
    }

private:
    void check(const Matrix<T>& m) const {
        if (m.rows() != n_ || m.cols() != n_) throw Error(ErrorKind::dimension_mismatch, "matrix does not match space dimension");
    }

    std::size_t n_;
    EchelonBasis<T> echelon_;
    std::vector<Matrix<T>> basis_;
};

/// Basis of the smallest unital algebra containing `set`: the span of I and
/// every word over the set. Grown breadth-first by left-multiplying each new
/// basis element by every generator, which reaches a fixpoint after at most
/// n^2 insertions.
template <Field T>
MatrixSpace<T> algebra_closure(std::span<const Matrix<T>> set, std::size_t n, double tol = Tolerances{}.membership) {
    check_generators<T>(n, set);
    MatrixSpace<T> space(n, tol);
    std::deque<Matrix<T>> queue;
    queue.push_back(*space.insert(Matrix<T>::identity(n)));
    while (!queue.empty() && space.dim() < n * n) {
        const Matrix<T> b = std::move(queue.front());
        queue.pop_front();
        const double bn = frobenius_norm(b);
        for (const auto& g : set) {
            if (const auto* added = space.insert(g * b, frobenius_norm(g) * bn)) queue.push_back(*added);
        }
    }
    return space;
}

template <Field T>
MatrixSpace<T> algebra_closure(const std::vector<Matrix<T>>& set, std::size_t n, double tol = Tolerances{}.membership) {
    return algebra_closure(std::span<const Matrix<T>>(set), n, tol);
}

}  // namespace cswitch::linalg
