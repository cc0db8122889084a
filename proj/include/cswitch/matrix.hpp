#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "cswitch/errors.hpp"
#include "cswitch/field.hpp"

namespace cswitch {

template <class T>
using Vector = std::vector<T>;

/// Small dense row-major matrix. Exact when T is Rational.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw Error(ErrorKind::dimension_mismatch, "ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    /// Rebuilds an n x n matrix from its row-major vectorization.
    static Matrix from_vectorized(std::size_t n, std::span<const T> v) {
        assert(v.size() == n * n);
        Matrix m(n, n);
        std::copy(v.begin(), v.end(), m.data_.begin());
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<const T> vectorized() const noexcept { return data_; }
    [[nodiscard]] std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    [[nodiscard]] Vector<T> column(std::size_t j) const {
        Vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    [[nodiscard]] bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == T(0); });
    }

    [[nodiscard]] Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    [[nodiscard]] T trace() const {
        T s(0);
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
        return s;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const T& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw Error(ErrorKind::dimension_mismatch, "matrix product shapes");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Vector<T> operator*(const Matrix& a, std::span<const T> x) {
        if (a.cols_ != x.size()) throw Error(ErrorKind::dimension_mismatch, "matrix-vector shapes");
        Vector<T> y(a.rows_, T(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) y[i] += a(i, k) * x[k];
        return y;
    }
    friend Vector<T> operator*(const Matrix& a, const Vector<T>& x) { return a * std::span<const T>(x); }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::dimension_mismatch, "matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Kronecker product a (x) b.
template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == T(0)) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return k;
}

template <class T>
Matrix<double> to_double(const Matrix<T>& m) {
    Matrix<double> d(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = to_double(m(i, j));
    return d;
}

template <Field To, class From>
Matrix<To> convert(const Matrix<From>& m) {
    if constexpr (std::same_as<To, From>) {
        return m;
    } else if constexpr (std::same_as<To, double>) {
        return to_double(m);
    } else {
        Matrix<To> r(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = from_double<To>(m(i, j));
        return r;
    }
}

template <class T>
double frobenius_norm(const Matrix<T>& m) {
    double s = 0;
    for (const auto& x : m.vectorized()) {
        const double d = to_double(x);
        s += d * d;
    }
    return std::sqrt(s);
}

template <class T>
double norm2(std::span<const T> v) {
    double s = 0;
    for (const auto& x : v) {
        const double d = to_double(x);
        s += d * d;
    }
    return std::sqrt(s);
}

inline Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return e;
}

inline Matrix<double> from_eigen(const Eigen::MatrixXd& e) {
    Matrix<double> m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
    return m;
}

}  // namespace cswitch
