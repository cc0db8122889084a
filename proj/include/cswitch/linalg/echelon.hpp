#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "cswitch/field.hpp"
#include "cswitch/matrix.hpp"

namespace cswitch::linalg {

/// Incrementally built basis of a subspace of T^dim.
///
/// This is the single rank kernel shared by vector subspaces and
/// (vectorized) matrix spaces. The rational specialization keeps its rows
/// as primitive integer vectors in fully reduced echelon form and updates
/// them fraction-free; the float specialization keeps an orthonormal basis
/// and decides membership with a relative residual test.
template <Field T>
class EchelonBasis;

template <>
class EchelonBasis<Rational> {
public:
    explicit EchelonBasis(std::size_t dim, double /*tol*/ = 0.0) : dim_(dim) {}

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t rank() const noexcept { return rows_.size(); }
    [[nodiscard]] double tolerance() const noexcept { return 0.0; }

    /// Adds v to the span. Returns the reduced residual (a new basis
    /// direction) when v was independent, nothing otherwise.
    std::optional<Vector<Rational>> insert(std::span<const Rational> v, double /*scale*/ = -1) {
        check(v);
        auto w = to_integer(v);
        reduce(w);
        const auto pivot = first_nonzero(w);
        if (!pivot) return std::nullopt;
        if (w[*pivot] < 0)
            for (auto& x : w) x = -x;
        for (auto& r : rows_) {
            if (r[*pivot] == 0) continue;
            Integer g = gcd(r[*pivot], w[*pivot]);
            Integer a = w[*pivot] / g;
            Integer b = r[*pivot] / g;
            for (std::size_t k = 0; k < dim_; ++k) r[k] = a * r[k] - b * w[k];
            make_primitive(r);
        }
        const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), *pivot) - pivots_.begin();
        pivots_.insert(pivots_.begin() + pos, *pivot);
        rows_.insert(rows_.begin() + pos, w);
        Vector<Rational> out(dim_);
        for (std::size_t k = 0; k < dim_; ++k) out[k] = Rational(w[k]);
        return out;
    }

    [[nodiscard]] bool contains(std::span<const Rational> v, double /*scale*/ = -1) const {
        check(v);
        auto w = to_integer(v);
        reduce(w);
        return !first_nonzero(w).has_value();
    }

    /// Reduced row echelon form: pivot entries equal to one.
    [[nodiscard]] std::vector<Vector<Rational>> rows() const {
        std::vector<Vector<Rational>> out;
        out.reserve(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Integer& p = rows_[i][pivots_[i]];
            Vector<Rational> r(dim_);
            for (std::size_t k = 0; k < dim_; ++k) r[k] = Rational(rows_[i][k], p);
            out.push_back(std::move(r));
        }
        return out;
    }

    [[nodiscard]] const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

private:
    void check(std::span<const Rational> v) const {
        if (v.size() != dim_) throw Error(ErrorKind::dimension_mismatch, "vector length differs from ambient dimension");
    }

    static Integer gcd(const Integer& a, const Integer& b) {
        return boost::multiprecision::gcd(a, b);
    }

    static std::optional<std::size_t> first_nonzero(const std::vector<Integer>& w) {
        for (std::size_t k = 0; k < w.size(); ++k)
            if (w[k] != 0) return k;
        return std::nullopt;
    }

    static void make_primitive(std::vector<Integer>& w) {
        Integer g = 0;
        for (const auto& x : w) {
            if (x != 0) g = gcd(g, abs(x));
            if (g == 1) return;
        }
        if (g > 1)
            for (auto& x : w) x /= g;
    }

    std::vector<Integer> to_integer(std::span<const Rational> v) const {
        Integer l = 1;
        for (const auto& x : v) {
            const Integer& d = boost::multiprecision::denominator(x);
            if (d != 1) l = boost::multiprecision::lcm(l, d);
        }
        std::vector<Integer> w(dim_);
        for (std::size_t k = 0; k < dim_; ++k)
            w[k] = boost::multiprecision::numerator(v[k]) * (l / boost::multiprecision::denominator(v[k]));
        make_primitive(w);
        return w;
    }

    void reduce(std::vector<Integer>& w) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const std::size_t p = pivots_[i];
            if (w[p] == 0) continue;
            Integer g = gcd(rows_[i][p], w[p]);
            Integer a = rows_[i][p] / g;
            Integer b = w[p] / g;
            for (std::size_t k = 0; k < dim_; ++k) w[k] = a * w[k] - b * rows_[i][k];
            make_primitive(w);
        }
    }

    std::size_t dim_;
    std::vector<std::vector<Integer>> rows_;
    std::vector<std::size_t> pivots_;
};

template <>
class EchelonBasis<double> {
public:
    explicit EchelonBasis(std::size_t dim, double tol = 1e-9) : dim_(dim), tol_(tol) {}

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t rank() const noexcept { return rows_.size(); }
    [[nodiscard]] double tolerance() const noexcept { return tol_; }

    /// `scale` is the magnitude the residual is compared against; it
    /// defaults to the norm of v. Callers pass ||A|| * ||x|| when v = A x
    /// so that round-off in a near-zero product is not mistaken for a new
    /// direction.
    std::optional<Vector<double>> insert(std::span<const double> v, double scale = -1) {
        check(v);
        auto r = residual(v);
        const double rn = norm2<double>(r);
        if (rn <= threshold(v, scale) || rn == 0.0) return std::nullopt;
        for (auto& x : r) x /= rn;
        rows_.push_back(r);
        return r;
    }

    [[nodiscard]] bool contains(std::span<const double> v, double scale = -1) const {
        check(v);
        const auto r = residual(v);
        return norm2<double>(r) <= threshold(v, scale);
    }

    /// Orthonormal basis rows.
    [[nodiscard]] const std::vector<Vector<double>>& rows() const noexcept { return rows_; }

private:
    void check(std::span<const double> v) const {
        if (v.size() != dim_) throw Error(ErrorKind::dimension_mismatch, "vector length differs from ambient dimension");
    }

    [[nodiscard]] double threshold(std::span<const double> v, double scale) const {
        return tol_ * (scale < 0 ? norm2<double>(v) : scale);
    }

    [[nodiscard]] Vector<double> residual(std::span<const double> v) const {
        Vector<double> r(v.begin(), v.end());
        // two passes of modified Gram-Schmidt
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : rows_) {
                double d = 0;
                for (std::size_t k = 0; k < dim_; ++k) d += q[k] * r[k];
                for (std::size_t k = 0; k < dim_; ++k) r[k] -= d * q[k];
            }
        return r;
    }

    std::size_t dim_;
    double tol_;
    std::vector<Vector<double>> rows_;
};

}  // namespace cswitch::linalg
