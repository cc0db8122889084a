#pragma once

#include <cmath>
#include <concepts>
#include <limits>
#include <string_view>

#include "cswitch/rational.hpp"

namespace cswitch {

/// The two scalar fields a system can be expressed over.
template <class T>
concept Field = std::same_as<T, Rational> || std::same_as<T, double>;

template <Field T>
struct field_traits;

template <>
struct field_traits<Rational> {
    static constexpr bool exact = true;
    static constexpr std::string_view name = "rational";
};

template <>
struct field_traits<double> {
    static constexpr bool exact = false;
    static constexpr std::string_view name = "float";
};

template <Field T>
inline constexpr bool is_exact_v = field_traits<T>::exact;

/// Numerical thresholds for the float field. Exact arithmetic ignores them.
///
/// - `membership`: relative residual below which a vector counts as lying
///   in a subspace (scaled by the norm of the operator and vector involved).
/// - `psd`: a Gurvits state U counts as zero when trace(U) <= psd * n.
/// - `rank_factor`: singular values below rank_factor * n * eps * sigma_max
///   are treated as zero in explicit rank computations.
struct Tolerances {
    double membership = 1e-9;
    double psd = 1e-9;
    double rank_factor = 1.0;

    [[nodiscard]] double rank_threshold(std::size_t n, double sigma_max) const {
        return rank_factor * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * sigma_max;
    }
};

template <Field T>
T from_double(double x) {
    if constexpr (std::same_as<T, double>) {
        return x;
    } else {
        return Rational(x);
    }
}

}  // namespace cswitch
