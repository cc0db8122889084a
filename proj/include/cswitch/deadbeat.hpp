#pragma once

#include <optional>
#include <vector>

#include "cswitch/graph.hpp"
#include "cswitch/linalg/subspace.hpp"
#include "cswitch/system.hpp"

namespace cswitch::deadbeat {

/// U_k^v for every node v; U_0^v = I.
template <Field T>
struct GurvitsState {
    std::size_t step = 0;
    std::vector<Matrix<T>> u;
};

template <Field T>
struct DeadbeatVerdict {
    bool is_deadbeat = false;
    std::size_t horizon_bound = 0;            // n * |V|
    std::optional<std::size_t> minimal_horizon;
    std::optional<Path> witness;              // nonzero A_p, |p| = horizon_bound
    bool exact = is_exact_v<T>;
    std::optional<double> psd_tolerance;      // float field only
    std::size_t steps_run = 0;
};

template <Field T>
GurvitsState<T> initial_state(const SwitchedSystem<T>& sys) {
    return {0, std::vector<Matrix<T>>(sys.node_count(), Matrix<T>::identity(sys.n()))};
}

/// U_k^v = sum over edges (v, w, s) of A_s^T U_{k-1}^w A_s.
template <Field T>
GurvitsState<T> step(const SwitchedSystem<T>& sys, const GurvitsState<T>& prev) {
    GurvitsState<T> next{prev.step + 1, std::vector<Matrix<T>>(sys.node_count(), Matrix<T>(sys.n(), sys.n()))};
    for (const auto& e : sys.graph().edges()) {
        const Matrix<T>& w = prev.u[e.destination];
        if (w.is_zero()) continue;
        const Matrix<T>& a = sys.matrix(e);
        next.u[e.source] += a.transpose() * (w * a);
    }
    return next;
}

/// Zero test on a PSD matrix: exact for rationals, trace <= psd * n for floats.
template <Field T>
bool psd_is_zero(const Matrix<T>& u, const Tolerances& tol = {}) {
    if constexpr (is_exact_v<T>) {
        return u.is_zero();
    } else {
        return u.trace() <= tol.psd * static_cast<double>(u.rows());
    }
}

template <Field T>
bool state_is_zero(const GurvitsState<T>& s, const Tolerances& tol = {}) {
    for (const auto& u : s.u)
        if (!psd_is_zero(u, tol)) return false;
    return true;
}

namespace detail {

template <Field T>
T quadratic(const Matrix<T>& u, const Vector<T>& y) {
    const auto uy = u * y;
    T s(0);
    for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * uy[i];
    return s;
}

/// Follows positive quadratic forms y^T U_r y down the stored states to
/// a path p of length K = states.size() - 1 with A_p e_i != 0.
template <Field T>
std::optional<Path> extract_witness(const SwitchedSystem<T>& sys, const std::vector<GurvitsState<T>>& states) {
    const std::size_t k_max = states.size() - 1;
    const std::size_t n = sys.n();
    // start at the node and coordinate with the largest diagonal entry
    NodeId node = 0;
    std::size_t coord = 0;
    T best(0);
    for (NodeId v = 0; v < sys.node_count(); ++v)
        for (std::size_t i = 0; i < n; ++i)
            if (states[k_max].u[v](i, i) > best) {
                best = states[k_max].u[v](i, i);
                node = v;
                coord = i;
            }
    if (!(best > T(0))) return std::nullopt;
    Vector<T> y(n, T(0));
    y[coord] = T(1);
    std::vector<Edge> edges;
    for (std::size_t r = k_max; r >= 1; --r) {
        const auto& g = sys.graph();
        std::optional<std::size_t> choice;
        T choice_value(0);
        for (std::size_t k : g.out_edges(node)) {
            const Edge& e = g.edge(k);
            const auto ay = sys.matrix(e) * y;
            const T q = quadratic(states[r - 1].u[e.destination], ay);
            if (q > choice_value) {
                choice_value = q;
                choice = k;
            }
        }
        if (!choice) return std::nullopt;
        const Edge& e = g.edge(*choice);
        y = sys.matrix(e) * y;
        if constexpr (!is_exact_v<T>) {
            const double yn = norm2<double>(y);
            for (auto& x : y) x /= yn;
        }
        edges.push_back(e);
        node = e.destination;
    }
    return Path(std::move(edges));
}

}  // namespace detail

/// Decides rho(S) = 0 with the node-indexed Gurvits iteration run for
/// n |V| steps. Strong connectivity is not needed.
template <Field T>
DeadbeatVerdict<T> gurvits_constrained(const SwitchedSystem<T>& sys, const Tolerances& tol = {}) {
    DeadbeatVerdict<T> out;
    out.horizon_bound = sys.n() * sys.node_count();
    if constexpr (!is_exact_v<T>) out.psd_tolerance = tol.psd;
    std::vector<GurvitsState<T>> states{initial_state(sys)};
    for (std::size_t k = 1; k <= out.horizon_bound; ++k) {
        states.push_back(step(sys, states.back()));
        if (state_is_zero(states.back(), tol)) {
            out.is_deadbeat = true;
            out.minimal_horizon = k;
            out.steps_run = k;
            return out;
        }
    }
    out.steps_run = out.horizon_bound;
    out.witness = detail::extract_witness(sys, states);
    return out;
}

/// Every state U_0..U_K of the iteration (K given), without early exit.
template <Field T>
std::vector<GurvitsState<T>> gurvits_trajectory(const SwitchedSystem<T>& sys, std::size_t k_max) {
    std::vector<GurvitsState<T>> states{initial_state(sys)};
    for (std::size_t k = 1; k <= k_max; ++k) states.push_back(step(sys, states.back()));
    return states;
}

/// Smallest k with U_k^v = 0 for every v, when the system is dead-beat.
template <Field T>
std::optional<std::size_t> minimal_deadbeat_horizon(const SwitchedSystem<T>& sys, const Tolerances& tol = {}) {
    return gurvits_constrained(sys, tol).minimal_horizon;
}

/// Classical iteration U_k = sum A^T U_{k-1} A, U_0 = I, under arbitrary
/// switching. Returns true iff U_n = 0, i.e. the joint spectral radius is 0.
template <Field T>
bool gurvits_arbitrary(std::span<const Matrix<T>> set, const Tolerances& tol = {}) {
    if (set.empty()) throw Error(ErrorKind::invalid_argument, "matrix set is empty");
    const std::size_t n = set.front().rows();
    linalg::check_generators<T>(n, set);
    Matrix<T> u = Matrix<T>::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix<T> next(n, n);
        for (const auto& a : set) next += a.transpose() * (u * a);
        u = std::move(next);
        if (psd_is_zero(u, tol)) return true;
    }
    return false;
}

template <Field T>
bool gurvits_arbitrary(const std::vector<Matrix<T>>& set, const Tolerances& tol = {}) {
    return gurvits_arbitrary(std::span<const Matrix<T>>(set), tol);
}

template <Field T>
bool product_is_zero(const Matrix<T>& p, double reference, const Tolerances& tol) {
    if constexpr (is_exact_v<T>) {
        return p.is_zero();
    } else {
        return frobenius_norm(p) <= tol.membership * reference;
    }
}

/// True iff A_p = 0 for every path of exactly `length` edges. Products are
/// shared along common prefixes and a zero prefix prunes its subtree.
/// Throws CapExceeded when the number of such paths exceeds `cap`.
template <Field T>
bool products_vanish_at(const SwitchedSystem<T>& sys, std::size_t length, std::size_t cap, const Tolerances& tol = {}) {
    const std::size_t required = graph::count_paths(sys.graph(), length);
    if (required > cap) throw CapExceeded(required, cap);
    const auto& g = sys.graph();
    struct Frame {
        NodeId node;
        std::size_t pos;
        Matrix<T> product;
        double reference;  // product of Frobenius norms, float zero test scale
    };
    for (std::size_t k0 = 0; k0 < g.edge_count(); ++k0) {
        const Edge& e0 = g.edge(k0);
        const auto& a0 = sys.matrix(e0);
        if (product_is_zero(a0, frobenius_norm(a0), tol)) continue;
        if (length == 1) return false;
        std::vector<Frame> stack;
        stack.push_back({e0.destination, 0, a0, frobenius_norm(a0)});
        while (!stack.empty()) {
            Frame& top = stack.back();
            const auto& outs = g.out_edges(top.node);
            if (top.pos == outs.size()) {
                stack.pop_back();
                continue;
            }
            const Edge& e = g.edge(outs[top.pos++]);
            const auto& a = sys.matrix(e);
            Matrix<T> p = a * top.product;
            const double ref = top.reference * frobenius_norm(a);
            if (product_is_zero(p, ref, tol)) continue;
            if (stack.size() + 1 == length) return false;
            stack.push_back({e.destination, 0, std::move(p), ref});
        }
    }
    return true;
}

/// The direct check: A_p = 0 for every path of length n |V|.
template <Field T>
bool deadbeat_bruteforce(const SwitchedSystem<T>& sys, std::size_t cap = 10'000'000, const Tolerances& tol = {}) {
    return products_vanish_at(sys, sys.n() * sys.node_count(), cap, tol);
}

}  // namespace cswitch::deadbeat
