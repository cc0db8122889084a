#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "cswitch/linalg/matrix_space.hpp"
#include "cswitch/system.hpp"

namespace cswitch::linalg {

/// S_{u,w} = span{A_p : p in E*_{u,w}} for every source u and a fixed
/// target w, as a least fixpoint of
///   S_{u,w} = span({A_e : e = (u,w,s)} + {S_{x,w} A_s : (u,x,s) in E}).
/// Every newly added basis element M of S_{x,w} is pushed once through the
/// in-edges of x, so the work is bounded by n^2 |V| insertions.
template <Field T>
std::vector<MatrixSpace<T>> span_fixpoint_to(const SwitchedSystem<T>& sys, NodeId w, double tol = Tolerances{}.membership) {
    sys.check_node(w);
    const auto& g = sys.graph();
    const std::size_t n = sys.n();
    std::vector<MatrixSpace<T>> spaces;
    spaces.reserve(g.node_count());
    for (std::size_t u = 0; u < g.node_count(); ++u) spaces.emplace_back(n, tol);

    std::deque<std::pair<NodeId, Matrix<T>>> work;
    for (std::size_t k : g.in_edges(w)) {
        const Edge& e = g.edge(k);
        if (const auto* added = spaces[e.source].insert(sys.matrix(e))) work.emplace_back(e.source, *added);
    }
    while (!work.empty()) {
        auto [x, m] = std::move(work.front());
        work.pop_front();
        const double mn = frobenius_norm(m);
        for (std::size_t k : g.in_edges(x)) {
            const Edge& e = g.edge(k);
            const auto& a = sys.matrix(e);
            if (const auto* added = spaces[e.source].insert(m * a, mn * frobenius_norm(a))) work.emplace_back(e.source, *added);
        }
    }
    return spaces;
}

/// span{A_p : p in E*_{v,w}}.
template <Field T>
MatrixSpace<T> span_fixpoint(const SwitchedSystem<T>& sys, NodeId v, NodeId w, double tol = Tolerances{}.membership) {
    sys.check_node(v);
    return std::move(span_fixpoint_to(sys, w, tol)[v]);
}

/// L_k(u) = span{A_p : p in E^k_{v,u}}, advanced one length at a time.
template <Field T>
class LengthSpans {
public:
    LengthSpans(const SwitchedSystem<T>& sys, NodeId v, double tol = Tolerances{}.membership) : sys_(&sys), tol_(tol) {
        sys.check_node(v);
        spans_ = empty();
        for (std::size_t k : sys.graph().out_edges(v)) {
            const Edge& e = sys.graph().edge(k);
            spans_[e.destination].insert(sys.matrix(e));
        }
        length_ = 1;
    }

    [[nodiscard]] std::size_t length() const noexcept { return length_; }
    [[nodiscard]] const MatrixSpace<T>& at(NodeId u) const { return spans_.at(u); }

    [[nodiscard]] bool all_zero() const {
        for (const auto& s : spans_)
            if (!s.is_zero()) return false;
        return true;
    }

    void advance() {
        auto next = empty();
        const auto& g = sys_->graph();
        for (std::size_t u = 0; u < spans_.size(); ++u) {
            for (const auto& m : spans_[u].basis()) {
                const double mn = frobenius_norm(m);
                for (std::size_t k : g.out_edges(u)) {
                    const Edge& e = g.edge(k);
                    const auto& a = sys_->matrix(e);
                    next[e.destination].insert(a * m, mn * frobenius_norm(a));
                }
            }
        }
        spans_ = std::move(next);
        ++length_;
    }

private:
    std::vector<MatrixSpace<T>> empty() const {
        std::vector<MatrixSpace<T>> s;
        for (std::size_t u = 0; u < sys_->node_count(); ++u) s.emplace_back(sys_->n(), tol_);
        return s;
    }

    const SwitchedSystem<T>* sys_;
    double tol_;
    std::vector<MatrixSpace<T>> spans_;
    std::size_t length_ = 0;
};

}  // namespace cswitch::linalg
