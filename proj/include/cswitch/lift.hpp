#pragma once

#include <vector>

#include "cswitch/irreducibility.hpp"
#include "cswitch/system.hpp"

namespace cswitch::lift {

/// (e_j e_i^T) (x) A_s for an edge (v_i, v_j, s): a single n x n block at
/// block row j, block column i. Block k covers rows/columns k*n .. k*n+n-1.
template <Field T>
struct LiftedMatrix {
    std::size_t nodes = 0;
    std::size_t n = 0;
    std::size_t block_row = 0;
    std::size_t block_col = 0;
    Matrix<T> block;

    [[nodiscard]] std::size_t dim() const noexcept { return nodes * n; }

    [[nodiscard]] Matrix<T> dense() const {
        Matrix<T> m(dim(), dim());
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) m(block_row * n + p, block_col * n + q) = block(p, q);
        return m;
    }
};

/// One lifted matrix per edge, in canonical edge order.
template <Field T>
struct LiftedSet {
    std::size_t nodes = 0;
    std::size_t n = 0;
    std::vector<Edge> edges;  // edges[k] produced matrices[k]
    std::vector<LiftedMatrix<T>> matrices;

    [[nodiscard]] std::size_t dim() const noexcept { return nodes * n; }

    [[nodiscard]] std::vector<Matrix<T>> dense() const {
        std::vector<Matrix<T>> out;
        out.reserve(matrices.size());
        for (const auto& m : matrices) out.push_back(m.dense());
        return out;
    }

    [[nodiscard]] std::size_t index_of(const Edge& e) const {
        for (std::size_t k = 0; k < edges.size(); ++k)
            if (edges[k] == e) return k;
        throw Error(ErrorKind::invalid_argument, "edge is not part of the lifted system");
    }
};

template <Field T>
LiftedSet<T> build_lift(const SwitchedSystem<T>& sys) {
    LiftedSet<T> out;
    out.nodes = sys.node_count();
    out.n = sys.n();
    for (const auto& e : sys.graph().edges()) {
        out.edges.push_back(e);
        out.matrices.push_back({out.nodes, out.n, e.destination, e.source, sys.matrix(e)});
    }
    return out;
}

/// The lifted set as an arbitrary-switching system: one node carrying a
/// self-loop per lifted matrix, label k+1 for matrix k.
template <Field T>
SwitchedSystem<T> lift_as_system(const SwitchedSystem<T>& sys) {
    const auto lifted = build_lift(sys);
    std::vector<Edge> loops;
    for (std::size_t k = 0; k < lifted.matrices.size(); ++k) loops.push_back({0, 0, Mode{k + 1}});
    std::optional<std::string> name;
    if (sys.name()) name = *sys.name() + "-lift";
    return SwitchedSystem<T>(LabeledGraph(1, std::move(loops)), MatrixSet<T>(lifted.dim(), lifted.dense()), name);
}

template <Field T>
IrreducibilityVerdict<T> lift_irreducible(const SwitchedSystem<T>& sys, const IrreducibilityOptions& opt = {}) {
    return is_irreducible_set(build_lift(sys).dense(), opt);
}

}  // namespace cswitch::lift
