#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cswitch/graph.hpp"
#include "cswitch/labeled_graph.hpp"
#include "cswitch/matrix.hpp"
#include "cswitch/path.hpp"

namespace cswitch {

/// The matrices A_1..A_N of a system; label k selects matrices()[k-1].
template <Field T>
class MatrixSet {
public:
    MatrixSet(std::size_t n, std::vector<Matrix<T>> matrices) : n_(n), matrices_(std::move(matrices)) {
        if (n_ == 0) throw Error(ErrorKind::dimension_mismatch, "state dimension must be positive");
        if (matrices_.empty()) throw Error(ErrorKind::dimension_mismatch, "matrix set is empty");
        for (std::size_t k = 0; k < matrices_.size(); ++k)
            if (matrices_[k].rows() != n_ || matrices_[k].cols() != n_)
                throw Error(ErrorKind::dimension_mismatch, "A_" + std::to_string(k + 1) + " is " + std::to_string(matrices_[k].rows()) +
                                                               "x" + std::to_string(matrices_[k].cols()) + ", expected " +
                                                               std::to_string(n_) + "x" + std::to_string(n_));
    }

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return matrices_.size(); }
    [[nodiscard]] const std::vector<Matrix<T>>& matrices() const noexcept { return matrices_; }
    [[nodiscard]] const Matrix<T>& operator[](Mode m) const { return matrices_.at(m.index()); }

    friend bool operator==(const MatrixSet&, const MatrixSet&) = default;

private:
    std::size_t n_;
    std::vector<Matrix<T>> matrices_;
};

/// A constrained switching system S(G, M). Immutable once built.
template <Field T>
class SwitchedSystem {
public:
    using scalar_type = T;

    SwitchedSystem(LabeledGraph graph, MatrixSet<T> matrices, std::optional<std::string> name = std::nullopt,
                   std::vector<std::string> node_names = {})
        : graph_(std::move(graph)), matrices_(std::move(matrices)), name_(std::move(name)), node_names_(std::move(node_names)) {
        for (const auto& e : graph_.edges())
            if (e.mode.label > matrices_.size())
                throw Error(ErrorKind::unknown_label, "edge (" + std::to_string(e.source) + ", " + std::to_string(e.destination) +
                                                          ") has label " + std::to_string(e.mode.label) + " but only " +
                                                          std::to_string(matrices_.size()) + " matrices are given");
        if (!node_names_.empty() && node_names_.size() != graph_.node_count())
            throw Error(ErrorKind::dimension_mismatch, "node name list length differs from node count");
        strongly_connected_ = graph::strongly_connected(graph_);
    }

    [[nodiscard]] const LabeledGraph& graph() const noexcept { return graph_; }
    [[nodiscard]] const MatrixSet<T>& matrix_set() const noexcept { return matrices_; }
    [[nodiscard]] const std::vector<Matrix<T>>& matrices() const noexcept { return matrices_.matrices(); }
    [[nodiscard]] std::size_t n() const noexcept { return matrices_.n(); }
    [[nodiscard]] std::size_t node_count() const noexcept { return graph_.node_count(); }
    [[nodiscard]] const std::optional<std::string>& name() const noexcept { return name_; }
    [[nodiscard]] const std::vector<std::string>& node_names() const noexcept { return node_names_; }
    [[nodiscard]] bool strongly_connected() const noexcept { return strongly_connected_; }

    [[nodiscard]] const Matrix<T>& matrix(const Edge& e) const { return matrices_[e.mode]; }
    [[nodiscard]] const Matrix<T>& matrix(Mode m) const { return matrices_[m]; }

    void require_strongly_connected() const {
        if (!strongly_connected_) throw Error(ErrorKind::not_strongly_connected, "the analysis needs a strongly connected graph");
    }

    void check_node(NodeId v) const {
        if (v >= graph_.node_count())
            throw Error(ErrorKind::invalid_node, "node " + std::to_string(v) + " outside [0, " + std::to_string(graph_.node_count()) + ")");
    }

    /// Same system with the other scalar field (float to rational is exact).
    template <Field U>
    [[nodiscard]] SwitchedSystem<U> as() const {
        std::vector<Matrix<U>> ms;
        for (const auto& m : matrices()) ms.push_back(convert<U>(m));
        return SwitchedSystem<U>(graph_, MatrixSet<U>(n(), std::move(ms)), name_, node_names_);
    }

    friend bool operator==(const SwitchedSystem& a, const SwitchedSystem& b) {
        return a.graph_ == b.graph_ && a.matrices_ == b.matrices_ && a.name_ == b.name_ && a.node_names_ == b.node_names_;
    }

private:
    LabeledGraph graph_;
    MatrixSet<T> matrices_;
    std::optional<std::string> name_;
    std::vector<std::string> node_names_;
    bool strongly_connected_ = false;
};

using RationalSystem = SwitchedSystem<Rational>;
using FloatSystem = SwitchedSystem<double>;
using AnySystem = std::variant<RationalSystem, FloatSystem>;

struct ValidationReport {
    std::string scalar;
    std::size_t n = 0;
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    std::size_t mode_count = 0;
    bool dimensions_consistent = true;
    bool labels_covered = true;
    std::vector<std::size_t> unused_labels;
    bool strongly_connected = false;
    std::vector<std::string> warnings;
};

/// Hard errors (dimension mismatch, unknown label, empty graph, duplicate
/// edges) are raised while the system is built, so a system that exists
/// has passed them; this reports the remaining checks.
template <Field T>
ValidationReport validate_system(const SwitchedSystem<T>& sys) {
    ValidationReport r;
    r.scalar = std::string(field_traits<T>::name);
    r.n = sys.n();
    r.node_count = sys.node_count();
    r.edge_count = sys.graph().edge_count();
    r.mode_count = sys.matrices().size();
    r.strongly_connected = sys.strongly_connected();
    std::set<std::size_t> used;
    for (const auto& e : sys.graph().edges()) used.insert(e.mode.label);
    for (std::size_t k = 1; k <= r.mode_count; ++k)
        if (!used.count(k)) r.unused_labels.push_back(k);
    r.labels_covered = r.unused_labels.empty();
    for (std::size_t k : r.unused_labels)
        r.warnings.push_back("label " + std::to_string(k) + " is not used by any edge; A_" + std::to_string(k) + " plays no role");
    if (!r.strongly_connected) r.warnings.push_back("graph is not strongly connected; structural boundedness analyses will refuse it");
    return r;
}

/// A_p with later edges multiplying on the left: A_{sigma(T)} ... A_{sigma(1)}.
template <Field T>
Matrix<T> path_product(const SwitchedSystem<T>& sys, const Path& p) {
    for (const auto& e : p.edges())
        if (!sys.graph().has_edge(e))
            throw Error(ErrorKind::invalid_argument, "path uses edge (" + std::to_string(e.source) + ", " + std::to_string(e.destination) +
                                                         ", " + std::to_string(e.mode.label) + ") which is not in the graph");
    Matrix<T> prod = sys.matrix(p.edges().front());
    for (std::size_t i = 1; i < p.length(); ++i) prod = sys.matrix(p.edges()[i]) * prod;
    return prod;
}

}  // namespace cswitch
