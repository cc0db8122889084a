#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cswitch/graph.hpp"
#include "cswitch/irreducibility.hpp"
#include "cswitch/linalg/path_spans.hpp"
#include "cswitch/linalg/spectral.hpp"
#include "cswitch/system.hpp"

namespace cswitch::boundedness {

/// Length bounds: an escaping cycle needs at most
/// 1 + n(|V| - 1) edges, a nonzero connecting path at most 1 + n(|V| - 2).
inline std::size_t escape_bound(std::size_t n, std::size_t nodes) { return 1 + n * (nodes - 1); }
inline std::size_t connect_bound(std::size_t n, std::size_t nodes) { return nodes >= 2 ? 1 + n * (nodes - 2) : 1; }

namespace detail {

template <Field T>
std::vector<Matrix<T>> generators_or_zero(const linalg::MatrixSpace<T>& s) {
    if (!s.is_zero()) return s.basis();
    return {Matrix<T>(s.n(), s.n())};
}

}  // namespace detail

/// Irreducibility of node v: no non-trivial subspace is invariant under
/// every cycle matrix on v. Invariance is linear in the matrix, so the
/// cycle set may be replaced by its span S_{v,v}.
template <Field T>
IrreducibilityVerdict<T> node_irreducible(const SwitchedSystem<T>& sys, NodeId v, const IrreducibilityOptions& opt = {}) {
    sys.require_strongly_connected();
    sys.check_node(v);
    const auto span = linalg::span_fixpoint(sys, v, v, opt.tol.membership);
    return is_irreducible_set(detail::generators_or_zero(span), opt);
}

/// Same question answered from the explicit list of cycles on v of length
/// at most 1 + n(|V| - 1). Exponential; a cross-check for small systems.
template <Field T>
IrreducibilityVerdict<T> node_irreducible_by_enumeration(const SwitchedSystem<T>& sys, NodeId v, std::size_t cap = 1'000'000,
                                                         const IrreducibilityOptions& opt = {}) {
    sys.require_strongly_connected();
    sys.check_node(v);
    const std::size_t bound = escape_bound(sys.n(), sys.node_count());
    const std::size_t required = graph::count_paths_up_to(sys.graph(), bound);
    if (required > cap) throw CapExceeded(required, cap);
    linalg::MatrixSpace<T> span(sys.n(), opt.tol.membership);
    auto cycles = graph::enumerate_paths(sys.graph(), v, v, bound);
    while (auto c = cycles.next()) span.insert(path_product(sys, *c));
    return is_irreducible_set(detail::generators_or_zero(span), opt);
}

template <Field T>
struct NodeMarking {
    graph::NodeSet irreducible;
    graph::NodeSet unknown;
    std::vector<IrreducibilityVerdict<T>> verdicts;  // indexed by node
};

/// Irreducible nodes; nodes whose verdict is UnknownNumerical are kept
/// apart in `unknown`.
template <Field T>
NodeMarking<T> mark_irreducible_nodes(const SwitchedSystem<T>& sys, const IrreducibilityOptions& opt = {}) {
    sys.require_strongly_connected();
    NodeMarking<T> out;
    for (NodeId v = 0; v < sys.node_count(); ++v) {
        out.verdicts.push_back(node_irreducible(sys, v, opt));
        if (out.verdicts.back().irreducible()) out.irreducible.insert(v);
        if (out.verdicts.back().status == IrreducibilityStatus::unknown_numerical) out.unknown.insert(v);
    }
    return out;
}

/// Some path from v to w has a nonzero product.
template <Field T>
bool linearly_connected_pair(const SwitchedSystem<T>& sys, NodeId v, NodeId w, const Tolerances& tol = {}) {
    return !linalg::span_fixpoint(sys, v, w, tol.membership).is_zero();
}

struct ConnectivityReport {
    bool linearly_connected = true;
    std::optional<std::pair<NodeId, NodeId>> failing_pair;  // first failing (v, w)
};

template <Field T>
ConnectivityReport linear_connectivity(const SwitchedSystem<T>& sys, const Tolerances& tol = {}) {
    ConnectivityReport r;
    for (NodeId w = 0; w < sys.node_count(); ++w) {
        const auto spans = linalg::span_fixpoint_to(sys, w, tol.membership);
        for (NodeId v = 0; v < sys.node_count(); ++v)
            if (spans[v].is_zero() && (!r.failing_pair || std::pair{v, w} < *r.failing_pair)) {
                r.linearly_connected = false;
                r.failing_pair = std::pair{v, w};
            }
    }
    return r;
}

template <Field T>
bool is_linearly_connected(const SwitchedSystem<T>& sys, const Tolerances& tol = {}) {
    return linear_connectivity(sys, tol).linearly_connected;
}

/// Length of a shortest cycle c on v with A_c X not inside X. A length L
/// admits such a cycle iff some basis element of span{A_c : |c| = L}
/// moves X, since A X in X is linear in A.
template <Field T>
std::optional<std::size_t> escape_cycle_length(const SwitchedSystem<T>& sys, NodeId v, const linalg::Subspace<T>& x,
                                               const Tolerances& tol = {}) {
    sys.require_strongly_connected();
    sys.check_node(v);
    if (x.ambient_dim() != sys.n()) throw Error(ErrorKind::dimension_mismatch, "subspace lives in the wrong dimension");
    if (!x.is_proper()) throw Error(ErrorKind::bad_subspace_dim, "need 0 < dim X < n, got dim " + std::to_string(x.dim()));
    linalg::LengthSpans<T> spans(sys, v, tol.membership);
    const std::size_t bound = escape_bound(sys.n(), sys.node_count());
    while (true) {
        for (const auto& m : spans.at(v).basis())
            if (!linalg::is_invariant(x, std::span<const Matrix<T>>(&m, 1))) return spans.length();
        if (spans.length() >= bound || spans.all_zero()) return std::nullopt;
        spans.advance();
    }
}

/// Length of a shortest path from v to w with a nonzero product.
template <Field T>
std::optional<std::size_t> shortest_nonzero_path_length(const SwitchedSystem<T>& sys, NodeId v, NodeId w, const Tolerances& tol = {}) {
    sys.check_node(v);
    sys.check_node(w);
    if (!linearly_connected_pair(sys, v, w, tol)) return std::nullopt;
    linalg::LengthSpans<T> spans(sys, v, tol.membership);
    while (spans.at(w).is_zero()) spans.advance();
    return spans.length();
}

struct CjsrBounds {
    double lower = 0.0;
    double upper = 0.0;
    std::size_t depth = 0;
    std::size_t paths = 0;           // products formed
    std::size_t lower_length = 0;    // length of the cycle attaining `lower`
    std::size_t upper_length = 0;    // t attaining `upper`
    std::vector<double> upper_by_length;  // max ||A_p||^{1/t} for t = 1..depth
};

/// lower = max over closed walks c with |c| <= depth of rho(A_c)^{1/|c|};
/// upper = min over t <= depth of max over |p| = t of ||A_p||^{1/t}.
/// rho is taken from the exact characteristic polynomial on the rational
/// field; norms are spectral norms. Throws CapExceeded when the number of
/// paths of length <= depth exceeds `cap`.
template <Field T>
CjsrBounds cjsr_bounds(const SwitchedSystem<T>& sys, std::size_t depth, std::size_t cap = 1'000'000) {
    if (depth == 0) throw Error(ErrorKind::invalid_argument, "depth must be at least 1");
    const std::size_t required = graph::count_paths_up_to(sys.graph(), depth);
    if (required > cap) throw CapExceeded(required, cap);
    const auto& g = sys.graph();
    CjsrBounds b;
    b.depth = depth;
    std::vector<double> max_norm(depth + 1, 0.0);
    struct Frame {
        NodeId node;
        std::size_t pos;
        Matrix<T> product;
    };
    for (NodeId s = 0; s < g.node_count(); ++s) {
        std::vector<Frame> stack;
        stack.push_back({s, 0, Matrix<T>::identity(sys.n())});
        while (!stack.empty()) {
            Frame& top = stack.back();
            const auto& outs = g.out_edges(top.node);
            if (top.pos == outs.size()) {
                stack.pop_back();
                continue;
            }
            const Edge& e = g.edge(outs[top.pos++]);
            Matrix<T> p = sys.matrix(e) * top.product;
            const std::size_t t = stack.size();
            ++b.paths;
            if (p.is_zero()) continue;  // every extension is zero too
            max_norm[t] = std::max(max_norm[t], linalg::spectral_norm(p));
            if (e.destination == s) {
                const double r = std::pow(linalg::spectral_radius(p), 1.0 / static_cast<double>(t));
                if (r > b.lower) {
                    b.lower = r;
                    b.lower_length = t;
                }
            }
            if (t < depth) stack.push_back({e.destination, 0, std::move(p)});
        }
    }
    b.upper = std::numeric_limits<double>::infinity();
    for (std::size_t t = 1; t <= depth; ++t) {
        const double u = std::pow(max_norm[t], 1.0 / static_cast<double>(t));
        b.upper_by_length.push_back(u);
        if (u < b.upper) {
            b.upper = u;
            b.upper_length = t;
        }
    }
    return b;
}

/// Largest depth <= max_depth whose enumeration fits the cap (at least 1).
inline std::size_t depth_within_cap(const LabeledGraph& g, std::size_t max_depth, std::size_t cap) {
    std::size_t d = 1;
    while (d < max_depth && graph::count_paths_up_to(g, d + 1) <= cap) ++d;
    return d;
}

enum class Conditions { hold, fail, indeterminate };

constexpr std::string_view to_string(Conditions c) {
    switch (c) {
        case Conditions::hold: return "hold";
        case Conditions::fail: return "fail";
        case Conditions::indeterminate: return "indeterminate";
    }
    return "?";
}

template <Field T>
struct StructureReport {
    bool linearly_connected = false;
    std::optional<std::pair<NodeId, NodeId>> failing_pair;
    graph::NodeSet irreducible_nodes;
    graph::NodeSet unknown_nodes;
    std::vector<IrreducibilityVerdict<T>> node_verdicts;
    bool unavoidable = false;
    Conditions conditions = Conditions::fail;
    bool conditions_hold = false;
    bool all_nodes_irreducible = false;
    std::vector<std::string> claims;
    std::optional<CjsrBounds> cjsr;
    std::optional<std::string> cjsr_error;
};

struct StructureOptions {
    IrreducibilityOptions irreducibility;
    std::size_t max_depth = 8;
    std::size_t cap = 1'000'000;
    bool with_bounds = true;
};

/// Checks linear connectivity and whether the irreducible nodes form an
/// unavoidable set. When both hold the system is bounded if its CJSR is 1,
/// and its CJSR is positive.
template <Field T>
StructureReport<T> boundedness_structure(const SwitchedSystem<T>& sys, const StructureOptions& opt = {}) {
    sys.require_strongly_connected();
    StructureReport<T> r;
    const auto lc = linear_connectivity(sys, opt.irreducibility.tol);
    r.linearly_connected = lc.linearly_connected;
    r.failing_pair = lc.failing_pair;
    auto marking = mark_irreducible_nodes(sys, opt.irreducibility);
    r.irreducible_nodes = std::move(marking.irreducible);
    r.unknown_nodes = std::move(marking.unknown);
    r.node_verdicts = std::move(marking.verdicts);
    r.unavoidable = graph::is_unavoidable(sys.graph(), r.irreducible_nodes);
    r.all_nodes_irreducible = r.irreducible_nodes.size() == sys.node_count();
    r.conditions_hold = r.linearly_connected && r.unavoidable;
    if (r.conditions_hold) {
        r.conditions = Conditions::hold;
    } else if (r.linearly_connected && !r.unknown_nodes.empty() &&
               graph::is_unavoidable(sys.graph(), r.irreducible_nodes.united(r.unknown_nodes))) {
        r.conditions = Conditions::indeterminate;
    } else {
        r.conditions = Conditions::fail;
    }
    if (r.conditions_hold) {
        r.claims.push_back("bounded if the CJSR equals 1");
        r.claims.push_back("CJSR > 0");
        if (r.all_nodes_irreducible) r.claims.push_back("all nodes irreducible");
    }
    if (opt.with_bounds) {
        try {
            r.cjsr = cjsr_bounds(sys, depth_within_cap(sys.graph(), opt.max_depth, opt.cap), opt.cap);
        } catch (const CapExceeded& e) {
            r.cjsr_error = e.what();
        }
    }
    return r;
}

}  // namespace cswitch::boundedness
