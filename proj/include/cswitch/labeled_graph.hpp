#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "cswitch/errors.hpp"

namespace cswitch {

using NodeId = std::size_t;

/// A switching mode. Labels are 1-based; label k selects matrix A_k.
struct Mode {
    std::size_t label = 1;

    [[nodiscard]] constexpr std::size_t index() const noexcept { return label - 1; }
    auto operator<=>(const Mode&) const = default;
};

struct Edge {
    NodeId source = 0;
    NodeId destination = 0;
    Mode mode;

    auto operator<=>(const Edge&) const = default;
};

/// Directed multigraph with labeled edges. Edges are kept sorted by
/// (source, destination, label); that order is the canonical edge order
/// used by serialization and by every enumeration.
class LabeledGraph {
public:
    LabeledGraph(std::size_t node_count, std::vector<Edge> edges) : node_count_(node_count), edges_(std::move(edges)) {
        if (node_count_ == 0) throw Error(ErrorKind::empty_graph, "graph has no nodes");
        if (edges_.empty()) throw Error(ErrorKind::empty_graph, "graph has no edges");
        for (const auto& e : edges_) {
            if (e.source >= node_count_ || e.destination >= node_count_)
                throw Error(ErrorKind::invalid_node, "edge references node outside [0, " + std::to_string(node_count_) + ")");
            if (e.mode.label == 0) throw Error(ErrorKind::unknown_label, "labels are 1-based");
        }
        std::sort(edges_.begin(), edges_.end());
        if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end())
            throw Error(ErrorKind::duplicate_edge, "(" + std::to_string(dup->source) + ", " + std::to_string(dup->destination) +
                                                       ", " + std::to_string(dup->mode.label) + ")");
        out_.assign(node_count_, {});
        in_.assign(node_count_, {});
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            out_[edges_[k].source].push_back(k);
            in_[edges_[k].destination].push_back(k);
        }
    }

    [[nodiscard]] std::size_t node_count() const noexcept { return node_count_; }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
    [[nodiscard]] const Edge& edge(std::size_t k) const { return edges_.at(k); }

    /// Indices of edges leaving / entering a node, in canonical order.
    [[nodiscard]] const std::vector<std::size_t>& out_edges(NodeId v) const { return out_.at(v); }
    [[nodiscard]] const std::vector<std::size_t>& in_edges(NodeId v) const { return in_.at(v); }

    [[nodiscard]] std::size_t max_label() const noexcept {
        std::size_t m = 0;
        for (const auto& e : edges_) m = std::max(m, e.mode.label);
        return m;
    }

    [[nodiscard]] bool has_edge(const Edge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

    friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
        return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
    }

private:
    std::size_t node_count_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
};

}  // namespace cswitch
