#pragma once

#include <initializer_list>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "cswitch/labeled_graph.hpp"
#include "cswitch/path.hpp"

namespace cswitch::graph {

/// A subset of the node indices of a graph.
class NodeSet {
public:
    NodeSet() = default;
    NodeSet(std::initializer_list<NodeId> nodes) : members_(nodes) {}
    explicit NodeSet(std::set<NodeId> nodes) : members_(std::move(nodes)) {}

    void insert(NodeId v) { members_.insert(v); }
    [[nodiscard]] bool contains(NodeId v) const { return members_.count(v) != 0; }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
    [[nodiscard]] const std::set<NodeId>& members() const noexcept { return members_; }
    [[nodiscard]] auto begin() const { return members_.begin(); }
    [[nodiscard]] auto end() const { return members_.end(); }

    [[nodiscard]] NodeSet united(const NodeSet& other) const {
        NodeSet u = *this;
        u.members_.insert(other.members_.begin(), other.members_.end());
        return u;
    }

    friend bool operator==(const NodeSet&, const NodeSet&) = default;

private:
    std::set<NodeId> members_;
};

namespace detail {

inline std::vector<bool> reach(const LabeledGraph& g, NodeId start, bool reverse) {
    std::vector<bool> seen(g.node_count(), false);
    std::vector<NodeId> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (std::size_t k : reverse ? g.in_edges(u) : g.out_edges(u)) {
            const NodeId w = reverse ? g.edge(k).source : g.edge(k).destination;
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

}  // namespace detail

/// Nodes reachable from `v` by a path of length >= 0.
inline std::vector<bool> reachable_from(const LabeledGraph& g, NodeId v) { return detail::reach(g, v, false); }

/// True iff every ordered node pair is joined by a directed path.
inline bool strongly_connected(const LabeledGraph& g) {
    const auto fwd = detail::reach(g, 0, false);
    const auto bwd = detail::reach(g, 0, true);
    for (std::size_t v = 0; v < g.node_count(); ++v)
        if (!fwd[v] || !bwd[v]) return false;
    return true;
}

/// Removes `vstar` (and incident edges) and reports whether what remains is
/// acyclic, i.e. whether every cycle of the graph meets `vstar`.
/// Iterative three-colour depth-first search.
inline bool is_unavoidable(const LabeledGraph& g, const NodeSet& vstar) {
    enum class Colour : unsigned char { white, grey, black };
    std::vector<Colour> colour(g.node_count(), Colour::white);
    for (NodeId root = 0; root < g.node_count(); ++root) {
        if (vstar.contains(root) || colour[root] != Colour::white) continue;
        // frame: node, position in its out-edge list
        std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
        colour[root] = Colour::grey;
        while (!stack.empty()) {
            auto& [u, pos] = stack.back();
            const auto& outs = g.out_edges(u);
            if (pos == outs.size()) {
                colour[u] = Colour::black;
                stack.pop_back();
                continue;
            }
            const NodeId w = g.edge(outs[pos++]).destination;
            if (vstar.contains(w)) continue;
            if (colour[w] == Colour::grey) return false;
            if (colour[w] == Colour::white) {
                colour[w] = Colour::grey;
                stack.emplace_back(w, 0);
            }
        }
    }
    return true;
}

/// Lazily yields paths in length-then-lexicographic order (lexicographic on
/// canonical edge indices). Single consumer; the graph must outlive it.
class PathStream {
public:
    enum class Kind { all_paths, simple_cycles };

    PathStream(const LabeledGraph& g, NodeId source, std::optional<NodeId> target, std::size_t max_len, Kind kind)
        : g_(&g), source_(source), target_(target), max_len_(max_len), kind_(kind) {
        if (source >= g.node_count() || (target && *target >= g.node_count()))
            throw Error(ErrorKind::invalid_node, "path endpoint outside the graph");
        if (max_len == 0) throw Error(ErrorKind::invalid_argument, "max_len must be at least 1");
    }

    /// Next path, or nothing once the stream is exhausted.
    std::optional<Path> next() {
        while (length_ <= max_len_) {
            if (!started_) {
                edges_.clear();
                cursors_.assign(1, 0);
                started_ = true;
            }
            while (!cursors_.empty()) {
                const NodeId here = edges_.empty() ? source_ : g_->edge(edges_.back()).destination;
                const auto& outs = g_->out_edges(here);
                std::size_t& cursor = cursors_.back();
                if (cursor == outs.size()) {
                    cursors_.pop_back();
                    if (!edges_.empty()) edges_.pop_back();
                    continue;
                }
                const std::size_t k = outs[cursor++];
                const NodeId there = g_->edge(k).destination;
                const bool last = edges_.size() + 1 == length_;
                if (kind_ == Kind::simple_cycles && !last && there == source_) continue;
                if (last) {
                    const NodeId want = kind_ == Kind::simple_cycles ? source_ : target_.value_or(there);
                    if (there != want) continue;
                    edges_.push_back(k);
                    Path p = materialize();
                    edges_.pop_back();
                    return p;
                }
                edges_.push_back(k);
                cursors_.push_back(0);
            }
            ++length_;
            started_ = false;
        }
        return std::nullopt;
    }

    /// Edge indices of the path most recently returned are not retained;
    /// this counts the remaining paths by draining the stream.
    std::size_t drain_count() {
        std::size_t c = 0;
        while (next()) ++c;
        return c;
    }

private:
    Path materialize() const {
        std::vector<Edge> es;
        es.reserve(edges_.size());
        for (std::size_t k : edges_) es.push_back(g_->edge(k));
        return Path(std::move(es));
    }

    const LabeledGraph* g_;
    NodeId source_;
    std::optional<NodeId> target_;
    std::size_t max_len_;
    Kind kind_;
    std::size_t length_ = 1;
    bool started_ = false;
    std::vector<std::size_t> edges_;
    std::vector<std::size_t> cursors_;
};

/// Every path from v (ending at w when given) with 1 <= |p| <= max_len.
inline PathStream enumerate_paths(const LabeledGraph& g, NodeId v, std::optional<NodeId> w, std::size_t max_len) {
    return PathStream(g, v, w, max_len, PathStream::Kind::all_paths);
}

/// Cycles on v of length <= max_len that do not revisit v in their interior.
inline PathStream simple_cycles_through(const LabeledGraph& g, NodeId v, std::size_t max_len) {
    return PathStream(g, v, v, max_len, PathStream::Kind::simple_cycles);
}

// Streams borrow the graph, so temporaries are refused.
PathStream enumerate_paths(LabeledGraph&&, NodeId, std::optional<NodeId>, std::size_t) = delete;
PathStream simple_cycles_through(LabeledGraph&&, NodeId, std::size_t) = delete;

/// Number of paths of exactly `length` edges starting anywhere (the entry
/// sum of the adjacency matrix power). Saturates at SIZE_MAX.
inline std::size_t count_paths(const LabeledGraph& g, std::size_t length) {
    constexpr std::size_t sat = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> ways(g.node_count(), 1);  // paths of current length ending at each node
    for (std::size_t step = 0; step < length; ++step) {
        std::vector<std::size_t> next(g.node_count(), 0);
        for (const auto& e : g.edges()) {
            const std::size_t add = ways[e.source];
            std::size_t& slot = next[e.destination];
            slot = (sat - slot < add) ? sat : slot + add;
        }
        ways = std::move(next);
    }
    std::size_t total = 0;
    for (std::size_t w : ways) total = (sat - total < w) ? sat : total + w;
    return total;
}

/// Number of paths of length 1..max_len, saturating.
inline std::size_t count_paths_up_to(const LabeledGraph& g, std::size_t max_len) {
    constexpr std::size_t sat = std::numeric_limits<std::size_t>::max();
    std::size_t total = 0;
    for (std::size_t l = 1; l <= max_len; ++l) {
        const std::size_t c = count_paths(g, l);
        total = (sat - total < c) ? sat : total + c;
    }
    return total;
}

}  // namespace cswitch::graph
