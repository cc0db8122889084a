#pragma once

#include <string>
#include <vector>

#include "cswitch/labeled_graph.hpp"

namespace cswitch {

/// A nonempty sequence of consecutive edges. |p| is the number of edges.
class Path {
public:
    explicit Path(std::vector<Edge> edges) : edges_(std::move(edges)) {
        if (edges_.empty()) throw Error(ErrorKind::invalid_argument, "a path has at least one edge");
        for (std::size_t i = 0; i + 1 < edges_.size(); ++i)
            if (edges_[i].destination != edges_[i + 1].source)
                throw Error(ErrorKind::non_consecutive_path, "edge " + std::to_string(i) + " ends at node " +
                                                                 std::to_string(edges_[i].destination) + " but edge " +
                                                                 std::to_string(i + 1) + " starts at node " +
                                                                 std::to_string(edges_[i + 1].source));
    }

    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
    [[nodiscard]] std::size_t length() const noexcept { return edges_.size(); }
    [[nodiscard]] NodeId source() const noexcept { return edges_.front().source; }
    [[nodiscard]] NodeId destination() const noexcept { return edges_.back().destination; }
    [[nodiscard]] bool is_cycle() const noexcept { return source() == destination(); }

    /// A cycle on its source with no interior return to the source.
    [[nodiscard]] bool is_simple_cycle() const noexcept {
        if (!is_cycle()) return false;
        for (std::size_t i = 0; i + 1 < edges_.size(); ++i)
            if (edges_[i].destination == source()) return false;
        return true;
    }

    [[nodiscard]] std::vector<std::size_t> labels() const {
        std::vector<std::size_t> out;
        out.reserve(edges_.size());
        for (const auto& e : edges_) out.push_back(e.mode.label);
        return out;
    }

    /// Concatenation [*this, tail].
    [[nodiscard]] Path then(const Path& tail) const {
        std::vector<Edge> all = edges_;
        all.insert(all.end(), tail.edges_.begin(), tail.edges_.end());
        return Path(std::move(all));
    }

    friend bool operator==(const Path&, const Path&) = default;

private:
    std::vector<Edge> edges_;
};

}  // namespace cswitch
