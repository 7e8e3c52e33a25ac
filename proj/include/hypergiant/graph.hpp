#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hypergiant {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

/// Simple undirected graph. Edges are stored once with first < second,
/// sorted lexicographically; neighbor lists are kept in CSR form.
class Graph {
public:
    Graph() = default;

    /// Normalizes orientation, sorts and removes duplicate edges.
    /// Throws std::invalid_argument on self-loops or out-of-range endpoints.
    Graph(std::size_t vertex_count, std::vector<Edge> edges);

    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    std::span<const VertexId> neighbors(std::size_t v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    std::size_t degree(std::size_t v) const { return offsets_[v + 1] - offsets_[v]; }

    double mean_degree() const;
    std::vector<std::size_t> degrees() const;

private:
    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<VertexId> neighbors_;
};

/// Union-find with path halving and union by size.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n);

    std::size_t find(std::size_t v);
    /// Returns true when the two sets were distinct.
    bool unite(std::size_t a, std::size_t b);
    std::size_t size_of(std::size_t v) { return size_[find(v)]; }
    std::size_t count() const { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

/// Component sizes in descending order. Equal sizes are ordered by the
/// smallest vertex label they contain.
struct ComponentSummary {
    std::size_t vertex_count = 0;
    std::vector<std::size_t> sizes;
    double c1_frac = 0.0;
    double c2_frac = 0.0;

    std::size_t largest() const { return sizes.empty() ? 0 : sizes[0]; }
    std::size_t second() const { return sizes.size() < 2 ? 0 : sizes[1]; }
};

ComponentSummary components(const Graph& graph);

/// Component label per vertex; labels are the smallest vertex id of each
/// component.
std::vector<VertexId> component_labels(const Graph& graph);

/// Summary of the disjoint union of two graphs.
ComponentSummary merge(const ComponentSummary& a, const ComponentSummary& b);

}  // namespace hypergiant
