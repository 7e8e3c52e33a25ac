#include <hypergiant/graph.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hypergiant {

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    for (auto& [u, v] : edges_) {
        if (u == v) throw std::invalid_argument("Graph: self-loop");
        if (u >= vertex_count_ || v >= vertex_count_) throw std::invalid_argument("Graph: endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    offsets_.assign(vertex_count_ + 1, 0);
    for (const auto& [u, v] : edges_) {
        ++offsets_[u + 1];
        ++offsets_[v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    neighbors_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [u, v] : edges_) {
        neighbors_[cursor[u]++] = v;
        neighbors_[cursor[v]++] = u;
    }
}

double Graph::mean_degree() const {
    if (vertex_count_ == 0) return 0.0;
    return 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(vertex_count_);
}

std::vector<std::size_t> Graph::degrees() const {
    std::vector<std::size_t> out(vertex_count_);
    for (std::size_t v = 0; v < vertex_count_; ++v) out[v] = degree(v);
    return out;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t v) {
    while (parent_[v] != v) {
        parent_[v] = parent_[parent_[v]];
        v = parent_[v];
    }
    return v;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
}

std::vector<VertexId> component_labels(const Graph& graph) {
    const std::size_t n = graph.vertex_count();
    DisjointSets sets(n);
    for (const auto& [u, v] : graph.edges()) sets.unite(u, v);
    std::vector<VertexId> min_label(n, static_cast<VertexId>(n));
    for (std::size_t v = 0; v < n; ++v) {
        auto& m = min_label[sets.find(v)];
        m = std::min<VertexId>(m, static_cast<VertexId>(v));
    }
    std::vector<VertexId> labels(n);
    for (std::size_t v = 0; v < n; ++v) labels[v] = min_label[sets.find(v)];
    return labels;
}

namespace {

void finish(ComponentSummary& s) {
    const double n = static_cast<double>(s.vertex_count);
    s.c1_frac = s.vertex_count == 0 ? 0.0 : static_cast<double>(s.largest()) / n;
    s.c2_frac = s.vertex_count == 0 ? 0.0 : static_cast<double>(s.second()) / n;
}

}  // namespace

ComponentSummary components(const Graph& graph) {
    const std::size_t n = graph.vertex_count();
    const auto labels = component_labels(graph);
    std::vector<std::size_t> count(n, 0);
    for (VertexId l : labels) ++count[l];

    // Labels are the component minima, so scanning labels in increasing
    // order and stable-sorting by size gives the required tie-break.
    std::vector<std::pair<std::size_t, VertexId>> order;
    for (std::size_t v = 0; v < n; ++v)
        if (count[v] > 0) order.emplace_back(count[v], static_cast<VertexId>(v));
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

    ComponentSummary s;
    s.vertex_count = n;
    s.sizes.reserve(order.size());
    for (const auto& [size, label] : order) s.sizes.push_back(size);
    finish(s);
    return s;
}

ComponentSummary merge(const ComponentSummary& a, const ComponentSummary& b) {
    ComponentSummary s;
    s.vertex_count = a.vertex_count + b.vertex_count;
    s.sizes.reserve(a.sizes.size() + b.sizes.size());
    std::merge(a.sizes.begin(), a.sizes.end(), b.sizes.begin(), b.sizes.end(), std::back_inserter(s.sizes),
               std::greater<>());
    finish(s);
    return s;
}

}  // namespace hypergiant
