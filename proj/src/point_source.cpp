#include <hypergiant/point_source.hpp>
#include <hypergiant/rng.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypergiant {

namespace {

__extension__ typedef __int128 CellIndex;

struct ClippedRect {
    Rect rect;
    bool empty;
};

ClippedRect clip_to(const Rect& r, const Window& w) {
    Rect c{std::max(r.x_lo, -w.half_width), std::min(r.x_hi, w.half_width), std::max(r.y_lo, 0.0),
           std::min(r.y_hi, w.height)};
    return {c, !(c.x_lo <= c.x_hi && c.y_lo <= c.y_hi)};
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= h >> 31;
    h *= 0xbf58476d1ce4e5b9ULL;
    return h ^ (h >> 29);
}

}  // namespace

SampleIndex::SampleIndex(std::span<const HalfPlanePoint> points, Window window)
    : window_(window), size_(points.size()) {
    rows_.resize(static_cast<std::size_t>(box_row(window.height)) + 1);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (std::abs(p.x) > window.half_width || p.y < 0.0 || p.y > window.height)
            throw std::domain_error("SampleIndex: point outside the window");
        rows_[static_cast<std::size_t>(box_row(p.y))].push_back({p.x, p.y, static_cast<PointId>(i)});
    }
    for (auto& row : rows_)
        std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.x < b.x; });
}

SampleIndex::SampleIndex(const ContinuumSample& sample) : SampleIndex(sample.points, sample.window) {}

bool SampleIndex::visit(const Rect& rect, PointVisitor visitor) const {
    const auto [c, empty] = clip_to(rect, window_);
    if (empty) return true;
    const int k_lo = box_row(c.y_lo);
    const int k_hi = std::min(box_row(c.y_hi), static_cast<int>(rows_.size()) - 1);
    for (int k = k_lo; k <= k_hi; ++k) {
        const auto& row = rows_[static_cast<std::size_t>(k)];
        auto it = std::lower_bound(row.begin(), row.end(), c.x_lo,
                                   [](const Entry& e, double v) { return e.x < v; });
        for (; it != row.end() && it->x <= c.x_hi; ++it) {
            if (it->y < c.y_lo || it->y > c.y_hi) continue;
            if (!visitor(it->id, HalfPlanePoint{it->x, it->y})) return false;
        }
    }
    return true;
}

struct LazyPoissonField::Impl {
    struct RowSpec {
        double y_lo;
        double y_hi;
        double cell_width;
        double mass_per_width;  // expected points per unit of x
    };
    struct Key {
        int row;
        CellIndex j;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            const auto u = static_cast<unsigned __int128>(k.j);
            return static_cast<std::size_t>(
                mix(mix(static_cast<std::uint64_t>(k.row), static_cast<std::uint64_t>(u)),
                    static_cast<std::uint64_t>(u >> 64)));
        }
    };
    struct Cell {
        std::vector<LayeredPoint> points;  // sorted by x
        PointId base = 0;
    };

    std::vector<RowSpec> rows;
    std::unordered_map<Key, Cell, KeyHash> cells;
    PointId next_id = 0;
};

LazyPoissonField::LazyPoissonField(Window window, double alpha_env, double z_cap, std::uint64_t seed)
    : window_(window), alpha_env_(alpha_env), z_cap_(z_cap), seed_(seed), impl_(std::make_unique<Impl>()) {
    if (!(alpha_env > 0.0)) throw std::domain_error("lazy field: alpha must be positive");
    if (!(z_cap > 0.0) || !std::isfinite(z_cap)) throw std::domain_error("lazy field: lambda must be positive");
    const int last = box_row(window.height);
    for (int k = 0; k <= last; ++k) {
        const double lo = k * kLn2;
        const double hi = std::min((k + 1) * kLn2, window.height);
        const double mass = z_cap * std::exp(-alpha_env * lo) * -std::expm1(-alpha_env * (hi - lo)) / alpha_env;
        double width = std::ldexp(1.0, k - 1);
        while (mass * width < 1.0 && width < 2.0 * window.half_width) width *= 2.0;
        impl_->rows.push_back({lo, hi, width, mass});
    }
}

LazyPoissonField::LazyPoissonField(const ContinuumParams& params, Window window, std::uint64_t seed)
    : LazyPoissonField(window, params.alpha, params.lambda, seed) {}

LazyPoissonField::~LazyPoissonField() = default;

std::size_t LazyPoissonField::cells_generated() const { return impl_->cells.size(); }

bool LazyPoissonField::visit(const Rect& rect, PointVisitor visitor) const {
    return visit_marked(rect, [&](PointId id, const LayeredPoint& p) { return visitor(id, HalfPlanePoint{p.x, p.y}); });
}

bool LazyPoissonField::visit_marked(const Rect& rect, FunctionRef<bool(PointId, const LayeredPoint&)> visitor) const {
    const auto [c, empty] = clip_to(rect, window_);
    if (empty) return true;
    const int k_lo = box_row(c.y_lo);
    const int k_hi = std::min(box_row(c.y_hi), static_cast<int>(impl_->rows.size()) - 1);
    for (int k = k_lo; k <= k_hi; ++k) {
        const auto& spec = impl_->rows[static_cast<std::size_t>(k)];
        const double w = spec.cell_width;
        const auto j_lo = static_cast<CellIndex>(std::ceil(c.x_lo / w)) - 1;
        const auto j_hi = static_cast<CellIndex>(std::ceil(c.x_hi / w)) - 1;
        if (static_cast<double>(j_hi - j_lo) > kMaxCellsPerQuery)
            throw std::runtime_error("lazy field: query spans too many cells");
        for (CellIndex j = j_lo; j <= j_hi; ++j) {
            auto [it, inserted] = impl_->cells.try_emplace(Impl::Key{k, j});
            auto& cell = it->second;
            if (inserted) {
                const double x0 = std::max(static_cast<double>(j) * w, -window_.half_width);
                const double x1 = std::min(static_cast<double>(j + 1) * w, window_.half_width);
                if (x1 > x0) {
                    const auto u = static_cast<unsigned __int128>(j);
                    Rng rng(derive_seed(seed_, {5, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(u),
                                                static_cast<std::uint64_t>(u >> 64)}));
                    const auto count = rng.poisson(spec.mass_per_width * (x1 - x0));
                    cell.points.reserve(static_cast<std::size_t>(count));
                    for (std::int64_t n = 0; n < count; ++n) {
                        const double x = rng.uniform(x0, x1);
                        const double y = spec.y_lo - std::log1p(rng.uniform01() *
                                                                 std::expm1(-alpha_env_ * (spec.y_hi - spec.y_lo))) /
                                                         alpha_env_;
                        const double z = rng.uniform01() * z_cap_ * std::exp(-alpha_env_ * y);
                        cell.points.push_back({x, y, z});
                    }
                    std::sort(cell.points.begin(), cell.points.end(),
                              [](const LayeredPoint& a, const LayeredPoint& b) { return a.x < b.x; });
                }
                cell.base = impl_->next_id;
                impl_->next_id += cell.points.size();
            }
            const auto& pts = cell.points;
            auto p = std::lower_bound(pts.begin(), pts.end(), c.x_lo,
                                      [](const LayeredPoint& e, double v) { return e.x < v; });
            for (; p != pts.end() && p->x <= c.x_hi; ++p) {
                if (p->y < c.y_lo || p->y > c.y_hi) continue;
                if (!visitor(cell.base + static_cast<PointId>(p - pts.begin()), *p)) return false;
            }
        }
    }
    return true;
}

FieldSlice::FieldSlice(const LazyPoissonField& field, double alpha, double lambda)
    : field_(&field), alpha_(alpha), lambda_(lambda) {
    if (alpha < field.alpha_env()) throw std::domain_error("field slice: alpha below the field envelope");
    if (!(lambda > 0.0) || lambda > field.z_cap()) throw std::domain_error("field slice: lambda outside (0, z_cap]");
}

bool FieldSlice::visit(const Rect& rect, PointVisitor visitor) const {
    return field_->visit_marked(rect, [&](PointId id, const LayeredPoint& p) {
        if (!p.in_slice(alpha_, lambda_)) return true;
        return visitor(id, HalfPlanePoint{p.x, p.y});
    });
}

bool visit_gamma_neighbors(const PointSource& source, const HalfPlanePoint& p, PointId self, const Rect& clip,
                           PointVisitor visitor) {
    const auto [c, empty] = clip_to(clip, source.window());
    if (empty) return true;
    const int k_lo = box_row(c.y_lo);
    const int k_hi = box_row(c.y_hi);
    for (int k = k_lo; k <= k_hi; ++k) {
        const double y_lo = std::max(k * kLn2, c.y_lo);
        const double y_hi = std::min((k + 1) * kLn2, c.y_hi);
        const double reach = std::exp(0.5 * (p.y + y_hi));
        const Rect q{std::max(p.x - reach, c.x_lo), std::min(p.x + reach, c.x_hi), y_lo, y_hi};
        if (q.x_lo > q.x_hi) continue;
        const bool go_on = source.visit(q, [&](PointId id, const HalfPlanePoint& other) {
            if (id == self || box_row(other.y) != k || !gamma_adjacent(p, other)) return true;
            return visitor(id, other);
        });
        if (!go_on) return false;
    }
    return true;
}

}  // namespace hypergiant
