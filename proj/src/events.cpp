#include <hypergiant/events.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace hypergiant {

namespace {

void require_window(const PointSource& source, double half_width, double height, const char* what) {
    // Allow a relative rounding slack: windows are usually built from the same expression.
    const Window w = source.window();
    const double slack = 1e-12;
    if (w.half_width * (1.0 + slack) < half_width || w.height * (1.0 + slack) < height)
        throw std::domain_error(std::string(what) + ": sample window does not cover the event box");
}

struct Queued {
    double y;
    PointId id;
    HalfPlanePoint p;
    bool operator<(const Queued& o) const { return y < o.y; }
};

// Same as visit_gamma_neighbors but scanning rows from the top down.
bool visit_neighbors_top_down(const PointSource& source, const HalfPlanePoint& p, PointId self, const Rect& clip,
                              PointVisitor visitor) {
    const int k_lo = box_row(std::max(clip.y_lo, 0.0));
    const int k_hi = box_row(std::max(clip.y_hi, 0.0));
    for (int k = k_hi; k >= k_lo; --k) {
        const Rect band{clip.x_lo, clip.x_hi, std::max(k * kLn2, clip.y_lo), std::min((k + 1) * kLn2, clip.y_hi)};
        if (band.y_lo > band.y_hi) continue;
        if (!visit_gamma_neighbors(source, p, self, band, visitor)) return false;
    }
    return true;
}

}  // namespace

bool event_T(double y, double h, double w, const PointSource& source) {
    if (!(h > 0.0) || !(w > 0.0)) throw std::domain_error("event_T: h and w must be positive");
    if (!(y >= 0.0 && y <= 2.0 * h)) throw std::domain_error("event_T: requires 0 <= y <= 2h");
    const double half = w * std::exp(h);
    require_window(source, half, 2.0 * h, "event_T");
    if (y >= h) return true;
    const Rect box{-half, half, 0.0, 2.0 * h};

    std::priority_queue<Queued> frontier;
    std::unordered_set<PointId> seen;
    frontier.push({y, kPlantedId, {0.0, y}});
    bool reached = false;
    while (!frontier.empty() && !reached) {
        const Queued cur = frontier.top();
        frontier.pop();
        visit_neighbors_top_down(source, cur.p, cur.id, box, [&](PointId id, const HalfPlanePoint& q) {
            if (!seen.insert(id).second) return true;
            if (q.y >= h) {
                reached = true;
                return false;
            }
            frontier.push({q.y, id, q});
            return true;
        });
    }
    return reached;
}

bool event_T(double y, double h, double w, const ContinuumSample& sample) {
    const SampleIndex index(sample);
    return event_T(y, h, w, index);
}

bool event_U(double y, double n, double h, const PointSource& source) {
    if (!(y >= 0.0 && n >= y && h >= n)) throw std::domain_error("event_U: requires h >= n >= y >= 0");
    const double half = std::exp(h);
    require_window(source, half, h, "event_U");
    if (n < 1.0) return false;  // the planted point alone already counts as one vertex
    const Rect box{-half, half, 0.0, h};

    std::deque<std::pair<PointId, HalfPlanePoint>> queue;
    std::unordered_set<PointId> seen;
    queue.emplace_back(kPlantedId, HalfPlanePoint{0.0, y});
    double count = 1.0;
    bool contained = true;
    while (!queue.empty() && contained) {
        const auto [id, p] = queue.front();
        queue.pop_front();
        visit_gamma_neighbors(source, p, id, box, [&](PointId qid, const HalfPlanePoint& q) {
            if (!seen.insert(qid).second) return true;
            count += 1.0;
            if (std::abs(q.x) > n || q.y > n || count > n) {
                contained = false;
                return false;
            }
            queue.emplace_back(qid, q);
            return true;
        });
    }
    return contained;
}

bool event_U(double y, double n, double h, const ContinuumSample& sample) {
    const SampleIndex index(sample);
    return event_U(y, n, h, index);
}

bool event_C(double w, double h, const PointSource& source) {
    if (!(w >= 1.0)) throw std::domain_error("event_C: requires w >= 1");
    if (!(h > 0.0)) throw std::domain_error("event_C: h must be positive");
    const double e_h = std::exp(h);
    const double half = w * e_h;
    const double inner = (w - 1.0) * e_h;
    require_window(source, half, h, "event_C");
    const Rect box{-half, half, 0.0, h};

    std::deque<std::pair<PointId, HalfPlanePoint>> queue;
    std::unordered_set<PointId> seen;
    bool crossed = false;
    source.visit({-half, -inner, 0.0, h}, [&](PointId id, const HalfPlanePoint& p) {
        seen.insert(id);
        queue.emplace_back(id, p);
        if (p.x >= inner) {
            crossed = true;
            return false;
        }
        return true;
    });
    while (!queue.empty() && !crossed) {
        const auto [id, p] = queue.front();
        queue.pop_front();
        visit_gamma_neighbors(source, p, id, box, [&](PointId qid, const HalfPlanePoint& q) {
            if (!seen.insert(qid).second) return true;
            if (q.x >= inner) {
                crossed = true;
                return false;
            }
            queue.emplace_back(qid, q);
            return true;
        });
    }
    return crossed;
}

bool event_C(double w, double h, const ContinuumSample& sample) {
    const SampleIndex index(sample);
    return event_C(w, h, index);
}

double crossing_level(LayeredSample& sample, double w, double h, double lambda_max) {
    if (!(w >= 1.0)) throw std::domain_error("crossing_level: requires w >= 1");
    const double e_h = std::exp(h);
    const double half = w * e_h;
    const double inner = (w - 1.0) * e_h;
    const Window& win = sample.window();
    if (std::abs(win.half_width - half) > 1e-9 * half || std::abs(win.height - h) > 1e-9 * h)
        throw std::domain_error("crossing_level: sample window must equal the event box");
    const double alpha = sample.alpha_min();
    lambda_max = std::min(lambda_max, sample.z_cap());

    // Dynamic grid: row k of height ln 2 split into cells of width 2^{k-1}.
    struct GridRow {
        double cell_width;
        std::vector<std::vector<std::uint32_t>> cells;
    };
    const int rows = box_row(h) + 1;
    std::vector<GridRow> grid(static_cast<std::size_t>(rows));
    for (int k = 0; k < rows; ++k) {
        auto& row = grid[static_cast<std::size_t>(k)];
        row.cell_width = std::ldexp(1.0, k - 1);
        row.cells.resize(static_cast<std::size_t>(std::ceil(2.0 * half / row.cell_width)) + 1);
    }
    auto cell_of = [&](const GridRow& row, double x) {
        const double c = std::floor((x + half) / row.cell_width);
        return static_cast<std::size_t>(std::clamp(c, 0.0, static_cast<double>(row.cells.size() - 1)));
    };

    // Union-find over activated points plus the two flank nodes 0 (left), 1 (right).
    std::vector<std::uint32_t> parent{0, 1};
    auto find = [&](std::uint32_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    auto unite = [&](std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    std::vector<HalfPlanePoint> active;  // node v >= 2 is active[v - 2]

    std::size_t next = 0;
    while (true) {
        if (next == sample.points().size()) {
            if (sample.covered() >= lambda_max) return std::numeric_limits<double>::infinity();
            sample.extend_to(sample.covered() + sample.chunk_width());
            continue;
        }
        const LayeredPoint lp = sample.points()[next++];
        const double level = lp.activation(alpha);
        if (level >= lambda_max) return std::numeric_limits<double>::infinity();
        const HalfPlanePoint p{lp.x, lp.y};
        const auto node = static_cast<std::uint32_t>(parent.size());
        parent.push_back(node);
        active.push_back(p);
        if (p.x <= -inner) unite(node, 0);
        if (p.x >= inner) unite(node, 1);
        for (int k = 0; k < rows; ++k) {
            auto& row = grid[static_cast<std::size_t>(k)];
            const double reach = std::exp(0.5 * (p.y + (k + 1) * kLn2));
            const auto c_lo = cell_of(row, p.x - reach);
            const auto c_hi = cell_of(row, p.x + reach);
            for (auto c = c_lo; c <= c_hi; ++c) {
                for (auto v : row.cells[c]) {
                    if (gamma_adjacent(p, active[v - 2])) unite(node, v);
                }
            }
        }
        grid[static_cast<std::size_t>(box_row(p.y))].cells[cell_of(grid[static_cast<std::size_t>(box_row(p.y))], p.x)]
            .push_back(node);
        if (find(0) == find(1)) return level;
    }
}

std::size_t planted_degree(double y, const PointSource& source) {
    const Window w = source.window();
    std::size_t degree = 0;
    visit_gamma_neighbors(source, {0.0, y}, kPlantedId, {-w.half_width, w.half_width, 0.0, w.height},
                          [&](PointId, const HalfPlanePoint&) {
                              ++degree;
                              return true;
                          });
    return degree;
}

std::vector<HalfPlanePoint> explore_rightmost(double y0, const PointSource& source, std::size_t max_steps) {
    if (!(y0 >= 0.0)) throw std::domain_error("explore_rightmost: y0 must be non-negative");
    const Window win = source.window();
    const double tiny = std::numeric_limits<double>::denorm_min();
    auto eff_x = [&](double x) { return x == 0.0 ? tiny : x; };

    std::vector<HalfPlanePoint> seq{{0.0, y0}};
    for (std::size_t step = 0; step < max_steps; ++step) {
        const double xi = seq.back().x;
        const double yi = seq.back().y;
        bool any = false;
        double next_x = 0.0;
        double next_y = 0.0;
        auto take = [&](const HalfPlanePoint& q) {
            any = true;
            next_x = std::max(next_x, std::abs(eff_x(q.x)));
            next_y = std::max(next_y, q.y);
        };
        for (int k = 0; k <= box_row(win.height); ++k) {
            const double y_lo = k * kLn2;
            const double y_hi = std::min((k + 1) * kLn2, win.height);
            const double reach = std::exp(0.5 * (yi + y_hi));
            // Right half-ball of (x_i, y_i).
            source.visit({xi, xi + reach, y_lo, y_hi}, [&](PointId, const HalfPlanePoint& q) {
                const double qx = eff_x(q.x);
                if (box_row(q.y) == k && qx > xi && qx - xi < std::exp(0.5 * (yi + q.y))) take(q);
                return true;
            });
            // Left half-ball of (-x_i, y_i).
            source.visit({-xi - reach, -xi, y_lo, y_hi}, [&](PointId, const HalfPlanePoint& q) {
                const double qx = eff_x(q.x);
                if (box_row(q.y) == k && qx < -xi && -xi - qx < std::exp(0.5 * (yi + q.y))) take(q);
                return true;
            });
        }
        if (!any) break;
        seq.push_back({next_x, next_y});
    }
    return seq;
}

std::vector<HalfPlanePoint> explore_rightmost(double y0, std::span<const HalfPlanePoint> points) {
    double half = 1.0;
    double height = std::max(1.0, y0);
    for (const auto& p : points) {
        half = std::max(half, std::abs(p.x));
        height = std::max(height, p.y);
    }
    const SampleIndex index(points, Window(half, height));
    return explore_rightmost(y0, index);
}

}  // namespace hypergiant
