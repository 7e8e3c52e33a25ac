#pragma once

#include <hypergiant/continuum.hpp>

#include <cstdint>
#include <memory>
#include <span>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hypergiant {

/// Non-owning reference to a callable.
template <typename Signature>
class FunctionRef;

template <typename R, typename... Args>
class FunctionRef<R(Args...)> {
public:
    template <typename F>
        requires(!std::is_same_v<std::remove_cvref_t<F>, FunctionRef>)
    FunctionRef(F&& f)  // NOLINT(google-explicit-constructor)
        : object_(const_cast<void*>(static_cast<const void*>(std::addressof(f)))),
          call_([](void* o, Args... args) -> R {
              return (*static_cast<std::remove_reference_t<F>*>(o))(std::forward<Args>(args)...);
          }) {}

    R operator()(Args... args) const { return call_(object_, std::forward<Args>(args)...); }

private:
    void* object_;
    R (*call_)(void*, Args...);
};

using PointId = std::uint64_t;

/// Identifier of a point planted by a search rather than drawn from a source.
inline constexpr PointId kPlantedId = ~PointId{0};

/// Called for each point in a query rectangle; returning false stops the scan.
using PointVisitor = FunctionRef<bool(PointId, const HalfPlanePoint&)>;

/// A realization of a point process on a window, queried by rectangles.
/// Ids are stable for the lifetime of the source.
class PointSource {
public:
    virtual ~PointSource() = default;
    virtual Window window() const = 0;
    /// Visits every point in the closed rectangle (clipped to the window).
    /// Returns false iff the visitor stopped the scan.
    virtual bool visit(const Rect& rect, PointVisitor visitor) const = 0;
};

/// Row-bucketed, x-sorted index over a finite point list. Ids are positions
/// in the list.
class SampleIndex final : public PointSource {
public:
    SampleIndex(std::span<const HalfPlanePoint> points, Window window);
    explicit SampleIndex(const ContinuumSample& sample);

    Window window() const override { return window_; }
    bool visit(const Rect& rect, PointVisitor visitor) const override;
    std::size_t size() const { return size_; }

private:
    struct Entry {
        double x;
        double y;
        PointId id;
    };
    Window window_;
    std::size_t size_ = 0;
    std::vector<std::vector<Entry>> rows_;
};

/// Poisson realization generated lazily cell by cell, for windows far too
/// large to materialize (widths up to e^{60} and beyond).
///
/// The field is the layered process Q restricted to z < z_cap e^{-alpha_env y}:
/// the points of P_{alpha_env, z_cap} carrying a mark z. Row k of height ln 2
/// is cut into cells whose width is 2^{k-1} times a power of two chosen so a
/// cell holds at least one point on average. A cell's content depends only on
/// (seed, row, cell index), so any query order yields the same realization.
class LazyPoissonField final : public PointSource {
public:
    LazyPoissonField(Window window, double alpha_env, double z_cap, std::uint64_t seed);
    /// Plain P_{alpha, lambda} on the window.
    LazyPoissonField(const ContinuumParams& params, Window window, std::uint64_t seed);
    ~LazyPoissonField() override;

    LazyPoissonField(const LazyPoissonField&) = delete;
    LazyPoissonField& operator=(const LazyPoissonField&) = delete;

    Window window() const override { return window_; }
    bool visit(const Rect& rect, PointVisitor visitor) const override;

    /// Same as visit, but also reports the mark z of each point.
    bool visit_marked(const Rect& rect, FunctionRef<bool(PointId, const LayeredPoint&)> visitor) const;

    double alpha_env() const { return alpha_env_; }
    double z_cap() const { return z_cap_; }
    std::size_t cells_generated() const;

    /// Upper bound on cells scanned by a single query; larger queries throw
    /// std::runtime_error instead of running indefinitely.
    static constexpr double kMaxCellsPerQuery = 5e7;

private:
    struct Impl;
    Window window_;
    double alpha_env_;
    double z_cap_;
    std::uint64_t seed_;
    std::unique_ptr<Impl> impl_;
};

/// View of a lazy field keeping the points with z < lambda e^{-alpha y}.
/// Requires alpha >= alpha_env and lambda <= z_cap of the field.
class FieldSlice final : public PointSource {
public:
    FieldSlice(const LazyPoissonField& field, double alpha, double lambda);

    Window window() const override { return field_->window(); }
    bool visit(const Rect& rect, PointVisitor visitor) const override;

private:
    const LazyPoissonField* field_;
    double alpha_;
    double lambda_;
};

/// Visits the Gamma-neighbors of p among source points inside `clip`, skipping
/// the point with id `self`. Queries row by row with the reach e^{(y + top)/2}.
bool visit_gamma_neighbors(const PointSource& source, const HalfPlanePoint& p, PointId self, const Rect& clip,
                           PointVisitor visitor);

}  // namespace hypergiant
