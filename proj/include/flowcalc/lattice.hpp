#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace flowcalc {

/// Axis-aligned box [lo_i, hi_i] sampled by a rectangular lattice of
/// counts[i] >= 2 nodes per axis. Linear node indices run with axis 0 fastest.
class Region {
public:
    Region(std::vector<double> lo, std::vector<double> hi, std::vector<int> counts);

    /// [lo, hi]^dim with `count` nodes per axis.
    static Region cube(int dim, double lo, double hi, int count);

    int dim() const noexcept { return static_cast<int>(lo_.size()); }
    double lo(int axis) const { return lo_[axis]; }
    double hi(int axis) const { return hi_[axis]; }
    int count(int axis) const { return counts_[axis]; }
    double spacing(int axis) const { return (hi_[axis] - lo_[axis]) / (counts_[axis] - 1); }
    std::size_t stride(int axis) const { return strides_[axis]; }
    std::size_t node_count() const noexcept { return node_count_; }

    /// Coordinate of lattice index `i` along `axis`; the last index maps to hi exactly.
    double coordinate(int axis, int i) const;

    std::vector<int> multi_index(std::size_t linear) const;
    std::size_t linear_index(std::span<const int> multi) const;
    std::vector<double> node(std::size_t linear) const;
    bool on_boundary(std::size_t linear) const;

    /// Same box, different lattice.
    Region with_counts(std::vector<int> counts) const;

    const std::vector<double>& lo() const noexcept { return lo_; }
    const std::vector<double>& hi() const noexcept { return hi_; }
    const std::vector<int>& counts() const noexcept { return counts_; }

private:
    std::vector<double> lo_;
    std::vector<double> hi_;
    std::vector<int> counts_;
    std::vector<std::size_t> strides_;
    std::size_t node_count_ = 0;
};

/// Scalar samples at every node of a region's lattice.
class ScalarGrid {
public:
    explicit ScalarGrid(Region region, double fill = 0.0);
    ScalarGrid(Region region, std::vector<double> values);

    static ScalarGrid sample(const Region& region, const std::function<double(std::span<const double>)>& f);

    const Region& region() const noexcept { return region_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

private:
    Region region_;
    std::vector<double> values_;
};

} // namespace flowcalc
