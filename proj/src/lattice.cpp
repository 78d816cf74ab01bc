#include "flowcalc/lattice.hpp"

#include "flowcalc/error.hpp"

#include <cmath>
#include <string>

namespace flowcalc {

Region::Region(std::vector<double> lo, std::vector<double> hi, std::vector<int> counts)
    : lo_(std::move(lo)), hi_(std::move(hi)), counts_(std::move(counts)) {
    if (lo_.empty()) throw InvalidArgument("region needs at least one axis");
    if (hi_.size() != lo_.size() || counts_.size() != lo_.size()) {
        throw DimensionError("region bounds and counts disagree in dimension");
    }
    strides_.resize(lo_.size());
    node_count_ = 1;
    for (std::size_t a = 0; a < lo_.size(); ++a) {
        if (!std::isfinite(lo_[a]) || !std::isfinite(hi_[a]) || !(lo_[a] < hi_[a])) {
            throw InvalidArgument("degenerate region along axis " + std::to_string(a + 1));
        }
        if (counts_[a] < 2) throw InvalidArgument("region needs at least 2 nodes per axis");
        strides_[a] = node_count_;
        node_count_ *= static_cast<std::size_t>(counts_[a]);
    }
}

Region Region::cube(int dim, double lo, double hi, int count) {
    return Region(std::vector<double>(dim, lo), std::vector<double>(dim, hi), std::vector<int>(dim, count));
}

double Region::coordinate(int axis, int i) const {
    if (i == counts_[axis] - 1) return hi_[axis];
    return lo_[axis] + i * spacing(axis);
}

std::vector<int> Region::multi_index(std::size_t linear) const {
    std::vector<int> multi(lo_.size());
    for (std::size_t a = 0; a < lo_.size(); ++a) {
        multi[a] = static_cast<int>(linear % counts_[a]);
        linear /= counts_[a];
    }
    return multi;
}

std::size_t Region::linear_index(std::span<const int> multi) const {
    std::size_t linear = 0;
    for (std::size_t a = 0; a < lo_.size(); ++a) linear += strides_[a] * static_cast<std::size_t>(multi[a]);
    return linear;
}

std::vector<double> Region::node(std::size_t linear) const {
    std::vector<double> x(lo_.size());
    for (std::size_t a = 0; a < lo_.size(); ++a) {
        x[a] = coordinate(static_cast<int>(a), static_cast<int>(linear % counts_[a]));
        linear /= counts_[a];
    }
    return x;
}

bool Region::on_boundary(std::size_t linear) const {
    for (std::size_t a = 0; a < lo_.size(); ++a) {
        const int i = static_cast<int>(linear % counts_[a]);
        if (i == 0 || i == counts_[a] - 1) return true;
        linear /= counts_[a];
    }
    return false;
}

Region Region::with_counts(std::vector<int> counts) const { return Region(lo_, hi_, std::move(counts)); }

ScalarGrid::ScalarGrid(Region region, double fill)
    : region_(std::move(region)), values_(region_.node_count(), fill) {}

ScalarGrid::ScalarGrid(Region region, std::vector<double> values)
    : region_(std::move(region)), values_(std::move(values)) {
    if (values_.size() != region_.node_count()) {
        throw DimensionError("grid has " + std::to_string(values_.size()) + " values for " +
                             std::to_string(region_.node_count()) + " nodes");
    }
}

ScalarGrid ScalarGrid::sample(const Region& region, const std::function<double(std::span<const double>)>& f) {
    ScalarGrid grid(region);
    for (std::size_t i = 0; i < region.node_count(); ++i) grid[i] = f(region.node(i));
    return grid;
}

} // namespace flowcalc
