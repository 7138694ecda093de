#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "thetacat/theta.hpp"

namespace thetacat {

/// The finite set of shapes with dim <= max_dim and every entry <= max_entry,
/// ordered by (dim, entries lexicographic).
class WindowSpec {
public:
    WindowSpec() : WindowSpec(0, 1) {}
    WindowSpec(int max_dim, int max_entry);

    /// Smallest window containing every shape b with dim b <= dim a and b_k <= a_k.
    static WindowSpec covering(const Shape& a);

    int max_dim() const { return max_dim_; }
    int max_entry() const { return max_entry_; }
    const std::vector<Shape>& shapes() const& { return shapes_; }
    std::vector<Shape> shapes() && { return std::move(shapes_); }
    std::size_t size() const { return shapes_.size(); }
    bool contains(const Shape& b) const;
    /// Position of b in shapes(); throws if absent.
    std::size_t index_of(const Shape& b) const;
    bool covers(const Shape& a) const { return a.dim() <= max_dim_ && a.max_entry() <= max_entry_; }

    friend bool operator==(const WindowSpec& a, const WindowSpec& b)
    {
        return a.max_dim_ == b.max_dim_ && a.max_entry_ == b.max_entry_;
    }

private:
    int max_dim_;
    int max_entry_;
    std::vector<Shape> shapes_;
};

} // namespace thetacat
