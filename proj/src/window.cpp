#include "thetacat/window.hpp"

#include <algorithm>

#include "thetacat/errors.hpp"

namespace thetacat {

WindowSpec::WindowSpec(int max_dim, int max_entry) : max_dim_(max_dim), max_entry_(max_entry)
{
    if (max_dim < 0 || max_entry < 1)
        throw InvalidArgument("window needs max_dim >= 0 and max_entry >= 1");
    if (max_entry > kMaxOrdinal)
        throw InvalidArgument("window max_entry exceeds " + std::to_string(kMaxOrdinal));
    std::vector<std::vector<int>> level{{}};
    shapes_.emplace_back();
    for (int d = 1; d <= max_dim; ++d) {
        std::vector<std::vector<int>> next;
        for (const auto& e : level)
            for (int v = 1; v <= max_entry; ++v) {
                auto n = e;
                n.push_back(v);
                shapes_.emplace_back(n);
                next.push_back(std::move(n));
            }
        level = std::move(next);
    }
}

WindowSpec WindowSpec::covering(const Shape& a)
{
    return WindowSpec(a.dim(), std::max(1, a.max_entry()));
}

bool WindowSpec::contains(const Shape& b) const
{
    return covers(b);
}

std::size_t WindowSpec::index_of(const Shape& b) const
{
    auto it = std::lower_bound(shapes_.begin(), shapes_.end(), b);
    if (it == shapes_.end() || *it != b)
        throw InvalidArgument(b.to_string() + " is outside the window");
    return static_cast<std::size_t>(it - shapes_.begin());
}

} // namespace thetacat
