#include "thetacat/subshapes.hpp"

#include <algorithm>
#include <set>

#include "thetacat/errors.hpp"

namespace thetacat {

bool face_membership(const MorphismClass& s, const FaceDescriptor& fd)
{
    const int q = s.degree();
    const int k = fd.k;
    if (fd.base.entry(k) >= 2) {
        if (k > q)
            return true;
        const auto& sk = s.component(k);
        return std::find(sk.values.begin(), sk.values.end(), fd.m) == sk.values.end();
    }
    const int d = fd.base.dim();
    if (q < d)
        return true;
    if (q == d)
        return s.component(d).values.front() == 1 - fd.m;
    return false;
}

// ------------------------------------------------- SubOfRepresentable

SubOfRepresentable::SubOfRepresentable(Shape base, WindowSpec window) : base_(std::move(base)), window_(std::move(window))
{
    if (!window_.covers(base_))
        throw WindowInsufficient("window (" + std::to_string(window_.max_dim()) + "," + std::to_string(window_.max_entry()) +
                                 ") does not cover " + base_.to_string());
    homs_.reserve(window_.size());
    bits_.reserve(window_.size());
    for (const auto& b : window_.shapes()) {
        homs_.emplace_back(b, base_);
        bits_.emplace_back(homs_.back().size(), 0);
    }
}

SubOfRepresentable SubOfRepresentable::full(const Shape& base, const WindowSpec& window)
{
    SubOfRepresentable u(base, window);
    for (auto& level : u.bits_)
        std::fill(level.begin(), level.end(), 1);
    return u;
}

SubOfRepresentable SubOfRepresentable::from_predicate(const Shape& base, const WindowSpec& window, const CellPredicate& pred)
{
    SubOfRepresentable u(base, window);
    for (std::size_t l = 0; l < u.homs_.size(); ++l)
        for (std::size_t r = 0; r < u.homs_[l].size(); ++r)
            u.bits_[l][r] = pred(u.homs_[l].at(r)) ? 1 : 0;
    return u;
}

bool SubOfRepresentable::contains(const MorphismClass& cell) const
{
    if (cell.dst != base_)
        throw InvalidArgument("cell " + cell.to_string() + " does not land in " + base_.to_string());
    if (window_.contains(cell.src)) {
        const std::size_t l = window_.index_of(cell.src);
        return bits_[l][homs_[l].rank(cell)] != 0;
    }
    const auto fac = epi_mono_factor(cell);
    const std::size_t l = window_.index_of(fac.mono.src);
    return bits_[l][homs_[l].rank(fac.mono)] != 0;
}

std::size_t SubOfRepresentable::level_count(std::size_t level) const
{
    return static_cast<std::size_t>(std::count(bits_[level].begin(), bits_[level].end(), 1));
}

std::size_t SubOfRepresentable::total_count() const
{
    std::size_t n = 0;
    for (std::size_t l = 0; l < bits_.size(); ++l)
        n += level_count(l);
    return n;
}

std::vector<MorphismClass> SubOfRepresentable::cells(std::size_t level) const
{
    std::vector<MorphismClass> out;
    for (std::size_t r = 0; r < bits_[level].size(); ++r)
        if (bits_[level][r])
            out.push_back(homs_[level].at(r));
    return out;
}

void SubOfRepresentable::check_compatible(const SubOfRepresentable& other) const
{
    if (other.base_ != base_)
        throw InvalidArgument("base mismatch: " + base_.to_string() + " vs " + other.base_.to_string());
    if (!(other.window_ == window_))
        throw InvalidArgument("window mismatch");
}

SubOfRepresentable& SubOfRepresentable::unite(const SubOfRepresentable& other)
{
    check_compatible(other);
    for (std::size_t l = 0; l < bits_.size(); ++l)
        for (std::size_t r = 0; r < bits_[l].size(); ++r)
            bits_[l][r] = static_cast<char>(bits_[l][r] | other.bits_[l][r]);
    return *this;
}

SubOfRepresentable& SubOfRepresentable::intersect(const SubOfRepresentable& other)
{
    check_compatible(other);
    for (std::size_t l = 0; l < bits_.size(); ++l)
        for (std::size_t r = 0; r < bits_[l].size(); ++r)
            bits_[l][r] = static_cast<char>(bits_[l][r] & other.bits_[l][r]);
    return *this;
}

bool SubOfRepresentable::is_subset_of(const SubOfRepresentable& other) const
{
    check_compatible(other);
    for (std::size_t l = 0; l < bits_.size(); ++l)
        for (std::size_t r = 0; r < bits_[l].size(); ++r)
            if (bits_[l][r] && !other.bits_[l][r])
                return false;
    return true;
}

bool SubOfRepresentable::is_full() const
{
    for (const auto& level : bits_)
        if (std::find(level.begin(), level.end(), 0) != level.end())
            return false;
    return true;
}

bool SubOfRepresentable::is_empty() const
{
    for (const auto& level : bits_)
        if (std::find(level.begin(), level.end(), 1) != level.end())
            return false;
    return true;
}

std::optional<std::pair<MorphismClass, MorphismClass>> SubOfRepresentable::closure_violation() const
{
    // generators landing in each window shape
    std::vector<std::vector<MorphismClass>> into(window_.size());
    for (const auto& b : window_.shapes()) {
        for (const auto& fd : faces_of(b))
            into[window_.index_of(b)].push_back(face_class(fd));
        for (auto& s : elementary_degeneracies(b))
            if (window_.contains(s.dst))
                into[window_.index_of(s.dst)].push_back(std::move(s));
    }
    for (std::size_t l = 0; l < bits_.size(); ++l) {
        for (std::size_t r = 0; r < bits_[l].size(); ++r) {
            if (!bits_[l][r])
                continue;
            const auto cell = homs_[l].at(r);
            for (const auto& f : into[l]) {
                const auto g = compose(cell, f);
                const std::size_t gl = window_.index_of(g.src);
                if (!bits_[gl][homs_[gl].rank(g)])
                    return std::make_pair(cell, f);
            }
        }
    }
    return std::nullopt;
}

bool operator==(const SubOfRepresentable& a, const SubOfRepresentable& b)
{
    return a.base_ == b.base_ && a.window_ == b.window_ && a.bits_ == b.bits_;
}

SubOfRepresentable sub_algebra(SetOp op, const SubOfRepresentable& u, const SubOfRepresentable& v)
{
    SubOfRepresentable r = u;
    if (op == SetOp::Union)
        r.unite(v);
    else
        r.intersect(v);
    return r;
}

bool sub_equal(const SubOfRepresentable& u, const SubOfRepresentable& v)
{
    return u.is_subset_of(v) && v.is_subset_of(u);
}

bool sub_subset(const SubOfRepresentable& u, const SubOfRepresentable& v)
{
    return u.is_subset_of(v);
}

// ------------------------------------------------------- constructions

SubOfRepresentable face_sub(const FaceDescriptor& fd, const WindowSpec& w)
{
    return SubOfRepresentable::from_predicate(fd.base, w, [&](const MorphismClass& s) { return face_membership(s, fd); });
}

SubOfRepresentable union_of_faces(const Shape& a, const std::vector<FaceDescriptor>& faces, const WindowSpec& w)
{
    return SubOfRepresentable::from_predicate(a, w, [&](const MorphismClass& s) {
        return std::any_of(faces.begin(), faces.end(), [&](const FaceDescriptor& fd) { return face_membership(s, fd); });
    });
}

SubOfRepresentable boundary(const Shape& a, const WindowSpec& w)
{
    return union_of_faces(a, faces_of(a), w);
}

CellPredicate horn_predicate(const Shape& a, int k, int m)
{
    (void)face_descriptor(a, k, m);
    std::vector<FaceDescriptor> rest;
    for (auto& fd : faces_of(a))
        if (!(fd.k == k && fd.m == m))
            rest.push_back(std::move(fd));
    return [rest = std::move(rest)](const MorphismClass& s) {
        return std::any_of(rest.begin(), rest.end(), [&](const FaceDescriptor& fd) { return face_membership(s, fd); });
    };
}

Horn horn(const Shape& a, int k, int m, const WindowSpec& w)
{
    const auto missing = face_descriptor(a, k, m);
    return Horn{missing, missing.inner, SubOfRepresentable::from_predicate(a, w, horn_predicate(a, k, m))};
}

bool spine_membership(const MorphismClass& s)
{
    return std::all_of(s.components.begin(), s.components.end(), [](const MonotoneMap& f) { return f.in_spine(); });
}

SubOfRepresentable spine(const Shape& a, const WindowSpec& w)
{
    return SubOfRepresentable::from_predicate(a, w, spine_membership);
}

SubOfRepresentable image_of(const MorphismClass& c, const WindowSpec& w)
{
    const MorphismClass mono = is_nondegenerate(c) ? c : epi_mono_factor(c).mono;
    return SubOfRepresentable::from_predicate(c.dst, w, [&](const MorphismClass& u) { return factor_through(u, mono).has_value(); });
}

SubOfRepresentable pullback_along(const SubOfRepresentable& u, const MorphismClass& c)
{
    if (c.dst != u.base())
        throw InvalidArgument("pullback: class does not land in the base");
    return SubOfRepresentable::from_predicate(c.src, u.window(), [&](const MorphismClass& t) { return u.contains(compose(c, t)); });
}

std::vector<MorphismClass> nondegenerate_cells(const SubOfRepresentable& u)
{
    std::vector<MorphismClass> out;
    for (auto& c : nondegenerate_cells(u.base()))
        if (u.contains(c))
            out.push_back(std::move(c));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MorphismClass> maximal_cells(const Shape& base, const CellPredicate& pred)
{
    std::vector<MorphismClass> cells;
    for (auto& c : nondegenerate_cells(base))
        if (pred(c))
            cells.push_back(std::move(c));
    std::stable_sort(cells.begin(), cells.end(), [](const MorphismClass& a, const MorphismClass& b) {
        if (a.src.dim() != b.src.dim())
            return a.src.dim() > b.src.dim();
        if (a.src.entry_sum() != b.src.entry_sum())
            return a.src.entry_sum() > b.src.entry_sum();
        return a < b;
    });
    std::set<MorphismClass> covered;
    std::vector<MorphismClass> out;
    for (const auto& c : cells) {
        if (covered.count(c))
            continue;
        out.push_back(c);
        for (const auto& m : nondegenerate_cells(c.src))
            covered.insert(compose(c, m));
    }
    return out;
}

std::optional<std::vector<FaceDescriptor>> as_union_of_faces(const SubOfRepresentable& v)
{
    std::vector<FaceDescriptor> inside;
    for (auto& fd : faces_of(v.base()))
        if (face_sub(fd, v.window()).is_subset_of(v))
            inside.push_back(std::move(fd));
    if (union_of_faces(v.base(), inside, v.window()) == v)
        return inside;
    return std::nullopt;
}

} // namespace thetacat
