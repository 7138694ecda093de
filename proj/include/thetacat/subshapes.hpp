#pragma once

// Subpresheaves of a representable y(A), stored levelwise over a window:
// faces, boundaries, horns, spines and their set algebra.

#include <functional>
#include <optional>
#include <vector>

#include "thetacat/theta.hpp"
#include "thetacat/window.hpp"

namespace thetacat {

using CellPredicate = std::function<bool(const MorphismClass&)>;

/// s lies in the face δ_{k:m} of its codomain.
bool face_membership(const MorphismClass& s, const FaceDescriptor& fd);

/// A precomposition-closed family of classes into `base`, one subset of
/// Hom(B, base) for every shape B of the window.
class SubOfRepresentable {
public:
    /// Empty subpresheaf. Throws WindowInsufficient unless the window covers base.
    SubOfRepresentable(Shape base, WindowSpec window);

    static SubOfRepresentable full(const Shape& base, const WindowSpec& window);
    static SubOfRepresentable from_predicate(const Shape& base, const WindowSpec& window, const CellPredicate& pred);

    const Shape& base() const { return base_; }
    const WindowSpec& window() const { return window_; }
    const HomSet& hom(std::size_t level) const { return homs_[level]; }

    bool contains_at(std::size_t level, std::size_t rank) const { return bits_[level][rank] != 0; }
    void insert_at(std::size_t level, std::size_t rank) { bits_[level][rank] = 1; }
    /// Membership for any class into base; shapes outside the window are
    /// resolved through the image factorization.
    bool contains(const MorphismClass& cell) const;

    std::size_t level_count(std::size_t level) const;
    std::size_t total_count() const;
    std::vector<MorphismClass> cells(std::size_t level) const;

    SubOfRepresentable& unite(const SubOfRepresentable& other);
    SubOfRepresentable& intersect(const SubOfRepresentable& other);
    bool is_subset_of(const SubOfRepresentable& other) const;
    bool is_full() const;
    bool is_empty() const;

    /// Closure under precomposition with every elementary face and
    /// degeneracy inside the window (which generate all window morphisms).
    /// Returns a violating (cell, morphism) pair if any.
    std::optional<std::pair<MorphismClass, MorphismClass>> closure_violation() const;

    friend bool operator==(const SubOfRepresentable& a, const SubOfRepresentable& b);

private:
    void check_compatible(const SubOfRepresentable& other) const;

    Shape base_;
    WindowSpec window_;
    std::vector<HomSet> homs_;
    std::vector<std::vector<char>> bits_;
};

enum class SetOp { Union, Intersect };

SubOfRepresentable sub_algebra(SetOp op, const SubOfRepresentable& u, const SubOfRepresentable& v);
bool sub_equal(const SubOfRepresentable& u, const SubOfRepresentable& v);
bool sub_subset(const SubOfRepresentable& u, const SubOfRepresentable& v);

SubOfRepresentable face_sub(const FaceDescriptor& fd, const WindowSpec& w);
/// Union of the given faces of a (possibly none).
SubOfRepresentable union_of_faces(const Shape& a, const std::vector<FaceDescriptor>& faces, const WindowSpec& w);
SubOfRepresentable boundary(const Shape& a, const WindowSpec& w);

struct Horn {
    FaceDescriptor missing;
    bool inner = false;
    SubOfRepresentable sub;
};

/// Union of all faces of a except δ_{k:m}. Throws InvalidArgument for an invalid (k, m).
Horn horn(const Shape& a, int k, int m, const WindowSpec& w);
/// Membership predicate of the horn without materializing its levels.
CellPredicate horn_predicate(const Shape& a, int k, int m);

/// Cells whose components up to the degree all lie in the classical spine.
bool spine_membership(const MorphismClass& s);
SubOfRepresentable spine(const Shape& a, const WindowSpec& w);

/// Image of y(c) for a class c: C -> A.
SubOfRepresentable image_of(const MorphismClass& c, const WindowSpec& w);

/// {t: B -> C | c ∘ t ∈ U(B)} on the same window.
SubOfRepresentable pullback_along(const SubOfRepresentable& u, const MorphismClass& c);

/// Nondegenerate cells of U, sorted. A cell is nondegenerate when it is not
/// s' ∘ e for a non-invertible component-surjective e.
std::vector<MorphismClass> nondegenerate_cells(const SubOfRepresentable& u);

/// Nondegenerate cells satisfying pred that are not proper faces of another
/// such cell. Ordered by decreasing (dim, entry sum) of the source, then class order.
std::vector<MorphismClass> maximal_cells(const Shape& base, const CellPredicate& pred);

/// The smallest set of faces of a whose union is v, when v is such a union.
std::optional<std::vector<FaceDescriptor>> as_union_of_faces(const SubOfRepresentable& v);

} // namespace thetacat
