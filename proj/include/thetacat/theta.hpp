#pragma once

// The category of generalized simplices: shapes (finite sequences of
// positive integers), morphism classes in canonical form, composition,
// hom-set enumeration and faces.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thetacat/delta.hpp"

namespace thetacat {

/// An object t[a1,...,ad]; the empty sequence is the point t[].
class Shape {
public:
    Shape() = default;
    explicit Shape(std::vector<int> entries);
    Shape(std::initializer_list<int> entries) : Shape(std::vector<int>(entries)) {}

    int dim() const { return static_cast<int>(entries_.size()); }
    /// 1-based component size; 0 beyond the dimension.
    int entry(int k) const { return k >= 1 && k <= dim() ? entries_[static_cast<std::size_t>(k - 1)] : 0; }
    const std::vector<int>& entries() const { return entries_; }
    int max_entry() const;
    int entry_sum() const;
    bool all_ones() const;

    std::string to_string() const;
    /// Parses "t[2,1]" (also accepts "[2,1]"). Throws InvalidArgument naming the token.
    static Shape parse(std::string_view text);

    friend bool operator==(const Shape&, const Shape&) = default;
    /// Orders by dimension, then entries lexicographically.
    friend std::strong_ordering operator<=>(const Shape& a, const Shape& b);

private:
    std::vector<int> entries_;
};

/// An equivalence class of morphisms src -> dst, stored by its canonical
/// data: the degree q = components.size(), nonconstant components 1..q-1 and
/// the constant component q.
struct MorphismClass {
    Shape src;
    Shape dst;
    std::vector<MonotoneMap> components;

    int degree() const { return static_cast<int>(components.size()); }
    /// Component k (1-based, k <= degree).
    const MonotoneMap& component(int k) const { return components[static_cast<std::size_t>(k - 1)]; }

    /// Validates the class invariants; throws InvalidArgument.
    static MorphismClass make(Shape src, Shape dst, std::vector<MonotoneMap> components);

    std::string to_string() const;

    friend bool operator==(const MorphismClass&, const MorphismClass&) = default;
    friend std::strong_ordering operator<=>(const MorphismClass& a, const MorphismClass& b);
};

MorphismClass identity_class(const Shape& a);

/// g ∘ f. Throws IncomposableError unless f.dst == g.src.
MorphismClass compose(const MorphismClass& g, const MorphismClass& f);

/// A full-length morphism of the product category: components 1..length,
/// including ones beyond the degree that the class forgets.
struct Representative {
    Shape src;
    Shape dst;
    std::vector<MonotoneMap> components;
};

/// Extends a class with constant-at-0 components up to `length`.
Representative canonical_representative(const MorphismClass& f, int length);
MorphismClass to_class(const Representative& r);
Representative compose(const Representative& g, const Representative& f);

/// Number of nonconstant monotone maps [m] -> [n].
std::uint64_t nonconstant_count(int m, int n);

/// The finite set of classes src -> dst in a fixed deterministic order:
/// by degree, then lexicographically by components. Supports O(dim) ranking.
class HomSet {
public:
    HomSet(Shape src, Shape dst);

    const Shape& src() const { return src_; }
    const Shape& dst() const { return dst_; }
    std::size_t size() const { return offsets_.back(); }
    MorphismClass at(std::size_t rank) const;
    /// Rank of f in this hom-set; f must go src -> dst.
    std::size_t rank(const MorphismClass& f) const;
    /// Number of classes of exactly degree q.
    std::size_t count_of_degree(int q) const;

private:
    std::size_t radix(int q, int k) const;

    Shape src_;
    Shape dst_;
    int max_degree_;
    std::vector<std::size_t> offsets_; // offsets_[q-1] = first rank of degree q
};

std::vector<MorphismClass> enumerate_hom(const Shape& a, const Shape& b);

/// A face δ_{k:m} of `base`.
struct FaceDescriptor {
    Shape base;
    int k = 1;
    int m = 0;
    bool inner = false;
    Shape target;

    friend bool operator==(const FaceDescriptor&, const FaceDescriptor&) = default;
};

/// Faces ordered by (k, m). Empty for the point.
std::vector<FaceDescriptor> faces_of(const Shape& a);
/// Throws InvalidArgument if (k, m) is not a face of a.
FaceDescriptor face_descriptor(const Shape& a, int k, int m);
MorphismClass face_class(const FaceDescriptor& fd);

struct AutomorphismReport {
    std::size_t hom_size = 0;
    std::size_t num_automorphisms = 0;
};

/// Counts invertible endomorphism classes. Throws BudgetExceeded when the
/// hom-set is larger than `bound`.
AutomorphismReport automorphism_report(const Shape& a, std::size_t bound);

struct ClassFactorization {
    MorphismClass epi;  // component-surjective, degree = dim(mid) + 1
    MorphismClass mono; // injective components, constant at its degree
};

/// f = mono ∘ epi, componentwise image factorization.
ClassFactorization epi_mono_factor(const MorphismClass& f);

/// Injective components below the degree and degree = dim(src) + 1.
bool is_nondegenerate(const MorphismClass& f);
/// Every component surjective and degree = dim(dst) + 1.
bool is_component_surjective(const MorphismClass& f);

/// For a nondegenerate g: C -> A, the unique t with g ∘ t = u, if any.
std::optional<MorphismClass> factor_through(const MorphismClass& u, const MorphismClass& g);

/// All nondegenerate classes into a (finitely many), ordered by source
/// shape then class order.
std::vector<MorphismClass> nondegenerate_cells(const Shape& a);

/// Elementary degeneracies out of b: codegeneracies in every component of
/// size >= 2 and the projection dropping the last component.
std::vector<MorphismClass> elementary_degeneracies(const Shape& b);

} // namespace thetacat
