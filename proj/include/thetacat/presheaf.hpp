#pragma once

// Finite presheaves on the theta category. Elements of X(B) are indexed
// 0..size(B)-1; X(f) for f: B -> B' maps indices of X(B') to X(B).

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "thetacat/subshapes.hpp"
#include "thetacat/theta.hpp"
#include "thetacat/window.hpp"

namespace thetacat {

class Presheaf {
public:
    virtual ~Presheaf() = default;

    virtual std::string name() const = 0;
    virtual std::size_t size(const Shape& b) const = 0;
    /// X(f): X(f.dst) -> X(f.src).
    virtual std::size_t act(const MorphismClass& f, std::size_t x) const = 0;
    /// Largest dimension the presheaf is defined on, or -1 when unbounded.
    virtual int max_dim() const { return -1; }
};

using PresheafPtr = std::shared_ptr<const Presheaf>;

/// The terminal presheaf: a singleton at every shape.
class TerminalPresheaf final : public Presheaf {
public:
    std::string name() const override { return "terminal"; }
    std::size_t size(const Shape&) const override { return 1; }
    std::size_t act(const MorphismClass&, std::size_t) const override { return 0; }
};

/// y(C): elements at B are the classes B -> C, indexed by hom-set rank.
class RepresentablePresheaf final : public Presheaf {
public:
    explicit RepresentablePresheaf(Shape c) : c_(std::move(c)) {}
    std::string name() const override { return "y(" + c_.to_string() + ")"; }
    std::size_t size(const Shape& b) const override { return HomSet(b, c_).size(); }
    std::size_t act(const MorphismClass& f, std::size_t x) const override;
    const Shape& shape() const { return c_; }

private:
    Shape c_;
};

/// A subpresheaf of a representable viewed as a presheaf in its own right.
/// Elements at B are the member cells in hom-set rank order.
class SubPresheaf final : public Presheaf {
public:
    explicit SubPresheaf(SubOfRepresentable sub, std::string label = "sub");
    std::string name() const override { return label_; }
    std::size_t size(const Shape& b) const override { return level(b).ranks.size(); }
    std::size_t act(const MorphismClass& f, std::size_t x) const override;
    const SubOfRepresentable& sub() const { return sub_; }
    MorphismClass cell(const Shape& b, std::size_t x) const;
    std::size_t index_of(const MorphismClass& cell) const;

private:
    struct Level {
        std::vector<std::size_t> ranks;
        std::unordered_map<std::size_t, std::size_t> index;
    };
    const Level& level(const Shape& b) const;

    SubOfRepresentable sub_;
    std::string label_;
    mutable std::mutex mutex_;
    mutable std::map<Shape, std::unique_ptr<Level>> levels_;
};

/// Levelwise cartesian product; index = i * |Y(B)| + j.
class ProductPresheaf final : public Presheaf {
public:
    ProductPresheaf(PresheafPtr x, PresheafPtr y) : x_(std::move(x)), y_(std::move(y)) {}
    std::string name() const override { return x_->name() + " x " + y_->name(); }
    std::size_t size(const Shape& b) const override { return x_->size(b) * y_->size(b); }
    std::size_t act(const MorphismClass& f, std::size_t x) const override;
    int max_dim() const override;
    std::pair<std::size_t, std::size_t> split(const Shape& b, std::size_t x) const;
    std::size_t pair(const Shape& b, std::size_t i, std::size_t j) const { return i * y_->size(b) + j; }
    const PresheafPtr& left() const { return x_; }
    const PresheafPtr& right() const { return y_; }

private:
    PresheafPtr x_;
    PresheafPtr y_;
};

/// Explicit level sizes and action tables over a window. Identities act
/// trivially without a table entry.
class TablePresheaf final : public Presheaf {
public:
    TablePresheaf(std::string label, WindowSpec window);

    std::string name() const override { return label_; }
    std::size_t size(const Shape& b) const override;
    std::size_t act(const MorphismClass& f, std::size_t x) const override;
    int max_dim() const override { return window_.max_dim(); }

    const WindowSpec& window() const { return window_; }
    void set_size(const Shape& b, std::size_t n);
    void set_action(const MorphismClass& f, std::vector<std::size_t> table);
    const std::map<MorphismClass, std::vector<std::size_t>>& actions() const { return actions_; }
    std::vector<std::size_t>& mutable_action(const MorphismClass& f);

private:
    std::string label_;
    WindowSpec window_;
    std::vector<std::size_t> sizes_;
    std::map<MorphismClass, std::vector<std::size_t>> actions_;
};

/// Evaluates X on every shape and every morphism of the window.
std::shared_ptr<TablePresheaf> tabulate(const Presheaf& x, const WindowSpec& w);

/// Memoizes level sizes and whole action tables of another presheaf on first
/// use. Safe for concurrent readers; values depend only on the key.
class CachedPresheaf final : public Presheaf {
public:
    explicit CachedPresheaf(PresheafPtr x) : x_(std::move(x)) {}
    std::string name() const override { return x_->name(); }
    std::size_t size(const Shape& b) const override;
    std::size_t act(const MorphismClass& f, std::size_t x) const override;
    int max_dim() const override { return x_->max_dim(); }
    const std::vector<std::size_t>& table(const MorphismClass& f) const;

private:
    PresheafPtr x_;
    mutable std::shared_mutex mutex_;
    mutable std::map<Shape, std::size_t> sizes_;
    mutable std::map<MorphismClass, std::unique_ptr<std::vector<std::size_t>>> tables_;
};

PresheafPtr cached(PresheafPtr x);

/// Restriction to shapes of dim <= n.
class TruncatedPresheaf final : public Presheaf {
public:
    TruncatedPresheaf(PresheafPtr x, int n) : x_(std::move(x)), n_(n) {}
    std::string name() const override { return "trunc" + std::to_string(n_) + "(" + x_->name() + ")"; }
    std::size_t size(const Shape& b) const override;
    std::size_t act(const MorphismClass& f, std::size_t x) const override;
    int max_dim() const override { return n_; }

private:
    PresheafPtr x_;
    int n_;
};

/// Pullback of a presheaf on shapes of dim <= n along the projection dropping
/// entries beyond n.
class ExtendedPresheaf final : public Presheaf {
public:
    ExtendedPresheaf(PresheafPtr xn, int n) : xn_(std::move(xn)), n_(n) {}
    std::string name() const override { return "ext" + std::to_string(n_) + "(" + xn_->name() + ")"; }
    std::size_t size(const Shape& b) const override;
    std::size_t act(const MorphismClass& f, std::size_t x) const override;

private:
    PresheafPtr xn_;
    int n_;
};

Shape project_shape(const Shape& b, int n);
/// Image of a class under the projection onto dim <= n shapes: degree capped
/// at n + 1 with the forced terminal constant.
MorphismClass project_class(const MorphismClass& f, int n);

PresheafPtr truncate(PresheafPtr x, int n);
PresheafPtr extend(PresheafPtr xn, int n);

struct FunctorialityViolation {
    MorphismClass f;          // B -> B'
    MorphismClass g;          // B' -> B'' (identity for identity-law failures)
    std::size_t element = 0;  // in X(B'')
    std::size_t composite = 0; // X(g ∘ f)(element)
    std::size_t stepwise = 0;  // X(f)(X(g)(element))
};

struct FunctorialityReport {
    bool passed = true;
    std::uint64_t checks = 0;
    std::optional<FunctorialityViolation> violation;
};

enum class FunctorialityScope {
    Generators, // every window morphism f against every elementary generator g
    AllPairs,   // every composable pair of window morphisms
};

/// Exhaustive functoriality check over the window. Generators scope is
/// complete because elementary faces and degeneracies generate every window
/// morphism. Runs in parallel; the reported violation is the first one in
/// the serial order.
FunctorialityReport check_functoriality(const Presheaf& x, const WindowSpec& w,
                                        FunctorialityScope scope = FunctorialityScope::Generators);
/// Serial reference implementation of check_functoriality.
FunctorialityReport check_functoriality_serial(const Presheaf& x, const WindowSpec& w,
                                               FunctorialityScope scope = FunctorialityScope::Generators);

/// Every class between window shapes, grouped by (source, target) index pair.
std::vector<MorphismClass> window_morphisms(const WindowSpec& w, const Shape& src, const Shape& dst);

} // namespace thetacat
