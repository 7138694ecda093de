#pragma once

// Natural transformations: maps out of subpresheaves of representables,
// and natural families between presheaves over a window.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "thetacat/presheaf.hpp"
#include "thetacat/subshapes.hpp"

namespace thetacat {

inline constexpr std::uint64_t kDefaultNatBudget = 10'000'000;

/// Nat(U, X) for U ⊂ y(A). A family is stored by its values on the maximal
/// nondegenerate cells (generators) of U; every other cell factors through one.
struct SubNatSet {
    Shape base;
    std::vector<MorphismClass> generators;
    /// families[i][j] is the value of family i at generator j, an element of X(src g_j).
    std::vector<std::vector<std::size_t>> families;
    std::uint64_t nodes = 0;

    std::size_t size() const { return families.size(); }
    /// Index of the family with the given generator values, if any.
    std::optional<std::size_t> find(const std::vector<std::size_t>& values) const;
};

/// Enumerates Nat(U, X) in lexicographic order of generator values, where U
/// is given by its membership predicate. Throws BudgetExceeded after `budget`
/// partial assignments, carrying the number of families found.
SubNatSet enumerate_nat(const Shape& base, const CellPredicate& member, const Presheaf& x,
                        std::uint64_t budget = kDefaultNatBudget);
SubNatSet enumerate_nat(const SubOfRepresentable& u, const Presheaf& x, std::uint64_t budget = kDefaultNatBudget);

/// Value of a family at any cell of U (any source shape). Throws
/// InvalidArgument if the cell is not in U.
std::size_t evaluate(const SubNatSet& set, std::size_t family, const Presheaf& x, const MorphismClass& cell);

/// Yoneda restriction X(A) -> Nat(U, X): a ↦ (X(g_j)(a))_j.
std::vector<std::size_t> restrict_element(const SubNatSet& set, const Presheaf& x, std::size_t a);

/// A natural family X -> Y on the shapes of a window: levels[l][e] ∈ Y(B_l).
struct WindowNat {
    std::vector<std::vector<std::size_t>> levels;
    friend bool operator==(const WindowNat&, const WindowNat&) = default;
    friend auto operator<=>(const WindowNat&, const WindowNat&) = default;
};

struct WindowNatSet {
    WindowSpec window;
    std::vector<WindowNat> maps;
    std::uint64_t nodes = 0;
    std::size_t size() const { return maps.size(); }
};

/// Values fixed before the search: (level, element of X) -> element of Y.
using NatPins = std::map<std::pair<std::size_t, std::size_t>, std::size_t>;

/// Enumerates every natural family X -> Y on the window by backtracking with
/// constraint propagation along elementary faces and degeneracies, branching
/// on the variable with the smallest remaining domain. Output is sorted.
WindowNatSet enumerate_window_nat(const Presheaf& x, const Presheaf& y, const WindowSpec& w,
                                  std::uint64_t budget = kDefaultNatBudget, const NatPins& pins = {});

struct NaturalityViolation {
    MorphismClass f;
    std::size_t element = 0; // in X(f.dst)
};

/// Checks φ_B ∘ X(f) = Y(f) ∘ φ_B' for every window morphism f.
std::optional<NaturalityViolation> naturality_violation(const Presheaf& x, const Presheaf& y, const WindowSpec& w,
                                                        const WindowNat& phi);

/// The natural family y(A) -> X classified by a ∈ X(A), on the window.
WindowNat yoneda_map(const Shape& a, const Presheaf& x, std::size_t element, const WindowSpec& w);

} // namespace thetacat
