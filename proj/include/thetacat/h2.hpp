#pragma once

// Group 2-cocycles, the maps-to-cocycles correspondence for B¹G -> 𝐁²A and
// brute-force homotopy classes of such maps.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thetacat/groups.hpp"
#include "thetacat/nat.hpp"
#include "thetacat/nerves.hpp"

namespace thetacat {

/// A normalized 2-cocycle G × G -> A as a table f[g][h].
struct Cocycle2 {
    std::vector<std::vector<int>> table;
    friend bool operator==(const Cocycle2&, const Cocycle2&) = default;
    friend auto operator<=>(const Cocycle2&, const Cocycle2&) = default;
};

bool is_normalized_cocycle(const FiniteGroup& g, const FiniteGroup& a, const Cocycle2& f);

/// All normalized cocycles, in lexicographic order of the table.
std::vector<Cocycle2> enumerate_cocycles(const FiniteGroup& g, const FiniteGroup& a);
/// Coboundaries δu of normalized u: G -> A, without repetition, sorted.
std::vector<Cocycle2> enumerate_coboundaries(const FiniteGroup& g, const FiniteGroup& a);

struct CohomologyCount {
    std::size_t cocycles = 0;
    std::size_t coboundaries = 0;
    std::size_t classes = 0;
};

CohomologyCount h2_classes(const FiniteGroup& g, const FiniteGroup& a);

/// Reads f(g,h) off the component of φ at Θ^{2}. Throws InvalidArgument if φ
/// is not natural on the window or the window lacks Θ^{3}.
Cocycle2 map_to_cocycle(const WindowNat& phi, const NerveB1& x, const NerveB2EM& y, const WindowSpec& w);
/// The natural family (g1..gn) ↦ ((i<j<k) ↦ f(g_{i+1}⋯g_j, g_{j+1}⋯g_k)).
WindowNat cocycle_to_map(const Cocycle2& f, const NerveB1& x, const NerveB2EM& y, const WindowSpec& w);

struct HomotopyReport {
    std::string group;
    std::string coefficients;
    WindowSpec window;
    std::size_t num_maps = 0;
    std::size_t num_homotopies = 0;
    std::size_t num_classes = 0;
    std::size_t h2_classes = 0;
    bool agree = false;
    bool reflexive = false;
    bool symmetric = false;
    bool transitive = false;
    bool budget_exceeded = false;
    std::uint64_t nodes = 0;
    /// Class index per map (maps in enumeration order).
    std::vector<std::size_t> class_of;
    /// Distinct endpoint pairs (φ0, φ1) realized by some homotopy.
    std::vector<std::pair<std::size_t, std::size_t>> relation;
    /// Cocycle of each map.
    std::vector<Cocycle2> cocycles;
};

/// Enumerates maps B¹G -> 𝐁²A and homotopies B¹G × y(Θ^{1}) -> 𝐁²A on the
/// window and compares the number of homotopy classes with |H²(G;A)|.
HomotopyReport homotopy_classes(const FiniteGroup& g, const FiniteGroup& a, const WindowSpec& w,
                                std::uint64_t budget = kDefaultNatBudget);

} // namespace thetacat
