#pragma once

// Windowed horn-filling checks: cats, groupoids, strict and truncated variants,
// and inner fibrations.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thetacat/nat.hpp"
#include "thetacat/presheaf.hpp"

namespace thetacat {

enum class CheckKind { Cat, Groupoid, StrictCat, StrictGroupoid, NStrict, NCat };

struct CheckMode {
    CheckKind kind = CheckKind::Cat;
    int n = 0; // for NStrict and NCat

    std::string to_string() const;
    /// "cat", "groupoid", "strict-cat", "strict-groupoid", "n-strict:N", "n-cat:N".
    static CheckMode parse(const std::string& text);
};

struct HornRecord {
    Shape shape;
    int k = 1;
    int m = 0;
    bool inner = false;
    std::size_t num_elements = 0;  // |X(A)|
    std::size_t num_horn_maps = 0; // |Nat(Λ, X)|
    /// fibers[i] = number of a ∈ X(A) restricting to the i-th horn map.
    std::vector<std::size_t> fibers;
    bool surjective = false;
    bool injective = false;
    bool bijective() const { return surjective && injective; }
};

/// Computes Nat(Λ^{k:m}, X) and the fibers of the restriction X(A) -> Nat(Λ, X).
HornRecord horn_filling(const Presheaf& x, const Shape& a, int k, int m,
                        std::uint64_t budget = kDefaultNatBudget);

struct CheckReport {
    std::string subject;
    CheckMode mode;
    WindowSpec window;
    std::vector<HornRecord> records;
    bool passed = true;
    /// First record (in horn order) failing its condition.
    std::optional<std::size_t> witness;
};

/// Horns required by the mode over the window, in (shape, k, m) order.
std::vector<FaceDescriptor> required_horns(const CheckMode& mode, const WindowSpec& w);
/// Whether a record meets the mode's condition. Strict-groupoid asks for
/// bijectivity on every horn except the two vertex horns of t[1].
bool record_passes(const CheckMode& mode, const HornRecord& r);

/// Runs horn_filling for every required horn in parallel; records are
/// assembled in horn order.
CheckReport check(const Presheaf& x, const CheckMode& mode, const WindowSpec& w,
                  std::uint64_t budget = kDefaultNatBudget);
/// Serial reference implementation of check.
CheckReport check_serial(const Presheaf& x, const CheckMode& mode, const WindowSpec& w,
                         std::uint64_t budget = kDefaultNatBudget);

/// A natural map between windowed presheaves given by per-level tables.
struct PresheafMap {
    PresheafPtr source;
    PresheafPtr target;
    WindowNat phi;
};

struct LiftingFailure {
    Shape shape;
    int k = 1;
    int m = 0;
    std::vector<std::size_t> horn_values; // u on the horn generators
    std::size_t bottom = 0;               // v ∈ Y(A)
};

struct FibrationReport {
    bool passed = true;
    std::size_t squares = 0;
    std::optional<LiftingFailure> failure;
};

/// For every inner horn Λ ⊂ A in the window and every commuting square
/// (u: Λ -> X, v ∈ Y(A)) with φ∘u = v|Λ, looks for a ∈ X(A) with a|Λ = u and φ(a) = v.
FibrationReport inner_fibration_check(const PresheafMap& map, const WindowSpec& w,
                                      std::uint64_t budget = kDefaultNatBudget);

} // namespace thetacat
