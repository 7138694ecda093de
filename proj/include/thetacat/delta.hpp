#pragma once

// Combinatorics of the simplex category: monotone maps between finite
// ordinals [m] = {0, ..., m}.

#include <compare>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace thetacat {

/// Largest ordinal size the precomputed lookup tables support.
inline constexpr int kMaxOrdinal = 8;

/// A non-decreasing map [dom] -> [cod]; `values` has dom + 1 entries.
struct MonotoneMap {
    int dom = 0;
    int cod = 0;
    std::vector<int> values{0};

    static MonotoneMap identity(int n);
    static MonotoneMap constant(int dom, int cod, int value);
    /// Validates the invariants and throws InvalidArgument on violation.
    static MonotoneMap from_values(int dom, int cod, std::vector<int> values);

    int operator()(int i) const { return values[static_cast<std::size_t>(i)]; }

    bool is_constant() const;
    bool is_injective() const;
    bool is_surjective() const;
    /// Image lies inside one edge {i, i+1} of the classical spine.
    bool in_spine() const;

    std::string to_string() const;

    friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;
    friend auto operator<=>(const MonotoneMap&, const MonotoneMap&) = default;
};

/// g ∘ f. Throws IncomposableError unless f.cod == g.dom.
MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);

/// All monotone maps [m] -> [n] in lexicographic order of values.
std::vector<MonotoneMap> enumerate_monotone(int m, int n);

struct MapPredicates {
    bool constant = false;
    bool injective = false;
    bool surjective = false;
    bool in_spine = false;
};

MapPredicates map_predicates(const MonotoneMap& f);

struct EpiMono {
    MonotoneMap epi;
    MonotoneMap mono;
};

/// f = mono ∘ epi with epi surjective onto [|im f| - 1] and mono strictly increasing.
EpiMono epi_mono_factor(const MonotoneMap& f);

/// Sorted list of the distinct values of f.
std::vector<int> image(const MonotoneMap& f);

/// Lookup tables for monotone maps [m] -> [n]. The nonconstant maps are
/// ranked in lexicographic order; hom-set enumeration in the theta category
/// is built on these ranks.
class MonotoneTable {
public:
    MonotoneTable(int m, int n);

    int m() const { return m_; }
    int n() const { return n_; }
    const std::vector<MonotoneMap>& all() const { return all_; }
    const std::vector<MonotoneMap>& nonconstant() const { return nonconstant_; }
    /// Rank among nonconstant maps, or -1 for a constant map.
    int nonconstant_rank(const MonotoneMap& f) const;

private:
    std::uint64_t code(const std::vector<int>& values) const;

    int m_;
    int n_;
    std::vector<MonotoneMap> all_;
    std::vector<MonotoneMap> nonconstant_;
    std::unordered_map<std::uint64_t, int> rank_;
};

/// Shared immutable table; valid for 0 <= m, n <= kMaxOrdinal.
const MonotoneTable& monotone_table(int m, int n);

std::uint64_t binomial(int n, int k);

} // namespace thetacat
