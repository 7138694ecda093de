#pragma once

// Formula-backed nerves of finite groups.

#include <memory>
#include <vector>

#include "thetacat/groups.hpp"
#include "thetacat/presheaf.hpp"

namespace thetacat {

/// Mixed-radix encoding of tuples over {0..base-1}, first entry most significant.
std::size_t encode_tuple(const std::vector<int>& digits, int base);
std::vector<int> decode_tuple(std::size_t index, int base, int length);

/// B¹G(B) = G^{b1}: strings of b1 composable arrows of the one-object groupoid.
class NerveB1 final : public Presheaf {
public:
    explicit NerveB1(FiniteGroup g) : g_(std::move(g)) {}
    std::string name() const override { return "B1(" + g_.name() + ")"; }
    std::size_t size(const Shape& b) const override;
    std::size_t act(const MorphismClass& f, std::size_t x) const override;
    const FiniteGroup& group() const { return g_; }

    /// h_j = g_{α(j-1)+1} ⋯ g_{α(j)} for a monotone α.
    std::vector<int> pull(const MonotoneMap& alpha, const std::vector<int>& string) const;

private:
    FiniteGroup g_;
};

/// The strict 2-nerve B²A(B) = A^{b1·b2}: a b1 × b2 grid of 2-cells, stored
/// column by column (column i = 1..b1, row j = 1..b2).
class NerveB2Strict final : public Presheaf {
public:
    /// Throws InvalidArgument unless a is abelian.
    explicit NerveB2Strict(FiniteGroup a);
    std::string name() const override { return "B2(" + a_.name() + ")"; }
    std::size_t size(const Shape& b) const override;
    std::size_t act(const MorphismClass& f, std::size_t x) const override;
    const FiniteGroup& group() const { return a_; }

private:
    FiniteGroup a_;
};

/// 𝐁²A(B) = normalized 2-cocycles on the classical simplex Δ^{b1}, encoded by
/// their values on the triples (0,j,k), 0 < j < k <= b1, in lexicographic order.
class NerveB2EM final : public Presheaf {
public:
    explicit NerveB2EM(FiniteGroup a);
    std::string name() const override { return "B2EM(" + a_.name() + ")"; }
    std::size_t size(const Shape& b) const override;
    std::size_t act(const MorphismClass& f, std::size_t x) const override;
    const FiniteGroup& group() const { return a_; }

    /// Value on an arbitrary triple i < j < k (repeated vertices give 0).
    static int cocycle_value(const FiniteGroup& a, const std::vector<int>& base_values, int n, int i, int j, int k);
    /// Encodes a full cochain given on all triples by its (0,j,k) values.
    static std::size_t encode(const FiniteGroup& a, int n, const std::vector<int>& base_values);
    static std::vector<int> decode(const FiniteGroup& a, int n, std::size_t index);
    static int triple_index(int n, int j, int k);
    static int num_base_triples(int n) { return n * (n - 1) / 2; }

private:
    FiniteGroup a_;
};

std::shared_ptr<NerveB1> nerve_B1(const FiniteGroup& g);
std::shared_ptr<NerveB2Strict> nerve_B2_strict(const FiniteGroup& a);
std::shared_ptr<NerveB2EM> nerve_B2_em(const FiniteGroup& a);

} // namespace thetacat
