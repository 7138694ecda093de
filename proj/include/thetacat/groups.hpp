#pragma once

#include <string>
#include <vector>

namespace thetacat {

/// A finite group given by its multiplication table on indices 0..n-1.
class FiniteGroup {
public:
    /// Validates closure, associativity, identity and inverses; throws InvalidArgument.
    FiniteGroup(std::string name, std::vector<std::string> labels, std::vector<std::vector<int>> table);

    /// Z2, Z3, Z4, V4, S3, or Zn for any n >= 1.
    static FiniteGroup builtin(const std::string& name);
    static FiniteGroup cyclic(int n);

    const std::string& name() const { return name_; }
    int order() const { return static_cast<int>(table_.size()); }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
    bool abelian() const { return abelian_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::vector<int>>& table() const { return table_; }

    /// a - b in additive notation (abelian use).
    int sub(int a, int b) const { return mul(a, inv(b)); }

private:
    std::string name_;
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> table_;
    int identity_ = 0;
    std::vector<int> inverse_;
    bool abelian_ = false;
};

} // namespace thetacat
