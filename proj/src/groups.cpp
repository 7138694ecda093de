#include "thetacat/groups.hpp"

#include "thetacat/errors.hpp"

namespace thetacat {

FiniteGroup::FiniteGroup(std::string name, std::vector<std::string> labels, std::vector<std::vector<int>> table)
    : name_(std::move(name)), labels_(std::move(labels)), table_(std::move(table))
{
    const int n = static_cast<int>(table_.size());
    if (n == 0)
        throw InvalidArgument("group " + name_ + ": empty table");
    if (labels_.empty())
        for (int i = 0; i < n; ++i)
            labels_.push_back(std::to_string(i));
    if (static_cast<int>(labels_.size()) != n)
        throw InvalidArgument("group " + name_ + ": " + std::to_string(labels_.size()) + " labels for a table of order " +
                              std::to_string(n));
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != n)
            throw InvalidArgument("group " + name_ + ": table is not square");
        for (int v : row)
            if (v < 0 || v >= n)
                throw InvalidArgument("group " + name_ + ": table entry " + std::to_string(v) + " out of range");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw InvalidArgument("group " + name_ + ": not associative at (" + labels_[static_cast<std::size_t>(a)] +
                                          "," + labels_[static_cast<std::size_t>(b)] + "," +
                                          labels_[static_cast<std::size_t>(c)] + ")");
    identity_ = -1;
    for (int e = 0; e < n && identity_ < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            ok = mul(e, a) == a && mul(a, e) == a;
        if (ok)
            identity_ = e;
    }
    if (identity_ < 0)
        throw InvalidArgument("group " + name_ + ": no identity element");
    inverse_.assign(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (mul(a, b) == identity_ && mul(b, a) == identity_)
                inverse_[static_cast<std::size_t>(a)] = b;
        if (inverse_[static_cast<std::size_t>(a)] < 0)
            throw InvalidArgument("group " + name_ + ": element " + labels_[static_cast<std::size_t>(a)] + " has no inverse");
    }
    abelian_ = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            abelian_ = abelian_ && mul(a, b) == mul(b, a);
}

FiniteGroup FiniteGroup::cyclic(int n)
{
    if (n < 1)
        throw InvalidArgument("cyclic group order must be >= 1");
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    return FiniteGroup("Z" + std::to_string(n), {}, std::move(t));
}

FiniteGroup FiniteGroup::builtin(const std::string& name)
{
    if (name == "V4") {
        std::vector<std::vector<int>> t(4, std::vector<int>(4));
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = a ^ b;
        return FiniteGroup("V4", {"e", "a", "b", "c"}, std::move(t));
    }
    if (name == "S3") {
        // permutations of {0,1,2} in lexicographic order; product is composition p∘q
        const std::vector<std::vector<int>> perms{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        std::vector<std::vector<int>> t(6, std::vector<int>(6));
        for (std::size_t p = 0; p < 6; ++p)
            for (std::size_t q = 0; q < 6; ++q) {
                std::vector<int> r(3);
                for (std::size_t i = 0; i < 3; ++i)
                    r[i] = perms[p][static_cast<std::size_t>(perms[q][i])];
                for (std::size_t s = 0; s < 6; ++s)
                    if (perms[s] == r)
                        t[p][q] = static_cast<int>(s);
            }
        return FiniteGroup("S3", {"e", "(12)", "(01)", "(012)", "(021)", "(02)"}, std::move(t));
    }
    if (name.size() >= 2 && (name[0] == 'Z' || name[0] == 'C')) {
        const std::string digits = name.substr(1);
        if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() <= 3)
            return cyclic(std::stoi(digits));
    }
    throw InvalidArgument("unknown group '" + name + "' (builtins: Z2, Z3, Z4, V4, S3, Zn)");
}

} // namespace thetacat
