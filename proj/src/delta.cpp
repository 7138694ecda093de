#include "thetacat/delta.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <sstream>

#include "thetacat/errors.hpp"

namespace thetacat {

MonotoneMap MonotoneMap::identity(int n)
{
    MonotoneMap f;
    f.dom = n;
    f.cod = n;
    f.values.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        f.values[static_cast<std::size_t>(i)] = i;
    return f;
}

MonotoneMap MonotoneMap::constant(int dom, int cod, int value)
{
    if (value < 0 || value > cod)
        throw InvalidArgument("constant value " + std::to_string(value) + " outside [" + std::to_string(cod) + "]");
    MonotoneMap f;
    f.dom = dom;
    f.cod = cod;
    f.values.assign(static_cast<std::size_t>(dom) + 1, value);
    return f;
}

MonotoneMap MonotoneMap::from_values(int dom, int cod, std::vector<int> values)
{
    if (dom < 0 || cod < 0)
        throw InvalidArgument("negative ordinal size");
    if (values.size() != static_cast<std::size_t>(dom) + 1)
        throw InvalidArgument("monotone map needs dom + 1 values");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0 || values[i] > cod)
            throw InvalidArgument("monotone map value out of range");
        if (i > 0 && values[i] < values[i - 1])
            throw InvalidArgument("monotone map values must be non-decreasing");
    }
    MonotoneMap f;
    f.dom = dom;
    f.cod = cod;
    f.values = std::move(values);
    return f;
}

bool MonotoneMap::is_constant() const
{
    return values.front() == values.back();
}

bool MonotoneMap::is_injective() const
{
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] == values[i - 1])
            return false;
    return true;
}

bool MonotoneMap::is_surjective() const
{
    if (values.front() != 0 || values.back() != cod)
        return false;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[i - 1] + 1)
            return false;
    return true;
}

bool MonotoneMap::in_spine() const
{
    return values.back() - values.front() <= 1;
}

std::string MonotoneMap::to_string() const
{
    std::ostringstream os;
    os << '[' << dom << "]->[" << cod << "](";
    for (std::size_t i = 0; i < values.size(); ++i)
        os << (i ? "," : "") << values[i];
    os << ')';
    return os.str();
}

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f)
{
    if (f.cod != g.dom)
        throw IncomposableError(g.to_string() + " after " + f.to_string());
    MonotoneMap r;
    r.dom = f.dom;
    r.cod = g.cod;
    r.values.resize(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i)
        r.values[i] = g.values[static_cast<std::size_t>(f.values[i])];
    return r;
}

std::vector<MonotoneMap> enumerate_monotone(int m, int n)
{
    if (m < 0 || n < 0)
        throw InvalidArgument("negative ordinal size");
    std::vector<MonotoneMap> out;
    std::vector<int> v(static_cast<std::size_t>(m) + 1, 0);
    while (true) {
        MonotoneMap f;
        f.dom = m;
        f.cod = n;
        f.values = v;
        out.push_back(std::move(f));
        // next non-decreasing sequence in lexicographic order
        int i = m;
        while (i >= 0 && v[static_cast<std::size_t>(i)] == n)
            --i;
        if (i < 0)
            break;
        int nv = v[static_cast<std::size_t>(i)] + 1;
        for (int j = i; j <= m; ++j)
            v[static_cast<std::size_t>(j)] = nv;
    }
    return out;
}

MapPredicates map_predicates(const MonotoneMap& f)
{
    return {f.is_constant(), f.is_injective(), f.is_surjective(), f.in_spine()};
}

std::vector<int> image(const MonotoneMap& f)
{
    std::vector<int> im;
    for (int v : f.values)
        if (im.empty() || im.back() != v)
            im.push_back(v);
    return im;
}

EpiMono epi_mono_factor(const MonotoneMap& f)
{
    const std::vector<int> im = image(f);
    const int k = static_cast<int>(im.size()) - 1;
    EpiMono r;
    r.mono.dom = k;
    r.mono.cod = f.cod;
    r.mono.values = im;
    r.epi.dom = f.dom;
    r.epi.cod = k;
    r.epi.values.resize(f.values.size());
    int pos = 0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        while (im[static_cast<std::size_t>(pos)] != f.values[i])
            ++pos;
        r.epi.values[i] = pos;
    }
    return r;
}

MonotoneTable::MonotoneTable(int m, int n) : m_(m), n_(n), all_(enumerate_monotone(m, n))
{
    for (const auto& f : all_) {
        if (f.is_constant())
            continue;
        rank_.emplace(code(f.values), static_cast<int>(nonconstant_.size()));
        nonconstant_.push_back(f);
    }
}

std::uint64_t MonotoneTable::code(const std::vector<int>& values) const
{
    std::uint64_t c = 0;
    for (int v : values)
        c = c * static_cast<std::uint64_t>(n_ + 1) + static_cast<std::uint64_t>(v);
    return c;
}

int MonotoneTable::nonconstant_rank(const MonotoneMap& f) const
{
    auto it = rank_.find(code(f.values));
    return it == rank_.end() ? -1 : it->second;
}

const MonotoneTable& monotone_table(int m, int n)
{
    constexpr int N = kMaxOrdinal + 1;
    static std::array<std::unique_ptr<MonotoneTable>, N * N> tables;
    static std::array<std::once_flag, N * N> flags;
    if (m < 0 || n < 0 || m > kMaxOrdinal || n > kMaxOrdinal)
        throw InvalidArgument("ordinal size exceeds table limit " + std::to_string(kMaxOrdinal));
    const auto idx = static_cast<std::size_t>(m * N + n);
    std::call_once(flags[idx], [&] { tables[idx] = std::make_unique<MonotoneTable>(m, n); });
    return *tables[idx];
}

std::uint64_t binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

} // namespace thetacat
