#include "thetacat/nerves.hpp"

#include "thetacat/errors.hpp"

namespace thetacat {

std::size_t encode_tuple(const std::vector<int>& digits, int base)
{
    std::size_t x = 0;
    for (int d : digits)
        x = x * static_cast<std::size_t>(base) + static_cast<std::size_t>(d);
    return x;
}

std::vector<int> decode_tuple(std::size_t index, int base, int length)
{
    std::vector<int> out(static_cast<std::size_t>(length));
    for (int i = length - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(base));
        index /= static_cast<std::size_t>(base);
    }
    return out;
}

namespace {

std::size_t ipow(int base, int e)
{
    std::size_t r = 1;
    for (int i = 0; i < e; ++i)
        r *= static_cast<std::size_t>(base);
    return r;
}

void require_abelian(const FiniteGroup& a)
{
    if (!a.abelian())
        throw InvalidArgument("group " + a.name() + " is not abelian");
}

} // namespace

// ------------------------------------------------------------------ B1

std::size_t NerveB1::size(const Shape& b) const
{
    return ipow(g_.order(), b.entry(1));
}

std::vector<int> NerveB1::pull(const MonotoneMap& alpha, const std::vector<int>& s) const
{
    std::vector<int> out(static_cast<std::size_t>(alpha.dom));
    for (int j = 1; j <= alpha.dom; ++j) {
        int h = g_.identity();
        for (int t = alpha(j - 1) + 1; t <= alpha(j); ++t)
            h = g_.mul(h, s[static_cast<std::size_t>(t - 1)]);
        out[static_cast<std::size_t>(j - 1)] = h;
    }
    return out;
}

std::size_t NerveB1::act(const MorphismClass& f, std::size_t x) const
{
    const auto s = decode_tuple(x, g_.order(), f.dst.entry(1));
    return encode_tuple(pull(f.component(1), s), g_.order());
}

// ------------------------------------------------------------ B2 strict

NerveB2Strict::NerveB2Strict(FiniteGroup a) : a_(std::move(a))
{
    require_abelian(a_);
}

std::size_t NerveB2Strict::size(const Shape& b) const
{
    return ipow(a_.order(), b.entry(1) * b.entry(2));
}

std::size_t NerveB2Strict::act(const MorphismClass& f, std::size_t x) const
{
    const int c1 = f.src.entry(1), c2 = f.src.entry(2);
    const int d1 = f.dst.entry(1), d2 = f.dst.entry(2);
    std::vector<int> out(static_cast<std::size_t>(c1 * c2), a_.identity());
    if (f.degree() >= 3) {
        const auto grid = decode_tuple(x, a_.order(), d1 * d2);
        const auto& f1 = f.component(1);
        const auto& f2 = f.component(2);
        for (int i = 1; i <= c1; ++i)
            for (int j = 1; j <= c2; ++j) {
                int v = a_.identity();
                for (int c = f1(i - 1) + 1; c <= f1(i); ++c)
                    for (int r = f2(j - 1) + 1; r <= f2(j); ++r)
                        v = a_.mul(v, grid[static_cast<std::size_t>((c - 1) * d2 + (r - 1))]);
                out[static_cast<std::size_t>((i - 1) * c2 + (j - 1))] = v;
            }
    }
    return encode_tuple(out, a_.order());
}

// ------------------------------------------------------------------ B2 EM

NerveB2EM::NerveB2EM(FiniteGroup a) : a_(std::move(a))
{
    require_abelian(a_);
}

int NerveB2EM::triple_index(int n, int j, int k)
{
    // position of (0,j,k) among 0 < j < k <= n in lexicographic order
    int idx = 0;
    for (int jj = 1; jj < j; ++jj)
        idx += n - jj;
    return idx + (k - j - 1);
}

int NerveB2EM::cocycle_value(const FiniteGroup& a, const std::vector<int>& base, int n, int i, int j, int k)
{
    if (!(i < j && j < k))
        return a.identity();
    auto at0 = [&](int jj, int kk) { return base[static_cast<std::size_t>(triple_index(n, jj, kk))]; };
    if (i == 0)
        return at0(j, k);
    // c(i,j,k) = c(0,j,k) - c(0,i,k) + c(0,i,j), from the cocycle condition on (0,i,j,k)
    return a.mul(a.sub(at0(j, k), at0(i, k)), at0(i, j));
}

std::size_t NerveB2EM::encode(const FiniteGroup& a, int, const std::vector<int>& base_values)
{
    return encode_tuple(base_values, a.order());
}

std::vector<int> NerveB2EM::decode(const FiniteGroup& a, int n, std::size_t index)
{
    return decode_tuple(index, a.order(), num_base_triples(n));
}

std::size_t NerveB2EM::size(const Shape& b) const
{
    return ipow(a_.order(), num_base_triples(b.entry(1)));
}

std::size_t NerveB2EM::act(const MorphismClass& f, std::size_t x) const
{
    const int n = f.dst.entry(1);
    const int m = f.src.entry(1);
    const auto base = decode(a_, n, x);
    const auto& alpha = f.component(1);
    std::vector<int> out(static_cast<std::size_t>(num_base_triples(m)));
    for (int j = 1; j <= m; ++j)
        for (int k = j + 1; k <= m; ++k)
            out[static_cast<std::size_t>(triple_index(m, j, k))] = cocycle_value(a_, base, n, alpha(0), alpha(j), alpha(k));
    return encode(a_, m, out);
}

std::shared_ptr<NerveB1> nerve_B1(const FiniteGroup& g) { return std::make_shared<NerveB1>(g); }
std::shared_ptr<NerveB2Strict> nerve_B2_strict(const FiniteGroup& a) { return std::make_shared<NerveB2Strict>(a); }
std::shared_ptr<NerveB2EM> nerve_B2_em(const FiniteGroup& a) { return std::make_shared<NerveB2EM>(a); }

} // namespace thetacat
