#include "thetacat/theta.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "thetacat/errors.hpp"

namespace thetacat {

// ---------------------------------------------------------------- Shape

Shape::Shape(std::vector<int> entries) : entries_(std::move(entries))
{
    for (int a : entries_)
        if (a < 1)
            throw InvalidArgument("shape entries must be >= 1");
}

int Shape::max_entry() const
{
    return entries_.empty() ? 0 : *std::max_element(entries_.begin(), entries_.end());
}

int Shape::entry_sum() const
{
    return std::accumulate(entries_.begin(), entries_.end(), 0);
}

bool Shape::all_ones() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](int a) { return a == 1; });
}

std::string Shape::to_string() const
{
    std::ostringstream os;
    os << "t[";
    for (std::size_t i = 0; i < entries_.size(); ++i)
        os << (i ? "," : "") << entries_[i];
    os << ']';
    return os.str();
}

Shape Shape::parse(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    const std::string token(text);
    std::string_view v = s;
    if (!v.empty() && (v.front() == 't' || v.front() == 'T'))
        v.remove_prefix(1);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        throw InvalidArgument("malformed shape '" + token + "' (expected t[a1,...,ad])");
    v = v.substr(1, v.size() - 2);
    std::vector<int> entries;
    while (!v.empty()) {
        auto comma = v.find(',');
        std::string_view part = v.substr(0, comma);
        if (part.empty() || part.size() > 4 ||
            !std::all_of(part.begin(), part.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw InvalidArgument("malformed shape '" + token + "' at entry '" + std::string(part) + "'");
        int a = std::stoi(std::string(part));
        if (a < 1)
            throw InvalidArgument("malformed shape '" + token + "': entry '" + std::string(part) + "' must be >= 1");
        entries.push_back(a);
        if (comma == std::string_view::npos)
            break;
        v.remove_prefix(comma + 1);
        if (v.empty())
            throw InvalidArgument("malformed shape '" + token + "': trailing comma");
    }
    return Shape(std::move(entries));
}

std::strong_ordering operator<=>(const Shape& a, const Shape& b)
{
    if (auto c = a.dim() <=> b.dim(); c != 0)
        return c;
    return a.entries_ <=> b.entries_;
}

// -------------------------------------------------------- MorphismClass

MorphismClass MorphismClass::make(Shape src, Shape dst, std::vector<MonotoneMap> components)
{
    if (components.empty())
        throw InvalidArgument("morphism class needs at least one component");
    const int q = static_cast<int>(components.size());
    for (int k = 1; k <= q; ++k) {
        const auto& c = components[static_cast<std::size_t>(k - 1)];
        if (c.dom != src.entry(k) || c.cod != dst.entry(k))
            throw InvalidArgument("component " + std::to_string(k) + " has wrong domain or codomain");
        (void)MonotoneMap::from_values(c.dom, c.cod, c.values);
        if (k < q && c.is_constant())
            throw InvalidArgument("component " + std::to_string(k) + " below the degree is constant");
        if (k == q && !c.is_constant())
            throw InvalidArgument("degree component must be constant");
    }
    return MorphismClass{std::move(src), std::move(dst), std::move(components)};
}

std::string MorphismClass::to_string() const
{
    std::ostringstream os;
    os << src.to_string() << "->" << dst.to_string() << " deg " << degree() << " {";
    for (std::size_t i = 0; i < components.size(); ++i) {
        os << (i ? " " : "");
        for (std::size_t j = 0; j < components[i].values.size(); ++j)
            os << components[i].values[j];
    }
    os << '}';
    return os.str();
}

std::strong_ordering operator<=>(const MorphismClass& a, const MorphismClass& b)
{
    if (auto c = a.src <=> b.src; c != 0)
        return c;
    if (auto c = a.dst <=> b.dst; c != 0)
        return c;
    if (auto c = a.degree() <=> b.degree(); c != 0)
        return c;
    for (std::size_t i = 0; i < a.components.size(); ++i)
        if (auto c = a.components[i].values <=> b.components[i].values; c != 0)
            return c;
    return std::strong_ordering::equal;
}

MorphismClass identity_class(const Shape& a)
{
    MorphismClass f;
    f.src = a;
    f.dst = a;
    for (int k = 1; k <= a.dim(); ++k)
        f.components.push_back(MonotoneMap::identity(a.entry(k)));
    f.components.push_back(MonotoneMap::constant(0, 0, 0));
    return f;
}

MorphismClass compose(const MorphismClass& g, const MorphismClass& f)
{
    if (f.dst != g.src)
        throw IncomposableError(g.to_string() + " after " + f.to_string());
    const int q = std::min(f.degree(), g.degree());
    MorphismClass r;
    r.src = f.src;
    r.dst = g.dst;
    for (int k = 1; k <= q; ++k) {
        r.components.push_back(compose(g.component(k), f.component(k)));
        if (r.components.back().is_constant())
            break;
    }
    return r;
}

Representative canonical_representative(const MorphismClass& f, int length)
{
    if (length < f.degree())
        throw InvalidArgument("representative shorter than the degree");
    Representative r{f.src, f.dst, f.components};
    for (int k = f.degree() + 1; k <= length; ++k)
        r.components.push_back(MonotoneMap::constant(f.src.entry(k), f.dst.entry(k), 0));
    return r;
}

MorphismClass to_class(const Representative& r)
{
    MorphismClass f;
    f.src = r.src;
    f.dst = r.dst;
    for (const auto& c : r.components) {
        f.components.push_back(c);
        if (c.is_constant())
            return f;
    }
    throw InvalidArgument("representative has no constant component; extend its length");
}

Representative compose(const Representative& g, const Representative& f)
{
    if (f.dst != g.src)
        throw IncomposableError("representatives");
    Representative r{f.src, g.dst, {}};
    const std::size_t n = std::min(f.components.size(), g.components.size());
    for (std::size_t k = 0; k < n; ++k)
        r.components.push_back(compose(g.components[k], f.components[k]));
    return r;
}

// --------------------------------------------------------------- HomSet

std::uint64_t nonconstant_count(int m, int n)
{
    return binomial(m + n + 1, m + 1) - static_cast<std::uint64_t>(n + 1);
}

HomSet::HomSet(Shape src, Shape dst)
    : src_(std::move(src)), dst_(std::move(dst)), max_degree_(std::min(src_.dim(), dst_.dim()) + 1)
{
    offsets_.push_back(0);
    for (int q = 1; q <= max_degree_; ++q) {
        std::size_t count = 1;
        for (int k = 1; k <= q; ++k)
            count *= radix(q, k);
        offsets_.push_back(offsets_.back() + count);
    }
}

std::size_t HomSet::radix(int q, int k) const
{
    if (k < q)
        return static_cast<std::size_t>(nonconstant_count(src_.entry(k), dst_.entry(k)));
    return static_cast<std::size_t>(dst_.entry(q) + 1);
}

std::size_t HomSet::count_of_degree(int q) const
{
    if (q < 1 || q > max_degree_)
        return 0;
    return offsets_[static_cast<std::size_t>(q)] - offsets_[static_cast<std::size_t>(q - 1)];
}

MorphismClass HomSet::at(std::size_t rank) const
{
    if (rank >= size())
        throw InvalidArgument("hom-set rank out of range");
    int q = 1;
    while (rank >= offsets_[static_cast<std::size_t>(q)])
        ++q;
    std::size_t local = rank - offsets_[static_cast<std::size_t>(q - 1)];
    MorphismClass f;
    f.src = src_;
    f.dst = dst_;
    f.components.resize(static_cast<std::size_t>(q));
    for (int k = q; k >= 1; --k) {
        const std::size_t r = radix(q, k);
        const std::size_t digit = local % r;
        local /= r;
        if (k == q)
            f.components[static_cast<std::size_t>(k - 1)] =
                MonotoneMap::constant(src_.entry(k), dst_.entry(k), static_cast<int>(digit));
        else
            f.components[static_cast<std::size_t>(k - 1)] =
                monotone_table(src_.entry(k), dst_.entry(k)).nonconstant()[digit];
    }
    return f;
}

std::size_t HomSet::rank(const MorphismClass& f) const
{
    if (f.src != src_ || f.dst != dst_)
        throw InvalidArgument("class " + f.to_string() + " is not in Hom(" + src_.to_string() + "," + dst_.to_string() + ")");
    const int q = f.degree();
    std::size_t local = 0;
    for (int k = 1; k <= q; ++k) {
        std::size_t digit;
        if (k == q) {
            digit = static_cast<std::size_t>(f.component(k).values.front());
        } else {
            int r = monotone_table(src_.entry(k), dst_.entry(k)).nonconstant_rank(f.component(k));
            if (r < 0)
                throw InvalidArgument("non-canonical class " + f.to_string());
            digit = static_cast<std::size_t>(r);
        }
        local = local * radix(q, k) + digit;
    }
    return offsets_[static_cast<std::size_t>(q - 1)] + local;
}

std::vector<MorphismClass> enumerate_hom(const Shape& a, const Shape& b)
{
    HomSet h(a, b);
    std::vector<MorphismClass> out;
    out.reserve(h.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        out.push_back(h.at(i));
    return out;
}

// ---------------------------------------------------------------- faces

std::vector<FaceDescriptor> faces_of(const Shape& a)
{
    std::vector<FaceDescriptor> out;
    const int d = a.dim();
    for (int k = 1; k <= d; ++k) {
        const int ak = a.entry(k);
        if (ak >= 2) {
            std::vector<int> t = a.entries();
            t[static_cast<std::size_t>(k - 1)] -= 1;
            for (int m = 0; m <= ak; ++m)
                out.push_back({a, k, m, m >= 1 && m <= ak - 1, Shape(t)});
        } else if (k == d) {
            std::vector<int> t(a.entries().begin(), a.entries().end() - 1);
            for (int m = 0; m <= 1; ++m)
                out.push_back({a, k, m, false, Shape(t)});
        }
    }
    return out;
}

FaceDescriptor face_descriptor(const Shape& a, int k, int m)
{
    for (auto& fd : faces_of(a))
        if (fd.k == k && fd.m == m)
            return fd;
    throw InvalidArgument("(" + std::to_string(k) + "," + std::to_string(m) + ") is not a face of " + a.to_string());
}

MorphismClass face_class(const FaceDescriptor& fd)
{
    const Shape& a = fd.base;
    const int d = a.dim();
    MorphismClass f;
    f.src = fd.target;
    f.dst = a;
    if (a.entry(fd.k) >= 2) {
        for (int j = 1; j <= d; ++j) {
            if (j != fd.k) {
                f.components.push_back(MonotoneMap::identity(a.entry(j)));
                continue;
            }
            MonotoneMap delta;
            delta.dom = a.entry(j) - 1;
            delta.cod = a.entry(j);
            delta.values.clear();
            for (int v = 0; v <= a.entry(j); ++v)
                if (v != fd.m)
                    delta.values.push_back(v);
            f.components.push_back(std::move(delta));
        }
        f.components.push_back(MonotoneMap::constant(0, 0, 0));
    } else {
        for (int j = 1; j < d; ++j)
            f.components.push_back(MonotoneMap::identity(a.entry(j)));
        f.components.push_back(MonotoneMap::constant(0, 1, 1 - fd.m));
    }
    return f;
}

AutomorphismReport automorphism_report(const Shape& a, std::size_t bound)
{
    HomSet h(a, a);
    if (h.size() > bound)
        throw BudgetExceeded("Hom(" + a.to_string() + "," + a.to_string() + ") has " + std::to_string(h.size()) + " classes", 0);
    const auto all = enumerate_hom(a, a);
    const auto id = identity_class(a);
    AutomorphismReport r;
    r.hom_size = all.size();
    for (const auto& u : all) {
        for (const auto& v : all) {
            if (compose(u, v) == id && compose(v, u) == id) {
                ++r.num_automorphisms;
                break;
            }
        }
    }
    return r;
}

// ------------------------------------------------- factorizations, cells

ClassFactorization epi_mono_factor(const MorphismClass& f)
{
    const int q = f.degree();
    std::vector<int> mid;
    std::vector<EpiMono> parts;
    for (int k = 1; k < q; ++k) {
        parts.push_back(epi_mono_factor(f.component(k)));
        mid.push_back(parts.back().mono.dom);
    }
    const Shape mid_shape(mid);
    ClassFactorization r;
    r.epi.src = f.src;
    r.epi.dst = mid_shape;
    r.mono.src = mid_shape;
    r.mono.dst = f.dst;
    for (auto& p : parts) {
        r.epi.components.push_back(std::move(p.epi));
        r.mono.components.push_back(std::move(p.mono));
    }
    r.epi.components.push_back(MonotoneMap::constant(f.src.entry(q), 0, 0));
    r.mono.components.push_back(MonotoneMap::constant(0, f.dst.entry(q), f.component(q).values.front()));
    return r;
}

bool is_nondegenerate(const MorphismClass& f)
{
    if (f.degree() != f.src.dim() + 1)
        return false;
    for (int k = 1; k <= f.src.dim(); ++k)
        if (!f.component(k).is_injective())
            return false;
    return true;
}

bool is_component_surjective(const MorphismClass& f)
{
    if (f.degree() != f.dst.dim() + 1)
        return false;
    for (int k = 1; k <= f.dst.dim(); ++k)
        if (!f.component(k).is_surjective())
            return false;
    return true;
}

namespace {

// Position of v in the strictly increasing map g, or -1.
int preimage(const MonotoneMap& g, int v)
{
    auto it = std::lower_bound(g.values.begin(), g.values.end(), v);
    if (it == g.values.end() || *it != v)
        return -1;
    return static_cast<int>(it - g.values.begin());
}

} // namespace

std::optional<MorphismClass> factor_through(const MorphismClass& u, const MorphismClass& g)
{
    if (u.dst != g.dst)
        return std::nullopt;
    const int p = g.degree();
    const int q = u.degree();
    if (q > p)
        return std::nullopt;
    MorphismClass t;
    t.src = u.src;
    t.dst = g.src;
    for (int k = 1; k < q; ++k) {
        const auto& uk = u.component(k);
        const auto& gk = g.component(k);
        MonotoneMap tk;
        tk.dom = uk.dom;
        tk.cod = gk.dom;
        tk.values.resize(uk.values.size());
        for (std::size_t i = 0; i < uk.values.size(); ++i) {
            int pre = preimage(gk, uk.values[i]);
            if (pre < 0)
                return std::nullopt;
            tk.values[i] = pre;
        }
        t.components.push_back(std::move(tk));
    }
    const int v = u.component(q).values.front();
    if (q < p) {
        int pre = preimage(g.component(q), v);
        if (pre < 0)
            return std::nullopt;
        t.components.push_back(MonotoneMap::constant(u.src.entry(q), g.src.entry(q), pre));
    } else {
        if (g.component(p).values.front() != v)
            return std::nullopt;
        t.components.push_back(MonotoneMap::constant(u.src.entry(q), g.src.entry(q), 0));
    }
    return t;
}

std::vector<MorphismClass> nondegenerate_cells(const Shape& a)
{
    std::vector<MorphismClass> out;
    const int d = a.dim();
    // shapes of each dimension j, built in (dim, lex) order
    std::vector<std::vector<int>> level{{}};
    for (int j = 0; j <= d; ++j) {
        for (const auto& entries : level) {
            Shape b(entries);
            std::vector<std::vector<MonotoneMap>> choices;
            for (int k = 1; k <= j; ++k) {
                std::vector<MonotoneMap> inj;
                for (const auto& f : monotone_table(b.entry(k), a.entry(k)).all())
                    if (f.is_injective())
                        inj.push_back(f);
                choices.push_back(std::move(inj));
            }
            std::vector<std::size_t> idx(static_cast<std::size_t>(j), 0);
            bool done = false;
            while (!done) {
                for (int c = 0; c <= a.entry(j + 1); ++c) {
                    MorphismClass f;
                    f.src = b;
                    f.dst = a;
                    for (int k = 0; k < j; ++k)
                        f.components.push_back(choices[static_cast<std::size_t>(k)][idx[static_cast<std::size_t>(k)]]);
                    f.components.push_back(MonotoneMap::constant(0, a.entry(j + 1), c));
                    out.push_back(std::move(f));
                }
                int k = j - 1;
                while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == choices[static_cast<std::size_t>(k)].size()) {
                    idx[static_cast<std::size_t>(k)] = 0;
                    --k;
                }
                done = k < 0;
            }
        }
        if (j == d)
            break;
        std::vector<std::vector<int>> next;
        for (const auto& entries : level)
            for (int v = 1; v <= a.entry(j + 1); ++v) {
                auto e = entries;
                e.push_back(v);
                next.push_back(std::move(e));
            }
        level = std::move(next);
    }
    return out;
}

std::vector<MorphismClass> elementary_degeneracies(const Shape& b)
{
    std::vector<MorphismClass> out;
    const int d = b.dim();
    for (int k = 1; k <= d; ++k) {
        const int bk = b.entry(k);
        if (bk < 2)
            continue;
        std::vector<int> t = b.entries();
        t[static_cast<std::size_t>(k - 1)] -= 1;
        for (int j = 0; j < bk; ++j) {
            MorphismClass s;
            s.src = b;
            s.dst = Shape(t);
            for (int i = 1; i <= d; ++i) {
                if (i != k) {
                    s.components.push_back(MonotoneMap::identity(b.entry(i)));
                    continue;
                }
                MonotoneMap sigma;
                sigma.dom = bk;
                sigma.cod = bk - 1;
                sigma.values.clear();
                for (int v = 0; v <= bk; ++v)
                    sigma.values.push_back(v <= j ? v : v - 1);
                s.components.push_back(std::move(sigma));
            }
            s.components.push_back(MonotoneMap::constant(0, 0, 0));
            out.push_back(std::move(s));
        }
    }
    if (d >= 1) {
        MorphismClass s;
        s.src = b;
        s.dst = Shape(std::vector<int>(b.entries().begin(), b.entries().end() - 1));
        for (int i = 1; i < d; ++i)
            s.components.push_back(MonotoneMap::identity(b.entry(i)));
        s.components.push_back(MonotoneMap::constant(b.entry(d), 0, 0));
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace thetacat
