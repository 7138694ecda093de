#include "thetacat/nat.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "thetacat/errors.hpp"

namespace thetacat {

std::optional<std::size_t> SubNatSet::find(const std::vector<std::size_t>& values) const
{
    auto it = std::lower_bound(families.begin(), families.end(), values);
    if (it == families.end() || *it != values)
        return std::nullopt;
    return static_cast<std::size_t>(it - families.begin());
}

namespace {

// s = g_i ∘ into_i = g_j ∘ into_j with j < i.
struct Overlap {
    MorphismClass into_i;
    std::size_t j;
    MorphismClass into_j;
};

struct GeneratorPlan {
    std::vector<Overlap> overlaps;
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> by_key;
};

bool larger_first(const MorphismClass& a, const MorphismClass& b)
{
    if (a.src.dim() != b.src.dim())
        return a.src.dim() > b.src.dim();
    if (a.src.entry_sum() != b.src.entry_sum())
        return a.src.entry_sum() > b.src.entry_sum();
    return a < b;
}

std::vector<Overlap> overlaps_with_earlier(const std::vector<MorphismClass>& gens, std::size_t i)
{
    const auto& g = gens[i];
    std::vector<std::pair<MorphismClass, MorphismClass>> shared; // (cell, into_i)
    for (const auto& m : nondegenerate_cells(g.src)) {
        auto s = compose(g, m);
        for (std::size_t j = 0; j < i; ++j)
            if (factor_through(s, gens[j])) {
                shared.emplace_back(std::move(s), m);
                break;
            }
    }
    std::sort(shared.begin(), shared.end(), [](const auto& a, const auto& b) { return larger_first(a.first, b.first); });
    std::set<MorphismClass> covered;
    std::vector<Overlap> out;
    for (const auto& [s, m] : shared) {
        if (covered.count(s))
            continue;
        for (const auto& n : nondegenerate_cells(s.src))
            covered.insert(compose(s, n));
        for (std::size_t j = 0; j < i; ++j)
            if (auto t = factor_through(s, gens[j])) {
                out.push_back(Overlap{m, j, *t});
                break;
            }
    }
    return out;
}

} // namespace

SubNatSet enumerate_nat(const Shape& base, const CellPredicate& member, const Presheaf& x, std::uint64_t budget)
{
    SubNatSet out;
    out.base = base;
    out.generators = maximal_cells(base, member);
    const std::size_t n = out.generators.size();
    if (n == 0) {
        out.families.emplace_back();
        return out;
    }

    std::vector<GeneratorPlan> plans(n);
    for (std::size_t i = 0; i < n; ++i) {
        plans[i].overlaps = overlaps_with_earlier(out.generators, i);
        const std::size_t size = x.size(out.generators[i].src);
        for (std::size_t e = 0; e < size; ++e) {
            std::vector<std::size_t> key;
            key.reserve(plans[i].overlaps.size());
            for (const auto& ov : plans[i].overlaps)
                key.push_back(x.act(ov.into_i, e));
            plans[i].by_key[key].push_back(e);
        }
    }

    std::vector<std::size_t> cur(n, 0);
    std::uint64_t nodes = 0;
    auto dfs = [&](auto&& self, std::size_t i) -> void {
        if (i == n) {
            out.families.push_back(cur);
            return;
        }
        std::vector<std::size_t> key;
        key.reserve(plans[i].overlaps.size());
        for (const auto& ov : plans[i].overlaps)
            key.push_back(x.act(ov.into_j, cur[ov.j]));
        auto it = plans[i].by_key.find(key);
        if (it == plans[i].by_key.end())
            return;
        for (std::size_t e : it->second) {
            if (++nodes > budget)
                throw BudgetExceeded("natural-transformation enumeration over " + base.to_string(), out.families.size());
            cur[i] = e;
            self(self, i + 1);
        }
    };
    dfs(dfs, 0);
    out.nodes = nodes;
    return out;
}

SubNatSet enumerate_nat(const SubOfRepresentable& u, const Presheaf& x, std::uint64_t budget)
{
    return enumerate_nat(u.base(), [&u](const MorphismClass& c) { return u.contains(c); }, x, budget);
}

std::size_t evaluate(const SubNatSet& set, std::size_t family, const Presheaf& x, const MorphismClass& cell)
{
    if (cell.dst != set.base)
        throw InvalidArgument("cell " + cell.to_string() + " does not land in " + set.base.to_string());
    for (std::size_t j = 0; j < set.generators.size(); ++j)
        if (auto t = factor_through(cell, set.generators[j]))
            return x.act(*t, set.families.at(family)[j]);
    throw InvalidArgument("cell " + cell.to_string() + " is not in the source subpresheaf");
}

std::vector<std::size_t> restrict_element(const SubNatSet& set, const Presheaf& x, std::size_t a)
{
    std::vector<std::size_t> v;
    v.reserve(set.generators.size());
    for (const auto& g : set.generators)
        v.push_back(x.act(g, a));
    return v;
}

// ------------------------------------------------------------ window engine

namespace {

struct Edge {
    std::size_t other;    // variable index
    std::size_t transfer; // index into transfers
};

class WindowSearch {
public:
    WindowSearch(const Presheaf& x, const Presheaf& y, const WindowSpec& w, std::uint64_t budget)
        : w_(w), budget_(budget)
    {
        const std::size_t nl = w.size();
        offset_.resize(nl + 1, 0);
        ysize_.resize(nl);
        for (std::size_t l = 0; l < nl; ++l) {
            offset_[l + 1] = offset_[l] + x.size(w.shapes()[l]);
            ysize_[l] = y.size(w.shapes()[l]);
            words_ = std::max(words_, (ysize_[l] + 63) / 64);
        }
        const std::size_t nv = offset_[nl];
        level_of_.resize(nv);
        for (std::size_t l = 0; l < nl; ++l)
            for (std::size_t v = offset_[l]; v < offset_[l + 1]; ++v)
                level_of_[v] = l;
        out_.resize(nv);
        in_.resize(nv);
        value_.assign(nv, 0);
        assigned_.assign(nv, 0);
        domain_.assign(nv * words_, 0);
        for (std::size_t v = 0; v < nv; ++v)
            for (std::size_t c = 0; c < ysize_[level_of_[v]]; ++c)
                domain_[v * words_ + c / 64] |= std::uint64_t{1} << (c % 64);

        std::vector<MorphismClass> gens;
        for (const auto& big : w.shapes())
            for (const auto& fd : faces_of(big))
                if (w.contains(fd.target))
                    gens.push_back(face_class(fd));
        for (const auto& b : w.shapes())
            for (auto& s : elementary_degeneracies(b))
                if (w.contains(s.dst))
                    gens.push_back(std::move(s));
        for (const auto& f : gens) {
            const std::size_t ls = w.index_of(f.src);
            const std::size_t ld = w.index_of(f.dst);
            std::vector<std::size_t> table(ysize_[ld]);
            // preimage[t] = {c in Y(dst) : Y(f)(c) = t} as a bitset
            std::vector<std::uint64_t> pre(ysize_[ls] * words_, 0);
            for (std::size_t c = 0; c < table.size(); ++c) {
                table[c] = y.act(f, c);
                pre[table[c] * words_ + c / 64] |= std::uint64_t{1} << (c % 64);
            }
            transfers_.push_back(std::move(table));
            preimages_.push_back(std::move(pre));
            const std::size_t tr = transfers_.size() - 1;
            for (std::size_t e = 0; e < offset_[ld + 1] - offset_[ld]; ++e) {
                const std::size_t from = offset_[ld] + e;
                const std::size_t to = offset_[ls] + x.act(f, e);
                out_[from].push_back({to, tr});
                in_[to].push_back({from, tr});
            }
        }
    }

    bool pin(std::size_t level, std::size_t e, std::size_t value)
    {
        const std::size_t v = offset_.at(level) + e;
        if (v >= offset_[level + 1] || value >= ysize_[level])
            throw InvalidArgument("pin out of range");
        if (assigned_[v])
            return value_[v] == value;
        return assign(v, value);
    }

    WindowNatSet run(bool consistent)
    {
        WindowNatSet res;
        res.window = w_;
        if (consistent)
            search(res);
        std::sort(res.maps.begin(), res.maps.end());
        res.nodes = nodes_;
        return res;
    }

private:
    bool in_domain(std::size_t v, std::size_t c) const
    {
        return (domain_[v * words_ + c / 64] >> (c % 64)) & 1U;
    }

    std::size_t domain_size(std::size_t v) const
    {
        std::size_t n = 0;
        for (std::size_t i = 0; i < words_; ++i)
            n += static_cast<std::size_t>(std::popcount(domain_[v * words_ + i]));
        return n;
    }

    // Restricts the domain of v to a bitset; returns the new size.
    std::size_t restrict_domain(std::size_t v, const std::uint64_t* mask)
    {
        std::size_t n = 0;
        for (std::size_t i = 0; i < words_; ++i) {
            auto& d = domain_[v * words_ + i];
            const auto nd = d & mask[i];
            if (nd != d) {
                dtrail_.push_back({v * words_ + i, d});
                d = nd;
            }
            n += static_cast<std::size_t>(std::popcount(nd));
        }
        return n;
    }

    std::size_t first_in_domain(std::size_t v) const
    {
        for (std::size_t i = 0; i < words_; ++i)
            if (const auto d = domain_[v * words_ + i])
                return i * 64 + static_cast<std::size_t>(std::countr_zero(d));
        return 0;
    }

    bool assign(std::size_t v, std::size_t c)
    {
        if (!in_domain(v, c))
            return false;
        std::vector<std::size_t> queue{v};
        set(v, c);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const std::size_t u = queue[qi];
            for (const auto& e : out_[u]) {
                const std::size_t val = transfers_[e.transfer][value_[u]];
                if (assigned_[e.other]) {
                    if (value_[e.other] != val)
                        return false;
                } else {
                    if (!in_domain(e.other, val))
                        return false;
                    set(e.other, val);
                    queue.push_back(e.other);
                }
            }
            for (const auto& e : in_[u]) {
                if (assigned_[e.other]) {
                    if (transfers_[e.transfer][value_[e.other]] != value_[u])
                        return false;
                    continue;
                }
                const auto* mask = &preimages_[e.transfer][value_[u] * words_];
                const std::size_t n = restrict_domain(e.other, mask);
                if (n == 0)
                    return false;
                if (n == 1) {
                    set(e.other, first_in_domain(e.other));
                    queue.push_back(e.other);
                }
            }
        }
        return true;
    }

    void set(std::size_t v, std::size_t c)
    {
        assigned_[v] = 1;
        value_[v] = c;
        trail_.push_back(v);
    }

    void undo(std::size_t mark, std::size_t dmark)
    {
        while (trail_.size() > mark) {
            assigned_[trail_.back()] = 0;
            trail_.pop_back();
        }
        while (dtrail_.size() > dmark) {
            domain_[dtrail_.back().first] = dtrail_.back().second;
            dtrail_.pop_back();
        }
    }

    void search(WindowNatSet& res)
    {
        // smallest remaining domain first; ties go to the earliest variable
        std::size_t best = value_.size();
        std::size_t best_size = 0;
        for (std::size_t v = 0; v < value_.size(); ++v) {
            if (assigned_[v])
                continue;
            const std::size_t n = domain_size(v);
            if (best == value_.size() || n < best_size) {
                best = v;
                best_size = n;
                if (n <= 1)
                    break;
            }
        }
        if (best == value_.size()) {
            WindowNat m;
            m.levels.resize(w_.size());
            for (std::size_t l = 0; l < w_.size(); ++l)
                m.levels[l].assign(value_.begin() + static_cast<long>(offset_[l]),
                                   value_.begin() + static_cast<long>(offset_[l + 1]));
            res.maps.push_back(std::move(m));
            return;
        }
        const std::size_t dom = ysize_[level_of_[best]];
        for (std::size_t c = 0; c < dom; ++c) {
            if (!in_domain(best, c))
                continue;
            if (++nodes_ > budget_)
                throw BudgetExceeded("natural-transformation enumeration on the window", res.maps.size());
            const std::size_t mark = trail_.size();
            const std::size_t dmark = dtrail_.size();
            if (assign(best, c))
                search(res);
            undo(mark, dmark);
        }
    }

    const WindowSpec& w_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::size_t words_ = 1;
    std::vector<std::size_t> offset_;
    std::vector<std::size_t> ysize_;
    std::vector<std::size_t> level_of_;
    std::vector<std::vector<Edge>> out_;
    std::vector<std::vector<Edge>> in_;
    std::vector<std::vector<std::size_t>> transfers_;
    std::vector<std::vector<std::uint64_t>> preimages_;
    std::vector<std::size_t> value_;
    std::vector<char> assigned_;
    std::vector<std::uint64_t> domain_;
    std::vector<std::size_t> trail_;
    std::vector<std::pair<std::size_t, std::uint64_t>> dtrail_;
};

} // namespace

WindowNatSet enumerate_window_nat(const Presheaf& x, const Presheaf& y, const WindowSpec& w, std::uint64_t budget,
                                  const NatPins& pins)
{
    WindowSearch s(x, y, w, budget);
    bool ok = true;
    for (const auto& [key, value] : pins)
        ok = ok && s.pin(key.first, key.second, value);
    return s.run(ok);
}

std::optional<NaturalityViolation> naturality_violation(const Presheaf& x, const Presheaf& y, const WindowSpec& w,
                                                        const WindowNat& phi)
{
    for (std::size_t ls = 0; ls < w.size(); ++ls)
        for (std::size_t ld = 0; ld < w.size(); ++ld) {
            const HomSet hom(w.shapes()[ls], w.shapes()[ld]);
            for (std::size_t r = 0; r < hom.size(); ++r) {
                const auto f = hom.at(r);
                for (std::size_t e = 0; e < phi.levels[ld].size(); ++e)
                    if (phi.levels[ls][x.act(f, e)] != y.act(f, phi.levels[ld][e]))
                        return NaturalityViolation{f, e};
            }
        }
    return std::nullopt;
}

WindowNat yoneda_map(const Shape& a, const Presheaf& x, std::size_t element, const WindowSpec& w)
{
    WindowNat m;
    for (const auto& b : w.shapes()) {
        const HomSet hom(b, a);
        std::vector<std::size_t> level(hom.size());
        for (std::size_t r = 0; r < hom.size(); ++r)
            level[r] = x.act(hom.at(r), element);
        m.levels.push_back(std::move(level));
    }
    return m;
}

} // namespace thetacat
