#include "thetacat/h2.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>

#include "thetacat/errors.hpp"

namespace thetacat {

bool is_normalized_cocycle(const FiniteGroup& g, const FiniteGroup& a, const Cocycle2& f)
{
    const int n = g.order();
    auto at = [&](int x, int y) { return f.table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; };
    for (int x = 0; x < n; ++x)
        if (at(g.identity(), x) != a.identity() || at(x, g.identity()) != a.identity())
            return false;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (a.mul(at(x, y), at(g.mul(x, y), z)) != a.mul(at(y, z), at(x, g.mul(y, z))))
                    return false;
    return true;
}

std::vector<Cocycle2> enumerate_cocycles(const FiniteGroup& g, const FiniteGroup& a)
{
    if (!a.abelian())
        throw InvalidArgument("coefficient group " + a.name() + " is not abelian");
    const int n = g.order();
    const int e = g.identity();
    // free cells (x,y) with x,y != e in row-major order
    std::vector<std::pair<int, int>> cells;
    std::vector<std::vector<int>> cell_of(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (x != e && y != e) {
                cell_of[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = static_cast<int>(cells.size());
                cells.emplace_back(x, y);
            }
    // each triple is checked once its last free cell is assigned
    std::vector<std::vector<std::array<int, 3>>> due(cells.size() + 1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const int last = std::max({cell_of[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)],
                                           cell_of[static_cast<std::size_t>(g.mul(x, y))][static_cast<std::size_t>(z)],
                                           cell_of[static_cast<std::size_t>(y)][static_cast<std::size_t>(z)],
                                           cell_of[static_cast<std::size_t>(x)][static_cast<std::size_t>(g.mul(y, z))]});
                due[static_cast<std::size_t>(last + 1)].push_back({x, y, z});
            }
    Cocycle2 f;
    f.table.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), a.identity()));
    auto ok = [&](std::size_t slot) {
        for (const auto& t : due[slot]) {
            const int x = t[0], y = t[1], z = t[2];
            auto at = [&](int p, int q) { return f.table[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]; };
            if (a.mul(at(x, y), at(g.mul(x, y), z)) != a.mul(at(y, z), at(x, g.mul(y, z))))
                return false;
        }
        return true;
    };
    std::vector<Cocycle2> out;
    if (!ok(0))
        return out;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == cells.size()) {
            out.push_back(f);
            return;
        }
        const auto [x, y] = cells[i];
        for (int v = 0; v < a.order(); ++v) {
            f.table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = v;
            if (ok(i + 1))
                self(self, i + 1);
        }
        f.table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = a.identity();
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Cocycle2> enumerate_coboundaries(const FiniteGroup& g, const FiniteGroup& a)
{
    if (!a.abelian())
        throw InvalidArgument("coefficient group " + a.name() + " is not abelian");
    const int n = g.order();
    std::set<Cocycle2> out;
    std::vector<int> u(static_cast<std::size_t>(n), a.identity());
    std::vector<int> free;
    for (int x = 0; x < n; ++x)
        if (x != g.identity())
            free.push_back(x);
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == free.size()) {
            Cocycle2 d;
            d.table.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    d.table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
                        a.sub(a.mul(u[static_cast<std::size_t>(x)], u[static_cast<std::size_t>(y)]),
                              u[static_cast<std::size_t>(g.mul(x, y))]);
            out.insert(std::move(d));
            return;
        }
        for (int v = 0; v < a.order(); ++v) {
            u[static_cast<std::size_t>(free[i])] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return {out.begin(), out.end()};
}

CohomologyCount h2_classes(const FiniteGroup& g, const FiniteGroup& a)
{
    CohomologyCount c;
    c.cocycles = enumerate_cocycles(g, a).size();
    c.coboundaries = enumerate_coboundaries(g, a).size();
    c.classes = c.cocycles / c.coboundaries;
    return c;
}

namespace {

void require_shapes(const WindowSpec& w)
{
    if (!w.contains(Shape{3}) || !w.contains(Shape{2}))
        throw InvalidArgument("window must contain t[2] and t[3]");
}

} // namespace

Cocycle2 map_to_cocycle(const WindowNat& phi, const NerveB1& x, const NerveB2EM& y, const WindowSpec& w)
{
    require_shapes(w);
    if (auto v = naturality_violation(x, y, w, phi))
        throw InvalidArgument("map is not natural at " + v->f.to_string());
    const auto& g = x.group();
    const int n = g.order();
    const auto& level = phi.levels[w.index_of(Shape{2})];
    Cocycle2 f;
    f.table.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            f.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                NerveB2EM::decode(y.group(), 2, level[encode_tuple({a, b}, n)])[0];
    return f;
}

WindowNat cocycle_to_map(const Cocycle2& f, const NerveB1& x, const NerveB2EM& y, const WindowSpec& w)
{
    require_shapes(w);
    const auto& g = x.group();
    if (!is_normalized_cocycle(g, y.group(), f))
        throw InvalidArgument("table is not a normalized 2-cocycle");
    WindowNat phi;
    for (const auto& b : w.shapes()) {
        const int m = b.entry(1);
        std::vector<std::size_t> level(x.size(b));
        for (std::size_t e = 0; e < level.size(); ++e) {
            const auto s = decode_tuple(e, g.order(), m);
            auto product = [&](int from, int to) { // g_{from+1} ⋯ g_to
                int h = g.identity();
                for (int t = from + 1; t <= to; ++t)
                    h = g.mul(h, s[static_cast<std::size_t>(t - 1)]);
                return h;
            };
            std::vector<int> base(static_cast<std::size_t>(NerveB2EM::num_base_triples(m)));
            for (int j = 1; j <= m; ++j)
                for (int k = j + 1; k <= m; ++k)
                    base[static_cast<std::size_t>(NerveB2EM::triple_index(m, j, k))] =
                        f.table[static_cast<std::size_t>(product(0, j))][static_cast<std::size_t>(product(j, k))];
            level[e] = NerveB2EM::encode(y.group(), m, base);
        }
        phi.levels.push_back(std::move(level));
    }
    return phi;
}

HomotopyReport homotopy_classes(const FiniteGroup& g, const FiniteGroup& a, const WindowSpec& w, std::uint64_t budget)
{
    require_shapes(w);
    if (!w.contains(Shape{2, 1}))
        throw InvalidArgument("window must contain t[2,1]");
    HomotopyReport rep;
    rep.group = g.name();
    rep.coefficients = a.name();
    rep.window = w;
    rep.h2_classes = h2_classes(g, a).classes;

    const auto x = nerve_B1(g);
    const auto y = nerve_B2_em(a);
    WindowNatSet maps;
    try {
        maps = enumerate_window_nat(*x, *y, w, budget);
    } catch (const BudgetExceeded& e) {
        rep.budget_exceeded = true;
        rep.num_maps = e.partial;
        return rep;
    }
    rep.num_maps = maps.size();
    rep.nodes = maps.nodes;
    std::map<WindowNat, std::size_t> index;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        index.emplace(maps.maps[i], i);
        rep.cocycles.push_back(map_to_cocycle(maps.maps[i], *x, *y, w));
    }

    const auto interval = std::make_shared<RepresentablePresheaf>(Shape{1});
    const ProductPresheaf cyl(x, interval);
    WindowNatSet homs;
    try {
        homs = enumerate_window_nat(cyl, *y, w, budget);
    } catch (const BudgetExceeded& e) {
        rep.budget_exceeded = true;
        rep.num_homotopies = e.partial;
        return rep;
    }
    rep.num_homotopies = homs.size();
    rep.nodes += homs.nodes;

    std::vector<std::size_t> parent(maps.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    std::set<std::pair<std::size_t, std::size_t>> rel;
    for (const auto& h : homs.maps) {
        std::size_t ends[2];
        for (int c = 0; c < 2; ++c) {
            WindowNat phi;
            for (std::size_t l = 0; l < w.size(); ++l) {
                const Shape& b = w.shapes()[l];
                std::vector<std::size_t> level(x->size(b));
                for (std::size_t e = 0; e < level.size(); ++e)
                    level[e] = h.levels[l][cyl.pair(b, e, static_cast<std::size_t>(c))];
                phi.levels.push_back(std::move(level));
            }
            auto it = index.find(phi);
            if (it == index.end())
                throw Error("homotopy endpoint is not among the enumerated maps");
            ends[c] = it->second;
        }
        rel.emplace(ends[0], ends[1]);
        parent[find(ends[0])] = find(ends[1]);
    }
    rep.relation.assign(rel.begin(), rel.end());

    rep.reflexive = true;
    for (std::size_t i = 0; i < maps.size(); ++i)
        rep.reflexive = rep.reflexive && rel.count({i, i});
    rep.symmetric = true;
    for (const auto& [p, q] : rel)
        rep.symmetric = rep.symmetric && rel.count({q, p});
    rep.transitive = true;
    for (const auto& [p, q] : rel)
        for (const auto& [q2, r] : rel)
            if (q == q2)
                rep.transitive = rep.transitive && rel.count({p, r});

    std::map<std::size_t, std::size_t> class_id;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const auto root = find(i);
        auto it = class_id.emplace(root, class_id.size()).first;
        rep.class_of.push_back(it->second);
    }
    rep.num_classes = class_id.size();
    rep.agree = rep.num_classes == rep.h2_classes;
    return rep;
}

} // namespace thetacat
