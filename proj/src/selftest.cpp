#include "thetacat/selftest.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "thetacat/errors.hpp"
#include "thetacat/nat.hpp"
#include "thetacat/nerves.hpp"

namespace thetacat {

bool SelftestReport::passed() const
{
    for (const auto& i : items)
        if (!i.passed)
            return false;
    return true;
}

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

MonotoneMap random_monotone(Rng& rng, int m, int n)
{
    const auto& all = monotone_table(m, n).all();
    return all[pick(rng, all.size())];
}

Outcome delta_associativity(Rng& rng)
{
    for (int t = 0; t < 1000; ++t) {
        const int a = static_cast<int>(pick(rng, 5)), b = static_cast<int>(pick(rng, 5)),
                  c = static_cast<int>(pick(rng, 5)), d = static_cast<int>(pick(rng, 5));
        const auto f = random_monotone(rng, a, b);
        const auto g = random_monotone(rng, b, c);
        const auto h = random_monotone(rng, c, d);
        if (compose(h, compose(g, f)) != compose(compose(h, g), f))
            return {false, "h(gf) != (hg)f for f=" + f.to_string() + " g=" + g.to_string() + " h=" + h.to_string()};
    }
    return {true, "1000 random triples"};
}

Outcome delta_epi_mono()
{
    std::size_t n = 0;
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            for (const auto& f : enumerate_monotone(a, b)) {
                ++n;
                const auto em = epi_mono_factor(f);
                if (compose(em.mono, em.epi) != f || !em.epi.is_surjective() || !em.mono.is_injective())
                    return {false, "factorization of " + f.to_string()};
            }
    return {true, std::to_string(n) + " maps"};
}

Outcome theta_hom_counts(const WindowSpec& w)
{
    std::size_t pairs = 0;
    for (const auto& a : w.shapes())
        for (const auto& b : w.shapes()) {
            std::uint64_t total = 0, prod = 1;
            for (int q = 1; prod > 0; ++q) {
                total += prod * static_cast<std::uint64_t>(b.entry(q) + 1);
                prod *= nonconstant_count(a.entry(q), b.entry(q));
            }
            const HomSet hom(a, b);
            if (hom.size() != total)
                return {false, a.to_string() + " -> " + b.to_string() + ": " + std::to_string(hom.size()) +
                                   " classes, formula " + std::to_string(total)};
            for (std::size_t r = 0; r < hom.size(); ++r)
                if (hom.rank(hom.at(r)) != r)
                    return {false, "rank round trip fails in " + a.to_string() + " -> " + b.to_string()};
            ++pairs;
        }
    return {true, std::to_string(pairs) + " shape pairs"};
}

Outcome theta_associativity(Rng& rng, const WindowSpec& w)
{
    const auto& sh = w.shapes();
    auto rand_class = [&](const Shape& a, const Shape& b) {
        const HomSet h(a, b);
        return h.at(pick(rng, h.size()));
    };
    for (int t = 0; t < 1000; ++t) {
        const auto& a = sh[pick(rng, sh.size())];
        const auto& b = sh[pick(rng, sh.size())];
        const auto& c = sh[pick(rng, sh.size())];
        const auto& d = sh[pick(rng, sh.size())];
        const auto f = rand_class(a, b);
        const auto g = rand_class(b, c);
        const auto h = rand_class(c, d);
        if (compose(h, compose(g, f)) != compose(compose(h, g), f))
            return {false, "associativity fails for " + f.to_string() + ", " + g.to_string() + ", " + h.to_string()};
        if (compose(identity_class(b), f) != f || compose(f, identity_class(a)) != f)
            return {false, "unit law fails for " + f.to_string()};
    }
    return {true, "1000 random triples"};
}

Outcome theta_face_counts(const WindowSpec& w)
{
    std::size_t n = 0;
    for (const auto& a : w.shapes()) {
        if (a.dim() == 0)
            continue;
        int inner = 0, outer = 0, want_inner = 0, want_outer = 0;
        for (const auto& f : faces_of(a))
            (f.inner ? inner : outer)++;
        for (int i = 1; i <= a.dim(); ++i) {
            want_inner += a.entry(i) - 1;
            want_outer += (a.entry(i) >= 2 || i == a.dim()) ? 2 : 0;
        }
        if (inner != want_inner || outer != want_outer)
            return {false, a.to_string() + ": " + std::to_string(inner) + " inner, " + std::to_string(outer) + " outer"};
        ++n;
    }
    return {true, std::to_string(n) + " shapes"};
}

Outcome subshapes_horns(const WindowSpec& w)
{
    std::size_t n = 0;
    for (const auto& a : w.shapes()) {
        const auto b = boundary(a, w);
        if (b.closure_violation())
            return {false, "boundary of " + a.to_string() + " is not closed"};
        for (const auto& f : faces_of(a)) {
            auto h = horn(a, f.k, f.m, w).sub;
            if (h.closure_violation())
                return {false, "horn not closed"};
            if (!(h.unite(face_sub(f, w)) == b))
                return {false, "horn plus face differs from the boundary on " + a.to_string()};
            ++n;
        }
    }
    return {true, std::to_string(n) + " horns"};
}

Outcome subshapes_spine(const WindowSpec& w)
{
    for (const auto& a : w.shapes()) {
        const auto sp = spine(a, w);
        if (a.all_ones()) {
            if (!sp.is_full())
                return {false, "spine of " + a.to_string() + " is not everything"};
            continue;
        }
        std::vector<FaceDescriptor> outer;
        for (const auto& f : faces_of(a))
            if (!f.inner)
                outer.push_back(f);
        if (!sp.is_subset_of(union_of_faces(a, outer, w)))
            return {false, "spine of " + a.to_string() + " leaves the outer faces"};
    }
    return {true, std::to_string(w.size()) + " shapes"};
}

std::vector<PresheafPtr> samples()
{
    const auto z2 = FiniteGroup::builtin("Z2");
    return {std::make_shared<RepresentablePresheaf>(Shape{2, 1}), nerve_B1(z2), nerve_B2_strict(z2), nerve_B2_em(z2)};
}

Outcome presheaf_yoneda(const WindowSpec& w)
{
    std::size_t n = 0;
    for (const auto& x : samples())
        for (const auto& a : w.shapes()) {
            const auto nat = enumerate_nat(SubOfRepresentable::full(a, WindowSpec::covering(a)), *x);
            if (nat.size() != x->size(a))
                return {false, x->name() + " at " + a.to_string()};
            ++n;
        }
    return {true, std::to_string(n) + " pairs"};
}

Outcome presheaf_functoriality(const WindowSpec& w)
{
    for (const auto& x : samples()) {
        const auto rep = check_functoriality(*x, w);
        if (!rep.passed)
            return {false, x->name() + " fails at " + rep.violation->f.to_string()};
    }
    return {true, "4 presheaves"};
}

Outcome checkers_b1(const WindowSpec& w)
{
    for (const char* g : {"Z2", "Z3", "Z4", "V4"}) {
        const auto x = nerve_B1(FiniteGroup::builtin(g));
        const auto sg = check(*x, CheckMode::parse("strict-groupoid"), w);
        const auto gp = check(*x, CheckMode::parse("groupoid"), w);
        const auto sc = check(*x, CheckMode::parse("strict-cat"), w);
        if (!sg.passed || sg.passed != (gp.passed && sc.passed))
            return {false, std::string("B1(") + g + ")"};
    }
    return {true, "Z2 Z3 Z4 V4"};
}

Outcome checkers_b2(const WindowSpec& w)
{
    if (!w.contains(Shape{2, 1}))
        return {false, "window lacks t[2,1]"};
    const auto x = nerve_B2_strict(FiniteGroup::builtin("Z2"));
    if (!check(*x, CheckMode::parse("strict-cat"), w).passed)
        return {false, "strict-cat fails"};
    const auto gp = check(*x, CheckMode::parse("groupoid"), w);
    if (gp.passed || !gp.witness)
        return {false, "groupoid passes"};
    const auto& r = gp.records[*gp.witness];
    std::ostringstream os;
    os << "groupoid witness " << r.shape.to_string() << " (" << r.k << "," << r.m << ")";
    return {r.shape == Shape{2, 1} && r.k == 2 && r.m == 0, os.str()};
}

Outcome anodyne_union(const WindowSpec& w)
{
    std::size_t n = 0;
    for (const auto& a : w.shapes()) {
        if (a.dim() > 2)
            continue;
        for (const auto& g : admissible_gammas(a)) {
            AnodyneCertificate cert = certify_union_inclusion(a, g, w);
            const auto rep = verify_certificate(cert, w);
            if (!rep.passed)
                return {false, a.to_string() + " " + gamma_label(g) + ": " + rep.reason};
            ++n;
        }
    }
    return {true, std::to_string(n) + " certificates"};
}

Outcome anodyne_probe()
{
    std::ostringstream os;
    for (const auto& [a, t] : {std::pair{Shape{2}, ProbeTarget::Full}, std::pair{Shape{2, 1}, ProbeTarget::Outer},
                               std::pair{Shape{1, 1, 1}, ProbeTarget::Full}}) {
        const auto w = WindowSpec::covering(a);
        const auto r = spine_probe(a, t, w);
        if (!r.found || !verify_certificate(*r.certificate, w).passed)
            return {false, a.to_string() + " " + to_string(t)};
        os << a.to_string() << " " << to_string(t) << ": " << r.certificate->steps.size() << " steps; ";
    }
    return {true, os.str()};
}

const std::vector<std::pair<const char*, const char*>> kPairs{{"Z2", "Z2"}, {"Z3", "Z3"}, {"Z2", "Z3"}};

Outcome h2_maps()
{
    const WindowSpec w(2, 3);
    std::ostringstream os;
    for (const auto& [gn, an] : kPairs) {
        const auto g = FiniteGroup::builtin(gn), a = FiniteGroup::builtin(an);
        const auto x = nerve_B1(g);
        const auto y = nerve_B2_em(a);
        const auto maps = enumerate_window_nat(*x, *y, w);
        const auto cocycles = enumerate_cocycles(g, a);
        if (maps.size() != cocycles.size())
            return {false, std::string(gn) + "," + an + ": " + std::to_string(maps.size()) + " maps"};
        for (const auto& phi : maps.maps)
            if (cocycle_to_map(map_to_cocycle(phi, *x, *y, w), *x, *y, w) != phi)
                return {false, "round trip fails"};
        os << gn << "," << an << ": " << maps.size() << "; ";
    }
    return {true, os.str()};
}

Outcome h2_homotopy()
{
    std::ostringstream os;
    bool ok = true;
    for (const auto& [gn, an] : kPairs) {
        const auto rep = homotopy_classes(FiniteGroup::builtin(gn), FiniteGroup::builtin(an), WindowSpec(2, 3));
        ok = ok && rep.agree && rep.symmetric && rep.transitive;
        os << gn << "," << an << ": " << rep.num_classes << " classes, H2 " << rep.h2_classes << "; ";
    }
    return {ok, os.str()};
}

} // namespace

SelftestReport run_selftest(std::uint64_t seed, const WindowSpec& w)
{
    SelftestReport rep;
    rep.seed = seed;
    rep.window = w;
    Rng rng(seed);
    auto add = [&](const char* module, const char* name, const std::function<Outcome()>& fn) {
        SelftestItem item{module, name, false, ""};
        try {
            const auto o = fn();
            item.passed = o.passed;
            item.detail = o.detail;
        } catch (const std::exception& e) {
            item.detail = std::string("error: ") + e.what();
        }
        rep.items.push_back(std::move(item));
    };
    add("delta-core", "composition is associative", [&] { return delta_associativity(rng); });
    add("delta-core", "epi-mono factorization", [] { return delta_epi_mono(); });
    add("theta-core", "hom-set sizes match the stratified count", [&] { return theta_hom_counts(w); });
    add("theta-core", "composition is associative and unital", [&] { return theta_associativity(rng, w); });
    add("theta-core", "face counts", [&] { return theta_face_counts(w); });
    add("subshapes", "horn plus missing face is the boundary", [&] { return subshapes_horns(w); });
    add("subshapes", "spine facts", [&] { return subshapes_spine(w); });
    add("presheaf-engine", "Yoneda", [&] { return presheaf_yoneda(w); });
    add("presheaf-engine", "functoriality", [&] { return presheaf_functoriality(w); });
    add("checkers", "group nerves are strict groupoids", [&] { return checkers_b1(w); });
    add("checkers", "strict 2-nerve is a strict cat and not a groupoid", [&] { return checkers_b2(w); });
    add("anodyne", "unions of faces are certified", [&] { return anodyne_union(w); });
    add("anodyne", "spine probe", [] { return anodyne_probe(); });
    add("nerves-h2", "maps B1G -> B2A are cocycles", [] { return h2_maps(); });
    add("nerves-h2", "homotopy classes match H2", [] { return h2_homotopy(); });
    return rep;
}

Json to_json(const SelftestReport& r)
{
    Json items = Json::array();
    for (const auto& i : r.items)
        items.push_back(Json{{"module", i.module}, {"name", i.name}, {"passed", i.passed}, {"detail", i.detail}});
    return Json{{"command", "selftest"},
                {"seed", r.seed},
                {"window", to_json(r.window)},
                {"passed", r.passed()},
                {"items", items}};
}

} // namespace thetacat
