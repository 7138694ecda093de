#include <numeric>

#include "doctest.h"
#include "thetacat/checkers.hpp"
#include "thetacat/errors.hpp"
#include "thetacat/nerves.hpp"

using namespace thetacat;

namespace {

FiniteGroup grp(const char* name) { return FiniteGroup::builtin(name); }

std::size_t fiber_total(const HornRecord& r)
{
    return std::accumulate(r.fibers.begin(), r.fibers.end(), std::size_t{0});
}

// Nat(Λ, X) counted by the window engine over the horn as a presheaf.
std::size_t horn_maps_by_window(const Presheaf& x, const Shape& a, int k, int m)
{
    const auto w = WindowSpec::covering(a);
    const SubPresheaf h(horn(a, k, m, w).sub, "horn");
    return enumerate_window_nat(h, x, w).size();
}

} // namespace

TEST_CASE("mode parsing")
{
    for (const char* s : {"cat", "groupoid", "strict-cat", "strict-groupoid", "n-strict:2", "n-cat:1"})
        CHECK(CheckMode::parse(s).to_string() == s);
    CHECK_THROWS_AS(CheckMode::parse("kan"), InvalidArgument);
    CHECK_THROWS_AS(CheckMode::parse("n-strict:x"), InvalidArgument);
}

TEST_CASE("horn filling examples")
{
    const auto b1 = nerve_B1(grp("Z2"));
    auto r = horn_filling(*b1, Shape{2}, 1, 1);
    CHECK(r.inner);
    CHECK(r.num_horn_maps == 4);
    CHECK(r.surjective);
    for (auto f : r.fibers)
        CHECK(f == 1);

    const auto b2 = nerve_B2_strict(grp("Z2"));
    r = horn_filling(*b2, Shape{2, 1}, 2, 0);
    CHECK_FALSE(r.inner);
    CHECK_FALSE(r.surjective);

    const auto y = std::make_shared<RepresentablePresheaf>(Shape{2});
    for (const auto& fd : faces_of(Shape{1, 1})) {
        r = horn_filling(*y, Shape{1, 1}, fd.k, fd.m);
        CHECK_FALSE(r.inner);
    }
    CHECK_THROWS_AS(horn_filling(*y, Shape{2}, 1, 3), InvalidArgument);
}

TEST_CASE("horn map counts agree with the window engine")
{
    std::vector<PresheafPtr> xs{nerve_B1(grp("Z2")), nerve_B2_strict(grp("Z2")), nerve_B2_em(grp("Z2")),
                                std::make_shared<RepresentablePresheaf>(Shape{2, 1})};
    for (const auto& x : xs)
        for (const auto& a : {Shape{1}, Shape{2}, Shape{1, 1}, Shape{2, 1}, Shape{3}})
            for (const auto& fd : faces_of(a)) {
                const auto r = horn_filling(*x, a, fd.k, fd.m);
                CHECK_MESSAGE(r.num_horn_maps == horn_maps_by_window(*x, a, fd.k, fd.m),
                              x->name() << " " << a.to_string() << " " << fd.k << ":" << fd.m);
                CHECK(fiber_total(r) == r.num_elements);
                CHECK(r.fibers.size() == r.num_horn_maps);
            }
}

TEST_CASE("representable horn records are well defined")
{
    const WindowSpec w(2, 2);
    for (const auto& c : w.shapes()) {
        const RepresentablePresheaf y(c);
        for (const auto& a : w.shapes()) {
            if (a == c)
                continue;
            for (const auto& fd : faces_of(a)) {
                const auto r = horn_filling(y, a, fd.k, fd.m);
                CHECK(r.num_elements == y.size(a));
                CHECK(fiber_total(r) == r.num_elements);
                CHECK(r.fibers.size() == r.num_horn_maps);
                const bool surj = std::all_of(r.fibers.begin(), r.fibers.end(), [](auto f) { return f > 0; });
                CHECK(surj == r.surjective);
            }
        }
    }
}

TEST_CASE("required horns per mode")
{
    const WindowSpec w(2, 3);
    const auto inner = required_horns(CheckMode::parse("cat"), w);
    const auto all = required_horns(CheckMode::parse("groupoid"), w);
    CHECK(std::all_of(inner.begin(), inner.end(), [](const auto& fd) { return fd.inner; }));
    std::size_t faces = 0, inner_faces = 0;
    for (const auto& a : w.shapes())
        for (const auto& fd : faces_of(a)) {
            ++faces;
            inner_faces += fd.inner;
        }
    CHECK(all.size() == faces);
    CHECK(inner.size() == inner_faces);
    const auto ncat = required_horns(CheckMode::parse("n-cat:1"), w);
    CHECK(std::all_of(ncat.begin(), ncat.end(), [](const auto& fd) { return fd.base.dim() <= 1 && fd.inner; }));
    CHECK(ncat.size() == 3); // t[2] (1,1), t[3] (1,1), t[3] (1,2)
}

TEST_CASE("nerves of groups are strict groupoids")
{
    const WindowSpec w(2, 3);
    for (const char* g : {"Z2", "Z3", "Z4", "V4"}) {
        const auto x = nerve_B1(grp(g));
        const auto sg = check(*x, CheckMode::parse("strict-groupoid"), w);
        const auto gp = check(*x, CheckMode::parse("groupoid"), w);
        const auto sc = check(*x, CheckMode::parse("strict-cat"), w);
        const auto ct = check(*x, CheckMode::parse("cat"), w);
        CHECK_MESSAGE(sg.passed, g);
        CHECK(sg.passed == (gp.passed && sc.passed));
        CHECK((!gp.passed || ct.passed));
        CHECK(sg.window == w);
    }
}

TEST_CASE("strict 2-nerve is a strict cat but not a groupoid")
{
    const WindowSpec w(3, 3);
    const auto x = nerve_B2_strict(grp("Z2"));
    const auto sc = check(*x, CheckMode::parse("strict-cat"), w);
    CHECK(sc.passed);
    const auto one = check(*x, CheckMode::parse("n-strict:1"), w);
    CHECK(one.passed == sc.passed);
    const auto gp = check(*x, CheckMode::parse("groupoid"), w);
    REQUIRE_FALSE(gp.passed);
    REQUIRE(gp.witness);
    const auto& r = gp.records[*gp.witness];
    CHECK(r.shape == Shape{2, 1});
    CHECK(r.k == 2);
    CHECK(r.m == 0);
    CHECK_FALSE(r.surjective);
}

TEST_CASE("groupoid implies cat on sample presheaves")
{
    const WindowSpec w(2, 2);
    std::vector<PresheafPtr> xs{nerve_B1(grp("S3")), nerve_B2_strict(grp("Z3")), nerve_B2_em(grp("Z2")),
                                std::make_shared<RepresentablePresheaf>(Shape{2}),
                                std::make_shared<RepresentablePresheaf>(Shape{1, 1}),
                                std::make_shared<TerminalPresheaf>()};
    for (const auto& x : xs) {
        const auto gp = check(*x, CheckMode::parse("groupoid"), w);
        const auto ct = check(*x, CheckMode::parse("cat"), w);
        CHECK_MESSAGE((!gp.passed || ct.passed), x->name());
    }
    CHECK(check(TerminalPresheaf(), CheckMode::parse("strict-groupoid"), w).passed);
}

TEST_CASE("parallel and serial checks agree")
{
    const WindowSpec w(2, 3);
    const auto x = nerve_B2_em(grp("Z2"));
    for (const char* mode : {"cat", "groupoid", "strict-groupoid", "n-strict:2"}) {
        const auto p = check(*x, CheckMode::parse(mode), w);
        const auto s = check_serial(*x, CheckMode::parse(mode), w);
        CHECK(p.passed == s.passed);
        CHECK(p.witness == s.witness);
        REQUIRE(p.records.size() == s.records.size());
        for (std::size_t i = 0; i < p.records.size(); ++i)
            CHECK(p.records[i].fibers == s.records[i].fibers);
    }
}

TEST_CASE("inner fibrations")
{
    const WindowSpec w(2, 2);
    const auto x = std::make_shared<CachedPresheaf>(nerve_B1(grp("Z3")));

    SUBCASE("identity")
    {
        WindowNat id;
        for (const auto& b : w.shapes()) {
            std::vector<std::size_t> lv(x->size(b));
            std::iota(lv.begin(), lv.end(), 0);
            id.levels.push_back(lv);
        }
        const auto rep = inner_fibration_check({x, x, id}, w);
        CHECK(rep.passed);
        CHECK(rep.squares > 0);
    }

    SUBCASE("map to the terminal presheaf")
    {
        const auto t = std::make_shared<TerminalPresheaf>();
        WindowNat bang;
        for (const auto& b : w.shapes())
            bang.levels.emplace_back(x->size(b), 0);
        CHECK(inner_fibration_check({x, t, bang}, w).passed);
    }

    SUBCASE("a removed filler is detected")
    {
        // The horn Λ^{1:1} ⊂ y(t[2]) is missing the filler of its own inclusion.
        const Shape a{2};
        const auto cov = WindowSpec::covering(a);
        const auto src = std::make_shared<SubPresheaf>(horn(a, 1, 1, cov).sub, "horn");
        const auto dst = std::make_shared<RepresentablePresheaf>(a);
        WindowNat incl;
        for (const auto& b : cov.shapes()) {
            std::vector<std::size_t> lv;
            const HomSet hom(b, a);
            for (std::size_t e = 0; e < src->size(b); ++e)
                lv.push_back(hom.rank(src->cell(b, e)));
            incl.levels.push_back(lv);
        }
        REQUIRE_FALSE(naturality_violation(*src, *dst, cov, incl));
        const auto rep = inner_fibration_check({src, dst, incl}, cov);
        REQUIRE_FALSE(rep.passed);
        REQUIRE(rep.failure);
        CHECK(rep.failure->shape == a);
        CHECK(rep.failure->bottom == HomSet(a, a).rank(identity_class(a)));
    }
}

TEST_CASE("the cocycle 2-nerve fills only one-dimensional horns")
{
    const auto x = nerve_B2_em(FiniteGroup::builtin("Z2"));
    const WindowSpec w(2, 3);
    CHECK(check(*x, CheckMode::parse("n-cat:1"), w).passed);
    const auto cat = check(*x, CheckMode::parse("cat"), w);
    REQUIRE(cat.witness);
    const auto& r = cat.records[*cat.witness];
    CHECK(r.shape == Shape{2, 1});
    CHECK(r.k == 1);
    CHECK(r.m == 1);
    CHECK(r.num_horn_maps == 4);
    CHECK(r.fibers == std::vector<std::size_t>{1, 0, 0, 1});
    const auto g = check(*x, CheckMode::parse("groupoid"), w);
    REQUIRE(g.witness);
    CHECK(g.records[*g.witness].shape == Shape{2, 1});
    CHECK(g.records[*g.witness].k == 1);
    CHECK(g.records[*g.witness].m == 0);
}
