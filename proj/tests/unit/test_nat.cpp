#include <random>
#include <set>

#include "doctest.h"
#include "thetacat/errors.hpp"
#include "thetacat/nat.hpp"
#include "thetacat/nerves.hpp"

using namespace thetacat;

namespace {

std::vector<PresheafPtr> sample_presheaves()
{
    return {std::make_shared<RepresentablePresheaf>(Shape{2, 1}), nerve_B1(FiniteGroup::builtin("Z2")),
            nerve_B2_strict(FiniteGroup::builtin("Z2")), nerve_B2_em(FiniteGroup::builtin("Z2"))};
}

} // namespace

TEST_CASE("Yoneda through generators")
{
    for (const auto& x : sample_presheaves()) {
        for (const auto& a : WindowSpec(2, 2).shapes()) {
            const auto w = WindowSpec::covering(a);
            const auto nat = enumerate_nat(SubOfRepresentable::full(a, w), *x);
            REQUIRE(nat.generators.size() == 1);
            CHECK(nat.generators[0] == identity_class(a));
            CHECK(nat.size() == x->size(a));
            for (std::size_t e = 0; e < x->size(a); ++e)
                CHECK(nat.find(restrict_element(nat, *x, e)) == e);
        }
    }
}

TEST_CASE("Yoneda through the window engine")
{
    for (const auto& x : sample_presheaves()) {
        for (const auto& a : {Shape{}, Shape{1}, Shape{2}, Shape{1, 1}, Shape{2, 1}}) {
            const auto w = WindowSpec::covering(a);
            const RepresentablePresheaf ya(a);
            const auto nat = enumerate_window_nat(ya, *x, w);
            std::set<WindowNat> expect;
            for (std::size_t e = 0; e < x->size(a); ++e)
                expect.insert(yoneda_map(a, *x, e, w));
            CHECK_MESSAGE(std::set<WindowNat>(nat.maps.begin(), nat.maps.end()) == expect, x->name() << " " << a.to_string());
        }
    }
}

TEST_CASE("maps out of the boundary of the interval are pairs of points")
{
    const Shape t1{1};
    const auto w = WindowSpec::covering(t1);
    for (const auto& x : sample_presheaves()) {
        const auto nat = enumerate_nat(boundary(t1, w), *x);
        const auto p = x->size(Shape{});
        CHECK(nat.size() == p * p);
    }
    const auto y3 = std::make_shared<RepresentablePresheaf>(Shape{3});
    CHECK(enumerate_nat(boundary(t1, w), *y3).size() == 16);
}

TEST_CASE("inner horn of the triangle into B1(Z2)")
{
    const Shape t2{2};
    const auto w = WindowSpec::covering(t2);
    const auto x = nerve_B1(FiniteGroup::builtin("Z2"));
    const auto nat = enumerate_nat(horn(t2, 1, 1, w).sub, *x);
    CHECK(nat.size() == 4);
    std::set<std::size_t> hit;
    for (std::size_t e = 0; e < x->size(t2); ++e) {
        const auto f = nat.find(restrict_element(nat, *x, e));
        REQUIRE(f.has_value());
        hit.insert(*f);
    }
    CHECK(hit.size() == 4);
}

TEST_CASE("budget exhaustion carries the partial count")
{
    const Shape t2{2};
    const auto w = WindowSpec::covering(t2);
    const auto x = std::make_shared<RepresentablePresheaf>(Shape{3, 3});
    try {
        enumerate_nat(boundary(t2, w), *x, 5);
        FAIL("expected budget exhaustion");
    } catch (const BudgetExceeded& e) {
        CHECK(e.partial <= 5);
        CHECK(std::string(e.what()).find("budget exceeded") == 0);
    }
    CHECK_THROWS_AS(enumerate_window_nat(RepresentablePresheaf(Shape{2}), *x, WindowSpec(2, 2), 3), BudgetExceeded);
}

TEST_CASE("property: families stay natural outside the core window")
{
    std::mt19937 rng(7);
    const auto big = WindowSpec(3, 4).shapes();
    for (const auto& x : sample_presheaves()) {
        for (const auto& a : {Shape{2}, Shape{2, 1}, Shape{1, 2}}) {
            const auto core = WindowSpec::covering(a);
            for (const auto& fd : faces_of(a)) {
                const auto pred = horn_predicate(a, fd.k, fd.m);
                const auto nat = enumerate_nat(a, pred, *x);
                for (std::size_t fam = 0; fam < nat.size(); ++fam) {
                    int sampled = 0;
                    while (sampled < 50) {
                        const auto& bp = big[rng() % big.size()];
                        const auto& b = big[rng() % big.size()];
                        if (core.contains(b))
                            continue;
                        const HomSet cells(bp, a), maps(b, bp);
                        const auto u = cells.at(rng() % cells.size());
                        if (!pred(u))
                            continue;
                        const auto f = maps.at(rng() % maps.size());
                        ++sampled;
                        CHECK(evaluate(nat, fam, *x, compose(u, f)) == x->act(f, evaluate(nat, fam, *x, u)));
                    }
                }
            }
        }
    }
}

TEST_CASE("extension is full and faithful on small instances")
{
    const auto xn = truncate(nerve_B1(FiniteGroup::builtin("Z2")), 1);
    const auto yn = truncate(nerve_B2_em(FiniteGroup::builtin("Z2")), 1);
    const auto zn = truncate(std::make_shared<RepresentablePresheaf>(Shape{2}), 1);
    const WindowSpec w1(1, 3), w2(2, 3);
    for (const auto& [p, q] : std::vector<std::pair<PresheafPtr, PresheafPtr>>{{xn, yn}, {zn, xn}, {xn, zn}}) {
        const auto small = enumerate_window_nat(*p, *q, w1);
        const auto large = enumerate_window_nat(*extend(p, 1), *extend(q, 1), w2);
        CHECK(small.size() == large.size());
        std::set<WindowNat> restricted;
        for (const auto& m : large.maps) {
            WindowNat r;
            for (const auto& b : w1.shapes())
                r.levels.push_back(m.levels[w2.index_of(b)]);
            restricted.insert(r);
        }
        CHECK(std::set<WindowNat>(small.maps.begin(), small.maps.end()) == restricted);
    }
}

TEST_CASE("window families satisfy naturality on every morphism")
{
    const auto x = nerve_B1(FiniteGroup::builtin("Z2"));
    const auto y = nerve_B2_em(FiniteGroup::builtin("Z2"));
    const WindowSpec w(2, 3);
    const auto nat = enumerate_window_nat(*x, *y, w);
    CHECK(nat.size() == 2);
    for (const auto& m : nat.maps)
        CHECK(!naturality_violation(*x, *y, w, m));
    auto bad = nat.maps[1];
    auto& v = bad.levels[w.index_of(Shape{2})][3];
    v = (v + 1) % 2;
    CHECK(naturality_violation(*x, *y, w, bad).has_value());
}
