#include "doctest.h"
#include "thetacat/anodyne.hpp"
#include "thetacat/errors.hpp"

using namespace thetacat;

namespace {

std::vector<FaceDescriptor> pick(const Shape& a, std::vector<std::pair<int, int>> keys)
{
    std::vector<FaceDescriptor> out;
    for (auto [k, m] : keys)
        out.push_back(face_descriptor(a, k, m));
    return out;
}

std::vector<FaceDescriptor> outer_faces(const Shape& a)
{
    std::vector<FaceDescriptor> out;
    for (const auto& f : faces_of(a))
        if (!f.inner)
            out.push_back(f);
    return out;
}

AnodyneCertificate single_step(const Shape& a, int k, int m, const WindowSpec& w)
{
    return AnodyneCertificate{a,
                              "gamma",
                              "full",
                              horn(a, k, m, w).sub,
                              SubOfRepresentable::full(a, w),
                              {AnodyneStep{a, identity_class(a), k, m}}};
}

} // namespace

TEST_CASE("verify certificate examples")
{
    const Shape t2{2};
    const auto w = WindowSpec::covering(t2);
    auto cert = single_step(t2, 1, 1, w);
    CHECK(cert.start == spine(t2, w));
    const auto rep = verify_certificate(cert, w);
    CHECK(rep.passed);
    REQUIRE(rep.added.size() == 1);
    CHECK(rep.added[0] > 0);

    cert.steps[0].m = 0;
    const auto outer = verify_certificate(cert, w);
    CHECK_FALSE(outer.passed);
    CHECK(outer.reason == "outer horn");

    const auto b = boundary(t2, w);
    CHECK(verify_certificate(AnodyneCertificate{t2, "gamma", "gamma", b, b, {}}, w).passed);
}

TEST_CASE("verify certificate rejects faulty steps")
{
    const Shape t3{3};
    const auto w = WindowSpec::covering(t3);
    const auto good = certify_union_inclusion(t3, outer_faces(t3), w);
    REQUIRE(verify_certificate(good, w).passed);

    auto swapped = good;
    std::swap(swapped.steps[0], swapped.steps[1]);
    auto rep = verify_certificate(swapped, w);
    CHECK_FALSE(rep.passed);
    CHECK(rep.step == 0u);

    auto doubled = good;
    doubled.steps.insert(doubled.steps.begin(), good.steps[0]);
    rep = verify_certificate(doubled, w);
    CHECK_FALSE(rep.passed);
    CHECK(rep.step == 1u);
    CHECK(rep.reason == "cell already present");

    auto wrong_horn = good;
    wrong_horn.steps.back().m = wrong_horn.steps.back().m == 1 ? 2 : 1;
    rep = verify_certificate(wrong_horn, w);
    CHECK_FALSE(rep.passed);
    CHECK(rep.reason == "pullback differs from the horn");
    CHECK(rep.cell.has_value());

    auto short_cert = good;
    short_cert.steps.pop_back();
    rep = verify_certificate(short_cert, w);
    CHECK_FALSE(rep.passed);
    CHECK(rep.step == short_cert.steps.size());

    auto bad_index = good;
    bad_index.steps[0].k = 2;
    CHECK(verify_certificate(bad_index, w).reason == "invalid horn index");

    auto degenerate = good;
    degenerate.steps[0].cell = Shape{3};
    degenerate.steps[0].attach = MorphismClass::make(Shape{3}, Shape{3}, {MonotoneMap::from_values(3, 3, {0, 1, 1, 2}), MonotoneMap::constant(0, 0, 0)});
    CHECK(verify_certificate(degenerate, w).reason == "attaching class is degenerate");
}

TEST_CASE("union-of-faces certificates")
{
    const Shape t3{3};
    auto w = WindowSpec::covering(t3);
    auto cert = certify_union_inclusion(t3, pick(t3, {{1, 0}, {1, 3}}), w);
    CHECK(verify_certificate(cert, w).passed);
    REQUIRE(cert.steps.size() == 2);
    CHECK(cert.steps[0].cell == Shape{2});
    CHECK(cert.steps.back().cell == t3);
    CHECK(cert.steps.back().attach == identity_class(t3));
    CHECK(cert.start_label == "gamma:[[1,0],[1,3]]");

    const Shape t2{2};
    w = WindowSpec::covering(t2);
    cert = certify_union_inclusion(t2, pick(t2, {{1, 0}, {1, 2}}), w);
    REQUIRE(cert.steps.size() == 1);
    CHECK(cert.steps[0].k == 1);
    CHECK(cert.steps[0].m == 1);

    CHECK_THROWS_AS(certify_union_inclusion(Shape{1, 1}, faces_of(Shape{1, 1}), WindowSpec(2, 1)), InvalidArgument);
    CHECK(admissible_gammas(Shape{1, 1}).empty());
    CHECK_THROWS_AS(certify_union_inclusion(t3, pick(t3, {{1, 0}}), WindowSpec::covering(t3)), InvalidArgument);
    CHECK_THROWS_AS(certify_union_inclusion(t3, faces_of(t3), WindowSpec::covering(t3)), InvalidArgument);
}

TEST_CASE("every admissible union of faces is certified")
{
    const WindowSpec w(2, 3);
    std::size_t cases = 0;
    for (const auto& a : w.shapes())
        for (const auto& g : admissible_gammas(a)) {
            ++cases;
            CertifyStats st;
            AnodyneCertificate cert = [&] {
                try {
                    return certify_union_inclusion(a, g, w, &st);
                } catch (const ProofShapeViolation& e) {
                    FAIL(e.what());
                    throw;
                }
            }();
            const auto rep = verify_certificate(cert, w);
            CHECK_MESSAGE(rep.passed, a.to_string() << " " << gamma_label(g) << " " << rep.reason);
            for (auto n : rep.added)
                CHECK(n > 0);
        }
    CHECK(cases == 44);
}

TEST_CASE("each step attaches a cell and its missing face")
{
    const WindowSpec w(3, 2);
    for (const auto& a : w.shapes())
        for (const auto& g : admissible_gammas(a)) {
            const auto cert = certify_union_inclusion(a, g, w);
            std::size_t missing = 0;
            for (const auto& c : nondegenerate_cells(a))
                missing += !cert.start.contains(c);
            CHECK(missing == 2 * cert.steps.size());
            const auto rep = verify_certificate(cert, w);
            CHECK(rep.passed);
            for (auto n : rep.added)
                CHECK(n > 0);
        }
    // the recursion doubles with every inner face beyond the first
    for (int n = 2; n <= 5; ++n) {
        const Shape a{n};
        const auto cert = certify_union_inclusion(a, outer_faces(a), WindowSpec::covering(a));
        CHECK(cert.steps.size() == std::size_t{1} << (n - 2));
    }
}

TEST_CASE("spine probe")
{
    auto run = [](const Shape& a, ProbeTarget t) {
        const auto w = WindowSpec::covering(a);
        const auto r = spine_probe(a, t, w);
        REQUIRE(r.found);
        REQUIRE(r.certificate);
        CHECK(verify_certificate(*r.certificate, w).passed);
        const auto s = spine_probe_serial(a, t, w);
        REQUIRE(s.certificate);
        CHECK(s.certificate->steps.size() == r.certificate->steps.size());
        for (std::size_t i = 0; i < s.certificate->steps.size(); ++i)
            CHECK(s.certificate->steps[i].attach == r.certificate->steps[i].attach);
        return r.certificate->steps.size();
    };
    CHECK(run(Shape{2}, ProbeTarget::Full) == 1);
    // classical: spine of a 3-simplex needs two triangles, the third triangle, then the tetrahedron
    CHECK(run(Shape{3}, ProbeTarget::Full) == 4);
    CHECK(run(Shape{2, 1}, ProbeTarget::Outer) == 2);
    CHECK(run(Shape{1, 1, 1}, ProbeTarget::Full) == 0);
    CHECK(run(Shape{1, 1, 1}, ProbeTarget::Outer) == 0);
    CHECK(run(Shape{2, 2}, ProbeTarget::Outer) == 7);

    const auto tiny = spine_probe(Shape{2, 2}, ProbeTarget::Full, WindowSpec::covering(Shape{2, 2}), 2);
    CHECK(tiny.budget_exceeded);
    CHECK_FALSE(tiny.found);
    CHECK(tiny.stats.nodes == 2);
    CHECK(parse_probe_target("outer") == ProbeTarget::Outer);
    CHECK_THROWS_AS(parse_probe_target("half"), InvalidArgument);
}
