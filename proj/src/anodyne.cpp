#include "thetacat/anodyne.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "thetacat/errors.hpp"

namespace thetacat {

namespace {

SubOfRepresentable on_window(const SubOfRepresentable& u, const WindowSpec& w)
{
    if (u.window() == w)
        return u;
    return SubOfRepresentable::from_predicate(u.base(), w, [&](const MorphismClass& c) { return u.contains(c); });
}

std::optional<MorphismClass> first_difference(const SubOfRepresentable& u, const SubOfRepresentable& v)
{
    for (std::size_t l = 0; l < u.window().size(); ++l)
        for (std::size_t r = 0; r < u.hom(l).size(); ++r)
            if (u.contains_at(l, r) != v.contains_at(l, r))
                return u.hom(l).at(r);
    return std::nullopt;
}

std::size_t count_new(const SubOfRepresentable& img, const SubOfRepresentable& cur)
{
    std::size_t n = 0;
    for (std::size_t l = 0; l < img.window().size(); ++l)
        for (std::size_t r = 0; r < img.hom(l).size(); ++r)
            n += img.contains_at(l, r) && !cur.contains_at(l, r);
    return n;
}

std::string faces_text(const std::vector<FaceDescriptor>& fs)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < fs.size(); ++i)
        os << (i ? "," : "") << "[" << fs[i].k << "," << fs[i].m << "]";
    os << "]";
    return os.str();
}

} // namespace

std::string gamma_label(const std::vector<FaceDescriptor>& gamma) { return "gamma:" + faces_text(gamma); }

CertificateReport verify_certificate(const AnodyneCertificate& cert, const WindowSpec& w)
{
    CertificateReport rep;
    auto fail = [&](std::size_t i, std::string why, std::optional<MorphismClass> cell = std::nullopt) {
        rep.passed = false;
        rep.step = i;
        rep.reason = std::move(why);
        rep.cell = std::move(cell);
        return rep;
    };
    if (!w.covers(cert.base))
        return fail(0, "window does not cover " + cert.base.to_string());
    if (cert.start.base() != cert.base || cert.end.base() != cert.base)
        return fail(0, "start or end is not a subpresheaf of the base");
    auto cur = on_window(cert.start, w);
    const auto end = on_window(cert.end, w);
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
        const auto& s = cert.steps[i];
        if (s.attach.src != s.cell || s.attach.dst != cert.base)
            return fail(i, "attaching class does not go from the cell to the base", s.attach);
        FaceDescriptor fd;
        try {
            fd = face_descriptor(s.cell, s.k, s.m);
        } catch (const InvalidArgument&) {
            return fail(i, "invalid horn index");
        }
        if (!fd.inner)
            return fail(i, "outer horn");
        if (!is_nondegenerate(s.attach))
            return fail(i, "attaching class is degenerate", s.attach);
        if (!w.covers(s.cell))
            return fail(i, "window does not cover " + s.cell.to_string());
        if (cur.contains(s.attach))
            return fail(i, "cell already present", s.attach);
        const auto pb = pullback_along(cur, s.attach);
        const auto h = horn(s.cell, s.k, s.m, w).sub;
        if (!(pb == h))
            return fail(i, "pullback differs from the horn", first_difference(pb, h));
        const auto img = image_of(s.attach, w);
        rep.added.push_back(count_new(img, cur));
        cur.unite(img);
    }
    if (!(cur == end))
        return fail(cert.steps.size(), "result differs from the end", first_difference(cur, end));
    return rep;
}

namespace {

using FaceKey = std::pair<int, int>;

struct Certifier {
    const WindowSpec& w;
    CertifyStats stats;

    static std::vector<FaceDescriptor> select(const Shape& a, const std::set<FaceKey>& keys)
    {
        std::vector<FaceDescriptor> out;
        for (auto& fd : faces_of(a))
            if (keys.count({fd.k, fd.m}))
                out.push_back(std::move(fd));
        return out;
    }

    // Faces of b whose union is v, provided v is a proper union containing every outer face.
    static std::optional<std::set<FaceKey>> admissible(const Shape& b, const std::set<FaceKey>& keys)
    {
        std::size_t n = 0;
        for (const auto& fd : faces_of(b)) {
            ++n;
            if (!fd.inner && !keys.count({fd.k, fd.m}))
                return std::nullopt;
        }
        if (keys.size() >= n)
            return std::nullopt;
        return keys;
    }

    std::optional<std::set<FaceKey>> strict_pivot(const std::vector<FaceDescriptor>& gamma,
                                                  const FaceDescriptor& b, std::string& why) const
    {
        std::set<FaceKey> keys;
        const auto fb = face_class(b);
        for (const auto& f : gamma) {
            const auto inter = pullback_along(face_sub(f, w), fb);
            const auto faces = as_union_of_faces(inter);
            if (!faces) {
                why = "F" + faces_text({f}) + " ∩ B is not a union of faces of " + b.target.to_string();
                return std::nullopt;
            }
            for (const auto& g : *faces)
                keys.emplace(g.k, g.m);
        }
        auto out = admissible(b.target, keys);
        if (!out)
            why = "intersections " + faces_text(select(b.target, keys)) + " are not a proper set containing the outer faces";
        return out;
    }

    std::optional<std::set<FaceKey>> union_pivot(const SubOfRepresentable& u, const FaceDescriptor& b) const
    {
        const auto faces = as_union_of_faces(pullback_along(u, face_class(b)));
        if (!faces)
            return std::nullopt;
        std::set<FaceKey> keys;
        for (const auto& g : *faces)
            keys.emplace(g.k, g.m);
        return admissible(b.target, keys);
    }

    std::vector<AnodyneStep> run(const Shape& a, const std::set<FaceKey>& gamma_keys)
    {
        std::vector<FaceDescriptor> missing;
        for (auto& fd : faces_of(a))
            if (!gamma_keys.count({fd.k, fd.m}))
                missing.push_back(std::move(fd));
        if (missing.size() == 1)
            return {AnodyneStep{a, identity_class(a), missing[0].k, missing[0].m}};

        const auto gamma = select(a, gamma_keys);
        std::optional<std::set<FaceKey>> sub_keys;
        const FaceDescriptor* pivot = nullptr;
        std::ostringstream report;
        for (const auto& b : missing) {
            ++stats.pivots_tried;
            std::string why;
            sub_keys = strict_pivot(gamma, b, why);
            if (sub_keys) {
                pivot = &b;
                break;
            }
            report << " B=" << faces_text({b}) << ": " << why << ";";
        }
        if (!pivot) {
            const auto u = union_of_faces(a, gamma, w);
            for (const auto& b : missing) {
                sub_keys = union_pivot(u, b);
                if (sub_keys) {
                    pivot = &b;
                    ++stats.union_fallbacks;
                    break;
                }
            }
        }
        if (!pivot)
            throw ProofShapeViolation("A=" + a.to_string() + " gamma=" + faces_text(gamma) + ":" + report.str());

        std::vector<AnodyneStep> steps;
        const auto fb = face_class(*pivot);
        for (auto& s : run(pivot->target, *sub_keys))
            steps.push_back(AnodyneStep{s.cell, compose(fb, s.attach), s.k, s.m});
        auto next = gamma_keys;
        next.emplace(pivot->k, pivot->m);
        for (auto& s : run(a, next))
            steps.push_back(std::move(s));
        return steps;
    }
};

} // namespace

AnodyneCertificate certify_union_inclusion(const Shape& a, const std::vector<FaceDescriptor>& gamma,
                                           const WindowSpec& w, CertifyStats* stats)
{
    if (!w.covers(a))
        throw WindowInsufficient(a.to_string());
    const auto all = faces_of(a);
    std::set<FaceKey> keys;
    for (const auto& f : gamma) {
        if (f.base != a || std::find(all.begin(), all.end(), f) == all.end())
            throw InvalidArgument("face " + faces_text({f}) + " is not a face of " + a.to_string());
        keys.emplace(f.k, f.m);
    }
    for (const auto& f : all)
        if (!f.inner && !keys.count({f.k, f.m}))
            throw InvalidArgument("gamma misses the outer face " + faces_text({f}) + " of " + a.to_string());
    if (keys.size() == all.size())
        throw InvalidArgument("gamma contains every face of " + a.to_string() + "; no admissible gamma is proper");

    Certifier c{w, {}};
    auto sorted = Certifier::select(a, keys);
    AnodyneCertificate cert{a,
                            gamma_label(sorted),
                            "full",
                            union_of_faces(a, sorted, w),
                            SubOfRepresentable::full(a, w),
                            c.run(a, keys)};
    if (stats)
        *stats = c.stats;
    return cert;
}

std::vector<std::vector<FaceDescriptor>> admissible_gammas(const Shape& a)
{
    std::vector<FaceDescriptor> inner;
    for (const auto& f : faces_of(a))
        if (f.inner)
            inner.push_back(f);
    std::vector<std::vector<FaceDescriptor>> out;
    if (inner.empty())
        return out;
    const std::size_t n = inner.size();
    for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << n); ++mask) {
        std::vector<FaceDescriptor> g;
        std::size_t i = 0;
        for (const auto& f : faces_of(a)) {
            if (!f.inner)
                g.push_back(f);
            else if (mask >> i++ & 1)
                g.push_back(f);
        }
        out.push_back(std::move(g));
    }
    return out;
}

std::string to_string(ProbeTarget t) { return t == ProbeTarget::Full ? "full" : "outer"; }

ProbeTarget parse_probe_target(const std::string& text)
{
    if (text == "full")
        return ProbeTarget::Full;
    if (text == "outer")
        return ProbeTarget::Outer;
    throw InvalidArgument("unknown probe target '" + text + "'");
}

namespace {

struct Candidate {
    MorphismClass cell;
    std::vector<std::pair<FaceDescriptor, SubOfRepresentable>> horns; // inner horns of cell.src
};

class Probe {
public:
    Probe(const Shape& a, ProbeTarget target, const WindowSpec& w, std::uint64_t budget, bool parallel)
        : a_(a), w_(w), budget_(budget), parallel_(parallel), start_(spine(a, w)), target_(start_)
    {
        if (target == ProbeTarget::Full) {
            target_ = SubOfRepresentable::full(a, w);
        } else {
            std::vector<FaceDescriptor> outer;
            for (const auto& f : faces_of(a))
                if (!f.inner)
                    outer.push_back(f);
            target_.unite(union_of_faces(a, outer, w));
        }
        label_ = to_string(target);
        cells_ = nondegenerate_cells(a);
        std::stable_sort(cells_.begin(), cells_.end(), [](const MorphismClass& x, const MorphismClass& y) {
            const auto kx = std::make_tuple(x.src.dim(), x.src.entry_sum());
            const auto ky = std::make_tuple(y.src.dim(), y.src.entry_sum());
            return kx != ky ? kx < ky : x < y;
        });
        for (const auto& c : cells_) {
            if (!target_.contains(c) || start_.contains(c))
                continue;
            Candidate cand{c, {}};
            for (const auto& f : faces_of(c.src))
                if (f.inner)
                    cand.horns.emplace_back(f, horn(c.src, f.k, f.m, w).sub);
            if (!cand.horns.empty())
                cands_.push_back(std::move(cand));
        }
        for (const auto& c : cells_) {
            res_.stats.target_cells += target_.contains(c);
            res_.stats.best_cells += start_.contains(c);
        }
    }

    ProbeResult run()
    {
        std::vector<AnodyneStep> path;
        const bool ok = dfs(start_, path);
        res_.stats.distinct_states = seen_.size();
        if (ok) {
            res_.found = true;
            AnodyneCertificate cert{a_, "spine", label_, start_, target_, path};
            const auto check = verify_certificate(cert, w_);
            if (!check.passed)
                throw Error("spine probe produced an invalid certificate: " + check.reason);
            res_.certificate = std::move(cert);
        }
        return res_;
    }

private:
    std::vector<char> key(const SubOfRepresentable& u) const
    {
        std::vector<char> k;
        k.reserve(cells_.size());
        for (const auto& c : cells_)
            k.push_back(u.contains(c) ? 1 : 0);
        return k;
    }

    bool dfs(const SubOfRepresentable& cur, std::vector<AnodyneStep>& path)
    {
        if (cur == target_)
            return true;
        if (res_.stats.nodes >= budget_) {
            res_.budget_exceeded = true;
            return false;
        }
        ++res_.stats.nodes;
        if (!seen_.insert(key(cur)).second)
            return false;
        res_.stats.max_depth = std::max(res_.stats.max_depth, path.size());
        std::size_t present = 0;
        for (const auto& c : cells_)
            present += cur.contains(c);
        res_.stats.best_cells = std::max(res_.stats.best_cells, present);

        // which horn of each candidate matches, evaluated independently
        const auto n = static_cast<long>(cands_.size());
        std::vector<int> match(cands_.size(), -1);
#pragma omp parallel for schedule(dynamic) if (parallel_)
        for (long i = 0; i < n; ++i) {
            const auto& cand = cands_[static_cast<std::size_t>(i)];
            if (cur.contains(cand.cell))
                continue;
            const auto pb = pullback_along(cur, cand.cell);
            for (std::size_t h = 0; h < cand.horns.size(); ++h)
                if (pb == cand.horns[h].second) {
                    match[static_cast<std::size_t>(i)] = static_cast<int>(h);
                    break;
                }
        }
        bool any = false;
        for (std::size_t i = 0; i < cands_.size(); ++i) {
            if (match[i] < 0)
                continue;
            any = true;
            const auto& cand = cands_[i];
            const auto& fd = cand.horns[static_cast<std::size_t>(match[i])].first;
            auto next = cur;
            next.unite(image_of(cand.cell, w_));
            if (!next.is_subset_of(target_))
                continue;
            path.push_back(AnodyneStep{cand.cell.src, cand.cell, fd.k, fd.m});
            if (dfs(next, path))
                return true;
            path.pop_back();
            if (res_.budget_exceeded)
                return false;
        }
        if (!any)
            ++res_.stats.dead_ends;
        return false;
    }

    Shape a_;
    WindowSpec w_;
    std::uint64_t budget_;
    bool parallel_;
    SubOfRepresentable start_;
    SubOfRepresentable target_;
    std::string label_;
    std::vector<MorphismClass> cells_;
    std::vector<Candidate> cands_;
    std::set<std::vector<char>> seen_;
    ProbeResult res_;
};

ProbeResult probe(const Shape& a, ProbeTarget target, const WindowSpec& w, std::uint64_t budget, bool parallel)
{
    if (!w.covers(a))
        throw WindowInsufficient(a.to_string());
    return Probe(a, target, w, budget, parallel).run();
}

} // namespace

ProbeResult spine_probe(const Shape& a, ProbeTarget target, const WindowSpec& w, std::uint64_t budget)
{
    return probe(a, target, w, budget, true);
}

ProbeResult spine_probe_serial(const Shape& a, ProbeTarget target, const WindowSpec& w, std::uint64_t budget)
{
    return probe(a, target, w, budget, false);
}

} // namespace thetacat
