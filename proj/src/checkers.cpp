#include "thetacat/checkers.hpp"

#include <exception>
#include <set>

#include "thetacat/errors.hpp"

namespace thetacat {

std::string CheckMode::to_string() const
{
    switch (kind) {
    case CheckKind::Cat: return "cat";
    case CheckKind::Groupoid: return "groupoid";
    case CheckKind::StrictCat: return "strict-cat";
    case CheckKind::StrictGroupoid: return "strict-groupoid";
    case CheckKind::NStrict: return "n-strict:" + std::to_string(n);
    case CheckKind::NCat: return "n-cat:" + std::to_string(n);
    }
    return "?";
}

CheckMode CheckMode::parse(const std::string& text)
{
    if (text == "cat")
        return {CheckKind::Cat, 0};
    if (text == "groupoid")
        return {CheckKind::Groupoid, 0};
    if (text == "strict-cat")
        return {CheckKind::StrictCat, 0};
    if (text == "strict-groupoid")
        return {CheckKind::StrictGroupoid, 0};
    for (const auto& [prefix, kind] : {std::pair<std::string, CheckKind>{"n-strict:", CheckKind::NStrict},
                                       std::pair<std::string, CheckKind>{"n-cat:", CheckKind::NCat}}) {
        if (text.rfind(prefix, 0) == 0) {
            const auto digits = text.substr(prefix.size());
            if (!digits.empty() && digits.size() <= 2 && digits.find_first_not_of("0123456789") == std::string::npos) {
                const int n = std::stoi(digits);
                if (n >= 1)
                    return {kind, n};
            }
            throw InvalidArgument("malformed mode '" + text + "' (level must be a positive integer)");
        }
    }
    throw InvalidArgument("unknown mode '" + text +
                          "' (expected cat, groupoid, strict-cat, strict-groupoid, n-strict:N, n-cat:N)");
}

HornRecord horn_filling(const Presheaf& x, const Shape& a, int k, int m, std::uint64_t budget)
{
    const auto fd = face_descriptor(a, k, m);
    HornRecord r;
    r.shape = a;
    r.k = k;
    r.m = m;
    r.inner = fd.inner;
    r.num_elements = x.size(a);
    const auto nat = enumerate_nat(a, horn_predicate(a, k, m), x, budget);
    r.num_horn_maps = nat.size();
    r.fibers.assign(nat.size(), 0);
    for (std::size_t e = 0; e < r.num_elements; ++e) {
        const auto idx = nat.find(restrict_element(nat, x, e));
        if (!idx)
            throw Error("restriction of an element of " + a.to_string() + " is not a horn map");
        ++r.fibers[*idx];
    }
    r.surjective = true;
    r.injective = true;
    for (auto c : r.fibers) {
        r.surjective = r.surjective && c >= 1;
        r.injective = r.injective && c <= 1;
    }
    return r;
}

std::vector<FaceDescriptor> required_horns(const CheckMode& mode, const WindowSpec& w)
{
    const bool all = mode.kind == CheckKind::Groupoid || mode.kind == CheckKind::StrictGroupoid;
    std::vector<FaceDescriptor> out;
    for (const auto& a : w.shapes()) {
        if (mode.kind == CheckKind::NCat && a.dim() > mode.n)
            continue;
        for (auto& fd : faces_of(a))
            if (all || fd.inner)
                out.push_back(std::move(fd));
    }
    return out;
}

bool record_passes(const CheckMode& mode, const HornRecord& r)
{
    switch (mode.kind) {
    case CheckKind::Cat:
    case CheckKind::Groupoid:
    case CheckKind::NCat:
        return r.surjective;
    case CheckKind::StrictCat:
        return r.bijective();
    case CheckKind::StrictGroupoid:
        // the horns of t[1] are single vertices; only existence is asked there
        return r.shape == Shape{1} ? r.surjective : r.bijective();
    case CheckKind::NStrict:
        return r.shape.dim() >= mode.n ? r.bijective() : r.surjective;
    }
    return false;
}

namespace {

CheckReport assemble(const Presheaf& x, const CheckMode& mode, const WindowSpec& w, std::vector<HornRecord> records)
{
    CheckReport rep;
    rep.subject = x.name();
    rep.mode = mode;
    rep.window = w;
    rep.records = std::move(records);
    for (std::size_t i = 0; i < rep.records.size(); ++i)
        if (!record_passes(mode, rep.records[i])) {
            rep.passed = false;
            rep.witness = i;
            break;
        }
    return rep;
}

PresheafPtr borrow_cached(const Presheaf& x)
{
    return cached(PresheafPtr(&x, [](const Presheaf*) {}));
}

} // namespace

CheckReport check(const Presheaf& x, const CheckMode& mode, const WindowSpec& w, std::uint64_t budget)
{
    const auto horns = required_horns(mode, w);
    const auto cx = borrow_cached(x);
    std::vector<HornRecord> records(horns.size());
    std::vector<std::exception_ptr> errors(horns.size());
    const auto n = static_cast<long>(horns.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        const auto& fd = horns[static_cast<std::size_t>(i)];
        try {
            records[static_cast<std::size_t>(i)] = horn_filling(*cx, fd.base, fd.k, fd.m, budget);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return assemble(x, mode, w, std::move(records));
}

CheckReport check_serial(const Presheaf& x, const CheckMode& mode, const WindowSpec& w, std::uint64_t budget)
{
    std::vector<HornRecord> records;
    for (const auto& fd : required_horns(mode, w))
        records.push_back(horn_filling(x, fd.base, fd.k, fd.m, budget));
    return assemble(x, mode, w, std::move(records));
}

FibrationReport inner_fibration_check(const PresheafMap& map, const WindowSpec& w, std::uint64_t budget)
{
    const auto& x = *map.source;
    const auto& y = *map.target;
    FibrationReport rep;
    for (const auto& fd : required_horns(CheckMode{CheckKind::Cat, 0}, w)) {
        const Shape& a = fd.base;
        const auto nat = enumerate_nat(a, horn_predicate(a, fd.k, fd.m), x, budget);
        const auto& phi_a = map.phi.levels[w.index_of(a)];
        std::set<std::pair<std::size_t, std::size_t>> lifts; // (horn map, φ(a))
        for (std::size_t e = 0; e < x.size(a); ++e) {
            const auto idx = nat.find(restrict_element(nat, x, e));
            if (idx)
                lifts.emplace(*idx, phi_a[e]);
        }
        for (std::size_t i = 0; i < nat.size(); ++i) {
            for (std::size_t v = 0; v < y.size(a); ++v) {
                bool commutes = true;
                for (std::size_t j = 0; j < nat.generators.size() && commutes; ++j) {
                    const auto& g = nat.generators[j];
                    const auto& level = map.phi.levels[w.index_of(g.src)];
                    commutes = level[nat.families[i][j]] == y.act(g, v);
                }
                if (!commutes)
                    continue;
                ++rep.squares;
                if (!lifts.count({i, v}) && rep.passed) {
                    rep.passed = false;
                    rep.failure = LiftingFailure{a, fd.k, fd.m, nat.families[i], v};
                }
            }
        }
    }
    return rep;
}

} // namespace thetacat
