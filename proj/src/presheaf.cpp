#include "thetacat/presheaf.hpp"

#include <algorithm>

#include "thetacat/errors.hpp"

namespace thetacat {

std::size_t RepresentablePresheaf::act(const MorphismClass& f, std::size_t x) const
{
    const HomSet from(f.dst, c_);
    const HomSet to(f.src, c_);
    return to.rank(compose(from.at(x), f));
}

SubPresheaf::SubPresheaf(SubOfRepresentable sub, std::string label)
    : sub_(std::move(sub)), label_(std::move(label))
{
}

const SubPresheaf::Level& SubPresheaf::level(const Shape& b) const
{
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = levels_.find(b);
    if (it != levels_.end())
        return *it->second;
    auto lv = std::make_unique<Level>();
    const HomSet hom(b, sub_.base());
    if (sub_.window().contains(b)) {
        const std::size_t li = sub_.window().index_of(b);
        for (std::size_t r = 0; r < hom.size(); ++r)
            if (sub_.contains_at(li, r))
                lv->ranks.push_back(r);
    } else {
        for (std::size_t r = 0; r < hom.size(); ++r)
            if (sub_.contains(hom.at(r)))
                lv->ranks.push_back(r);
    }
    for (std::size_t i = 0; i < lv->ranks.size(); ++i)
        lv->index.emplace(lv->ranks[i], i);
    auto& ref = *lv;
    levels_.emplace(b, std::move(lv));
    return ref;
}

MorphismClass SubPresheaf::cell(const Shape& b, std::size_t x) const
{
    const auto& lv = level(b);
    if (x >= lv.ranks.size())
        throw InvalidArgument("element " + std::to_string(x) + " out of range at " + b.to_string());
    return HomSet(b, sub_.base()).at(lv.ranks[x]);
}

std::size_t SubPresheaf::index_of(const MorphismClass& c) const
{
    const auto& lv = level(c.src);
    auto it = lv.index.find(HomSet(c.src, sub_.base()).rank(c));
    if (it == lv.index.end())
        throw InvalidArgument("cell " + c.to_string() + " not in " + label_);
    return it->second;
}

std::size_t SubPresheaf::act(const MorphismClass& f, std::size_t x) const
{
    return index_of(compose(cell(f.dst, x), f));
}

std::size_t ProductPresheaf::act(const MorphismClass& f, std::size_t x) const
{
    const auto [i, j] = split(f.dst, x);
    return pair(f.src, x_->act(f, i), y_->act(f, j));
}

int ProductPresheaf::max_dim() const
{
    const int a = x_->max_dim();
    const int b = y_->max_dim();
    if (a < 0)
        return b;
    if (b < 0)
        return a;
    return std::min(a, b);
}

std::pair<std::size_t, std::size_t> ProductPresheaf::split(const Shape& b, std::size_t x) const
{
    const std::size_t ny = y_->size(b);
    return {x / ny, x % ny};
}

TablePresheaf::TablePresheaf(std::string label, WindowSpec window)
    : label_(std::move(label)), window_(std::move(window)), sizes_(window_.size(), 0)
{
}

std::size_t TablePresheaf::size(const Shape& b) const
{
    if (!window_.contains(b))
        throw WindowInsufficient(b.to_string() + " outside the table window of " + label_);
    return sizes_[window_.index_of(b)];
}

void TablePresheaf::set_size(const Shape& b, std::size_t n)
{
    sizes_[window_.index_of(b)] = n;
}

void TablePresheaf::set_action(const MorphismClass& f, std::vector<std::size_t> table)
{
    if (table.size() != size(f.dst))
        throw InvalidArgument("action table for " + f.to_string() + " has wrong length");
    const std::size_t n = size(f.src);
    for (auto v : table)
        if (v >= n)
            throw InvalidArgument("action table for " + f.to_string() + " leaves the level");
    actions_[f] = std::move(table);
}

std::vector<std::size_t>& TablePresheaf::mutable_action(const MorphismClass& f)
{
    auto it = actions_.find(f);
    if (it == actions_.end())
        throw InvalidArgument("no action table for " + f.to_string());
    return it->second;
}

std::size_t TablePresheaf::act(const MorphismClass& f, std::size_t x) const
{
    auto it = actions_.find(f);
    if (it == actions_.end()) {
        if (f.src == f.dst && f == identity_class(f.src))
            return x;
        throw WindowInsufficient("no action table for " + f.to_string() + " in " + label_);
    }
    return it->second.at(x);
}

std::vector<MorphismClass> window_morphisms(const WindowSpec&, const Shape& src, const Shape& dst)
{
    return enumerate_hom(src, dst);
}

std::shared_ptr<TablePresheaf> tabulate(const Presheaf& x, const WindowSpec& w)
{
    auto t = std::make_shared<TablePresheaf>(x.name(), w);
    for (const auto& b : w.shapes())
        t->set_size(b, x.size(b));
    for (const auto& b : w.shapes()) {
        for (const auto& c : w.shapes()) {
            const HomSet hom(b, c);
            const std::size_t n = t->size(c);
            for (std::size_t r = 0; r < hom.size(); ++r) {
                const auto f = hom.at(r);
                std::vector<std::size_t> table(n);
                for (std::size_t e = 0; e < n; ++e)
                    table[e] = x.act(f, e);
                t->set_action(f, std::move(table));
            }
        }
    }
    return t;
}

std::size_t CachedPresheaf::size(const Shape& b) const
{
    {
        std::shared_lock lock(mutex_);
        auto it = sizes_.find(b);
        if (it != sizes_.end())
            return it->second;
    }
    const std::size_t n = x_->size(b);
    std::unique_lock lock(mutex_);
    sizes_.emplace(b, n);
    return n;
}

const std::vector<std::size_t>& CachedPresheaf::table(const MorphismClass& f) const
{
    {
        std::shared_lock lock(mutex_);
        auto it = tables_.find(f);
        if (it != tables_.end())
            return *it->second;
    }
    auto t = std::make_unique<std::vector<std::size_t>>(size(f.dst));
    for (std::size_t e = 0; e < t->size(); ++e)
        (*t)[e] = x_->act(f, e);
    std::unique_lock lock(mutex_);
    auto [it, inserted] = tables_.emplace(f, std::move(t));
    return *it->second;
}

std::size_t CachedPresheaf::act(const MorphismClass& f, std::size_t x) const
{
    return table(f).at(x);
}

PresheafPtr cached(PresheafPtr x)
{
    return std::make_shared<CachedPresheaf>(std::move(x));
}

std::size_t TruncatedPresheaf::size(const Shape& b) const
{
    if (b.dim() > n_)
        throw InvalidArgument(b.to_string() + " has dimension above " + std::to_string(n_));
    return x_->size(b);
}

std::size_t TruncatedPresheaf::act(const MorphismClass& f, std::size_t x) const
{
    if (f.src.dim() > n_ || f.dst.dim() > n_)
        throw InvalidArgument(f.to_string() + " leaves dimension " + std::to_string(n_));
    return x_->act(f, x);
}

Shape project_shape(const Shape& b, int n)
{
    if (b.dim() <= n)
        return b;
    return Shape(std::vector<int>(b.entries().begin(), b.entries().begin() + n));
}

MorphismClass project_class(const MorphismClass& f, int n)
{
    if (n < 0)
        throw InvalidArgument("projection level must be >= 0");
    MorphismClass p;
    p.src = project_shape(f.src, n);
    p.dst = project_shape(f.dst, n);
    if (f.degree() <= n) {
        p.components = f.components;
        return p;
    }
    p.components.assign(f.components.begin(), f.components.begin() + n);
    p.components.push_back(MonotoneMap::constant(p.src.entry(n + 1), p.dst.entry(n + 1), 0));
    return p;
}

std::size_t ExtendedPresheaf::size(const Shape& b) const
{
    return xn_->size(project_shape(b, n_));
}

std::size_t ExtendedPresheaf::act(const MorphismClass& f, std::size_t x) const
{
    return xn_->act(project_class(f, n_), x);
}

PresheafPtr truncate(PresheafPtr x, int n)
{
    if (n < 0)
        throw InvalidArgument("truncation level must be >= 0");
    return std::make_shared<TruncatedPresheaf>(std::move(x), n);
}

PresheafPtr extend(PresheafPtr xn, int n)
{
    if (n < 0)
        throw InvalidArgument("extension level must be >= 0");
    return std::make_shared<ExtendedPresheaf>(std::move(xn), n);
}

namespace {

struct FunctorialityPlan {
    const WindowSpec* w;
    std::vector<std::vector<MorphismClass>> out;   // per level: morphisms g out of it
    std::vector<std::pair<std::size_t, std::size_t>> items; // (src level, mid level) of f
};

FunctorialityPlan plan_functoriality(const WindowSpec& w, FunctorialityScope scope)
{
    FunctorialityPlan p;
    p.w = &w;
    p.out.resize(w.size());
    if (scope == FunctorialityScope::Generators) {
        for (const auto& big : w.shapes())
            for (const auto& fd : faces_of(big))
                if (w.contains(fd.target))
                    p.out[w.index_of(fd.target)].push_back(face_class(fd));
        for (std::size_t i = 0; i < w.size(); ++i)
            for (auto& s : elementary_degeneracies(w.shapes()[i]))
                if (w.contains(s.dst))
                    p.out[i].push_back(std::move(s));
        for (auto& v : p.out)
            std::sort(v.begin(), v.end());
    } else {
        for (std::size_t i = 0; i < w.size(); ++i)
            for (const auto& c : w.shapes())
                for (auto& g : enumerate_hom(w.shapes()[i], c))
                    p.out[i].push_back(std::move(g));
    }
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j)
            p.items.emplace_back(i, j);
    return p;
}

struct ItemResult {
    std::uint64_t checks = 0;
    std::optional<FunctorialityViolation> violation;
};

ItemResult run_item(const Presheaf& x, const FunctorialityPlan& p, std::size_t item)
{
    ItemResult res;
    const auto [i, j] = p.items[item];
    const Shape& b = p.w->shapes()[i];
    const Shape& mid = p.w->shapes()[j];
    const HomSet hom(b, mid);
    for (std::size_t r = 0; r < hom.size(); ++r) {
        const auto f = hom.at(r);
        if (i == j && f == identity_class(b)) {
            for (std::size_t e = 0; e < x.size(b); ++e) {
                ++res.checks;
                const auto v = x.act(f, e);
                if (v != e) {
                    res.violation = FunctorialityViolation{f, f, e, e, v};
                    return res;
                }
            }
        }
        for (const auto& g : p.out[j]) {
            const auto gf = compose(g, f);
            const std::size_t n = x.size(g.dst);
            for (std::size_t e = 0; e < n; ++e) {
                ++res.checks;
                const auto lhs = x.act(gf, e);
                const auto rhs = x.act(f, x.act(g, e));
                if (lhs != rhs) {
                    res.violation = FunctorialityViolation{f, g, e, lhs, rhs};
                    return res;
                }
            }
        }
    }
    return res;
}

FunctorialityReport assemble(std::vector<ItemResult>& results)
{
    FunctorialityReport rep;
    for (auto& r : results) {
        rep.checks += r.checks;
        if (r.violation && !rep.violation) {
            rep.passed = false;
            rep.violation = r.violation;
        }
    }
    return rep;
}

} // namespace

FunctorialityReport check_functoriality(const Presheaf& x, const WindowSpec& w, FunctorialityScope scope)
{
    const auto plan = plan_functoriality(w, scope);
    std::vector<ItemResult> results(plan.items.size());
    const auto n = static_cast<long>(plan.items.size());
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (long t = 0; t < n; ++t) {
        try {
            results[static_cast<std::size_t>(t)] = run_item(x, plan, static_cast<std::size_t>(t));
        } catch (...) {
#pragma omp critical
            if (!err)
                err = std::current_exception();
        }
    }
    if (err)
        std::rethrow_exception(err);
    return assemble(results);
}

FunctorialityReport check_functoriality_serial(const Presheaf& x, const WindowSpec& w, FunctorialityScope scope)
{
    const auto plan = plan_functoriality(w, scope);
    std::vector<ItemResult> results;
    results.reserve(plan.items.size());
    for (std::size_t t = 0; t < plan.items.size(); ++t)
        results.push_back(run_item(x, plan, t));
    return assemble(results);
}

} // namespace thetacat
