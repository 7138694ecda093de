#include "thetacat/json_io.hpp"

#include "thetacat/errors.hpp"

namespace thetacat {

namespace {

const Json& need(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw InvalidArgument(std::string("missing JSON field '") + key + "'");
    return j.at(key);
}

int as_int(const Json& j, const char* what)
{
    if (!j.is_number_integer())
        throw InvalidArgument(std::string("expected an integer for ") + what + ", got " + j.dump());
    return j.get<int>();
}

std::vector<FaceDescriptor> faces_from_label(const Shape& base, const std::string& list)
{
    Json arr;
    try {
        arr = Json::parse(list);
    } catch (const Json::parse_error&) {
        throw InvalidArgument("malformed face list '" + list + "'");
    }
    if (!arr.is_array())
        throw InvalidArgument("malformed face list '" + list + "'");
    std::vector<FaceDescriptor> out;
    for (const auto& p : arr) {
        if (!p.is_array() || p.size() != 2)
            throw InvalidArgument("malformed face '" + p.dump() + "'");
        out.push_back(face_descriptor(base, as_int(p[0], "k"), as_int(p[1], "m")));
    }
    return out;
}

SubOfRepresentable sub_from_label(const Shape& base, const std::string& label, const WindowSpec& w)
{
    if (label == "spine")
        return spine(base, w);
    if (label == "full")
        return SubOfRepresentable::full(base, w);
    if (label == "outer") {
        auto u = spine(base, w);
        std::vector<FaceDescriptor> outer;
        for (const auto& f : faces_of(base))
            if (!f.inner)
                outer.push_back(f);
        return u.unite(union_of_faces(base, outer, w));
    }
    if (label.rfind("gamma:", 0) == 0)
        return union_of_faces(base, faces_from_label(base, label.substr(6)), w);
    throw InvalidArgument("unknown subpresheaf label '" + label + "'");
}

} // namespace

Json to_json(const Shape& s) { return Json(s.entries()); }

Shape shape_from_json(const Json& j)
{
    if (j.is_string())
        return Shape::parse(j.get<std::string>());
    if (!j.is_array())
        throw InvalidArgument("expected a shape, got " + j.dump());
    std::vector<int> e;
    for (const auto& x : j)
        e.push_back(as_int(x, "a shape entry"));
    return Shape(e);
}

Json to_json(const WindowSpec& w) { return Json{{"max_dim", w.max_dim()}, {"max_entry", w.max_entry()}}; }

WindowSpec window_from_json(const Json& j)
{
    return WindowSpec(as_int(need(j, "max_dim"), "max_dim"), as_int(need(j, "max_entry"), "max_entry"));
}

Json to_json(const MorphismClass& f)
{
    Json comps = Json::array();
    for (const auto& c : f.components)
        comps.push_back(c.values);
    return Json{{"src", to_json(f.src)}, {"dst", to_json(f.dst)}, {"components", comps}};
}

MorphismClass class_from_json(const Json& j)
{
    const auto src = shape_from_json(need(j, "src"));
    const auto dst = shape_from_json(need(j, "dst"));
    std::vector<MonotoneMap> comps;
    int k = 1;
    for (const auto& c : need(j, "components")) {
        std::vector<int> v;
        for (const auto& x : c)
            v.push_back(as_int(x, "a component value"));
        comps.push_back(MonotoneMap::from_values(src.entry(k), dst.entry(k), v));
        ++k;
    }
    return MorphismClass::make(src, dst, comps);
}

Json to_json(const FaceDescriptor& fd)
{
    return Json{{"k", fd.k}, {"m", fd.m}, {"inner", fd.inner}, {"target", to_json(fd.target)}};
}

Json to_json(const SubOfRepresentable& u)
{
    Json gens = Json::array();
    for (const auto& g : maximal_cells(u.base(), [&](const MorphismClass& c) { return u.contains(c); }))
        gens.push_back(to_json(g));
    return Json{{"base", to_json(u.base())}, {"window", to_json(u.window())}, {"generators", gens}};
}

SubOfRepresentable sub_from_json(const Json& j)
{
    const auto base = shape_from_json(need(j, "base"));
    const auto w = window_from_json(need(j, "window"));
    SubOfRepresentable u(base, w);
    for (const auto& g : need(j, "generators")) {
        const auto c = class_from_json(g);
        if (c.dst != base)
            throw InvalidArgument("generator " + c.to_string() + " does not land in " + base.to_string());
        u.unite(image_of(c, w));
    }
    return u;
}

Json to_json(const AnodyneCertificate& c)
{
    Json steps = Json::array();
    for (const auto& s : c.steps)
        steps.push_back(Json{{"shape", to_json(s.cell)}, {"class", to_json(s.attach)}, {"horn", {s.k, s.m}}});
    return Json{{"base", to_json(c.base)}, {"start", c.start_label}, {"end", c.end_label}, {"steps", steps}};
}

AnodyneCertificate certificate_from_json(const Json& j, const WindowSpec& w)
{
    AnodyneCertificate c{shape_from_json(need(j, "base")), need(j, "start").get<std::string>(),
                         j.contains("end") ? j.at("end").get<std::string>() : std::string("full"),
                         SubOfRepresentable(Shape{}, WindowSpec(0, 1)), SubOfRepresentable(Shape{}, WindowSpec(0, 1)),
                         {}};
    if (!w.covers(c.base))
        throw WindowInsufficient(c.base.to_string());
    c.start = sub_from_label(c.base, c.start_label, w);
    c.end = sub_from_label(c.base, c.end_label, w);
    for (const auto& s : need(j, "steps")) {
        const auto& h = need(s, "horn");
        if (!h.is_array() || h.size() != 2)
            throw InvalidArgument("malformed horn index " + h.dump());
        c.steps.push_back(AnodyneStep{shape_from_json(need(s, "shape")), class_from_json(need(s, "class")),
                                      as_int(h[0], "k"), as_int(h[1], "m")});
    }
    return c;
}

Json to_json(const CertificateReport& r)
{
    Json j{{"passed", r.passed}, {"added", r.added}};
    if (!r.passed) {
        j["step"] = r.step ? Json(*r.step) : Json();
        j["reason"] = r.reason;
        j["cell"] = r.cell ? to_json(*r.cell) : Json();
    }
    return j;
}

Json to_json(const ProbeStats& s)
{
    return Json{{"nodes", s.nodes},           {"distinct_states", s.distinct_states}, {"dead_ends", s.dead_ends},
                {"max_depth", s.max_depth},   {"best_cells", s.best_cells},           {"target_cells", s.target_cells}};
}

Json to_json(const HornRecord& r)
{
    return Json{{"shape", to_json(r.shape)},
                {"horn", {r.k, r.m}},
                {"inner", r.inner},
                {"elements", r.num_elements},
                {"horn_maps", r.num_horn_maps},
                {"fibers", r.fibers},
                {"surjective", r.surjective},
                {"injective", r.injective}};
}

Json to_json(const CheckReport& r)
{
    Json recs = Json::array();
    for (const auto& h : r.records)
        recs.push_back(to_json(h));
    return Json{{"subject", r.subject},
                {"mode", r.mode.to_string()},
                {"window", to_json(r.window)},
                {"passed", r.passed},
                {"witness", r.witness ? to_json(r.records[*r.witness]) : Json()},
                {"records", recs}};
}

Json to_json(const FibrationReport& r)
{
    Json j{{"passed", r.passed}, {"squares", r.squares}};
    if (r.failure)
        j["failure"] = Json{{"shape", to_json(r.failure->shape)},
                            {"horn", {r.failure->k, r.failure->m}},
                            {"horn_values", r.failure->horn_values},
                            {"bottom", r.failure->bottom}};
    return j;
}

Json to_json(const Cocycle2& f) { return Json(f.table); }

Json to_json(const CohomologyCount& c)
{
    return Json{{"cocycles", c.cocycles}, {"coboundaries", c.coboundaries}, {"classes", c.classes}};
}

Json to_json(const HomotopyReport& r)
{
    Json cocycles = Json::array();
    for (const auto& f : r.cocycles)
        cocycles.push_back(to_json(f));
    Json rel = Json::array();
    for (const auto& [p, q] : r.relation)
        rel.push_back({p, q});
    return Json{{"group", r.group},
                {"coefficients", r.coefficients},
                {"window", to_json(r.window)},
                {"num_maps", r.num_maps},
                {"num_homotopies", r.num_homotopies},
                {"num_classes", r.num_classes},
                {"h2_classes", r.h2_classes},
                {"agree", r.agree},
                {"reflexive", r.reflexive},
                {"symmetric", r.symmetric},
                {"transitive", r.transitive},
                {"budget_exceeded", r.budget_exceeded},
                {"nodes", r.nodes},
                {"class_of", r.class_of},
                {"relation", rel},
                {"cocycles", cocycles}};
}

Json to_json(const FiniteGroup& g)
{
    return Json{{"name", g.name()}, {"elements", g.labels()}, {"table", g.table()}};
}

FiniteGroup group_from_json(const Json& j)
{
    std::vector<std::string> labels;
    for (const auto& e : need(j, "elements"))
        labels.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    std::vector<std::vector<int>> table;
    for (const auto& row : need(j, "table")) {
        std::vector<int> r;
        for (const auto& x : row)
            r.push_back(as_int(x, "a table entry"));
        table.push_back(r);
    }
    const std::string name = j.contains("name") ? j.at("name").get<std::string>() : "G";
    return FiniteGroup(name, labels, table);
}

Json to_json(const TablePresheaf& x)
{
    Json sizes = Json::array();
    for (const auto& b : x.window().shapes())
        sizes.push_back(Json{{"shape", to_json(b)}, {"size", x.size(b)}});
    Json acts = Json::array();
    for (const auto& [f, t] : x.actions())
        acts.push_back(Json{{"class", to_json(f)}, {"table", t}});
    return Json{{"name", x.name()}, {"window", to_json(x.window())}, {"sizes", sizes}, {"actions", acts}};
}

std::shared_ptr<TablePresheaf> table_presheaf_from_json(const Json& j)
{
    const std::string name = j.contains("name") ? j.at("name").get<std::string>() : "input";
    auto x = std::make_shared<TablePresheaf>(name, window_from_json(need(j, "window")));
    for (const auto& s : need(j, "sizes"))
        x->set_size(shape_from_json(need(s, "shape")), need(s, "size").get<std::size_t>());
    for (const auto& a : need(j, "actions"))
        x->set_action(class_from_json(need(a, "class")), need(a, "table").get<std::vector<std::size_t>>());
    return x;
}

} // namespace thetacat
