// thetacat: batch command-line front end. Every run writes one JSON report.
// Exit codes: 0 success/pass, 1 usage error, 2 check failed, 3 budget exceeded.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "thetacat/errors.hpp"
#include "thetacat/json_io.hpp"
#include "thetacat/nerves.hpp"
#include "thetacat/selftest.hpp"

using namespace thetacat;

namespace {

constexpr int kPass = 0, kUsage = 1, kFail = 2, kBudget = 3;

struct Config {
    int max_dim = 3;
    int max_entry = 3;
    std::uint64_t budget = kDefaultNatBudget;
    std::string out;
    std::uint64_t seed = 42;
};

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InvalidArgument("malformed JSON in '" + path + "': " + e.what());
    }
}

FiniteGroup load_group(const std::string& spec)
{
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json")
        return group_from_json(read_json_file(spec));
    return FiniteGroup::builtin(spec);
}

PresheafPtr load_nerve(const std::string& spec)
{
    if (spec == "terminal")
        return std::make_shared<TerminalPresheaf>();
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw InvalidArgument("malformed nerve spec '" + spec + "'");
    const auto kind = spec.substr(0, colon);
    const auto arg = spec.substr(colon + 1);
    if (kind == "B1")
        return nerve_B1(load_group(arg));
    if (kind == "B2strict")
        return nerve_B2_strict(load_group(arg));
    if (kind == "B2em")
        return nerve_B2_em(load_group(arg));
    if (kind == "rep")
        return std::make_shared<RepresentablePresheaf>(Shape::parse(arg));
    throw InvalidArgument("unknown nerve kind '" + kind + "'");
}

std::vector<FaceDescriptor> parse_gamma(const Shape& a, const std::string& text)
{
    std::vector<FaceDescriptor> out;
    if (text == "outer") {
        for (const auto& f : faces_of(a))
            if (!f.inner)
                out.push_back(f);
        return out;
    }
    Json arr;
    try {
        arr = Json::parse(text);
    } catch (const Json::parse_error&) {
        throw InvalidArgument("malformed face list '" + text + "'");
    }
    if (!arr.is_array())
        throw InvalidArgument("malformed face list '" + text + "'");
    for (const auto& p : arr) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
            throw InvalidArgument("malformed face '" + p.dump() + "'");
        out.push_back(face_descriptor(a, p[0].get<int>(), p[1].get<int>()));
    }
    return out;
}

class Runner {
public:
    explicit Runner(const Config& c) : cfg_(c) {}

    WindowSpec window() const
    {
        if (cfg_.max_dim < 0 || cfg_.max_dim > 6 || cfg_.max_entry < 1 || cfg_.max_entry > 6)
            throw InvalidArgument("window must satisfy 0 <= max-dim <= 6 and 1 <= max-entry <= 6");
        return WindowSpec(cfg_.max_dim, cfg_.max_entry);
    }

    WindowSpec window_for(const Shape& a) const
    {
        const auto w = window();
        if (!w.covers(a))
            throw InvalidArgument("window (" + std::to_string(w.max_dim()) + "," + std::to_string(w.max_entry()) +
                                  ") does not cover " + a.to_string());
        return w;
    }

    int faces(const std::string& shape_text)
    {
        const auto a = Shape::parse(shape_text);
        Json fs = Json::array();
        int inner = 0;
        for (const auto& f : faces_of(a)) {
            fs.push_back(to_json(f));
            inner += f.inner;
        }
        const int n = static_cast<int>(fs.size());
        emit(Json{{"command", "faces"}, {"shape", to_json(a)}, {"count", n}, {"inner", inner},
                  {"outer", n - inner}, {"faces", fs}});
        return kPass;
    }

    int hom(const std::string& src_text, const std::string& dst_text)
    {
        const auto a = Shape::parse(src_text);
        const auto b = Shape::parse(dst_text);
        const HomSet h(a, b);
        if (h.size() > cfg_.budget)
            throw BudgetExceeded("hom-set has " + std::to_string(h.size()) + " classes", 0);
        Json by_degree = Json::array();
        for (int q = 1; q <= std::max(a.dim(), b.dim()) + 1; ++q)
            by_degree.push_back(h.count_of_degree(q));
        Json classes = Json::array();
        for (std::size_t r = 0; r < h.size(); ++r)
            classes.push_back(to_json(h.at(r)));
        emit(Json{{"command", "hom"}, {"src", to_json(a)}, {"dst", to_json(b)}, {"count", h.size()},
                  {"by_degree", by_degree}, {"classes", classes}});
        return kPass;
    }

    int check_cmd(const std::string& mode_text, const std::string& nerve, const std::string& input)
    {
        const auto mode = CheckMode::parse(mode_text);
        if (nerve.empty() == input.empty())
            throw InvalidArgument("give exactly one of --nerve and --input");
        PresheafPtr x = nerve.empty() ? PresheafPtr(table_presheaf_from_json(read_json_file(input))) : load_nerve(nerve);
        const auto rep = check(*x, mode, window(), cfg_.budget);
        Json j{{"command", "check"}};
        j.update(to_json(rep));
        emit(j);
        return rep.passed ? kPass : kFail;
    }

    int certify(const std::string& shape_text, const std::string& gamma_text)
    {
        const auto a = Shape::parse(shape_text);
        const auto w = window_for(a);
        const auto gamma = parse_gamma(a, gamma_text);
        CertifyStats stats;
        try {
            const auto cert = certify_union_inclusion(a, gamma, w, &stats);
            const auto ver = verify_certificate(cert, w);
            emit(Json{{"command", "certify"},
                      {"window", to_json(w)},
                      {"certificate", to_json(cert)},
                      {"verification", to_json(ver)},
                      {"pivots_tried", stats.pivots_tried},
                      {"union_fallbacks", stats.union_fallbacks}});
            return ver.passed ? kPass : kFail;
        } catch (const ProofShapeViolation& e) {
            emit(Json{{"command", "certify"}, {"window", to_json(w)}, {"base", to_json(a)},
                      {"gamma", gamma_label(gamma)}, {"proof_shape_violation", e.what()}});
            return kFail;
        }
    }

    int probe(const std::string& shape_text, const std::string& target_text)
    {
        const auto a = Shape::parse(shape_text);
        const auto target = parse_probe_target(target_text);
        const auto w = window_for(a);
        const auto r = spine_probe(a, target, w, cfg_.budget);
        Json j{{"command", "probe"},
               {"base", to_json(a)},
               {"target", to_string(target)},
               {"window", to_json(w)},
               {"found", r.found},
               {"budget_exceeded", r.budget_exceeded},
               {"stats", to_json(r.stats)}};
        if (r.certificate) {
            j["certificate"] = to_json(*r.certificate);
            j["verification"] = to_json(verify_certificate(*r.certificate, w));
        }
        emit(j);
        if (r.found)
            return kPass;
        return r.budget_exceeded ? kBudget : kFail;
    }

    int h2(const std::string& group_text, const std::string& coeff_text)
    {
        const auto g = load_group(group_text);
        const auto a = load_group(coeff_text);
        const auto w = window();
        const auto counts = h2_classes(g, a);
        const auto rep = homotopy_classes(g, a, w, cfg_.budget);
        Json j{{"command", "h2"}, {"cohomology", to_json(counts)}, {"homotopy", to_json(rep)}};
        if (!rep.budget_exceeded && !rep.agree) {
            // the offending maps, grouped by homotopy class, and every homotopy found
            Json classes = Json::array();
            for (std::size_t c = 0; c < rep.num_classes; ++c) {
                Json members = Json::array();
                for (std::size_t i = 0; i < rep.class_of.size(); ++i)
                    if (rep.class_of[i] == c)
                        members.push_back(Json{{"map", i}, {"cocycle", to_json(rep.cocycles[i])}});
                classes.push_back(members);
            }
            j["counterexample"] = Json{{"classes", classes}, {"homotopy_transcript", to_json(rep)["relation"]}};
        }
        emit(j);
        if (rep.budget_exceeded)
            return kBudget;
        return rep.agree ? kPass : kFail;
    }

    int selftest()
    {
        const auto rep = run_selftest(cfg_.seed, WindowSpec(std::min(cfg_.max_dim, 2), cfg_.max_entry));
        emit(to_json(rep));
        return rep.passed() ? kPass : kFail;
    }

    void emit(const Json& j) const
    {
        const auto text = j.dump(2) + "\n";
        if (cfg_.out.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream o(cfg_.out, std::ios::binary);
        if (!o)
            throw InvalidArgument("cannot write '" + cfg_.out + "'");
        o << text;
    }

private:
    Config cfg_;
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"thetacat: combinatorics of generalized simplices, horn-filling checks and cocycles"};
    app.require_subcommand(1);
    Config cfg;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--max-dim", cfg.max_dim, "window dimension bound (<= 6)");
        sub->add_option("--max-entry", cfg.max_entry, "window entry bound (<= 6)");
        sub->add_option("--budget", cfg.budget, "search budget");
        sub->add_option("--out", cfg.out, "report file (default stdout)");
        sub->add_option("--seed", cfg.seed, "seed for randomized checks");
    };

    std::string shape, dst, mode, nerve, input, gamma, target, group, coeff;
    auto* faces = app.add_subcommand("faces", "list the faces of a shape");
    faces->add_option("shape", shape)->required();
    auto* hom = app.add_subcommand("hom", "enumerate a hom-set");
    hom->add_option("src", shape)->required();
    hom->add_option("dst", dst)->required();
    auto* chk = app.add_subcommand("check", "windowed horn-filling check");
    chk->add_option("--mode", mode)->required();
    chk->add_option("--nerve", nerve, "B1:G, B2strict:A, B2em:A, rep:SHAPE or terminal");
    chk->add_option("--input", input, "presheaf tables as JSON");
    auto* cert = app.add_subcommand("certify", "certificate for a union of faces");
    cert->add_option("shape", shape)->required();
    cert->add_option("--gamma", gamma, "face list [[k,m],..] or 'outer'")->required();
    auto* probe = app.add_subcommand("probe", "search attachments starting from the spine");
    probe->add_option("shape", shape)->required();
    probe->add_option("--target", target)->required();
    auto* h2 = app.add_subcommand("h2", "maps B1G -> B2A, homotopy classes and H2");
    h2->add_option("--group", group)->required();
    h2->add_option("--coeff", coeff)->required();
    auto* self = app.add_subcommand("selftest", "run the invariant suite");
    for (auto* s : {faces, hom, chk, cert, probe, h2, self})
        add_common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    Runner run(cfg);
    try {
        run.window();
        if (*faces)
            return run.faces(shape);
        if (*hom)
            return run.hom(shape, dst);
        if (*chk)
            return run.check_cmd(mode, nerve, input);
        if (*cert)
            return run.certify(shape, gamma);
        if (*probe)
            return run.probe(shape, target);
        if (*h2)
            return run.h2(group, coeff);
        if (*self)
            return run.selftest();
    } catch (const BudgetExceeded& e) {
        try {
            run.emit(Json{{"budget_exceeded", true}, {"partial", e.partial}, {"message", e.what()}});
        } catch (const Error&) {
        }
        std::cerr << e.what() << "\n";
        return kBudget;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
