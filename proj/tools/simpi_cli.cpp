#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "simpi/families.hpp"
#include "simpi/hurewicz.hpp"
#include "simpi/io.hpp"

using namespace simpi;

namespace {

enum Exit { ok = 0, failed = 2, cap = 3, malformed = 4 };

Json read_json(const std::string& path)
{
    try {
        if (path == "-")
            return Json::parse(std::cin);
        std::ifstream in(path);
        if (!in)
            throw FormatError("cannot open " + path);
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void emit(const Json& j, const std::string& out)
{
    if (out.empty() || out == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(out);
    f << j.dump(2) << "\n";
}

struct Options {
    std::string input, output, sphere_file, cycle_file, kind = "xk-set", format = "json";
    int dim = 2, k = 1, kmax = 8, generator = 0, samples = 0;
    std::optional<int> parts;
    bool no_lift = false;
    size_t cap_edges = 10'000'000, cap_words = word_factor_cap();
    unsigned seed = 1;
};

int run_pi(const Options& o)
{
    InputDocument doc = input_from_json(read_json(o.input));
    PipelineInput in = pipeline_input(doc);
    PipelineOptions opt;
    opt.lift = !o.no_lift;
    PipelineResult r = run_pipeline(in, o.dim, opt);
    emit(report_to_json(r, *in.set), o.output);
    if (!o.sphere_file.empty()) {
        Json spheres = Json::array();
        for (const auto& s : r.spheres)
            spheres.push_back(sphere_to_json(s));
        emit(spheres, o.sphere_file);
    }
    return r.ok() ? ok : failed;
}

int run_homology(const Options& o)
{
    InputDocument doc = input_from_json(read_json(o.input));
    ChainOps ops(doc.set);
    Homology h = ops.homology(o.dim);
    Json torsion = Json::array();
    for (size_t i = 0; i < h.torsion.size(); ++i)
        torsion.push_back({{"order", h.torsion_orders[i].get_str()}, {"cycle", chain_to_json(*doc.set, h.torsion[i])}});
    Json free = Json::array();
    for (const auto& z : h.free)
        free.push_back(chain_to_json(*doc.set, z));
    emit(Json{{"dim", o.dim}, {"rank", h.free.size()}, {"free", free}, {"torsion", torsion}}, o.output);
    return ok;
}

// random words in the edge generators, checked against the contraction axioms at level 0
int sample_contraction(const Options& o, const PipelineInput& in)
{
    HurewiczContext ctx(in.set, 2, in.c0);
    std::vector<Simplex> gens;
    for (int h : in.set->cells(1))
        gens.push_back(in.set->nd(h));
    if (gens.empty())
        return ok;
    std::mt19937 rng(o.seed);
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> len(1, 8), exp(-2, 2);
    for (int t = 0; t < o.samples; ++t) {
        GroupWord w;
        for (int i = len(rng); i > 0; --i)
            w.push(gens[pick(rng)], exp(rng));
        std::string why = check_contraction(ctx, 0, w);
        if (!why.empty()) {
            std::cerr << "contraction check failed: " << why << "\n";
            return failed;
        }
    }
    return ok;
}

int run_contract_loop(const Options& o)
{
    InputDocument doc = input_from_json(read_json(o.input));
    if (doc.complex && !doc.certificate)
        doc.certificate = greedy_certificate(*doc.complex);
    PipelineInput in = pipeline_input(doc);
    if (!doc.complex) {
        if (in.set->cells(0).size() != 1)
            throw ScopeError("loop contractions need a 0-reduced set");
        if (!doc.c0 && in.set->reduced_level() < 1)
            throw CertificateError("no c0 given and the set has nondegenerate edges");
        LoopContraction c = doc.c0.value_or(LoopContraction{});
        if (!check_loop_contraction(LoopGroup(in.set), c).empty())
            throw CertificateError("c0 fails d_0 c_0 = id or d_1 c_0 = 1");
        doc.c0 = c;
    }
    int code = sample_contraction(o, in);
    emit(input_to_json(doc), o.output);
    return code;
}

int run_subdivide(const Options& o)
{
    InputDocument doc = input_from_json(read_json(o.input));
    if (!doc.complex)
        throw FormatError("subdivide needs a complex");
    auto check_size = [&](size_t facets, size_t sigma) {
        if (facets > o.cap_edges)
            throw CapExceeded("subdivision would have " + std::to_string(facets) + " top simplices over " +
                              std::to_string(sigma) + " (raise --cap-edges)");
    };
    auto write = [&](const EsdComplex& e, const std::vector<int>& labels, Json extra) {
        if (o.format == "off") {
            std::string off = esd_to_off(e);
            if (o.output.empty() || o.output == "-")
                std::cout << off;
            else
                std::ofstream(o.output) << off;
            return;
        }
        Json j = esd_to_json(e, labels);
        for (auto& [key, v] : extra.items())
            j[key] = v;
        emit(j, o.output);
    };
    if (!doc.certificate) {
        if (!o.parts)
            throw FormatError("a bare complex needs --parts");
        check_size(static_cast<size_t>(esd_facet_count(*doc.complex, *o.parts)), doc.complex->facets.size());
        write(EsdComplex(*doc.complex, *o.parts), {}, Json::object());
        return ok;
    }
    PipelineInput in = pipeline_input(doc);
    PipelineOptions opt;
    opt.lift = false;
    PipelineResult r = run_pipeline(in, o.dim, opt);
    if (o.generator < 0 || o.generator >= static_cast<int>(r.spheres.size()))
        throw FormatError("no generator " + std::to_string(o.generator));
    SphereLift src = sphere_lift_source(r.spheres[o.generator]);
    int k = o.parts.value_or(lift_parts(*in.complex, o.dim));
    size_t per = 1;
    for (int i = 0; i < o.dim; ++i)
        per *= static_cast<size_t>(k);
    check_size(src.source.complex.facets.size() * per, src.source.complex.facets.size());
    LiftedMap g = reconstruct_map(src.source.complex, src.source.set, src.map, *in.complex, k);
    LiftAudit a = audit_lift(g, src.source.complex, src.source.set, src.map, *in.complex);
    Json audit{{"esd_facets", a.facets}, {"simplicial_facets", a.simplicial}, {"tree_to_root", a.tree_to_root},
               {"interior_onto", a.interior_onto}, {"ok", a.ok()}};
    audit["degree"] = a.degree ? Json(*a.degree) : Json();
    write(g.esd, g.label, Json{{"sigma", complex_to_json(src.source.complex)}, {"audit", audit}});
    return a.ok() ? ok : failed;
}

int run_family(const Options& o)
{
    InputDocument doc;
    if (o.kind == "xk-set") {
        auto x = xk_set(o.dim, o.k);
        doc.set = x.set;
        doc.c0 = x.c0;
    } else if (o.kind == "moebius-complex") {
        auto m = moebius_tower(o.k, o.dim);
        doc.complex = m.complex;
        doc.certificate = m.certificate;
    } else if (o.kind == "sphere-set") {
        doc.set = sphere_set(o.dim);
    } else if (o.kind == "sphere-complex") {
        doc.complex = sphere_complex(o.dim);
        doc.certificate = greedy_certificate(*doc.complex);
    } else if (o.kind == "wedge") {
        std::vector<std::shared_ptr<const SimplicialSet>> parts(std::max(o.k, 1), sphere_set(o.dim));
        doc.set = wedge(parts);
    } else {
        throw FormatError("unknown family " + o.kind);
    }
    if (doc.complex)
        doc.set = from_complex(*doc.complex).set;
    emit(input_to_json(doc), o.output);
    return ok;
}

int run_verify(const Options& o)
{
    InputDocument doc = input_from_json(read_json(o.input));
    auto target = doc.complex ? quotient_tree(from_complex(*doc.complex), *doc.complex).set : doc.set;
    Json sj = read_json(o.sphere_file);
    if (sj.is_array()) {
        if (o.generator < 0 || o.generator >= static_cast<int>(sj.size()))
            throw FormatError("no sphere " + std::to_string(o.generator));
        sj = sj.at(o.generator);
    }
    SphereMap s = sphere_from_json(sj, target);
    Chain z = chain_from_json(*target, read_json(o.cycle_file));
    bool valid = validate_map(s.map).empty();
    Verdict v = verify(s, target, z, o.dim);
    emit(Json{{"map_valid", valid}, {"verdict", v.pass ? "PASS" : "FAIL"}, {"multiplier", v.multiplier}}, o.output);
    return v.pass ? ok : failed;
}

int run_bench(const Options& o)
{
    auto rows = bench_blowup(o.kmax);
    Json table = Json::array();
    bool all = true;
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        bool bound = r.sphere_tops >= (size_t{1} << (r.k - 1));
        Json row{{"k", r.k}, {"input_size", r.input_size}, {"sphere_tops", r.sphere_tops}, {"seconds", r.seconds},
                 {"pass", r.pass}, {"at_least_2^(k-1)", bound}};
        if (i > 0 && rows[i - 1].sphere_tops > 0)
            row["ratio"] = static_cast<double>(r.sphere_tops) / static_cast<double>(rows[i - 1].sphere_tops);
        all = all && r.pass && bound;
        table.push_back(row);
    }
    emit(table, o.output);
    return all ? ok : failed;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"effective Hurewicz inverse: homotopy generators as simplicial spheres"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--cap-edges", o.cap_edges, "length cap for expanded paths and subdivisions")->capture_default_str();
    app.add_option("--cap-words", o.cap_words, "length cap for group words, in run-length factors")->capture_default_str();
    app.add_option("--seed", o.seed, "seed for sampled property checks")->capture_default_str();
    app.add_option("-o,--output", o.output, "output file (default stdout)");

    auto* pi = app.add_subcommand("pi", "homotopy generators of pi_d as spheres, with the Hurewicz round trip");
    pi->add_option("input", o.input, "input JSON (complex + certificate, or sset + c0); - for stdin")->required();
    pi->add_option("--dim", o.dim, "target dimension d")->capture_default_str();
    pi->add_flag("--no-lift", o.no_lift, "skip the subdivide-lift for complex inputs");
    pi->add_option("--spheres", o.sphere_file, "write the sphere maps here");

    auto* hom = app.add_subcommand("homology", "integral homology generators");
    hom->add_option("input", o.input)->required();
    hom->add_option("--dim", o.dim)->capture_default_str();

    auto* cl = app.add_subcommand("contract-loop", "validate or derive the loop contraction certificate");
    cl->add_option("input", o.input)->required();
    cl->add_option("--samples", o.samples, "random words checked against the contraction axioms")->capture_default_str();

    auto* sub = app.add_subcommand("subdivide", "edgewise subdivision, labeled by the lift of a pipeline sphere");
    sub->add_option("input", o.input)->required();
    sub->add_option("--dim", o.dim)->capture_default_str();
    sub->add_option("--generator", o.generator, "which generator's sphere")->capture_default_str();
    sub->add_option("--parts", o.parts, "k of Esd_k (default l(d+1)+1)");
    sub->add_option("--format", o.format)->check(CLI::IsMember({"json", "off"}))->capture_default_str();

    auto* fam = app.add_subcommand("family", "emit a fixture");
    fam->add_option("kind", o.kind)
        ->check(CLI::IsMember({"xk-set", "moebius-complex", "sphere-set", "sphere-complex", "wedge"}))
        ->required();
    fam->add_option("--k", o.k, "family parameter (wedge: number of spheres)")->capture_default_str();
    fam->add_option("--dim", o.dim)->capture_default_str();

    auto* ver = app.add_subcommand("verify", "check a stored sphere against a homology class");
    ver->add_option("input", o.input)->required();
    ver->add_option("--sphere", o.sphere_file, "sphere JSON, or a list from pi --spheres")->required();
    ver->add_option("--cycle", o.cycle_file, "chain JSON")->required();
    ver->add_option("--generator", o.generator, "index into a sphere list")->capture_default_str();
    ver->add_option("--dim", o.dim)->capture_default_str();

    auto* bench = app.add_subcommand("bench", "sphere sizes over the exponential family");
    bench->add_option("--kmax", o.kmax)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : malformed;
    }
    path_length_cap() = o.cap_edges;
    word_factor_cap() = o.cap_words;

    try {
        if (*pi)
            return run_pi(o);
        if (*hom)
            return run_homology(o);
        if (*cl)
            return run_contract_loop(o);
        if (*sub)
            return run_subdivide(o);
        if (*fam)
            return run_family(o);
        if (*ver)
            return run_verify(o);
        if (*bench)
            return run_bench(o);
    } catch (const CapExceeded& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return cap;
    } catch (const FormatError& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return malformed;
    } catch (const Json::exception& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return malformed;
    } catch (const ScopeError& e) {
        std::cerr << "out of scope: " << e.what() << "\n";
        return failed;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << "\n";
        return failed;
    }
    return ok;
}
