#include "simpi/io.hpp"

#include <sstream>

namespace simpi {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw FormatError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int as_int(const Json& j, const char* what)
{
    if (!j.is_number_integer())
        throw FormatError(std::string(what) + " must be an integer");
    return j.get<int>();
}

Int as_integer(const Json& j, const char* what)
{
    if (j.is_number_integer())
        return Int(j.get<long>());
    if (!j.is_string())
        throw FormatError(std::string(what) + " must be a decimal string");
    Int v;
    if (v.set_str(j.get<std::string>(), 10) != 0)
        throw FormatError(std::string(what) + " is not a decimal integer: " + j.get<std::string>());
    return v;
}

std::vector<int> int_list(const Json& j, const char* what)
{
    if (!j.is_array())
        throw FormatError(std::string(what) + " must be a list");
    std::vector<int> out;
    for (const auto& v : j)
        out.push_back(as_int(v, what));
    return out;
}

std::string edge_key(int u, int v)
{
    return std::to_string(u) + "." + std::to_string(v);
}

std::array<int, 2> parse_edge_key(const std::string& s)
{
    size_t dot = s.find('.');
    try {
        if (dot == std::string::npos)
            throw std::invalid_argument(s);
        size_t used = 0;
        int u = std::stoi(s.substr(0, dot), &used);
        if (used != dot)
            throw std::invalid_argument(s);
        std::string rest = s.substr(dot + 1);
        int v = std::stoi(rest, &used);
        if (used != rest.size())
            throw std::invalid_argument(s);
        return {u, v};
    } catch (const std::logic_error&) {
        throw FormatError("certificate edge key must be \"u.v\", got " + s);
    }
}

}  // namespace

Json simplex_to_json(const SimplicialSet& x, const Simplex& s)
{
    if (!s.degenerate())
        return x.name(s.base);
    return Json{{"deg", s.degs}, {"base", x.name(s.base)}};
}

Simplex simplex_from_json(const SimplicialSet& x, const Json& j)
{
    auto base = [&](const Json& n) {
        if (!n.is_string())
            throw FormatError("simplex reference must be a name");
        auto h = x.find(n.get<std::string>());
        if (!h)
            throw FormatError("unknown simplex " + n.get<std::string>());
        return x.nd(*h);
    };
    if (j.is_string())
        return base(j);
    Simplex s = base(field(j, "base"));
    std::vector<int> degs = int_list(field(j, "deg"), "deg");
    for (size_t i = 0; i < degs.size(); ++i) {
        if ((i > 0 && degs[i] <= degs[i - 1]) || degs[i] < 0 || degs[i] > s.dim)
            throw FormatError("degeneracy indices must be strictly increasing and in range");
        s = degeneracy(s, degs[i]);
    }
    return s;
}

Json sset_to_json(const SimplicialSet& x)
{
    Json simplices = Json::object(), faces = Json::object();
    for (int n = 0; n <= x.max_dim(); ++n) {
        Json names = Json::array();
        for (int h : x.cells(n)) {
            names.push_back(x.name(h));
            if (n > 0) {
                Json f = Json::array();
                for (const auto& s : x.faces_of(h))
                    f.push_back(simplex_to_json(x, s));
                faces[x.name(h)] = std::move(f);
            }
        }
        simplices[std::to_string(n)] = std::move(names);
    }
    Json out{{"simplices", simplices}, {"faces", faces}};
    if (x.basepoint >= 0)
        out["basepoint"] = x.name(x.basepoint);
    return out;
}

std::shared_ptr<SimplicialSet> sset_from_json(const Json& j)
{
    const Json& simplices = field(j, "simplices");
    if (!simplices.is_object())
        throw FormatError("\"simplices\" must map dimensions to name lists");
    const Json faces = j.contains("faces") ? j.at("faces") : Json::object();
    std::map<int, const Json*> by_dim;
    for (const auto& [key, names] : simplices.items()) {
        int n = -1;
        try {
            size_t used = 0;
            n = std::stoi(key, &used);
            if (used != key.size())
                n = -1;
        } catch (const std::logic_error&) {
        }
        if (n < 0)
            throw FormatError("dimension key must be a natural number, got " + key);
        if (!names.is_array())
            throw FormatError("simplex names of dimension " + key + " must be a list");
        by_dim[n] = &names;
    }
    auto x = std::make_shared<SimplicialSet>();
    try {
        for (const auto& [n, names] : by_dim)
            for (const auto& name : *names) {
                if (!name.is_string())
                    throw FormatError("simplex names must be strings");
                std::string s = name.get<std::string>();
                std::vector<Simplex> fs;
                if (n > 0) {
                    const Json& list = field(faces, s.c_str());
                    if (!list.is_array())
                        throw FormatError("faces of " + s + " must be a list");
                    for (const auto& f : list)
                        fs.push_back(simplex_from_json(*x, f));
                }
                x->add(s, n, std::move(fs));
            }
    } catch (const SimplexError& e) {
        throw FormatError(e.what());
    }
    if (j.contains("basepoint")) {
        auto h = x->find(field(j, "basepoint").get<std::string>());
        if (!h || x->dim_of(*h) != 0)
            throw FormatError("basepoint must name a vertex");
        x->basepoint = *h;
    }
    auto bad = x->check_identities();
    if (!bad.empty())
        throw FormatError("simplicial identity fails on " + x->name(bad.front()[0]));
    return x;
}

Json complex_to_json(const Complex& k)
{
    Json tree = Json::array();
    for (auto [u, v] : k.tree)
        tree.push_back({u, v});
    return Json{{"vertices", k.vertices}, {"facets", k.facets}, {"tree", tree}, {"root", k.root}};
}

Complex complex_from_json(const Json& j)
{
    Complex k;
    k.vertices = as_int(field(j, "vertices"), "vertices");
    if (k.vertices < 1)
        throw FormatError("a complex needs at least one vertex");
    const Json& facets = field(j, "facets");
    if (!facets.is_array())
        throw FormatError("facets must be a list");
    for (const auto& f : facets) {
        auto v = int_list(f, "facet");
        if (v.empty())
            throw FormatError("empty facet");
        for (int u : v)
            if (u < 0 || u >= k.vertices)
                throw FormatError("facet vertex out of range");
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end())
            throw FormatError("facet repeats a vertex");
        k.facets.push_back(std::move(v));
    }
    if (j.contains("tree"))
        for (const auto& e : j.at("tree")) {
            auto v = int_list(e, "tree edge");
            if (v.size() != 2 || v[0] < 0 || v[1] < 0 || v[0] >= k.vertices || v[1] >= k.vertices)
                throw FormatError("tree edges are vertex pairs");
            k.tree.push_back({v[0], v[1]});
        }
    if (j.contains("root"))
        k.root = as_int(j.at("root"), "root");
    if (k.root < 0 || k.root >= k.vertices)
        throw FormatError("root out of range");
    return k;
}

Json chain_to_json(const SimplicialSet& x, const Chain& c)
{
    Json out = Json::array();
    for (const auto& [s, v] : c.terms)
        if (v != 0)
            out.push_back({{"simplex", simplex_to_json(x, s)}, {"coeff", v.get_str()}});
    return out;
}

Chain chain_from_json(const SimplicialSet& x, const Json& j)
{
    if (!j.is_array())
        throw FormatError("a chain is a list of terms");
    Chain c;
    for (const auto& t : j)
        c.add(simplex_from_json(x, field(t, "simplex")), as_integer(field(t, "coeff"), "coeff"));
    return c;
}

Json certificate_to_json(const ComplexCertificate& c)
{
    Json con = Json::object();
    for (const auto& [e, ec] : c)
        con[edge_key(e[0], e[1])] = Json{{"A", ec.a}, {"B", ec.b}};
    return Json{{"contractions", con}};
}

ComplexCertificate certificate_from_json(const Json& j)
{
    const Json& con = field(j, "contractions");
    if (!con.is_object())
        throw FormatError("contractions must be an object keyed by edge");
    ComplexCertificate c;
    for (const auto& [key, v] : con.items())
        c[parse_edge_key(key)] = {int_list(field(v, "A"), "A"), int_list(field(v, "B"), "B")};
    return c;
}

Json word_to_json(const SimplicialSet& x, const GroupWord& w)
{
    Json out = Json::array();
    for (const auto& [g, e] : w.f)
        out.push_back({{"gen", simplex_to_json(x, g)}, {"exp", e.get_str()}});
    return out;
}

GroupWord word_from_json(const SimplicialSet& x, const Json& j)
{
    if (!j.is_array())
        throw FormatError("a word is a list of factors");
    GroupWord w;
    for (const auto& t : j)
        w.push(simplex_from_json(x, field(t, "gen")), as_integer(field(t, "exp"), "exp"));
    return w;
}

Json contraction_to_json(const SimplicialSet& x, const LoopContraction& c)
{
    Json out = Json::object();
    for (const auto& [g, w] : c.c0)
        out[x.describe(g)] = word_to_json(x, w);
    return out;
}

LoopContraction contraction_from_json(const SimplicialSet& x, const Json& j)
{
    if (!j.is_object())
        throw FormatError("c0 must be an object keyed by edge name");
    LoopContraction c;
    for (const auto& [key, w] : j.items()) {
        Simplex e = simplex_from_json(x, Json(key));
        if (e.dim != 1)
            throw FormatError("c0 key " + key + " is not an edge");
        c.c0[e] = word_from_json(x, w);
    }
    return c;
}

Json sphere_to_json(const SphereMap& s)
{
    const SimplicialSet& sp = *s.sphere;
    const SimplicialSet& target = *s.map.target;
    Json assignment = Json::object();
    for (int h = 0; h < sp.size(); ++h)
        assignment[sp.name(h)] = simplex_to_json(target, s.map.image[h]);
    std::map<int, int> total;
    for (size_t j = 0; j < s.tops.size(); ++j)
        if (!s.tops[j].degenerate())
            total[s.tops[j].base] += s.signs[j];
    Json signs = Json::object();
    for (const auto& [h, v] : total)
        signs[sp.name(h)] = v;
    return Json{{"sphere", sset_to_json(sp)}, {"assignment", assignment}, {"signs", signs}};
}

SphereMap sphere_from_json(const Json& j, std::shared_ptr<const SimplicialSet> target)
{
    SphereMap s;
    s.sphere = sset_from_json(field(j, "sphere"));
    const Json& assignment = field(j, "assignment");
    std::vector<Simplex> image(s.sphere->size());
    for (int h = 0; h < s.sphere->size(); ++h) {
        const std::string& name = s.sphere->name(h);
        image[h] = simplex_from_json(*target, field(assignment, name.c_str()));
        if (image[h].dim != s.sphere->dim_of(h))
            throw FormatError("assignment of " + name + " changes dimension");
    }
    s.map = SimplicialMap{s.sphere, std::move(target), std::move(image)};
    const Json& signs = field(j, "signs");
    if (!signs.is_object())
        throw FormatError("signs must be an object keyed by top simplex");
    for (const auto& [name, v] : signs.items()) {
        s.tops.push_back(simplex_from_json(*s.sphere, Json(name)));
        s.signs.push_back(as_int(v, "sign"));
    }
    s.path.level = s.sphere->max_dim() - 1;
    return s;
}

InputDocument input_from_json(const Json& j)
{
    InputDocument doc;
    if (j.contains("complex")) {
        doc.complex = complex_from_json(j.at("complex"));
        doc.set = from_complex(*doc.complex).set;
        if (j.contains("certificate"))
            doc.certificate = certificate_from_json(j.at("certificate"));
    } else if (j.contains("sset")) {
        doc.set = sset_from_json(j.at("sset"));
        if (j.contains("c0"))
            doc.c0 = contraction_from_json(*doc.set, j.at("c0"));
    } else {
        throw FormatError("input needs a \"complex\" or an \"sset\"");
    }
    return doc;
}

Json input_to_json(const InputDocument& doc)
{
    Json out = Json::object();
    if (doc.complex) {
        out["complex"] = complex_to_json(*doc.complex);
        if (doc.certificate)
            out["certificate"] = certificate_to_json(*doc.certificate);
    } else {
        out["sset"] = sset_to_json(*doc.set);
        if (doc.c0)
            out["c0"] = contraction_to_json(*doc.set, *doc.c0);
    }
    return out;
}

PipelineInput pipeline_input(const InputDocument& doc)
{
    if (!doc.complex)
        return input_from_set(doc.set, doc.c0);
    if (!doc.certificate)
        throw CertificateError("complex input needs a loop contraction certificate (see contract-loop)");
    return input_from_complex(*doc.complex, *doc.certificate);
}

Json report_to_json(const PipelineResult& r, const SimplicialSet& x)
{
    Json gens = Json::array();
    for (const auto& g : r.reports) {
        Json seconds = Json::object();
        for (const auto& [stage, t] : g.seconds)
            seconds[stage] = t;
        Json one{{"cycle", chain_to_json(x, g.cycle)},
                 {"word_length", g.word_length.get_str()},
                 {"path_length", g.path_length},
                 {"sphere_tops", g.sphere_tops},
                 {"sphere_cells", g.sphere_cells},
                 {"image", chain_to_json(x, g.image)},
                 {"verdict", g.verdict.pass ? "PASS" : "FAIL"},
                 {"multiplier", g.verdict.multiplier},
                 {"sphere_audit", g.audit.ok()},
                 {"seconds", seconds}};
        if (g.lift) {
            const LiftAudit& a = *g.lift;
            Json lift{{"parts", g.esd_parts},
                      {"sigma_facets", a.sigma_facets},
                      {"distinct_images", a.images},
                      {"esd_facets", a.facets},
                      {"simplicial_facets", a.simplicial},
                      {"tree_to_root", a.tree_to_root},
                      {"interior_onto", a.interior_onto},
                      {"faces_consistent", a.faces_consistent},
                      {"ok", a.ok()}};
            lift["degree"] = a.degree ? Json(*a.degree) : Json();
            one["lift"] = lift;
        }
        gens.push_back(std::move(one));
    }
    return Json{{"dim", r.dim}, {"generators", gens}, {"ok", r.ok()}};
}

Json esd_to_json(const EsdComplex& e, const std::vector<int>& labels)
{
    Json vertices = Json::array();
    for (long v = 0; v < e.vertex_count(); ++v) {
        Json coords = Json::array();
        for (auto [u, c] : e.coordinates(v))
            coords.push_back({u, c});
        vertices.push_back(std::move(coords));
    }
    Json facets = Json::array();
    for (size_t i = 0; i < e.facet_count(); ++i)
        facets.push_back(e.facet(i));
    Json out{{"parts", e.parts()}, {"vertices", vertices}, {"facets", facets}};
    if (!labels.empty())
        out["labels"] = labels;
    return out;
}

std::string esd_to_off(const EsdComplex& e)
{
    if (e.dim() > 3)
        throw FormatError("OFF export needs dimension at most 3");
    std::vector<std::array<int, 3>> tris;
    for (size_t i = 0; i < e.facet_count(); ++i) {
        auto f = e.facet(i);
        if (f.size() < 3)
            continue;
        if (f.size() == 3) {
            tris.push_back({static_cast<int>(f[0]), static_cast<int>(f[1]), static_cast<int>(f[2])});
            continue;
        }
        for (int skip = 0; skip < 4; ++skip) {
            std::array<int, 3> t{};
            int n = 0;
            for (int q = 0; q < 4; ++q)
                if (q != skip)
                    t[n++] = static_cast<int>(f[q]);
            tris.push_back(t);
        }
    }
    std::ostringstream os;
    os << "OFF\n" << e.vertex_count() << " " << tris.size() << " 0\n";
    for (long v = 0; v < e.vertex_count(); ++v) {
        double p[3] = {0, 0, 0};
        for (auto [u, c] : e.coordinates(v)) {
            double t = static_cast<double>(u) + 1, w = static_cast<double>(c) / e.parts();
            p[0] += w * t;
            p[1] += w * t * t;
            p[2] += w * t * t * t;
        }
        os << p[0] << " " << p[1] << " " << p[2] << "\n";
    }
    for (const auto& t : tris)
        os << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
    return os.str();
}

}  // namespace simpi
