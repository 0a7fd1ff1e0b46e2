#include "simpi/pipeline.hpp"

#include <chrono>

#include "simpi/families.hpp"
#include "simpi/hurewicz.hpp"

namespace simpi {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t)
{
    return std::chrono::duration<double>(Clock::now() - t).count();
}

bool homologous(const ChainOps& ops, const Chain& c, int d)
{
    try {
        return ops.solve_boundary(c, d).has_value();
    } catch (const ChainError&) {
        return false;
    }
}

}  // namespace

PipelineInput input_from_set(std::shared_ptr<const SimplicialSet> x, std::optional<LoopContraction> c0)
{
    return {std::move(x), std::move(c0), nullptr};
}

PipelineInput input_from_complex(const Complex& k, const ComplexCertificate& cert)
{
    auto t = std::make_shared<TreeTarget>(tree_target(k));
    LoopContraction c0 = certificate_to_contraction(k, t->set, t->quotient, cert);
    LoopGroup gx(t->quotient.set);
    if (!check_loop_contraction(gx, c0).empty())
        throw CertificateError("certificate does not contract every edge loop");
    return {t->quotient.set, std::move(c0), t};
}

Verdict verify(const SphereMap& s, std::shared_ptr<const SimplicialSet> x, const Chain& z, int d)
{
    Verdict v;
    if (!validate_map(s.map).empty())
        return v;
    ChainOps ops(std::move(x));
    Chain img = sphere_image(s);
    if (homologous(ops, img - z, d))
        v = {true, 1};
    else if (homologous(ops, img + z, d))
        v = {true, -1};
    return v;
}

bool PipelineResult::ok() const
{
    for (const auto& r : reports)
        if (!r.verdict.pass || r.verdict.multiplier != 1 || !r.audit.ok() || (r.lift && !r.lift->ok()))
            return false;
    return true;
}

void check_scope(const PipelineInput& in, int d)
{
    const SimplicialSet& x = *in.set;
    if (d < 2)
        throw ScopeError("the pipeline needs d >= 2");
    if (x.cells(0).size() != 1)
        throw ScopeError("the pipeline needs a 0-reduced set; collapse a spanning tree first");
    if (x.reduced_level() < 1 && !in.c0)
        throw CertificateError("no loop contraction: simple connectivity is not certified");
    if (d >= 3) {
        ChainOps ops(in.set);
        for (int n = 2; n < d; ++n) {
            auto h = ops.homology(n);
            if (!h.free.empty() || !h.torsion.empty())
                throw ScopeError("d >= 3 needs a (d-1)-connected input, but H_" + std::to_string(n) +
                                 " is nonzero; the general case needs the Whitehead stage F_d, which is not implemented");
        }
    }
}

SphereLift sphere_lift_source(const SphereMap& s)
{
    SphereLift out{complexify(s.sphere), {}};
    const auto& gamma = out.source.gamma;
    std::vector<Simplex> image(gamma.image.size());
    for (size_t h = 0; h < image.size(); ++h)
        image[h] = s.map(gamma.image[h]);
    out.map = {gamma.source, s.map.target, std::move(image)};
    return out;
}

PipelineResult run_pipeline(const PipelineInput& in, int d, const PipelineOptions& opt)
{
    check_scope(in, d);
    PipelineResult res;
    res.dim = d;
    auto t0 = Clock::now();
    ChainOps ops(in.set);
    Homology h = ops.homology(d);
    double homology_time = since(t0);
    std::vector<Chain> gens = h.torsion;
    gens.insert(gens.end(), h.free.begin(), h.free.end());
    HurewiczContext ctx(in.set, d, in.c0);
    for (const Chain& z : gens) {
        GeneratorReport r;
        r.cycle = z;
        r.seconds["homology"] = homology_time;
        auto t = Clock::now();
        Chain moore = arrow1(ctx.group(), z);
        r.seconds["arrow1"] = since(t);
        t = Clock::now();
        GroupWord w = ctx.arrow2(moore);
        r.seconds["arrow2"] = since(t);
        r.word_length = w.length();
        t = Clock::now();
        Path p = t_hom(ctx.group(), w, d - 1);
        r.path_length = p.length();
        r.seconds["arrow3_path"] = since(t);
        t = Clock::now();
        SphereMap s = sphere_of(in.set, p);
        r.seconds["arrow3_sphere"] = since(t);
        r.sphere_tops = s.sphere->cells(d).size();
        r.sphere_cells = static_cast<size_t>(s.sphere->size());
        t = Clock::now();
        r.audit = audit_sphere(s);
        r.image = sphere_image(s);
        r.verdict = verify(s, in.set, z, d);
        r.seconds["verify"] = since(t);
        if (in.complex && opt.lift) {
            t = Clock::now();
            size_t cells = subdivision_cells(*s.sphere);
            if (cells > path_length_cap())
                throw CapExceeded("subdividing the sphere needs " + std::to_string(cells) + " cells");
            MappedFacets sigma = complexify_facets(*s.sphere).compose(s.map);
            r.esd_parts = lift_parts(*in.complex, d);
            r.lift = audit_mapped(sigma, *in.complex, r.esd_parts);
            r.seconds["subdivide_lift"] = since(t);
            if (opt.keep_lifts) {
                SphereLift src = sphere_lift_source(s);
                res.lifts.push_back(reconstruct_map(src.source.complex, src.source.set, src.map, *in.complex));
                res.lift_sources.push_back(std::move(src.source));
            }
        }
        res.spheres.push_back(std::move(s));
        res.reports.push_back(std::move(r));
    }
    return res;
}

std::vector<BlowupRow> bench_blowup(int kmax)
{
    if (kmax < 1 || kmax > 12)
        throw std::invalid_argument("bench needs 1 <= kmax <= 12");
    std::vector<BlowupRow> rows;
    for (int k = 1; k <= kmax; ++k) {
        auto x = xk_set(2, k);
        auto t = Clock::now();
        PipelineResult r = run_pipeline(input_from_set(x.set, x.c0), 2);
        BlowupRow row{k, static_cast<size_t>(x.set->size()), 0, since(t), r.ok()};
        if (r.reports.size() != 1)
            row.pass = false;
        else
            row.sphere_tops = r.reports[0].sphere_tops;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace simpi
