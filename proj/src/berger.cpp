#include "simpi/berger.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <limits>

namespace simpi {

Simplex edge_source(const SimplicialSet& x, const PathEdge& e)
{
    return x.face(e.x, e.eps > 0 ? e.i + 1 : e.i);
}

Simplex edge_target(const SimplicialSet& x, const PathEdge& e)
{
    return x.face(e.x, e.eps > 0 ? e.i : e.i + 1);
}

Simplex path_source(const SimplicialSet& x, const Path& p)
{
    return p.is_unit() ? p.unit : edge_source(x, p.edges.front());
}

Simplex path_target(const SimplicialSet& x, const Path& p)
{
    return p.is_unit() ? p.unit : edge_target(x, p.edges.back());
}

Path unit_path(const Simplex& x)
{
    return Path{x.dim, x, {}};
}

Path make_path(const SimplicialSet& x, int level, std::vector<PathEdge> edges)
{
    for (size_t j = 0; j < edges.size(); ++j) {
        const auto& e = edges[j];
        if (e.x.dim != level + 1 || e.i < 0 || e.i > level || (e.eps != 1 && e.eps != -1))
            throw PathError("malformed path edge");
        if (j > 0 && edge_target(x, edges[j - 1]) != edge_source(x, e))
            throw PathError("path edges do not compose");
    }
    Path p{level, {}, std::move(edges)};
    if (!p.edges.empty())
        p.unit = edge_source(x, p.edges.front());
    return p;
}

Path path_inverse(const Path& p)
{
    Path r{p.level, p.unit, {}};
    for (auto it = p.edges.rbegin(); it != p.edges.rend(); ++it)
        r.edges.push_back({it->x, it->i, -it->eps});
    return r;
}

Path path_concat(const SimplicialSet& x, const Path& a, const Path& b)
{
    if (a.level != b.level || path_target(x, a) != path_source(x, b))
        throw PathError("paths do not compose");
    Path r = a;
    if (r.is_unit())
        r.unit = b.unit;
    r.edges.insert(r.edges.end(), b.edges.begin(), b.edges.end());
    return r;
}

Path path_face(const SimplicialSet& x, const Path& p, int j)
{
    if (p.level < 1 || j < 0 || j > p.level)
        throw PathError("path face index out of range");
    Path r{p.level - 1, x.face(path_source(x, p), j), {}};
    for (const auto& e : p.edges) {
        if (j < e.i)
            r.edges.push_back({x.face(e.x, j), e.i - 1, e.eps});
        else if (j > e.i)
            r.edges.push_back({x.face(e.x, j + 1), e.i, e.eps});
    }
    return r;
}

Path path_degen(const SimplicialSet& x, const Path& p, int j)
{
    if (j < 0 || j > p.level)
        throw PathError("path degeneracy index out of range");
    Path r{p.level + 1, degeneracy(path_source(x, p), j), {}};
    for (const auto& e : p.edges) {
        if (j < e.i) {
            r.edges.push_back({degeneracy(e.x, j), e.i + 1, e.eps});
        } else if (j > e.i) {
            r.edges.push_back({degeneracy(e.x, j + 1), e.i, e.eps});
        } else {
            PathEdge a{degeneracy(e.x, e.i), e.i + 1, 1}, b{degeneracy(e.x, e.i + 1), e.i, 1};
            if (e.eps > 0) {
                r.edges.push_back(a);
                r.edges.push_back(b);
            } else {
                r.edges.push_back({b.x, b.i, -1});
                r.edges.push_back({a.x, a.i, -1});
            }
        }
    }
    return r;
}

namespace {

void push_reduced(std::vector<PathEdge>& out, const PathEdge& e)
{
    if (compressible(e))
        return;
    if (!out.empty() && out.back().x == e.x && out.back().i == e.i && out.back().eps == -e.eps)
        out.pop_back();
    else
        out.push_back(e);
}

}  // namespace

Path reduce_compress(const SimplicialSet& x, const Path& p)
{
    Path r{p.level, path_source(x, p), {}};
    for (const auto& e : p.edges)
        push_reduced(r.edges, e);
    return r;
}

Path gamma_x(const SimplicialSet& x, const Simplex& s)
{
    int n = s.dim;
    Path p{n, s, {}};
    Simplex base = s;
    for (int m = 1; m <= n; ++m) {
        Simplex y = base;
        for (int t = n - m + 1; t <= n; ++t)
            y = degeneracy(y, t);
        p.edges.push_back({y, n - m, 1});
        base = x.face(base, n - m);
    }
    return reduce_compress(x, p);
}

Path t_hom(const LoopGroup& gx, const GroupWord& w, int level)
{
    const SimplicialSet& x = gx.space();
    Path out{level, x.point(level), {}};
    std::vector<std::pair<Path, Int>> pieces;
    Int total = 0;
    for (const auto& [g, e] : w.f) {
        if (g.dim != level + 1)
            throw PathError("generator of the wrong level");
        Path piece = path_inverse(gamma_x(x, x.face(g, level + 1)));
        piece.edges.push_back({g, level, 1});
        Path tail = gamma_x(x, x.face(g, level));
        piece.edges.insert(piece.edges.end(), tail.edges.begin(), tail.edges.end());
        piece = reduce_compress(x, piece);
        total += abs(e) * Int(static_cast<unsigned long>(piece.length()));
        pieces.emplace_back(std::move(piece), e);
    }
    if (total > Int(static_cast<unsigned long>(path_length_cap())))
        throw CapExceeded("expanded path would have " + total.get_str() + " edges");
    for (const auto& [piece, e] : pieces) {
        Path step = e > 0 ? piece : path_inverse(piece);
        for (Int r = abs(e); r > 0; --r)
            for (const auto& edge : step.edges)
                push_reduced(out.edges, edge);
    }
    return out;
}

namespace {

// quotient of disjoint standard d-simplices under identifications of faces,
// possibly with degenerate simplices; faces and degeneracies close the relation
class Gluing {
public:
    // handles run by dimension, then copy, then vertex mask
    Gluing(int d, int copies) : d_(d), rank_(1 << (d + 1), -1), masks_(d + 1), base_(d + 2, 0)
    {
        for (int mask = 1; mask < (1 << (d + 1)); ++mask) {
            auto& m = masks_[std::popcount(static_cast<unsigned>(mask)) - 1];
            rank_[mask] = static_cast<int>(m.size());
            m.push_back(mask);
        }
        for (int m = 0; m <= d; ++m)
            base_[m + 1] = base_[m] + static_cast<long>(copies) * static_cast<long>(masks_[m].size());
        if (base_[d + 1] > std::numeric_limits<int>::max())
            throw CapExceeded("sphere gluing has too many cells");
        parent_.resize(size());
        for (int h = 0; h < size(); ++h)
            parent_[h] = h;
        collapse_.resize(size());
    }

    static std::vector<int> vertices(int mask)
    {
        std::vector<int> v;
        for (int i = 0; mask >> i; ++i)
            if (mask >> i & 1)
                v.push_back(i);
        return v;
    }

    int size() const { return static_cast<int>(base_[d_ + 1]); }
    int dim_of(int h) const
    {
        return static_cast<int>(std::upper_bound(base_.begin(), base_.end(), h) - base_.begin()) - 1;
    }
    int handle(int copy, int mask) const
    {
        int m = std::popcount(static_cast<unsigned>(mask)) - 1;
        return static_cast<int>(base_[m] + static_cast<long>(copy) * static_cast<long>(masks_[m].size()) + rank_[mask]);
    }
    std::pair<int, int> owner(int h) const
    {
        int m = dim_of(h);
        long r = h - base_[m], n = static_cast<long>(masks_[m].size());
        return {static_cast<int>(r / n), masks_[m][r % n]};
    }
    std::string name(int h) const
    {
        auto [c, mask] = owner(h);
        std::string out = "c" + std::to_string(c + 1) + ":";
        std::vector<int> verts = vertices(mask);
        for (size_t v = 0; v < verts.size(); ++v)
            out += (v ? "." : "") + std::to_string(verts[v]);
        return out;
    }
    // handles of dimension m, in order
    std::pair<int, int> cells(int m) const { return {static_cast<int>(base_[m]), static_cast<int>(base_[m + 1])}; }

    Simplex nd(int h) const { return Simplex{dim_of(h), h, {}}; }
    Simplex slot(int copy, int mask) const { return nd(handle(copy, mask)); }

    Simplex face(const Simplex& x, int i) const
    {
        if (x.degs.empty()) {
            auto [c, mask] = owner(x.base);
            return nd(handle(c, mask & ~(1 << vertices(mask)[i])));
        }
        int j = x.degs.back();
        Simplex z{x.dim - 1, x.base, {x.degs.begin(), x.degs.end() - 1}};
        if (i == j || i == j + 1)
            return z;
        if (i < j)
            return degeneracy(face(z, i), j - 1);
        return degeneracy(face(z, i - 1), j);
    }

    int find(int h)
    {
        while (parent_[h] != h)
            h = parent_[h] = parent_[parent_[h]];
        return h;
    }

    Simplex canon(const Simplex& s)
    {
        int r = find(s.base);
        Simplex b = collapse_[r] ? canon(*collapse_[r]) : nd(r);
        for (int j : s.degs)
            b = degeneracy(b, j);
        return b;
    }

    void equate(const Simplex& u, const Simplex& v)
    {
        std::deque<std::pair<Simplex, Simplex>> work{{u, v}};
        while (!work.empty()) {
            auto [p, q] = work.front();
            work.pop_front();
            Simplex a = canon(p), b = canon(q);
            if (a == b)
                continue;
            if (a.dim != b.dim)
                throw PathError("gluing simplices of different dimension");
            auto push_faces = [&](const Simplex& l, const Simplex& r) {
                for (int i = 0; i <= l.dim && l.dim > 0; ++i)
                    work.emplace_back(face(l, i), face(r, i));
            };
            if (a.degs == b.degs) {
                int lo = std::min(a.base, b.base), hi = std::max(a.base, b.base);
                parent_[hi] = lo;
                push_faces(nd(a.base), nd(b.base));
            } else if (a.degs.empty()) {
                collapse_[a.base] = b;
                push_faces(a, b);
            } else if (b.degs.empty()) {
                collapse_[b.base] = a;
                push_faces(b, a);
            } else {
                auto section = [&](Simplex s, const std::vector<int>& degs) {
                    for (auto it = degs.rbegin(); it != degs.rend(); ++it)
                        s = face(s, *it);
                    return s;
                };
                Simplex a0 = nd(a.base), b0 = nd(b.base);
                Simplex fa = section(b, a.degs), fb = section(a, b.degs);
                if (canon(fa) == canon(a0) && canon(fb) == canon(b0))
                    throw PathError("inconsistent degenerate identification");
                work.emplace_back(a0, fa);
                work.emplace_back(b0, fb);
            }
        }
    }

    bool is_root(int h) { return find(h) == h && !collapse_[h]; }

private:
    int d_;
    std::vector<int> rank_;
    std::vector<std::vector<int>> masks_;
    std::vector<long> base_;
    std::vector<int> parent_;
    std::vector<std::optional<Simplex>> collapse_;
};

struct Tracked {
    int copy;
    int mask;
    PathEdge edge;
    size_t position;
};

std::vector<Tracked> tracked_face(const SimplicialSet& x, const std::vector<Tracked>& path, int j)
{
    std::vector<Tracked> out;
    for (const auto& t : path) {
        const PathEdge& e = t.edge;
        if (j == e.i)
            continue;
        int drop = j < e.i ? j : j + 1;
        auto verts = Gluing::vertices(t.mask);
        PathEdge f = j < e.i ? PathEdge{x.face(e.x, j), e.i - 1, e.eps} : PathEdge{x.face(e.x, j + 1), e.i, e.eps};
        out.push_back({t.copy, t.mask & ~(1 << verts[drop]), f, out.size()});
    }
    return out;
}

}  // namespace

SphereMap sphere_of(std::shared_ptr<const SimplicialSet> xp, const Path& gamma)
{
    const SimplicialSet& x = *xp;
    int d = gamma.level + 1;
    SphereMap out;
    out.path = gamma;
    if (gamma.is_unit()) {
        if (!x.is_point(gamma.unit))
            throw PathError("unit path away from the basepoint");
        out.sphere = std::make_shared<SimplicialSet>();
        out.sphere->add("*", 0, {});
        out.map = SimplicialMap{out.sphere, xp, {x.point(0)}};
        return out;
    }
    if (!x.is_point(path_source(x, gamma)) || !x.is_point(path_target(x, gamma)))
        throw PathError("path is not a loop at the basepoint");
    if (reduce_compress(x, gamma) != gamma)
        throw PathError("path is not reduced and compressed");
    for (int i = 0; i <= gamma.level && gamma.level > 0; ++i)
        if (!reduce_compress(x, path_face(x, gamma, i)).is_unit())
            throw PathError("path is not spherical");

    int k = static_cast<int>(gamma.length());
    int full = (1 << (d + 1)) - 1;
    Gluing glue(d, k);
    auto src_face = [](const PathEdge& e) { return e.eps > 0 ? e.i + 1 : e.i; };
    auto tgt_face = [](const PathEdge& e) { return e.eps > 0 ? e.i : e.i + 1; };

    // consecutive simplices share the target/source face
    for (int j = 0; j + 1 < k; ++j)
        glue.equate(glue.slot(j, full & ~(1 << tgt_face(gamma.edges[j]))),
                    glue.slot(j + 1, full & ~(1 << src_face(gamma.edges[j + 1]))));

    std::vector<Tracked> top;
    for (int j = 0; j < k; ++j)
        top.push_back({j, full, gamma.edges[j], static_cast<size_t>(j)});

    // compressible edges in every iterated face d_{i_1}...d_{i_l}, i_1 < ... < i_l
    std::function<void(const std::vector<Tracked>&, int)> compress = [&](const std::vector<Tracked>& p, int below) {
        for (const auto& t : p)
            if (compressible(t.edge)) {
                Simplex s = glue.slot(t.copy, t.mask);
                glue.equate(s, degeneracy(glue.face(s, t.edge.i), t.edge.i));
            }
        int level = p.empty() ? 0 : p.front().edge.x.dim - 1;
        if (p.empty() || level == 0)
            return;
        for (int j = 0; j < below && j <= level; ++j)
            compress(tracked_face(x, p, j), j);
    };
    compress(top, d);

    // cancelling pairs in each face d_k gamma
    for (int f = 0; f < d; ++f) {
        std::vector<Tracked> stack;
        for (const auto& t : tracked_face(x, top, f)) {
            if (compressible(t.edge))
                continue;
            if (!stack.empty() && stack.back().edge.x == t.edge.x && stack.back().edge.i == t.edge.i &&
                stack.back().edge.eps == -t.edge.eps) {
                out.pairings.push_back({f, stack.back().position, t.position});
                glue.equate(glue.slot(stack.back().copy, stack.back().mask), glue.slot(t.copy, t.mask));
                stack.pop_back();
            } else {
                stack.push_back(t);
            }
        }
        if (!stack.empty())
            throw PathError("face word does not cancel");
    }

    // collapse the ends to the basepoint
    auto to_point = [&](int copy, int mask) {
        Simplex s = glue.slot(copy, mask);
        Simplex p = glue.slot(copy, mask & -mask);
        for (int t = 0; t < d - 1; ++t)
            p = degeneracy(p, 0);
        glue.equate(s, p);
    };
    to_point(0, full & ~(1 << src_face(gamma.edges.front())));
    to_point(k - 1, full & ~(1 << tgt_face(gamma.edges.back())));

    auto image_of = [&](int h) {
        auto [copy, mask] = glue.owner(h);
        return x.restrict(gamma.edges[copy].x, Gluing::vertices(mask));
    };

    out.sphere = std::make_shared<SimplicialSet>();
    std::vector<int> fresh(glue.size(), -1);
    std::vector<Simplex> image;
    auto translate = [&](Simplex s) {
        s = glue.canon(s);
        s.base = fresh.at(s.base);
        if (s.base < 0)
            throw PathError("face of a sphere simplex was not created");
        return s;
    };
    auto emit = [&](int h) {
        std::vector<Simplex> faces;
        int m = glue.dim_of(h);
        for (int i = 0; i <= m && m > 0; ++i)
            faces.push_back(translate(glue.face(glue.nd(h), i)));
        fresh[h] = out.sphere->add(glue.name(h), m, faces);
        image.push_back(image_of(h));
    };
    int start = glue.canon(glue.slot(0, 1)).base;
    emit(start);
    for (int m = 0; m <= d; ++m)
        for (auto [lo, hi] = glue.cells(m); lo < hi; ++lo)
            if (lo != start && glue.is_root(lo))
                emit(lo);
    out.map = SimplicialMap{out.sphere, xp, image};

    for (int h = 0; h < glue.size(); ++h)
        if (out.map(translate(glue.nd(h))) != image_of(h))
            throw PathError("gluing is not compatible with the map to the target");
    for (int j = 0; j < k; ++j) {
        out.tops.push_back(translate(glue.slot(j, full)));
        const PathEdge& e = gamma.edges[j];
        out.signs.push_back((e.i - (d - 1)) % 2 ? -e.eps : e.eps);
    }
    return out;
}

Chain sphere_fundamental(const SphereMap& s)
{
    Chain c;
    for (size_t j = 0; j < s.tops.size(); ++j)
        if (!s.tops[j].degenerate())
            c.add(s.tops[j], s.signs[j]);
    return c;
}

Chain sphere_image(const SphereMap& s)
{
    Chain c;
    for (size_t j = 0; j < s.tops.size(); ++j) {
        Simplex y = s.map(s.tops[j]);
        if (!y.degenerate())
            c.add(y, s.signs[j]);
    }
    return c;
}

SphereAudit audit_sphere(const SphereMap& s)
{
    SphereAudit a;
    const SimplicialSet& sp = *s.sphere;
    int d = s.path.level + 1;
    a.map_valid = validate_map(s.map).empty();
    a.identities = sp.check_identities().empty();
    if (s.path.is_unit()) {
        a.euler = a.pseudomanifold = a.fundamental_cycle = sp.size() == 1;
        return a;
    }
    int chi = 0;
    for (int n = 0; n <= sp.max_dim(); ++n)
        chi += (n % 2 ? -1 : 1) * static_cast<int>(sp.cells(n).size());
    a.euler = chi == 1 + (d % 2 ? -1 : 1);
    std::map<int, int> incidence;
    for (int h : sp.cells(d))
        for (const auto& f : sp.faces_of(h))
            if (!f.degenerate())
                ++incidence[f.base];
    a.pseudomanifold = sp.max_dim() == d && incidence.size() == sp.cells(d - 1).size();
    for (const auto& [h, n] : incidence)
        a.pseudomanifold = a.pseudomanifold && n == 2;
    Chain fund = sphere_fundamental(s);
    a.fundamental_cycle = !fund.zero() && boundary(sp, fund).zero();
    return a;
}

}  // namespace simpi
