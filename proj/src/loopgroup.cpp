#include "simpi/loopgroup.hpp"

#include <algorithm>
#include <set>

namespace simpi {

GroupWord LoopGroup::gen_face(const Simplex& g, int i) const
{
    int n = g.dim - 1;
    if (n < 1 || i < 0 || i > n)
        throw SimplexError("loop group face index out of range");
    if (i < n)
        return bar(x_->face(g, i));
    return bar(x_->face(g, n + 1), -1) * bar(x_->face(g, n));
}

GroupWord LoopGroup::face(const GroupWord& w, int i) const
{
    return substitute<Simplex, Simplex>(w, [&](const Simplex& g) { return gen_face(g, i); });
}

GroupWord LoopGroup::degen(const GroupWord& w, int i) const
{
    return substitute<Simplex, Simplex>(w, [&](const Simplex& g) { return gen_degeneracy(g, i); });
}

bool LoopGroup::less(const Simplex& a, const Simplex& b) const
{
    if (a.dim != b.dim)
        return a.dim < b.dim;
    if (a.base != b.base) {
        const auto& na = x_->name(a.base);
        const auto& nb = x_->name(b.base);
        if (na != nb)
            return na < nb;
        return a.base < b.base;
    }
    return a.degs < b.degs;
}

std::string LoopGroup::describe(const GroupWord& w) const
{
    if (w.empty())
        return "1";
    std::string s;
    for (const auto& [g, e] : w.f) {
        if (!s.empty())
            s += " ";
        s += x_->describe(g);
        if (e != 1)
            s += "^" + e.get_str();
    }
    return s;
}

MooreSplit moore_normalize(const LoopGroup& gx, const GroupWord& w, int level)
{
    GroupWord x = w;
    std::vector<GroupWord> peeled;
    for (int i = level; i >= 1; --i) {
        GroupWord p = gx.degen(gx.face(x, i), i - 1);
        x = x * p.inverse();
        peeled.push_back(std::move(p));
    }
    GroupWord tail;
    for (auto it = peeled.rbegin(); it != peeled.rend(); ++it)
        tail *= *it;
    return {x, tail};
}

bool is_moore(const LoopGroup& gx, const GroupWord& w, int level)
{
    for (int j = 1; j <= level; ++j)
        if (!gx.face(w, j).empty())
            return false;
    return true;
}

bool is_spherical(const LoopGroup& gx, const GroupWord& w, int level)
{
    return is_moore(gx, w, level) && (level == 0 || gx.face(w, 0).empty());
}

std::vector<Simplex> check_loop_contraction(const LoopGroup& gx, const LoopContraction& c)
{
    std::vector<Simplex> bad;
    for (int h : gx.space().cells(1)) {
        Simplex g = gx.space().nd(h);
        auto it = c.c0.find(g);
        GroupWord w = it == c.c0.end() ? GroupWord{} : it->second;
        if (gx.face(w, 0) != GroupWord(g) || !gx.face(w, 1).empty())
            bad.push_back(g);
    }
    return bad;
}

LoopContraction certificate_to_contraction(const Complex& k, const ComplexSet& xs, const TreeQuotient& q,
                                           const ComplexCertificate& cert)
{
    const SimplicialSet& x = *q.set;
    LoopGroup gx(q.set);
    std::set<std::vector<int>> faces;
    for (const auto& s : k.closure())
        faces.insert(s);
    std::set<std::array<int, 2>> tree;
    for (auto e : k.tree) {
        if (e[0] > e[1])
            std::swap(e[0], e[1]);
        tree.insert(e);
    }

    auto project = [&](std::vector<int> verts) {
        std::vector<int> distinct = verts;
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        auto it = xs.handle.find(distinct);
        if (it == xs.handle.end())
            throw CertificateError("certificate triangle missing from the complex");
        std::vector<int> theta;
        for (int v : verts)
            theta.push_back(static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), v) - distinct.begin()));
        return q.projection(xs.set->restrict(xs.set->nd(it->second), theta));
    };

    LoopContraction out;
    for (const auto& s : k.closure()) {
        if (s.size() != 2 || tree.count({s[0], s[1]}))
            continue;
        std::array<int, 2> alpha{s[0], s[1]};
        auto it = cert.find(alpha);
        if (it == cert.end())
            throw CertificateError("no contraction for edge " + std::to_string(s[0]) + "." + std::to_string(s[1]));
        const auto& av = it->second.a;
        const auto& bv = it->second.b;
        if (av.empty() || bv.size() + 1 != av.size())
            throw CertificateError("malformed contraction sequence");

        // the boundary loop must equal alpha once tree and degenerate edges are erased
        std::vector<int> loop{av[0]};
        for (size_t i = 0; i < bv.size(); ++i) {
            loop.push_back(bv[i]);
            loop.push_back(av[i + 1]);
        }
        for (size_t i = av.size() - 1; i-- > 0;)
            loop.push_back(av[i]);
        Word<std::array<int, 2>> letters;
        for (size_t i = 0; i + 1 < loop.size(); ++i) {
            int u = loop[i], v = loop[i + 1];
            std::array<int, 2> e{std::min(u, v), std::max(u, v)};
            if (u == v || tree.count(e))
                continue;
            letters.push(e, u < v ? 1 : -1);
        }
        if (letters != Word<std::array<int, 2>>(alpha))
            throw CertificateError("contraction loop does not reduce to its edge");

        GroupWord g;
        for (size_t i = 0; i < bv.size(); ++i) {
            int a0 = av[i], a1 = av[i + 1], b = bv[i];
            std::vector<int> v{a0, a1, b};
            std::sort(v.begin(), v.end());
            if (!faces.count([&] {
                    auto d = v;
                    d.erase(std::unique(d.begin(), d.end()), d.end());
                    return d;
                }()))
                throw CertificateError("certificate triangle missing from the complex");
            Simplex sigma = project(v);
            GroupWord sb = gx.bar(sigma);
            GroupWord s0d0 = gx.degen(gx.face(sb, 0), 0);
            GroupWord s0d1 = gx.degen(gx.bar(x.face(sigma, 1)), 0);
            GroupWord s0d2 = gx.degen(gx.bar(x.face(sigma, 2)), 0);
            auto is = [&](int p, int q2, int r) { return v[0] == p && v[1] == q2 && v[2] == r; };
            GroupWord gi;
            if (is(b, a0, a1))
                gi = sb;
            else if (is(a0, a1, b))
                gi = s0d2 * sb * s0d0.inverse();
            else if (is(a1, b, a0))
                gi = s0d0.inverse() * sb * s0d1.inverse();
            else if (is(b, a1, a0))
                gi = sb.inverse();
            else if (is(a1, a0, b))
                gi = s0d0 * sb.inverse() * s0d2.inverse();
            else
                gi = s0d1 * sb.inverse() * s0d0;
            g *= gi;
        }
        Simplex gen = q.projection.image.at(xs.handle.at({alpha[0], alpha[1]}));
        GroupWord c = gx.degen(gx.face(g, 1), 0) * g.inverse();
        if (gx.face(c, 0) != gx.bar(gen) || !gx.face(c, 1).empty())
            throw CertificateError("contraction does not bound its edge");
        out.c0[gen] = c;
    }
    return out;
}

}  // namespace simpi
