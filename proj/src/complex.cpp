#include <algorithm>
#include <numeric>
#include <set>

#include "simpi/sset.hpp"

namespace simpi {

std::vector<std::vector<int>> Complex::closure() const
{
    std::set<std::vector<int>> all;
    for (int v = 0; v < vertices; ++v)
        all.insert({v});
    for (auto f : facets) {
        std::sort(f.begin(), f.end());
        int n = static_cast<int>(f.size());
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> s;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1)
                    s.push_back(f[i]);
            all.insert(std::move(s));
        }
    }
    std::vector<std::vector<int>> out(all.begin(), all.end());
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
}

int Complex::dimension() const
{
    int d = vertices > 0 ? 0 : -1;
    for (const auto& f : facets)
        d = std::max(d, static_cast<int>(f.size()) - 1);
    return d;
}

static std::string tuple_name(const std::vector<int>& s)
{
    std::string n;
    for (size_t i = 0; i < s.size(); ++i)
        n += (i ? "." : "") + std::to_string(s[i]);
    return n;
}

ComplexSet from_complex(const Complex& k)
{
    ComplexSet out;
    out.set = std::make_shared<SimplicialSet>();
    for (const auto& s : k.closure()) {
        int n = static_cast<int>(s.size()) - 1;
        std::vector<Simplex> faces;
        if (n > 0)
            for (int i = 0; i <= n; ++i) {
                auto t = s;
                t.erase(t.begin() + i);
                faces.push_back(out.set->nd(out.handle.at(t)));
            }
        int h = out.set->add(tuple_name(s), n, std::move(faces));
        out.handle[s] = h;
        out.vertices_of.push_back(s);
    }
    if (out.handle.count({k.root}))
        out.set->basepoint = out.handle.at({k.root});
    return out;
}

TreeQuotient quotient_tree(std::shared_ptr<const SimplicialSet> x, const std::vector<int>& tree_edges)
{
    const auto& src = *x;
    int nv = static_cast<int>(src.cells(0).size());
    std::vector<int> parent(src.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    std::set<int> tree(tree_edges.begin(), tree_edges.end());
    for (int e : tree) {
        if (src.dim_of(e) != 1)
            throw SimplexError("tree element is not an edge");
        const auto& f = src.faces_of(e);
        if (f[0].degenerate() || f[1].degenerate())
            throw SimplexError("tree edge is degenerate");
        int a = root(f[0].base), b = root(f[1].base);
        if (a == b)
            throw SimplexError("tree contains a cycle");
        parent[a] = b;
    }
    if (static_cast<int>(tree.size()) != nv - 1)
        throw SimplexError("tree is not spanning");

    auto out = std::make_shared<SimplicialSet>();
    int base = src.basepoint >= 0 ? src.basepoint : src.cells(0).front();
    std::vector<Simplex> image(src.size());
    int star = out->add(src.name(base), 0, {});
    out->basepoint = star;
    for (int n = 0; n <= src.max_dim(); ++n)
        for (int h : src.cells(n)) {
            if (n == 0) {
                image[h] = out->nd(star);
                continue;
            }
            if (tree.count(h)) {
                image[h] = out->point(1);
                continue;
            }
            std::vector<Simplex> faces;
            for (const auto& f : src.faces_of(h)) {
                Simplex r = image[f.base];
                for (int j : f.degs)
                    r = degeneracy(r, j);
                faces.push_back(r);
            }
            image[h] = out->nd(out->add(src.name(h), n, std::move(faces)));
        }
    TreeQuotient q{out, {x, out, std::move(image)}};
    return q;
}

TreeQuotient quotient_tree(const ComplexSet& xs, const Complex& k)
{
    std::vector<int> edges;
    for (auto e : k.tree) {
        if (e[0] > e[1])
            std::swap(e[0], e[1]);
        auto it = xs.handle.find({e[0], e[1]});
        if (it == xs.handle.end())
            throw SimplexError("tree edge not in complex");
        edges.push_back(it->second);
    }
    return quotient_tree(xs.set, edges);
}

}  // namespace simpi
