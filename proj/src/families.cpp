#include "simpi/families.hpp"
#include "simpi/subdivide.hpp"

#include <algorithm>

namespace simpi {

XkFamily xk_set(int d, int k)
{
    if (d < 2 || k < 1)
        throw std::invalid_argument("xk_set needs d >= 2 and k >= 1");
    XkFamily out;
    out.set = std::make_shared<SimplicialSet>();
    auto& x = *out.set;
    x.add("*", 0, {});
    std::vector<Simplex> flat(d, x.point(d - 2));
    for (int i = 1; i <= k; ++i)
        out.sigma.push_back(x.add("s" + std::to_string(i), d - 1, flat));
    auto top = [&](std::vector<Simplex> lead) {
        while (static_cast<int>(lead.size()) < d + 1)
            lead.push_back(x.point(d - 1));
        return lead;
    };
    auto sig = [&](int i) { return x.nd(out.sigma[i - 1]); };
    out.a = x.add("A", d, top({sig(1)}));
    for (int i = 1; i < k; ++i)
        out.c.push_back(x.add("C" + std::to_string(i), d, top({sig(i), sig(i + 1), sig(i)})));
    out.b = x.add("B", d, top({sig(k)}));

    if (d == 2) {
        LoopGroup gx(out.set);
        LoopContraction c;
        GroupWord prev(x.nd(out.a));
        c.c0[sig(1)] = prev;
        for (int i = 1; i < k; ++i) {
            GroupWord next = gx.degen(GroupWord(sig(i + 1)), 0) * GroupWord(x.nd(out.c[i - 1]), -1) *
                             gx.degen(GroupWord(sig(i), -1), 0) * prev * prev;
            c.c0[sig(i + 1)] = next;
            prev = next;
        }
        out.c0 = std::move(c);
    }
    return out;
}

Chain xk_generator(const XkFamily& x)
{
    int k = static_cast<int>(x.sigma.size());
    Chain z;
    Int p = 1;
    p <<= (k - 1);
    z.add(x.set->nd(x.a), p);
    for (int i = 1; i < k; ++i) {
        p >>= 1;
        z.add(x.set->nd(x.c[i - 1]), -p);
    }
    z.add(x.set->nd(x.b), -1);
    return z;
}

Complex suspension(const Complex& k)
{
    Complex out;
    int north = k.vertices, south = k.vertices + 1;
    out.vertices = k.vertices + 2;
    for (const auto& f : maximal_simplices(k))
        for (int apex : {north, south}) {
            auto g = f;
            g.push_back(apex);
            out.facets.push_back(g);
        }
    out.tree = k.tree;
    out.tree.push_back({k.root, north});
    out.tree.push_back({k.root, south});
    out.root = k.root;
    return out;
}

MoebiusTower moebius_tower(int k, int d)
{
    if (d == 3) {
        MoebiusTower flat = moebius_tower(k, 2), out;
        out.complex = suspension(flat.complex);
        int north = flat.complex.vertices;
        out.a = flat.a;
        out.b = flat.b;
        std::sort(out.a.begin(), out.a.end());
        std::sort(out.b.begin(), out.b.end());
        out.a.push_back(north);
        out.b.push_back(north);
        out.certificate = greedy_certificate(out.complex);
        return out;
    }
    if (d != 2)
        throw std::invalid_argument("moebius_tower is implemented for d = 2, 3 only");
    if (k < 1)
        throw std::invalid_argument("moebius_tower needs k >= 1");
    MoebiusTower out;
    auto& cx = out.complex;
    std::vector<int> outer{0, 1, 2};
    int next = 3;
    auto tri = [&](int a, int b, int c) {
        std::vector<int> f{a, b, c};
        std::sort(f.begin(), f.end());
        cx.facets.push_back(f);
    };
    out.a = outer;
    tri(outer[0], outer[1], outer[2]);
    for (int layer = 0; layer < k; ++layer) {
        std::vector<int> hex(6), mid(3);
        for (auto& v : hex)
            v = next++;
        for (auto& v : mid)
            v = next++;
        // annulus: boundary triangle onto the hexagon, degree one
        for (int i = 0; i < 3; ++i) {
            int t0 = outer[i], t1 = outer[(i + 1) % 3];
            tri(t0, hex[2 * i], hex[2 * i + 1]);
            tri(t0, hex[2 * i + 1], t1);
            tri(t1, hex[2 * i + 1], hex[(2 * i + 2) % 6]);
            cx.tree.push_back({t0, hex[2 * i]});
        }
        // mapping cylinder of the hexagon wrapping twice around the middle triangle
        for (int j = 0; j < 6; ++j) {
            tri(hex[j], hex[(j + 1) % 6], mid[(j + 1) % 3]);
            tri(hex[j], mid[j % 3], mid[(j + 1) % 3]);
            cx.tree.push_back({hex[j], mid[j % 3]});
        }
        outer = mid;
    }
    out.b = outer;
    tri(outer[0], outer[1], outer[2]);
    cx.tree.push_back({outer[0], outer[1]});
    cx.tree.push_back({outer[1], outer[2]});
    cx.vertices = next;
    cx.root = outer[0];
    out.certificate = greedy_certificate(cx);
    return out;
}

std::shared_ptr<SimplicialSet> sphere_set(int d)
{
    if (d < 1)
        throw std::invalid_argument("sphere_set needs d >= 1");
    auto s = std::make_shared<SimplicialSet>();
    s->add("*", 0, {});
    s->add("sigma", d, std::vector<Simplex>(d + 1, s->point(d - 1)));
    return s;
}

Complex sphere_complex(int d)
{
    Complex k;
    k.vertices = d + 2;
    for (int skip = 0; skip < d + 2; ++skip) {
        std::vector<int> f;
        for (int v = 0; v < d + 2; ++v)
            if (v != skip)
                f.push_back(v);
        k.facets.push_back(f);
    }
    for (int v = 1; v < d + 2; ++v)
        k.tree.push_back({0, v});
    return k;
}

std::shared_ptr<SimplicialSet> wedge(const std::vector<std::shared_ptr<const SimplicialSet>>& parts)
{
    auto w = std::make_shared<SimplicialSet>();
    int star = w->add("*", 0, {});
    for (size_t p = 0; p < parts.size(); ++p) {
        const auto& x = *parts[p];
        if (x.cells(0).size() != 1)
            throw std::invalid_argument("wedge summands must be 0-reduced");
        std::vector<int> handle(x.size(), -1);
        handle[x.basepoint] = star;
        auto carry = [&](const Simplex& s) {
            Simplex r = s;
            r.base = handle[s.base];
            return r;
        };
        for (int n = 1; n <= x.max_dim(); ++n)
            for (int h : x.cells(n)) {
                std::vector<Simplex> faces;
                for (const auto& f : x.faces_of(h))
                    faces.push_back(carry(f));
                handle[h] = w->add(x.name(h) + "_" + std::to_string(p + 1), n, std::move(faces));
            }
    }
    return w;
}

}  // namespace simpi
