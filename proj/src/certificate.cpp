#include <algorithm>
#include <queue>
#include <set>

#include "simpi/loopgroup.hpp"

namespace simpi {

namespace {

using Edge = std::array<int, 2>;
using Cycle = std::array<int, 3>;  // x -> y -> z -> x

std::vector<Cycle> invert(const std::vector<Cycle>& e)
{
    std::vector<Cycle> r;
    r.reserve(e.size());
    for (auto it = e.rbegin(); it != e.rend(); ++it)
        r.push_back({(*it)[0], (*it)[2], (*it)[1]});
    return r;
}

}  // namespace

ComplexCertificate greedy_certificate(const Complex& k)
{
    std::set<Edge> tree;
    std::vector<std::vector<int>> adj(k.vertices);
    for (auto e : k.tree) {
        if (e[0] > e[1])
            std::swap(e[0], e[1]);
        tree.insert(e);
        adj[e[0]].push_back(e[1]);
        adj[e[1]].push_back(e[0]);
    }
    std::vector<int> parent(k.vertices, -1);
    std::queue<int> bfs;
    bfs.push(k.root);
    parent[k.root] = k.root;
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (int w : adj[v])
            if (parent[w] < 0) {
                parent[w] = v;
                bfs.push(w);
            }
    }
    auto to_root = [&](int v) {
        std::vector<int> p{v};
        while (v != k.root) {
            if (parent[v] < 0 || parent[v] == v)
                throw CertificateError("tree does not reach every vertex");
            v = parent[v];
            p.push_back(v);
        }
        return p;
    };

    std::vector<Edge> open;
    std::vector<std::array<int, 3>> triangles;
    for (const auto& s : k.closure()) {
        if (s.size() == 2 && !tree.count({s[0], s[1]}))
            open.push_back({s[0], s[1]});
        if (s.size() == 3)
            triangles.push_back({s[0], s[1], s[2]});
    }
    std::map<Edge, std::vector<Cycle>> expr;
    auto known = [&](int u, int v) {
        Edge e{std::min(u, v), std::max(u, v)};
        return tree.count(e) || expr.count(e);
    };
    auto expand = [&](int u, int v) -> std::vector<Cycle> {
        Edge e{std::min(u, v), std::max(u, v)};
        if (tree.count(e))
            return {};
        return u < v ? expr.at(e) : invert(expr.at(e));
    };
    size_t remaining = open.size();
    while (remaining) {
        bool progress = false;
        for (const auto& t : triangles) {
            int missing = 0;
            Edge target{};
            int third = -1;
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b)
                    if (!known(t[a], t[b])) {
                        ++missing;
                        target = {t[a], t[b]};
                        third = t[3 - a - b];
                    }
            if (missing != 1)
                continue;
            auto [u, v] = target;
            std::vector<Cycle> e{{u, v, third}};
            for (const auto& c : expand(u, third))
                e.push_back(c);
            for (const auto& c : expand(third, v))
                e.push_back(c);
            expr[target] = std::move(e);
            --remaining;
            progress = true;
        }
        if (!progress)
            throw CertificateError("greedy elimination is stuck; supply a certificate");
    }

    ComplexCertificate cert;
    for (const auto& alpha : open) {
        EdgeContraction c;
        c.a.push_back(k.root);
        auto step = [&](int to, int via) {
            c.a.push_back(to);
            c.b.push_back(via);
        };
        for (const auto& [x, y, z] : expr.at(alpha)) {
            auto down = to_root(x);
            for (auto it = down.rbegin() + 1; it != down.rend(); ++it)
                step(*it, *it);
            step(z, y);
            step(x, x);
            for (size_t i = 1; i < down.size(); ++i)
                step(down[i], down[i]);
        }
        cert[alpha] = std::move(c);
    }
    return cert;
}

}  // namespace simpi
