#include <functional>
#include <set>

#include "doctest.h"
#include "simpi/sset.hpp"

using namespace simpi;

namespace {

std::shared_ptr<SimplicialSet> two_sphere()
{
    auto s = std::make_shared<SimplicialSet>();
    s->add("*", 0, {});
    Simplex e = s->point(1);
    s->add("sigma", 2, {e, e, e});
    return s;
}

// independent evaluation of z o theta by peeling missing vertices off one at a time
Simplex evaluate(const SimplicialSet& x, int base, std::vector<int> theta)
{
    int n = x.dim_of(base);
    std::vector<bool> hit(n + 1, false);
    for (int v : theta)
        hit[v] = true;
    for (int i = n; i >= 0; --i) {
        if (hit[i])
            continue;
        Simplex f = x.faces_of(base)[i];
        std::vector<int> c = collapse_map(f);
        for (int& v : theta)
            v = c[v > i ? v - 1 : v];
        return evaluate(x, f.base, theta);
    }
    Simplex r{static_cast<int>(theta.size()) - 1, base, {}};
    for (size_t l = 0; l + 1 < theta.size(); ++l)
        if (theta[l] == theta[l + 1])
            r.degs.push_back(static_cast<int>(l));
    return r;
}

std::vector<Simplex> all_degenerate(const SimplicialSet& x, int depth)
{
    std::vector<Simplex> out;
    for (int h = 0; h < x.size(); ++h)
        out.push_back(x.nd(h));
    size_t start = 0;
    for (int k = 0; k < depth; ++k) {
        size_t end = out.size();
        for (size_t i = start; i < end; ++i)
            for (int j = 0; j <= out[i].dim; ++j)
                out.push_back(degeneracy(out[i], j));
        start = end;
    }
    std::set<Simplex> uniq(out.begin(), out.end());
    return {uniq.begin(), uniq.end()};
}

int euler(const Complex& k)
{
    int chi = 0;
    for (const auto& s : k.closure())
        chi += s.size() % 2 ? 1 : -1;
    return chi;
}

long fubini(int n)
{
    std::vector<std::vector<long>> c(n + 1, std::vector<long>(n + 1, 0));
    for (int i = 0; i <= n; ++i) {
        c[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    std::vector<long> a(n + 1, 0);
    a[0] = 1;
    for (int m = 1; m <= n; ++m)
        for (int k = 1; k <= m; ++k)
            a[m] += c[m][k] * a[m - k];
    return a[n];
}

Complex tetra_boundary()
{
    Complex k;
    k.vertices = 4;
    k.facets = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    k.tree = {{0, 1}, {0, 2}, {0, 3}};
    return k;
}

}  // namespace

TEST_CASE("degeneracy canonical form")
{
    Simplex y{1, 0, {}};
    CHECK(degeneracy(y, 0).degs == std::vector<int>{0});
    CHECK(degeneracy(degeneracy(y, 0), 0).degs == std::vector<int>{0, 1});
    Simplex s2y = degeneracy(Simplex{2, 0, {}}, 2);
    CHECK(degeneracy(s2y, 0).degs == std::vector<int>{0, 3});
    CHECK_THROWS_AS(degeneracy(y, 3), SimplexError);
}

TEST_CASE("degeneracy agrees with composing surjections")
{
    for (int n = 0; n <= 3; ++n) {
        std::function<void(Simplex, int)> walk = [&](Simplex x, int left) {
            if (!left)
                return;
            for (int j = 0; j <= x.dim; ++j) {
                Simplex r = degeneracy(x, j);
                std::vector<int> th = collapse_map(x), composed;
                for (int l = 0; l <= x.dim + 1; ++l)
                    composed.push_back(th[l <= j ? l : l - 1]);
                CHECK(collapse_map(r) == composed);
                walk(r, left - 1);
            }
        };
        walk(Simplex{n, 0, {}}, 3);
    }
}

TEST_CASE("faces of degenerate simplices match the peeling oracle")
{
    auto s2 = two_sphere();
    auto ks = from_complex(tetra_boundary());
    auto q = quotient_tree(ks, tetra_boundary());
    for (auto* x : {s2.get(), ks.set.get(), q.set.get()})
        for (const Simplex& s : all_degenerate(*x, 3)) {
            if (s.dim == 0)
                continue;
            std::vector<int> th = collapse_map(s);
            for (int i = 0; i <= s.dim; ++i) {
                std::vector<int> t = th;
                t.erase(t.begin() + i);
                CHECK(x->face(s, i) == evaluate(*x, s.base, t));
            }
        }
}

TEST_CASE("simplicial identities on stored and degenerate simplices")
{
    auto ks = from_complex(tetra_boundary());
    auto q = quotient_tree(ks, tetra_boundary());
    auto s2 = two_sphere();
    for (auto* x : {s2.get(), ks.set.get(), q.set.get()}) {
        CHECK(x->check_identities().empty());
        for (const Simplex& s : all_degenerate(*x, 2)) {
            for (int i = 0; i <= s.dim; ++i) {
                Simplex si = degeneracy(s, i);
                CHECK(x->face(si, i) == s);
                CHECK(x->face(si, i + 1) == s);
            }
            for (int j = 1; j <= s.dim && s.dim >= 2; ++j)
                for (int i = 0; i < j; ++i)
                    CHECK(x->face(x->face(s, j), i) == x->face(x->face(s, i), j - 1));
        }
    }
}

TEST_CASE("face of the sphere model and of s0 v")
{
    auto s = two_sphere();
    CHECK(s->face(s->nd(1), 0) == s->point(1));
    CHECK(s->face(s->point(1), 0) == s->nd(0));
    CHECK(s->reduced_level() == 1);
    CHECK_THROWS_AS(s->face(s->nd(1), 3), SimplexError);
}

TEST_CASE("from_complex counts")
{
    Complex tri;
    tri.vertices = 3;
    tri.facets = {{0, 1}, {1, 2}, {0, 2}};
    auto t = from_complex(tri);
    CHECK(t.set->cells(0).size() == 3);
    CHECK(t.set->cells(1).size() == 3);
    auto ks = from_complex(tetra_boundary());
    CHECK(ks.set->cells(0).size() == 4);
    CHECK(ks.set->cells(1).size() == 6);
    CHECK(ks.set->cells(2).size() == 4);
    Complex edge;
    edge.vertices = 2;
    edge.facets = {{0, 1}};
    CHECK(from_complex(edge).set->size() == 3);

    Complex again;
    again.vertices = 4;
    for (const auto& s : tetra_boundary().closure())
        again.facets.push_back(s);
    CHECK(again.closure() == tetra_boundary().closure());
}

TEST_CASE("quotient by a spanning tree")
{
    Complex tri;
    tri.vertices = 3;
    tri.facets = {{0, 1}, {1, 2}, {0, 2}};
    tri.tree = {{0, 1}, {1, 2}};
    auto q = quotient_tree(from_complex(tri), tri);
    CHECK(q.set->cells(0).size() == 1);
    CHECK(q.set->cells(1).size() == 1);
    CHECK(validate_map(q.projection).empty());

    auto k = tetra_boundary();
    auto qk = quotient_tree(from_complex(k), k);
    CHECK(qk.set->cells(1).size() == 3);
    CHECK(qk.set->cells(2).size() == 4);
    CHECK(qk.set->reduced_level() >= 0);
    CHECK(validate_map(qk.projection).empty());
    auto ks = from_complex(k);
    for (auto e : k.tree)
        CHECK(qk.projection.image[ks.handle.at({e[0], e[1]})] == qk.set->point(1));

    Complex edge;
    edge.vertices = 2;
    edge.facets = {{0, 1}};
    edge.tree = {{0, 1}};
    CHECK(quotient_tree(from_complex(edge), edge).set->size() == 1);

    Complex bad = tri;
    bad.tree = {{0, 1}};
    CHECK_THROWS_AS(quotient_tree(from_complex(bad), bad), SimplexError);
}

TEST_CASE("validate_map catches a broken assignment")
{
    auto s = two_sphere();
    SimplicialMap id{s, s, {s->nd(0), s->nd(1)}};
    CHECK(validate_map(id).empty());

    auto ks = from_complex(tetra_boundary());
    auto q = quotient_tree(ks, tetra_boundary());
    SimplicialMap broken = q.projection;
    int e = ks.handle.at({1, 2});
    int tri = ks.handle.at({0, 1, 2});
    broken.image[e] = q.set->point(1);
    auto bad = validate_map(broken);
    REQUIRE(!bad.empty());
    CHECK(bad.front().simplex == tri);
    CHECK(bad.front().face == 0);
}

TEST_CASE("complexify")
{
    auto point = std::make_shared<SimplicialSet>();
    point->add("*", 0, {});
    auto cp = complexify(point);
    CHECK(cp.complex.vertices == 1);

    Complex edge;
    edge.vertices = 2;
    edge.facets = {{0, 1}};
    auto de = from_complex(edge);
    auto ce = complexify(de.set);
    // Sd of an edge is a 3-vertex path; the flag complex of its cells is again a path
    CHECK(ce.complex.vertices == 5);
    CHECK(ce.complex.facets.size() == 4);
    CHECK(euler(ce.complex) == 1);
    CHECK(validate_map(ce.gamma).empty());

    auto s = two_sphere();
    auto cs = complexify(s);
    CHECK(cs.complex.vertices == fubini(1) + fubini(3));
    CHECK(euler(cs.complex) == 2);
    CHECK(validate_map(cs.gamma).empty());
    int hits = 0;
    for (const auto& img : cs.gamma.image)
        hits += img == s->nd(1);
    CHECK(hits >= 1);

    auto k = tetra_boundary();
    auto q = quotient_tree(from_complex(k), k);
    auto cq = complexify(q.set);
    long expect = 0;
    for (int h = 0; h < q.set->size(); ++h)
        expect += fubini(q.set->dim_of(h) + 1);
    CHECK(cq.complex.vertices == expect);
    CHECK(euler(cq.complex) == 2);
    CHECK(validate_map(cq.gamma).empty());
}

namespace {

void check_streamed(std::shared_ptr<const SimplicialSet> y)
{
    auto full = complexify(y);
    auto flat = complexify_facets(*y);
    REQUIRE(flat.vertices == full.complex.vertices);
    CHECK(subdivision_cells(*y) == static_cast<size_t>(full.complex.vertices));
    std::map<std::vector<int>, Simplex> a, b;
    for (const auto& f : full.complex.facets)
        a[f] = full.gamma(full.set.set->nd(full.set.handle.at(f)));
    for (size_t i = 0; i < flat.size(); ++i) {
        auto f = flat.facet(i);
        b[{f.begin(), f.end()}] = flat.images()[flat.image(i)];
    }
    CHECK(flat.size() == b.size());
    CHECK(a == b);
}

}  // namespace

TEST_CASE("streamed complexify agrees with the full construction")
{
    auto point = std::make_shared<SimplicialSet>();
    point->add("*", 0, {});
    check_streamed(point);
    Complex edge;
    edge.vertices = 2;
    edge.facets = {{0, 1}};
    check_streamed(from_complex(edge).set);
    check_streamed(two_sphere());
    auto k = tetra_boundary();
    check_streamed(quotient_tree(from_complex(k), k).set);
}
