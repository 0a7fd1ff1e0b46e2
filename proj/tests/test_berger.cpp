#include "doctest.h"
#include "simpi/berger.hpp"
#include "simpi/hurewicz.hpp"
#include "test_util.hpp"

using namespace simpi;
using simpi::testing::random_word;
using simpi::testing::simplex_quotient;

namespace {

int euler(const SimplicialSet& s)
{
    int chi = 0;
    for (int n = 0; n <= s.max_dim(); ++n)
        chi += (n % 2 ? -1 : 1) * static_cast<int>(s.cells(n).size());
    return chi;
}

// cancel adjacent inverse pairs in random order until none is left
std::vector<PathEdge> random_order_reduce(std::vector<PathEdge> e, std::mt19937& rng)
{
    std::erase_if(e, [](const PathEdge& x) { return compressible(x); });
    for (;;) {
        std::vector<size_t> spots;
        for (size_t i = 0; i + 1 < e.size(); ++i)
            if (e[i].x == e[i + 1].x && e[i].i == e[i + 1].i && e[i].eps == -e[i + 1].eps)
                spots.push_back(i);
        if (spots.empty())
            return e;
        size_t at = spots[std::uniform_int_distribution<size_t>(0, spots.size() - 1)(rng)];
        e.erase(e.begin() + static_cast<long>(at), e.begin() + static_cast<long>(at) + 2);
    }
}

void check_sphere(const SphereMap& s, int d, const Chain& z, const SimplicialSet& x)
{
    auto audit = audit_sphere(s);
    CHECK(audit.map_valid);
    CHECK(audit.identities);
    CHECK(audit.pseudomanifold);
    CHECK(audit.fundamental_cycle);
    CHECK(euler(*s.sphere) == 1 + (d % 2 ? -1 : 1));
    CHECK(audit.euler);
    ChainOps xo(std::shared_ptr<const SimplicialSet>(&x, [](const SimplicialSet*) {}));
    CHECK(xo.solve_boundary(sphere_image(s) - z, d).has_value());
    // exact homology of the sphere only while the dense SNF stays small
    if (s.sphere->size() > 2500)
        return;
    Chain fund = sphere_fundamental(s);
    ChainOps ops(s.sphere);
    for (int n = 1; n < d; ++n) {
        auto h = ops.homology(n);
        CHECK(h.free.empty());
        CHECK(h.torsion.empty());
    }
    auto top = ops.homology(d);
    REQUIRE(top.free.size() == 1);
    CHECK(top.torsion.empty());
    // fundamental chain generates H_d of the sphere
    CHECK((fund == top.free[0] || fund == -top.free[0]));
}

}  // namespace

TEST_CASE("path faces")
{
    auto s2 = sphere_set(2);
    Simplex sig = s2->nd(1);
    Path p = make_path(*s2, 1, {{sig, 1, 1}});
    Path f1 = path_face(*s2, p, 1);
    CHECK(f1.is_unit());
    CHECK(f1.unit == s2->point(0));
    Path f0 = path_face(*s2, p, 0);
    REQUIRE(f0.length() == 1);
    CHECK(f0.edges[0] == PathEdge{s2->point(1), 0, 1});
    CHECK(compressible(f0.edges[0]));
    CHECK(path_face(*s2, unit_path(sig), 2) == unit_path(s2->face(sig, 2)));
    CHECK_THROWS_AS(path_face(*s2, p, 2), PathError);
    auto x = xk_set(2, 2);
    Simplex a = x.set->nd(x.a);
    CHECK_THROWS_AS(make_path(*x.set, 1, {{a, 0, 1}, {a, 0, 1}}), PathError);
}

TEST_CASE("path simplicial identities")
{
    std::mt19937 rng(3);
    auto x = xk_set(3, 2);
    LoopGroup gx(x.set);
    for (int t = 0; t < 20; ++t) {
        Path p = t_hom(gx, random_word(gx, 2, rng, 3), 2);
        for (int j = 1; j <= 2; ++j)
            for (int i = 0; i < j; ++i)
                CHECK(path_face(*x.set, path_face(*x.set, p, j), i) == path_face(*x.set, path_face(*x.set, p, i), j - 1));
        for (int i = 0; i <= 2; ++i) {
            Path s = path_degen(*x.set, p, i);
            CHECK(reduce_compress(*x.set, path_face(*x.set, s, i)) == reduce_compress(*x.set, p));
            CHECK(reduce_compress(*x.set, path_face(*x.set, s, i + 1)) == reduce_compress(*x.set, p));
        }
    }
}

TEST_CASE("reduce and compress")
{
    auto x = xk_set(2, 3);
    const auto& s = *x.set;
    Simplex a = s.nd(x.sigma[0]), b = s.nd(x.sigma[1]);
    CHECK(reduce_compress(s, make_path(s, 0, {{s.point(1), 0, 1}})).is_unit());
    CHECK(reduce_compress(s, make_path(s, 0, {{a, 0, 1}, {a, 0, -1}})).is_unit());
    Path nest = make_path(s, 0, {{a, 0, 1}, {b, 0, 1}, {b, 0, -1}, {a, 0, -1}});
    CHECK(reduce_compress(s, nest) == unit_path(s.point(0)));

    std::mt19937 rng(8);
    std::vector<Simplex> letters{a, b, s.nd(x.sigma[2]), s.point(1)};
    std::uniform_int_distribution<size_t> pick(0, letters.size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int t = 0; t < 300; ++t) {
        std::vector<PathEdge> e;
        for (int i = 0; i < 14; ++i) {
            PathEdge g{letters[pick(rng)], 0, coin(rng) ? 1 : -1};
            e.push_back(g);
            if (coin(rng)) {
                e.push_back({g.x, 0, -g.eps});
                e.push_back(g);
            }
        }
        Path p = make_path(s, 0, e);
        Path r = reduce_compress(s, p);
        CHECK(reduce_compress(s, r) == r);
        CHECK(r.edges == random_order_reduce(e, rng));
    }
}

TEST_CASE("canonical paths to the basepoint")
{
    auto x = xk_set(2, 3);
    Simplex s1 = x.set->nd(x.sigma[0]);
    Path g = gamma_x(*x.set, s1);
    REQUIRE(g.length() == 1);
    CHECK(g.edges[0] == PathEdge{degeneracy(s1, 1), 0, 1});
    CHECK(gamma_x(*x.set, x.set->point(2)).is_unit());

    auto s2 = sphere_set(2);
    Simplex sig = s2->nd(1);
    Path gs = gamma_x(*s2, sig);
    CHECK(path_source(*s2, gs) == sig);
    CHECK(path_target(*s2, gs) == s2->point(2));

    auto cone = simplex_quotient(4);
    for (int n = 1; n <= 3; ++n)
        for (int h : cone.set->cells(n)) {
            Path p = gamma_x(*cone.set, cone.set->nd(h));
            CHECK(path_source(*cone.set, p) == cone.set->nd(h));
            CHECK(path_target(*cone.set, p) == cone.set->point(n));
            CHECK_NOTHROW(make_path(*cone.set, n, p.edges));
        }
}

TEST_CASE("t homomorphism")
{
    auto s2 = sphere_set(2);
    LoopGroup g2(s2);
    Simplex sig = s2->nd(1);
    CHECK(t_hom(g2, GroupWord(sig), 1) == make_path(*s2, 1, {{sig, 1, 1}}));
    CHECK(t_hom(g2, GroupWord{}, 1).is_unit());
    CHECK(t_hom(g2, GroupWord(sig, 2), 1).length() == 2);
    CHECK(t_hom(g2, GroupWord(sig, -3), 1).length() == 3);

    size_t saved = path_length_cap();
    path_length_cap() = 10;
    CHECK_THROWS_AS(t_hom(g2, GroupWord(sig, 11), 1), CapExceeded);
    path_length_cap() = saved;

    std::mt19937 rng(19);
    auto xk = xk_set(2, 3);
    auto xk3 = xk_set(3, 2);
    auto cone = simplex_quotient(3);
    std::vector<std::pair<std::shared_ptr<const SimplicialSet>, int>> cases{
        {xk.set, 1}, {xk3.set, 1}, {xk3.set, 2}, {cone.set, 1}, {cone.set, 2}};
    for (auto [sp, level] : cases) {
        LoopGroup gx(sp);
        for (int t = 0; t < 20; ++t) {
            GroupWord u = random_word(gx, level, rng, 4), v = random_word(gx, level, rng, 4);
            Path tu = t_hom(gx, u, level);
            CHECK(path_source(*sp, tu) == sp->point(level));
            CHECK(path_target(*sp, tu) == sp->point(level));
            CHECK(reduce_compress(*sp, path_concat(*sp, tu, t_hom(gx, v, level))) == t_hom(gx, u * v, level));
            for (int i = 0; i <= level; ++i)
                CHECK(reduce_compress(*sp, path_face(*sp, tu, i)) == t_hom(gx, gx.face(u, i), level - 1));
        }
    }
}

TEST_CASE("sphere from a single simplex")
{
    auto s2 = sphere_set(2);
    Simplex sig = s2->nd(1);
    SphereMap m = sphere_of(s2, make_path(*s2, 1, {{sig, 1, 1}}));
    CHECK(m.sphere->cells(2).size() == 1);
    CHECK(m.sphere->cells(1).empty());
    CHECK(m.sphere->cells(0).size() == 1);
    CHECK(m.map(m.tops[0]) == sig);
    CHECK(sphere_image(m) == Chain(sig));
    check_sphere(m, 2, Chain(sig), *s2);

    SphereMap pt = sphere_of(s2, unit_path(s2->point(1)));
    CHECK(pt.sphere->size() == 1);
    CHECK(pt.tops.empty());

    auto x = xk_set(2, 2);
    Simplex a = x.set->nd(x.a);
    CHECK_THROWS_AS(sphere_of(x.set, t_hom(LoopGroup(x.set), GroupWord(a), 1)), PathError);
}

TEST_CASE("spheres for the X_k generators")
{
    for (int k = 1; k <= 5; ++k) {
        auto x = xk_set(2, k);
        HurewiczContext ctx(x.set, 2, x.c0);
        Chain z = xk_generator(x);
        GroupWord w = ctx.arrow2(arrow1(ctx.group(), z));
        SphereMap m = sphere_of(x.set, t_hom(ctx.group(), w, 1));
        CHECK(m.sphere->cells(2).size() >= (size_t(1) << (k - 1)));
        check_sphere(m, 2, z, *x.set);
    }
    for (int k = 1; k <= 4; ++k) {
        auto x = xk_set(3, k);
        HurewiczContext ctx(x.set, 3);
        Chain z = xk_generator(x);
        GroupWord w = ctx.arrow2(arrow1(ctx.group(), z));
        SphereMap m = sphere_of(x.set, t_hom(ctx.group(), w, 2));
        check_sphere(m, 3, z, *x.set);
    }
}
