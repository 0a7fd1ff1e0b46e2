#include <doctest.h>

#include <random>

#include "simpi/whitehead.hpp"
#include "test_util.hpp"

using namespace simpi;
using simpi::testing::simplex_quotient;

namespace {

AbelianGroup integers(size_t r = 1)
{
    return AbelianGroup{std::vector<Int>(r, 0)};
}

AbElem elem(std::initializer_list<long> v)
{
    AbElem r;
    for (long c : v)
        r.emplace_back(c);
    return r;
}

AbElem random_elem(const AbelianGroup& g, std::mt19937& rng)
{
    std::uniform_int_distribution<long> d(-4, 4);
    AbElem r;
    for (size_t i = 0; i < g.rank(); ++i)
        r.emplace_back(d(rng));
    return g.normalize(r);
}

// coboundary of a random cochain, i.e. a random q-simplex of K(pi,n)
EMSimplex random_cocycle(const EMSpace& k, int q, std::mt19937& rng)
{
    std::map<unsigned, AbElem> c;
    for (unsigned f : faces_of_size(q, k.degree()))
        c[f] = random_elem(k.group(), rng);
    return k.coboundary(q, c);
}

std::map<unsigned, AbElem> random_cochain(const EMSpace& k, int q, std::mt19937& rng)
{
    std::map<unsigned, AbElem> c;
    for (unsigned f : faces_of_size(q, k.degree() + 1))
        c[f] = random_elem(k.group(), rng);
    return c;
}

// s_j by the pullback along eta_j, written out on vertex lists
EMSimplex naive_degen(const EMSpace& k, const EMSimplex& s, int j)
{
    std::map<unsigned, AbElem> out;
    for (unsigned g : faces_of_size(s.q + 1, k.degree() + 1)) {
        unsigned img = 0;
        int count = 0;
        for (int v = 0; v <= s.q + 1; ++v)
            if (g >> v & 1) {
                int t = v <= j ? v : v - 1;
                if (!(img >> t & 1))
                    ++count;
                img |= 1u << t;
            }
        if (count == k.degree() + 1)
            out[g] = k.label(s, img);
    }
    return k.make(s.q + 1, out);
}

F3Word random_level1(const StageThree& f, std::mt19937& rng, int len)
{
    auto simplices = all_simplices(f.base(), 2);
    std::uniform_int_distribution<size_t> pick(0, simplices.size() - 1);
    std::uniform_int_distribution<int> ex(-2, 2);
    F3Word w;
    for (int i = 0; i < len; ++i) {
        F3Cell c{simplices[pick(rng)], random_cocycle(f.fiber(), 2, rng)};
        w *= f.bar(c, ex(rng));
    }
    return w;
}

F3Word random_z(const StageThree& f, std::mt19937& rng, int len)
{
    F3Word q = random_level1(f, rng, len);
    return f.degen(f.face(q, 0), 0).inverse() * q;
}

void check_simplicial_em(const EMSpace& k, std::mt19937& rng, int max_q)
{
    for (int q = 0; q <= max_q; ++q)
        for (int trial = 0; trial < 5; ++trial) {
            EMSimplex s = random_cocycle(k, q, rng);
            REQUIRE(k.is_cocycle(s));
            for (int j = 0; j <= q; ++j) {
                CHECK(k.is_cocycle(k.degen(s, j)));
                CHECK(k.degen(s, j) == naive_degen(k, s, j));
                CHECK(k.face(k.degen(s, j), j) == s);
                CHECK(k.face(k.degen(s, j), j + 1) == s);
                if (q > 0)
                    CHECK(k.is_cocycle(k.face(s, j)));
                for (int i = 0; i <= j; ++i)
                    CHECK(k.degen(k.degen(s, j), i) == k.degen(k.degen(s, i), j + 1));
            }
            for (int j = 1; j <= q; ++j)
                for (int i = 0; i < j; ++i)
                    CHECK(k.face(k.face(s, j), i) == k.face(k.face(s, i), j - 1));
        }
}

struct Space {
    std::string name;
    std::shared_ptr<const SimplicialSet> set;
    LoopContraction c0;
};

std::vector<Space> contraction_spaces()
{
    std::vector<Space> out;
    out.push_back({"sphere", sphere_set(2), {}});
    auto s2 = sphere_set(2);
    out.push_back({"wedge", wedge({s2, s2}), {}});
    for (int k = 1; k <= 3; ++k) {
        auto x = xk_set(2, k);
        out.push_back({"xk" + std::to_string(k), x.set, *x.c0});
    }
    auto cone = simplex_quotient(3);
    out.push_back({"cone", cone.set, cone.c0});
    return out;
}

}  // namespace

TEST_CASE("abelian group arithmetic")
{
    AbelianGroup g{{Int(0), Int(3)}};
    CHECK(g.normalize(elem({-2, -1})) == elem({-2, 2}));
    CHECK(g.add(elem({1, 2}), elem({1, 2})) == elem({2, 1}));
    CHECK(g.is_zero(g.add(elem({5, 1}), g.neg(elem({5, 1})))));
    CHECK(g.scale(elem({1, 1}), 3) == elem({3, 0}));
    CHECK_THROWS_AS(g.normalize(elem({1})), WhiteheadError);
}

TEST_CASE("Eilenberg-MacLane simplices")
{
    EMSpace k1(integers(), 1);
    // (k0, k1, k2) on the edges 12, 02, 01
    EMSimplex t = k1.make(2, {{6u, elem({2})}, {5u, elem({5})}, {3u, elem({3})}});
    CHECK(k1.is_cocycle(t));
    CHECK(k1.as_element(k1.face(t, 1)) == elem({5}));
    CHECK(k1.as_element(k1.face(t, 0)) == elem({2}));
    CHECK_FALSE(k1.is_cocycle(k1.make(2, {{6u, elem({1})}})));

    CHECK(k1.degen(k1.zero(1), 0) == k1.zero(2));
    EMSimplex a = k1.from_element(elem({7}));
    EMSimplex s0a = k1.degen(a, 0);
    CHECK(k1.label(s0a, 6u) == elem({7}));
    CHECK(k1.label(s0a, 5u) == elem({7}));
    CHECK(k1.label(s0a, 3u) == elem({0}));
    EMSimplex s1a = k1.degen(a, 1);
    CHECK(k1.label(s1a, 6u) == elem({0}));
    CHECK(k1.label(s1a, 5u) == elem({7}));
    CHECK(k1.label(s1a, 3u) == elem({7}));

    CHECK(faces_of_size(3, 2) == std::vector<unsigned>{3u, 5u, 9u, 6u, 10u, 12u});
    CHECK(faces_of_size(4, 3).size() == 10);

    std::mt19937 rng(11);
    for (int n = 1; n <= 3; ++n) {
        check_simplicial_em(EMSpace(integers(), n), rng, 5);
        check_simplicial_em(EMSpace(AbelianGroup{{Int(0), Int(3)}}, n), rng, 4);
    }
}

TEST_CASE("twisting of the path fibration")
{
    std::mt19937 rng(5);
    for (int n = 2; n <= 3; ++n)
        for (const auto& pi : {integers(), AbelianGroup{{Int(2), Int(0)}}}) {
            EMSpace base(pi, n), fiber(pi, n - 1);
            for (int q = 1; q <= 5; ++q)
                for (int trial = 0; trial < 6; ++trial) {
                    EMSimplex b = random_cocycle(base, q, rng);
                    EMSimplex t = em_twisting(base, fiber, b);
                    CHECK(fiber.is_cocycle(t));
                    CHECK(base.coboundary(q, em_cone(base, b)) == b);
                    // tau(s_q b) = 1, s_i tau = tau s_i
                    CHECK(em_twisting(base, fiber, base.degen(b, q)) == fiber.zero(q));
                    for (int i = 0; i < q; ++i)
                        CHECK(fiber.degen(t, i) == em_twisting(base, fiber, base.degen(b, i)));
                    if (q >= 2) {
                        for (int i = 0; i < q - 1; ++i)
                            CHECK(fiber.face(t, i) == em_twisting(base, fiber, base.face(b, i)));
                        CHECK(fiber.face(t, q - 1) == fiber.add(fiber.neg(em_twisting(base, fiber, base.face(b, q))),
                                                                em_twisting(base, fiber, base.face(b, q - 1))));
                    }
                    // (b, g) -> g + cone(b) identifies the twisted product with all cochains
                    auto g = random_cocycle(fiber, q, rng);
                    auto total = [&](const EMSimplex& bb, const EMSimplex& gg) {
                        return fiber.add(gg, fiber.make(bb.q, em_cone(base, bb)));
                    };
                    EMSimplex whole = total(b, g);
                    for (int i = 0; i < q; ++i)
                        CHECK(total(base.face(b, i), fiber.face(g, i)) == fiber.face(whole, i));
                    CHECK(total(base.face(b, q), fiber.add(t, fiber.face(g, q))) == fiber.face(whole, q));
                    for (int j = 0; j <= q; ++j)
                        CHECK(total(base.degen(b, j), fiber.degen(g, j)) == fiber.degen(whole, j));
                }
        }
}

TEST_CASE("restricting to the last vertex alone is not a twisting")
{
    EMSpace base(integers(), 2), fiber(integers(), 1);
    std::mt19937 rng(2);
    bool found = false;
    for (int trial = 0; trial < 20 && !found; ++trial) {
        EMSimplex b = random_cocycle(base, 3, rng);
        std::map<unsigned, AbElem> naive;
        for (unsigned e : faces_of_size(2, 2))
            naive[e] = base.label(b, e | 8u);
        found = !fiber.is_cocycle(fiber.make(2, naive));
    }
    CHECK(found);
}

TEST_CASE("first Postnikov map")
{
    auto s2 = sphere_set(2);
    PostnikovTwo p(s2);
    REQUIRE(p.group().orders == std::vector<Int>{0});
    Simplex sigma = s2->nd(s2->cells(2)[0]);
    CHECK(p.on_triangle(sigma) == elem({1}));
    CHECK(p.on_triangle(degeneracy(s2->point(1), 0)) == elem({0}));
    CHECK(p(sigma) == p.target().from_element(elem({1})));

    CHECK_THROWS_AS(PostnikovTwo(sphere_set(1)), WhiteheadError);

    auto w = wedge({s2, s2});
    PostnikovTwo pw(w);
    CHECK(pw.group().orders.size() == 2);

    for (int k = 1; k <= 4; ++k) {
        auto x = xk_set(2, k);
        PostnikovTwo phi(x.set);
        REQUIRE(phi.group().orders == std::vector<Int>{0});
        Chain z = xk_generator(x);
        AbElem cz = phi.class_of(z);
        CHECK(abs(cz[0]) == 1);
        // phi_2 is linear on chains and reproduces the class
        AbElem sum = elem({0});
        for (const auto& [c, coeff] : z.terms)
            sum = phi.group().add(sum, phi.group().scale(phi.on_triangle(c), coeff));
        CHECK(sum == cz);
        CHECK(phi.class_of(phi.representative(elem({3}))) == elem({3}));
        for (int n = 0; n <= 4; ++n)
            for (const auto& s : all_simplices(*x.set, n)) {
                EMSimplex v = phi(s);
                CHECK(phi.target().is_cocycle(v));
                for (int i = 0; i <= n && n > 0; ++i)
                    CHECK(phi(x.set->face(s, i)) == phi.target().face(v, i));
                if (n <= 3)
                    for (int j = 0; j <= n; ++j)
                        CHECK(phi(degeneracy(s, j)) == phi.target().degen(v, j));
            }
    }
}

TEST_CASE("third Whitehead stage as a twisted product")
{
    std::mt19937 rng(3);
    for (auto space : {sphere_set(2), xk_set(2, 2).set, wedge({sphere_set(2), sphere_set(2)})}) {
        StageThree f(space);
        const EMSpace& k1 = f.fiber();
        const EMSpace& k2 = f.phi2().target();
        for (int q = 1; q <= 4; ++q)
            for (const auto& x : all_simplices(*space, q)) {
                EMSimplex t = f.twisting(x);
                CHECK(t == em_twisting(k2, k1, f.phi2()(x)));
                CHECK(f.twisting(degeneracy(x, q)) == k1.zero(q));
                for (int i = 0; i < q; ++i)
                    CHECK(k1.degen(t, i) == f.twisting(degeneracy(x, i)));
                if (q >= 2) {
                    for (int i = 0; i < q - 1; ++i)
                        CHECK(k1.face(t, i) == f.twisting(space->face(x, i)));
                    CHECK(k1.face(t, q - 1) ==
                          k1.add(k1.neg(f.twisting(space->face(x, q))), f.twisting(space->face(x, q - 1))));
                }
                // simplicial identities of F_3 on (x, random fiber simplex)
                F3Cell c{x, random_cocycle(k1, q, rng)};
                for (int j = 1; j <= q && q >= 2; ++j)
                    for (int i = 0; i < j; ++i)
                        CHECK(f.face(f.face(c, j), i) == f.face(f.face(c, i), j - 1));
                for (int j = 0; j <= q; ++j) {
                    F3Cell s = f.degen(c, j);
                    CHECK(f.face(s, j) == c);
                    CHECK(f.face(s, j + 1) == c);
                    for (int i = 0; i < j; ++i)
                        CHECK(f.face(s, i) == f.degen(f.face(c, i), j - 1));
                    for (int i = j + 2; i <= q + 1; ++i)
                        CHECK(f.face(s, i) == f.degen(f.face(c, i - 1), j));
                }
            }
        // 1-cells are pairs (x, k) with both faces at the basepoint
        for (const auto& x : all_simplices(*space, 1)) {
            F3Cell e = f.edge(x, random_elem(f.pi2(), rng));
            CHECK(f.face(e, 0) == f.point(0));
            CHECK(f.face(e, 1) == f.point(0));
        }
        CHECK(f.killed(f.degen(f.point(0), 0)));
        CHECK(f.killed(f.point(1)));
    }
}

TEST_CASE("loop group of the third stage")
{
    std::mt19937 rng(9);
    StageThree f(xk_set(2, 2).set);
    for (int trial = 0; trial < 30; ++trial) {
        F3Word w = random_level1(f, rng, 6);
        CHECK(f.face(f.degen(w, 0), 0) == w);
        CHECK(f.face(f.degen(w, 0), 1) == w);
        CHECK(f.face(f.degen(w, 1), 1) == w);
        CHECK(f.face(f.degen(w, 1), 2) == w);
        CHECK(f.face(f.degen(w, 1), 0) == f.degen(f.face(w, 0), 0));
        CHECK(f.face(f.degen(w, 0), 2) == f.degen(f.face(w, 1), 0));
        // level 2
        auto cells = all_simplices(f.base(), 3);
        std::uniform_int_distribution<size_t> pick(0, cells.size() - 1);
        F3Word u;
        for (int i = 0; i < 4; ++i)
            u *= f.bar(F3Cell{cells[pick(rng)], random_cocycle(f.fiber(), 3, rng)}, i % 2 ? -1 : 2);
        for (int j = 1; j <= 2; ++j)
            for (int i = 0; i < j; ++i)
                CHECK(f.face(f.face(u, j), i) == f.face(f.face(u, i), j - 1));
    }
}

TEST_CASE("rewriting rules keep the witness")
{
    std::mt19937 rng(21);
    for (auto space : {xk_set(2, 2).set, wedge({sphere_set(2), sphere_set(2)})}) {
        StageThree f(space);
        auto edges = all_simplices(*space, 1);
        std::uniform_int_distribution<size_t> pick(0, edges.size() - 1);
        for (int trial = 0; trial < 25; ++trial) {
            F3Rewriter r(f, random_z(f, rng, 5), true);
            REQUIRE(r.verify());
            AbElem k = random_elem(f.pi2(), rng), l = random_elem(f.pi2(), rng);
            Simplex x = edges[pick(rng)];
            F3Word alpha = r.w();
            r.rule1(f.edge(x, k), -1);
            r.rule2(k, 1);
            r.rule2(l, -2);
            r.rule3(x, k);
            r.rule4(x, l);
            r.rule5(k, l);
            r.drop_conjugation(x, k, 1);
            r.drop_conjugation(x, l, -1);
            CHECK(r.verify());
            CHECK(r.steps() == 8);
            (void)alpha;
        }
        // rule 2 literally: (*,k)^e a becomes (*,-k)^-e a
        F3Word z0 = random_z(f, rng, 4);
        AbElem k = f.pi2().unit(0);
        F3Word s0 = f.degen(f.bar(f.star(k)), 0);
        F3Word z = s0 * z0 * s0.inverse() * f.degen(f.bar(f.star(k)), 0) * f.degen(f.bar(f.star(k)), 0).inverse();
        F3Rewriter r(f, z);
        F3Word alpha = f.bar(f.star(k)).inverse() * r.w();
        r.rule2(k, 1);
        CHECK(r.w() == f.bar(f.star(f.pi2().neg(k)), -1) * alpha);
        CHECK(r.verify());
    }
}

TEST_CASE("loop contraction on the third stage")
{
    std::mt19937 rng(4);
    for (const auto& sp : contraction_spaces()) {
        INFO(sp.name);
        F3Contraction c(sp.set, sp.c0);
        const StageThree& f = c.stage();
        const AbelianGroup& pi = f.pi2();
        std::vector<AbElem> ks{pi.zero()};
        for (size_t i = 0; i < pi.rank(); ++i) {
            ks.push_back(pi.unit(i));
            ks.push_back(pi.scale(pi.unit(i), -2));
        }
        if (pi.rank() == 2)
            ks.push_back(elem({2, -1}));
        for (const auto& k : ks) {
            // spherical word: faces trivial, tau' values sum to k
            GroupWord g = c.spherical(k);
            AbElem sum = pi.zero();
            for (const auto& [y, e] : g.f)
                sum = pi.add(sum, pi.scale(f.phi2().on_triangle(y), e));
            CHECK(sum == pi.normalize(k));
            if (!pi.is_zero(k))
                CHECK(check_f3_contraction(f, f.star(k), c.on_star(k)));
            else
                CHECK(c.on_star(k).empty());
        }
        for (int h : sp.set->cells(1)) {
            Simplex x = sp.set->nd(h);
            CHECK(check_f3_contraction(f, f.edge(x, pi.zero()), c.on_zero(x)));
            for (const auto& k : ks)
                if (!pi.is_zero(k))
                    CHECK(check_f3_contraction(f, f.edge(x, k), c.on_edge(x, k)));
        }
        // homomorphic extension on random level-0 words
        std::vector<F3Cell> gens;
        for (const auto& x : all_simplices(*sp.set, 1))
            for (const auto& k : ks)
                if (!f.killed(f.edge(x, k)))
                    gens.push_back(f.edge(x, k));
        if (gens.empty())
            continue;
        std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
        for (int trial = 0; trial < 5; ++trial) {
            F3Word w;
            for (int i = 0; i < 5; ++i)
                w *= f.bar(gens[pick(rng)], i % 2 ? -1 : 1);
            F3Word cw = c(w);
            CHECK(f.face(cw, 0) == w);
            CHECK(f.face(cw, 1).empty());
        }
    }
}

TEST_CASE("contraction on the basepoint of a 1-reduced space")
{
    F3Contraction c(sphere_set(2), {});
    CHECK(c.stage().base().cells(1).empty());
    CHECK(c(F3Word{}).empty());
    CHECK_THROWS_AS(c.on_zero(sphere_set(2)->point(1)), WhiteheadError);
}

TEST_CASE("higher stages pad the third-stage contraction")
{
    auto x = xk_set(2, 2);
    F3Contraction c(x.set, *x.c0);
    const StageThree& f = c.stage();
    StageHigher f5(f, {integers(), AbelianGroup{{Int(2)}}});
    CHECK(f5.stage() == 5);
    CHECK(fi_contract(f5, c, PaddedWord{}).empty());
    for (int h : x.set->cells(1))
        for (long k : {0L, 1L, -3L}) {
            F3Cell g = f.edge(x.set->nd(h), elem({k}));
            PaddedWord w = f5.pad(f.bar(g));
            PaddedWord cw = fi_contract(f5, c, w);
            CHECK(f5.face(cw, 0) == w);
            CHECK(f5.face(cw, 1).empty());
            CHECK(f5.strip(cw) == c.on_generator(g));
        }
    PaddedCell bad = f5.pad(f.star(elem({1})));
    bad.tail[0] = EMSpace(integers(), 2).make(1, {});
    bad.tail[0].labels[3u] = elem({1});
    CHECK_THROWS_AS(f5.strip(PaddedWord(bad)), WhiteheadError);
}

TEST_CASE("third-stage contraction on the Moebius tower")
{
    for (int k = 1; k <= 2; ++k) {
        auto m = moebius_tower(k);
        auto ks = from_complex(m.complex);
        auto q = quotient_tree(ks, m.complex);
        F3Contraction c(q.set, certificate_to_contraction(m.complex, ks, q, m.certificate));
        const StageThree& f = c.stage();
        REQUIRE(f.pi2().orders == std::vector<Int>{0});
        for (long s : {1L, -1L, 2L})
            CHECK(check_f3_contraction(f, f.star(elem({s})), c.on_star(elem({s}))));
        for (int h : q.set->cells(1))
            for (long s : {0L, 1L, -2L}) {
                F3Cell g = f.edge(q.set->nd(h), elem({s}));
                CHECK(check_f3_contraction(f, g, c.on_generator(g)));
            }
    }
}
