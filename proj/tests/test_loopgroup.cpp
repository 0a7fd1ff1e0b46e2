#include <random>

#include "doctest.h"
#include "simpi/families.hpp"
#include "test_util.hpp"

using namespace simpi;
using simpi::testing::random_word;

namespace {

using W = Word<int>;

W letters(std::initializer_list<std::pair<int, int>> l)
{
    W w;
    for (auto [g, e] : l)
        w.f.emplace_back(g, e);
    return w;
}

// plain letter-by-letter reduction, independent of the run-length push
std::vector<std::pair<int, int>> naive_reduce(const W& w)
{
    std::vector<std::pair<int, int>> out;
    for (const auto& [g, e] : w.f) {
        long n = e.get_si();
        int s = n > 0 ? 1 : -1;
        for (long i = 0; i < std::abs(n); ++i) {
            if (!out.empty() && out.back().first == g && out.back().second == -s)
                out.pop_back();
            else
                out.emplace_back(g, s);
        }
    }
    return out;
}

std::vector<std::pair<int, int>> expand(const W& w)
{
    std::vector<std::pair<int, int>> out;
    for (const auto& [g, e] : w.f)
        for (long i = 0; i < std::abs(e.get_si()); ++i)
            out.emplace_back(g, e > 0 ? 1 : -1);
    return out;
}

}  // namespace

TEST_CASE("free reduction")
{
    CHECK(free_reduce(letters({{1, 1}, {1, -1}})).empty());
    CHECK(free_reduce(letters({{1, 2}, {2, 0}, {1, 3}})) == W(1, 5));
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> g(0, 3), e(-2, 2);
    for (int t = 0; t < 200; ++t) {
        W w;
        for (int i = 0; i < 12; ++i)
            w.f.emplace_back(g(rng), e(rng));
        CHECK((free_reduce(w) * free_reduce(w).inverse()).empty());
        CHECK(expand(free_reduce(w)) == naive_reduce(w));
    }
}

TEST_CASE("power and abelianization")
{
    W ab = letters({{1, 1}, {2, 1}});
    W p = power(ab, 3);
    CHECK(expand(p) == naive_reduce(letters({{1, 1}, {2, 1}, {1, 1}, {2, 1}, {1, 1}, {2, 1}})));
    W conj = letters({{3, 1}, {1, 2}, {3, -1}});
    CHECK(power(conj, 4) == letters({{3, 1}, {1, 8}, {3, -1}}));
    CHECK(abelianize(commutator(W(1), W(2))).zero());
    CHECK(abelianize(W(7, 3)).coeff(7) == 3);
    W u = letters({{1, 2}, {2, -1}}), v = letters({{2, 1}, {3, 5}});
    CHECK(abelianize(u * v) == abelianize(u) + abelianize(v));
}

TEST_CASE("commutator decomposition")
{
    W s(1), t(2);
    auto d = commutator_decompose(commutator(s, t));
    W back;
    for (const auto& [a, b] : d.pairs)
        back *= commutator(a, b);
    CHECK(back == commutator(s, t));
    CHECK(d.swaps == 1);
    CHECK(commutator_decompose(W{}).pairs.empty());
    W w = letters({{1, 2}, {2, 1}, {1, -2}, {2, -1}});
    W prod;
    for (const auto& [a, b] : commutator_decompose(w).pairs)
        prod *= commutator(a, b);
    CHECK(prod == w);
    CHECK_THROWS_AS(commutator_decompose(W(1)), CommutatorError);

    std::mt19937 rng(41);
    std::uniform_int_distribution<int> g(0, 4), e(-2, 2), n(1, 6);
    for (int trial = 0; trial < 500; ++trial) {
        W a, b;
        for (int i = n(rng); i > 0; --i)
            a.push(g(rng), e(rng));
        for (int i = n(rng); i > 0; --i)
            b.push(g(rng), e(rng));
        W c = commutator(a, b) * commutator(b * a, a.inverse());
        auto dec = commutator_decompose(c);
        W p;
        for (const auto& [x, y] : dec.pairs)
            p *= commutator(x, y);
        CHECK(p == free_reduce(c));
        size_t sz = c.f.size();
        CHECK(dec.swaps <= sz * sz);
    }
}

TEST_CASE("gx faces on the sphere and X_k")
{
    auto sph = sphere_set(2);
    LoopGroup g2(sph);
    GroupWord sig(sph->nd(1));
    CHECK(g2.face(sig, 1).empty());
    CHECK(g2.face(sig, 0).empty());

    auto x = xk_set(2, 3);
    LoopGroup gx(x.set);
    const auto& s = *x.set;
    Simplex c1 = s.nd(x.c[0]), s1 = s.nd(x.sigma[0]), s2 = s.nd(x.sigma[1]);
    CHECK(gx.face(GroupWord(c1), 1) == GroupWord(s1, -1) * GroupWord(s2));
    CHECK(gx.face(GroupWord(s.nd(x.a)), 0) == GroupWord(s1));
}

TEST_CASE("simplicial group identities on sampled words")
{
    std::mt19937 rng(17);
    auto x = xk_set(3, 3);
    auto x2 = xk_set(2, 4);
    auto sph = sphere_set(3);
    for (auto sp : {x.set, x2.set, sph}) {
        LoopGroup gx(sp);
        for (int level = 1; level <= 2; ++level)
            for (int t = 0; t < 15; ++t) {
                GroupWord w = random_word(gx, level, rng, 6);
                GroupWord v = random_word(gx, level, rng, 6);
                for (int i = 0; i <= level; ++i)
                    CHECK(gx.face(w * v, i) == gx.face(w, i) * gx.face(v, i));
                for (int j = 1; j <= level && level >= 2; ++j)
                    for (int i = 0; i < j; ++i)
                        CHECK(gx.face(gx.face(w, j), i) == gx.face(gx.face(w, i), j - 1));
                for (int i = 0; i <= level; ++i) {
                    GroupWord si = gx.degen(w, i);
                    CHECK(gx.face(si, i) == w);
                    CHECK(gx.face(si, i + 1) == w);
                    for (int j = 0; j <= level + 1; ++j) {
                        if (j < i)
                            CHECK(gx.face(si, j) == gx.degen(gx.face(w, j), i - 1));
                        if (j > i + 1)
                            CHECK(gx.face(si, j) == gx.degen(gx.face(w, j - 1), i));
                    }
                }
            }
    }
}

TEST_CASE("moore normalization")
{
    std::mt19937 rng(23);
    auto x = xk_set(2, 3);
    LoopGroup gx(x.set);
    GroupWord v(x.set->nd(x.sigma[0]));
    auto sv = moore_normalize(gx, gx.degen(v, 0), 1);
    CHECK(sv.spherical_part.empty());
    CHECK(sv.tail == gx.degen(v, 0));
    auto sph = sphere_set(2);
    LoopGroup g2(sph);
    GroupWord sig(sph->nd(1));
    auto ss = moore_normalize(g2, sig, 1);
    CHECK(ss.spherical_part == sig);
    CHECK(ss.tail.empty());
    for (auto sp : {x.set, xk_set(3, 2).set})
        for (int level = 1; level <= 2; ++level) {
            LoopGroup g(sp);
            for (int t = 0; t < 20; ++t) {
                GroupWord w = random_word(g, level, rng, 8);
                auto m = moore_normalize(g, w, level);
                CHECK(is_moore(g, m.spherical_part, level));
                CHECK(m.spherical_part * m.tail == w);
                CHECK(abelianize(w) == abelianize(m.spherical_part) + abelianize(m.tail));
            }
        }
}

TEST_CASE("X_k loop contraction passes the face checks")
{
    for (int k = 1; k <= 8; ++k) {
        auto x = xk_set(2, k);
        LoopGroup gx(x.set);
        CHECK(check_loop_contraction(gx, *x.c0).empty());
    }
}

TEST_CASE("certificates to loop contractions")
{
    auto k = sphere_complex(2);
    auto ks = from_complex(k);
    auto q = quotient_tree(ks, k);
    auto cert = greedy_certificate(k);
    auto c = certificate_to_contraction(k, ks, q, cert);
    LoopGroup gx(q.set);
    CHECK(check_loop_contraction(gx, c).empty());
    CHECK(c.c0.size() == 3);

    for (int n = 1; n <= 3; ++n) {
        auto m = moebius_tower(n);
        auto ms = from_complex(m.complex);
        auto mq = quotient_tree(ms, m.complex);
        auto mc = certificate_to_contraction(m.complex, ms, mq, m.certificate);
        CHECK(check_loop_contraction(LoopGroup(mq.set), mc).empty());
    }

    // single triangle with the first orientation case
    Complex t;
    t.vertices = 3;
    t.facets = {{0, 1, 2}};
    t.tree = {{0, 1}, {1, 2}};
    auto ts = from_complex(t);
    auto tq = quotient_tree(ts, t);
    ComplexCertificate one;
    one[{0, 2}] = EdgeContraction{{1, 2}, {0}};
    auto tc = certificate_to_contraction(t, ts, tq, one);
    CHECK(check_loop_contraction(LoopGroup(tq.set), tc).empty());

    ComplexCertificate wrong;
    wrong[{0, 2}] = EdgeContraction{{0, 1}, {1}};
    CHECK_THROWS_AS(certificate_to_contraction(t, ts, tq, wrong), CertificateError);

    Complex tree_only;
    tree_only.vertices = 2;
    tree_only.facets = {{0, 1}};
    tree_only.tree = {{0, 1}};
    auto trs = from_complex(tree_only);
    auto trq = quotient_tree(trs, tree_only);
    CHECK(certificate_to_contraction(tree_only, trs, trq, {}).c0.empty());
}
