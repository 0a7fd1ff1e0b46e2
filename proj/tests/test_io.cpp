#include <doctest.h>

#include "simpi/families.hpp"
#include "simpi/io.hpp"

using namespace simpi;

namespace {

Json reparse(const Json& j)
{
    return Json::parse(j.dump());
}

}  // namespace

TEST_CASE("simplicial sets survive a JSON round trip")
{
    std::vector<std::shared_ptr<const SimplicialSet>> sets = {sphere_set(2), xk_set(2, 3).set, xk_set(3, 2).set,
                                                              wedge({sphere_set(2), sphere_set(3)})};
    for (const auto& x : sets) {
        Json j = sset_to_json(*x);
        auto y = sset_from_json(reparse(j));
        CHECK(sset_to_json(*y) == j);
        REQUIRE(y->size() == x->size());
        for (int h = 0; h < x->size(); ++h) {
            CHECK(y->name(h) == x->name(h));
            CHECK(y->faces_of(h) == x->faces_of(h));
        }
        CHECK(y->basepoint == x->basepoint);
    }
}

TEST_CASE("degenerate simplex references")
{
    auto x = xk_set(2, 2).set;
    Simplex s = degeneracy(degeneracy(x->nd(*x->find("A")), 1), 0);
    Json j = simplex_to_json(*x, s);
    CHECK(j.is_object());
    CHECK(simplex_from_json(*x, reparse(j)) == s);
    CHECK_THROWS_AS(simplex_from_json(*x, Json{{"deg", {1, 0}}, {"base", "A"}}), FormatError);
    CHECK_THROWS_AS(simplex_from_json(*x, Json{{"deg", {5}}, {"base", "A"}}), FormatError);
    CHECK_THROWS_AS(simplex_from_json(*x, Json("nowhere")), FormatError);
}

TEST_CASE("chains keep big coefficients exactly")
{
    auto x = xk_set(3, 70);
    Chain z = xk_generator(x);
    Json j = chain_to_json(*x.set, z);
    CHECK(chain_from_json(*x.set, reparse(j)) == z);
    bool big = false;
    for (const auto& t : j)
        big = big || t["coeff"].get<std::string>().size() > 19;
    CHECK(big);
}

TEST_CASE("complexes, certificates and loop contractions round trip")
{
    auto m = moebius_tower(2);
    InputDocument doc{m.complex, m.certificate, from_complex(m.complex).set, std::nullopt};
    Json j = reparse(input_to_json(doc));
    InputDocument back = input_from_json(j);
    REQUIRE(back.complex);
    CHECK(back.complex->facets == m.complex.facets);
    CHECK(back.complex->tree == m.complex.tree);
    CHECK(back.complex->root == m.complex.root);
    REQUIRE(back.certificate);
    CHECK(certificate_to_json(*back.certificate) == certificate_to_json(m.certificate));

    auto x = xk_set(2, 3);
    InputDocument sdoc{std::nullopt, std::nullopt, x.set, x.c0};
    InputDocument sback = input_from_json(reparse(input_to_json(sdoc)));
    REQUIRE(sback.c0);
    CHECK(sback.c0->c0 == x.c0->c0);
    CHECK(check_loop_contraction(LoopGroup(sback.set), *sback.c0).empty());
}

TEST_CASE("sphere maps re-verify after reloading")
{
    auto x = xk_set(2, 4);
    PipelineResult r = run_pipeline(input_from_set(x.set, x.c0), 2);
    REQUIRE(r.spheres.size() == 1);
    Json j = reparse(sphere_to_json(r.spheres[0]));
    SphereMap back = sphere_from_json(j, x.set);
    CHECK(validate_map(back.map).empty());
    CHECK(sphere_image(back) == sphere_image(r.spheres[0]));
    Verdict v = verify(back, x.set, r.reports[0].cycle, 2);
    CHECK(v.pass);
    CHECK(v.multiplier == 1);

    auto m = moebius_tower(1);
    PipelineInput in = input_from_complex(m.complex, m.certificate);
    PipelineOptions opt;
    opt.lift = false;
    PipelineResult rm = run_pipeline(in, 2, opt);
    SphereMap mb = sphere_from_json(reparse(sphere_to_json(rm.spheres[0])), in.set);
    CHECK(validate_map(mb.map).empty());
    CHECK(verify(mb, in.set, rm.reports[0].cycle, 2).pass);
}

TEST_CASE("malformed documents are rejected")
{
    CHECK_THROWS_AS(input_from_json(Json::object()), FormatError);
    CHECK_THROWS_AS(complex_from_json(Json{{"vertices", 2}, {"facets", {{0, 2}}}}), FormatError);
    CHECK_THROWS_AS(complex_from_json(Json{{"vertices", 2}, {"facets", {{0, 0}}}}), FormatError);
    CHECK_THROWS_AS(certificate_from_json(Json{{"contractions", {{"01", {{"A", {0}}, {"B", Json::array()}}}}}}),
                    FormatError);
    Json bad = sset_to_json(*sphere_set(2));
    bad["faces"].erase(bad["faces"].begin());
    CHECK_THROWS_AS(sset_from_json(bad), FormatError);
    // an edge whose faces are different vertices, glued into a loop that breaks d_0 d_1 = d_0 d_0
    Json twisted = {{"simplices", {{"0", {"p", "q"}}, {"1", {"e"}}, {"2", {"t"}}}},
                    {"faces", {{"e", {"p", "q"}}, {"t", {"e", "e", "e"}}}}};
    CHECK_THROWS_AS(sset_from_json(twisted), FormatError);
    CHECK_THROWS_AS(chain_from_json(*sphere_set(2), Json{{{"simplex", "*"}, {"coeff", "1x"}}}), FormatError);
}

TEST_CASE("subdivision export")
{
    Complex tri;
    tri.vertices = 3;
    tri.facets = {{0, 1, 2}};
    EsdComplex e(tri, 2);
    Json j = esd_to_json(e, {});
    CHECK(j["vertices"].size() == 6);
    CHECK(j["facets"].size() == 4);
    CHECK_FALSE(j.contains("labels"));
    std::string off = esd_to_off(e);
    CHECK(off.rfind("OFF\n6 4 0\n", 0) == 0);
}
