#include "doctest.h"
#include "zipcert/certify.hpp"
#include "zipcert/fixtures.hpp"
#include "zipcert/homology.hpp"
#include "zipcert/iso.hpp"
#include "zipcert/ops.hpp"

using namespace zipcert;

namespace {

FacetComplex fc(const std::vector<std::string>& facets) { return complex_from_strings(facets); }

Poset digon() { return Poset::from_labeled_relation({"a", "b", "x", "y"}, {{"a", "x"}, {"b", "x"}, {"a", "y"}, {"b", "y"}}); }

SearchOptions no_pruning() {
    SearchOptions o;
    o.invariant_pruning = false;
    return o;
}

}  // namespace

TEST_CASE("construction trees") {
    SUBCASE("a cone is a single node") {
        auto r = find_construction(simplex(3));
        REQUIRE(r.status == SearchStatus::found);
        CHECK(r.tree->nodes.size() == 1);
        CHECK(r.tree->nodes[0].kind == ConstructionNode::Kind::cone);
        CHECK(verify_construction(*r.tree));
    }
    SUBCASE("the dual of a triangle splits off one vertex") {
        auto r = find_construction(simplex(3).dual());
        REQUIRE(r.status == SearchStatus::found);
        const auto& t = *r.tree;
        REQUIRE(t.nodes[0].kind == ConstructionNode::Kind::split);
        const auto& q = t.nodes[t.nodes[0].q];
        const auto& rr = t.nodes[t.nodes[0].r];
        CHECK(q.mask == t.poset.down_set(t.poset.at("0")));
        CHECK(rr.mask == (t.poset.down_set(t.poset.at("1")) | t.poset.down_set(t.poset.at("2"))));
        CHECK(verify_construction(t));
    }
    SUBCASE("refutations") {
        CHECK(find_construction(boundary_simplex(2).dual()).status == SearchStatus::refuted);
        CHECK(find_construction(boundary_simplex(2).dual(), no_pruning()).status == SearchStatus::refuted);
        CHECK(find_construction(Poset()).status == SearchStatus::refuted);
        CHECK(find_construction(antichain(2)).status == SearchStatus::refuted);
    }
    SUBCASE("mutated trees are rejected") {
        auto r = find_construction(simplex(3).dual());
        REQUIRE(r.tree);
        ConstructionTree bad = *r.tree;
        // The apex of the Q child is no longer greatest once a foreign element joins it.
        auto& q = bad.nodes[bad.nodes[0].q];
        q.mask.set(bad.poset.at("1"));
        CHECK_FALSE(verify_construction(bad));

        bad = *r.tree;
        // R no longer covers the rest of the poset.
        auto& rr = bad.nodes[bad.nodes[0].r];
        rr.mask = bad.poset.down_set(bad.poset.at("1"));
        CHECK_FALSE(verify_construction(bad));

        bad = *r.tree;
        bad.nodes[0].q = 0;
        CHECK_FALSE(verify_construction(bad));
    }
    SUBCASE("tiny budgets report exhaustion") {
        SearchOptions o;
        o.node_budget = 1;
        CHECK(find_construction(cube(2).dual(), o).status == SearchStatus::exhausted);
    }
}

TEST_CASE("hochster constructibility") {
    CHECK(hochster_construction(fc({"abc"})).status == SearchStatus::found);
    auto two = hochster_construction(fc({"abc", "bcd"}));
    REQUIRE(two.status == SearchStatus::found);
    CHECK(verify_construction(*two.tree));
    CHECK(hochster_construction(fc({"abc", "cde"})).status == SearchStatus::refuted);
    // A circle splits into two paths meeting in two points.
    CHECK(hochster_construction(fc({"ab", "bc", "ca"})).status == SearchStatus::found);
    CHECK(hochster_construction(fc({"ab", "cd"})).status == SearchStatus::refuted);
    // The dimension form agrees with the poset form on C*K for small complexes.
    for (const auto& k : simplicial_corpus(4)) {
        bool h = hochster_construction(k).status == SearchStatus::found;
        bool p = find_construction(dual_cone(k.face_poset())).status == SearchStatus::found;
        bool pure = is_pure(k.face_poset()).is_yes();
        if (pure) CHECK(h == p);
        if (h) CHECK(p);
    }
}

TEST_CASE("elementary zips") {
    Poset e = simplex(2);
    Poset z = elementary_zip(e, {"01", "0", "1"});
    CHECK(z.size() == 1);
    CHECK(zip_goal_reached(z, ZipGoal::singleton));

    Poset tri = boundary_simplex(2);
    Poset d = elementary_zip(tri, {"01", "0", "1"});
    CHECK(isomorphic(d, digon()));

    Poset sq = cube(2);
    CHECK(check_zip_site(sq, sq.at("0*"), sq.at("00"), sq.at("01")));
    CHECK_FALSE(check_zip_site(sq, sq.at("**"), sq.at("0*"), sq.at("1*")));
    CHECK_THROWS_AS(elementary_zip(sq, {"**", "0*", "1*"}), PosetError);
}

TEST_CASE("zipping search") {
    auto r = find_zipping(simplex(3), ZipGoal::singleton);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(verify_zipping(simplex(3), r.steps, ZipGoal::singleton));
    CHECK(r.steps.size() == 3);
    CHECK(find_zipping(boundary_simplex(2), ZipGoal::singleton).status == SearchStatus::refuted);
    CHECK(find_zipping(boundary_simplex(2), ZipGoal::singleton, no_pruning()).status == SearchStatus::refuted);
    CHECK(find_zipping(octahedron().face_poset(), ZipGoal::singleton).status == SearchStatus::refuted);

    auto cube_zip = find_zipping(cube(2), ZipGoal::singleton, no_pruning());
    REQUIRE(cube_zip.status == SearchStatus::found);
    CHECK(replay_zipping(cube(2), cube_zip.steps).size() == 1);

    // A step whose top is not covered by its two elements is rejected by the verifier.
    std::vector<ZipStep> bogus = {{"012", "0", "1"}};
    CHECK_FALSE(verify_zipping(simplex(3), bogus, ZipGoal::singleton));
}

TEST_CASE("zipping from a construction") {
    for (auto [facets, steps] : std::vector<std::pair<std::vector<std::string>, std::size_t>>{{{"ab"}, 1}, {{"abc"}, 3}}) {
        FacetComplex k = fc(facets);
        Poset p = k.face_poset();
        auto c = find_construction(p.dual());
        REQUIRE(c.tree);
        ZipBridgeStats stats;
        auto z = zipping_from_construction(p, *c.tree, {}, &stats);
        CHECK(z.size() == steps);
        CHECK(stats.fallbacks == 0);
        CHECK(verify_zipping(p, z, ZipGoal::singleton));
    }
}

TEST_CASE("edge zipping") {
    FacetComplex e = fc({"ab"});
    CHECK(is_elementary_edge_zip(e, "a", "b"));
    CHECK(edge_contract(e, "a", "b").vertex_count() == 1);

    FacetComplex hollow = fc({"ab", "bc", "ca"});
    CHECK_FALSE(is_elementary_edge_zip(hollow, "a", "b"));
    CHECK_FALSE(is_elementary_edge_zip(hollow, "a", "a"));

    FacetComplex pair = fc({"abc", "abd"});
    REQUIRE(is_elementary_edge_zip(pair, "a", "b"));
    auto zs = zipping_from_edge_zipping(pair, {{"a", "b"}});
    CHECK(zs.size() == 3);
    CHECK(isomorphic(replay_zipping(pair.face_poset(), zs), fc({"ac", "ad"}).face_poset()));

    FacetComplex target = fc({"abc", "abd", "acd", "bcd"});
    FacetComplex oct = octahedron();
    auto r = find_edge_zipping(oct, target);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(r.steps.size() == 2);
    CHECK(verify_edge_zipping(oct, r.steps, target));
    auto full = zipping_from_edge_zipping(oct, r.steps);
    CHECK(isomorphic(replay_zipping(oct.face_poset(), full), target.face_poset()));

    CHECK(find_edge_zipping(hollow, fc({"a"})).status == SearchStatus::refuted);
}

TEST_CASE("collapsing") {
    for (std::size_t n = 1; n <= 4; ++n) CHECK(is_collapsible_poset(simplex(n)).is_yes());
    CHECK(is_collapsible_poset(boundary_simplex(2)).is_no());
    CHECK(is_collapsible_poset(boundary_simplex(2), no_pruning()).is_no());
    CHECK(is_collapsible_poset(cone(boundary_simplex(3))).is_yes());
    CHECK(is_collapsible_poset(Poset()).is_no());

    Poset two = fc({"abc", "bcd"}).face_poset();
    auto r = find_collapse(two, std::nullopt, no_pruning());
    REQUIRE(r.status == SearchStatus::found);
    CHECK(verify_collapse(two, std::nullopt, r.steps));

    // Collapse the solid triangle onto one of its edges.
    Poset d2 = simplex(3);
    Mask edge = d2.down_set(d2.at("01"));
    auto onto = find_collapse(d2, edge);
    REQUIRE(onto.status == SearchStatus::found);
    CHECK(verify_collapse(d2, edge, onto.steps));
    CHECK_FALSE(verify_collapse(d2, d2.down_set(d2.at("0")), onto.steps));
    Mask rim = d2.full_mask();
    rim.reset(d2.at("012"));
    CHECK(find_collapse(d2, rim).status == SearchStatus::refuted);
}

TEST_CASE("barycentric lift of a collapse") {
    for (auto [n, pairs] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {3, 12}}) {
        Poset p = simplex(n);
        auto r = find_collapse(p, std::nullopt);
        REQUIRE(r.status == SearchStatus::found);
        auto lifted = barycentric_collapse_lift(p, r.steps);
        CHECK(lifted.size() == pairs);
        CHECK(verify_simplicial_collapse(barycentric(p), lifted, 1));
    }
    Poset p = cube(2);
    auto r = find_collapse(p, std::nullopt);
    REQUIRE(r.status == SearchStatus::found);
    auto lifted = barycentric_collapse_lift(p, r.steps);
    CHECK(verify_simplicial_collapse(barycentric(p), lifted, 1));
    // Dropping the last pair leaves more than one simplex.
    lifted.pop_back();
    CHECK_FALSE(verify_simplicial_collapse(barycentric(p), lifted, 1));
}

TEST_CASE("shelling") {
    auto c = find_shelling(simplex(3));
    REQUIRE(c.status == SearchStatus::found);
    CHECK(c.steps.empty());
    CHECK(verify_shelling(simplex(3), c.steps));

    Poset h = handles(simplex(2));
    auto s = find_shelling(h);
    REQUIRE(s.status == SearchStatus::found);
    CHECK(verify_shelling(h, s.steps));

    CHECK(find_shelling(boundary_simplex(2).dual()).status == SearchStatus::refuted);
    CHECK(find_shelling(boundary_simplex(2).dual(), ShellGoal::cone, no_pruning()).status == SearchStatus::refuted);

    auto e = find_shelling(boundary_simplex(2), ShellGoal::empty);
    REQUIRE(e.status == SearchStatus::found);
    CHECK(verify_shelling(boundary_simplex(2), e.steps, ShellGoal::empty));
}

TEST_CASE("point inverses of maps") {
    Poset d2 = simplex(3);
    CHECK(point_inverse_dual_constructibility(MonotoneMap::identity(d2)).verdict.is_yes());

    Poset e = simplex(2);
    MonotoneMap squash = MonotoneMap::from_labels(
        d2, e, {{"0", "0"}, {"1", "1"}, {"2", "1"}, {"01", "01"}, {"02", "01"}, {"12", "1"}, {"012", "01"}});
    auto rep = point_inverse_dual_constructibility(squash);
    CHECK(rep.fibres_constructible.is_yes());

    // Sending the hollow triangle to a point has the circle as its only fibre.
    Poset tri = boundary_simplex(2);
    MonotoneMap to_point(tri, point(), std::vector<Index>(tri.size(), 0));
    auto bad = point_inverse_dual_constructibility(to_point);
    CHECK(bad.verdict.is_no());
    CHECK(bad.fibres_constructible.is_no());
}

TEST_CASE("dunce hat fixture") {
    FacetComplex dh = dunce_hat();
    CHECK(dh.vertex_count() == 8);
    CHECK(dh.facets().size() == 17);
    CHECK(is_z_acyclic(dh.face_poset()));
    CHECK(is_collapsible_poset(dh.face_poset()).is_no());
}

TEST_CASE("zip sites have the expected lower cone") {
    // At every valid site the cone below p is the rest of ⌊p⌋ prejoined to the
    // three-element poset q, r < p, and {p, q, r} is a full subposet.
    Poset vee = Poset::from_labeled_relation({"q", "r", "p"}, {{"q", "p"}, {"r", "p"}});
    std::vector<Poset> subjects = {cube(2), cube(3), prism(), octahedron().face_poset()};
    for (const auto& k : simplicial_corpus(4)) subjects.push_back(k.face_poset());
    std::size_t sites = 0;
    for (const Poset& p : subjects) {
        for (Index x = 0; x < p.size(); ++x) {
            const auto& lc = p.lower_covers(x);
            if (lc.size() != 2 || !check_zip_site(p, x, lc[0], lc[1])) continue;
            ++sites;
            Mask rest = p.strictly_below(x);
            rest.reset(lc[0]);
            rest.reset(lc[1]);
            Mask triple = p.empty_mask();
            for (Index y : {x, lc[0], lc[1]}) triple.set(y);
            CHECK(is_full_subposet(p, triple));
            CHECK(isomorphic(p.induced(p.down_set(x)), prejoin(p.induced(rest), vee)));
        }
    }
    CHECK(sites > 100);
}
