#include "doctest.h"
#include "zipcert/iso.hpp"
#include "zipcert/ops.hpp"

using namespace zipcert;

namespace {

Poset s0() { return antichain(2); }

}  // namespace

TEST_CASE("cones and prejoins") {
    CHECK(cone(Poset()).size() == 1);
    CHECK(isomorphic(cone(boundary_simplex(2)), simplex(3)));
    Poset p = boundary_simplex(2);
    CHECK(isomorphic(dual_cone(p), cone(p.dual()).dual()));
    CHECK(isomorphic(prejoin(p, point()), cone(p)));
    CHECK(isomorphic(prejoin(point(), p), dual_cone(p)));
    Poset pp = prejoin(s0(), s0());
    CHECK(pp.size() == 4);
    CHECK(pp.covers().size() == 4);
    CHECK(pp.label(0) == "1.0");
    // Labels survive unchanged when there is no clash.
    CHECK(prejoin(point("x"), point("y")).label(1) == "y");
}

TEST_CASE("products") {
    CHECK(isomorphic(product(powerset(1), powerset(1)), powerset(2)));
    Poset q = boundary_simplex(2);
    CHECK(isomorphic(product(point(), q), q));
    Poset sq = product(cube(1), cube(1));
    CHECK(sq.size() == 9);
    CHECK(isomorphic(sq, cube(2)));
}

TEST_CASE("joins and cojoins") {
    CHECK(isomorphic(join(simplex({"a"}), simplex({"b", "c"})), simplex(3)));
    Poset jj = join(s0(), s0());
    CHECK(jj.size() == 8);
    Poset square = cube(2);
    Mask bd = square.full_mask();
    bd.reset(*square.greatest());
    CHECK(isomorphic(jj, square.induced(bd).dual()));
    Poset p = boundary_simplex(2), q = chain(2);
    CHECK(isomorphic(product(cone(p), cone(q)), cone(cojoin(p, q))));
    CHECK(isomorphic(join(p, q), join(q, p)));
    CHECK(isomorphic(dual_cone(join(p, q)), product(dual_cone(p), dual_cone(q))));
}

TEST_CASE("stars and links") {
    Poset s = simplex({"a", "b", "c"});
    Poset lk = s.induced(link(s, s.at("a")));
    CHECK(isomorphic(lk, simplex({"b", "c"})));
    Poset b = boundary_simplex(2);
    CHECK(star(b, b.at("0")) == b.mask_of({"0", "01", "02", "1", "2"}));
    Poset p = boundary_simplex(2), q = chain(3);
    Poset pq = product(p, q);
    Index x = pq.at("(0,1)");
    CHECK(isomorphic(pq.induced(link(pq, x)),
                     join(p.induced(link(p, p.at("0"))), q.induced(link(q, q.at("1"))))));
}

TEST_CASE("barycentric subdivision") {
    Poset d1 = simplex({"a", "b"});
    Poset bd = barycentric(d1);
    CHECK(bd.size() == 5);
    CHECK(bd.find("{a,ab}"));
    CHECK(barycentric(simplex(3)).size() == 25);
    CHECK(barycentric(point()).size() == 1);
    Poset p = chain(2), q = s0();
    CHECK(isomorphic(barycentric(prejoin(p, q)), join(barycentric(p), barycentric(q))));
}

TEST_CASE("canonical subdivision and cubes") {
    CHECK(isomorphic(canonical(powerset(1)), cube(1)));
    CHECK(isomorphic(canonical(powerset(1)), simplex(2)));
    Poset p = boundary_simplex(2);
    CHECK(isomorphic(canonical(p.dual()), canonical(p)));
    Poset q = chain(2);
    CHECK(isomorphic(canonical(product(p, q)), product(canonical(p), canonical(q))));
    CHECK(simplex(3).size() == 7);
    CHECK(cube(2).size() == 9);
    CHECK(powerset(1).size() == 2);
    CHECK(isomorphic(cube(3), product(cube(1), cube(2))));
    CHECK(isomorphic(canonical(powerset(2)), cube(2)));
    CHECK(interval_endpoints("[(a,b),{c,d}]") == std::make_pair(std::string("(a,b)"), std::string("{c,d}")));
}

TEST_CASE("mirroring") {
    FacetComplex two_points = FacetComplex::from_facets({{"0"}, {"1"}});
    Poset square = cube(2);
    Mask bd = square.full_mask();
    bd.reset(*square.greatest());
    CHECK(isomorphic(mirror(two_points), square.induced(bd)));
    CHECK(isomorphic(mirror(FacetComplex::from_facets({{"0"}})), cube(1)));
    FacetComplex triangle = FacetComplex::from_facets({{"0", "1"}, {"1", "2"}, {"0", "2"}});
    Poset m = mirror(triangle);
    auto verts = m.minimal_elements();
    CHECK(verts.size() == 8);
    for (Index v : verts) CHECK(isomorphic(m.induced(link(m, v)), triangle.face_poset()));
}

TEST_CASE("handles") {
    CHECK(handles(point()).size() == 1);
    Poset d1 = simplex({"a", "b"});
    Poset h = handles(d1);
    CHECK(h.size() == 5);
    MonotoneMap r = handle_core_map(d1);
    MonotoneMap rb = handle_cocore_map(d1);
    CHECK(r.target().size() == 3);
    CHECK(rb.target().size() == 3);
    // The handle of the top cell is the cone under [ab,ab]*, isomorphic to the edge times a point.
    Index top = h.at("[ab,ab]");
    CHECK(h.up_set(top).count() == 1);
    CHECK(isomorphic(h.induced(h.down_set(top)), product(d1, point())));
    CHECK(barycentric_handles(d1).size() == 5);
}
