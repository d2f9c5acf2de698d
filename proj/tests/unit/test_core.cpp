#include "doctest.h"
#include "zipcert/iso.hpp"
#include "zipcert/ops.hpp"

using namespace zipcert;

namespace {

Poset delta1() { return Poset::from_labeled_relation({"a", "b", "ab"}, {{"a", "ab"}, {"b", "ab"}}); }
Poset three_chain() { return Poset::from_labeled_relation({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }
Poset delta2() { return simplex({"a", "b", "c"}); }
Poset boundary_triangle() {
    Poset s = delta2();
    Mask m = s.full_mask();
    m.reset(s.at("abc"));
    return s.induced(m);
}
Poset digon() {
    return Poset::from_labeled_relation({"x", "y", "e1", "e2"},
                                        {{"x", "e1"}, {"y", "e1"}, {"x", "e2"}, {"y", "e2"}});
}

}  // namespace

TEST_CASE("transitive closure of a generating relation") {
    Preposet pre({"a", "b", "c"}, {{0, 1}, {1, 2}});
    Poset p = transitive_closure(pre);
    CHECK(p.less(0, 2));
    CHECK(p.covers() == std::vector<Arrow>{{0, 1}, {1, 2}});
    Poset anti = transitive_closure(Preposet({"a", "b"}, {}));
    CHECK(anti.covers().empty());
    CHECK_FALSE(Preposet({"a", "b", "c"}, {{0, 1}, {1, 2}}).is_poset());
    CHECK(Preposet({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}}).is_poset());
}

TEST_CASE("cycles are rejected with a witness") {
    try {
        Preposet({"a", "b"}, {{0, 1}, {1, 0}});
        FAIL("expected a cycle error");
    } catch (const CycleError& e) {
        CHECK(e.cycle().front() == e.cycle().back());
        CHECK(e.cycle().size() == 3);
    }
    CHECK_THROWS_AS(Poset::from_relation({"a", "b", "c"}, {{0, 1}, {1, 2}, {2, 0}}), CycleError);
    CHECK_THROWS_AS(Poset::from_relation({"a", "a"}, {}), PosetError);
    CHECK_THROWS_AS(Poset::from_relation({"a b"}, {}), PosetError);
}

TEST_CASE("dual") {
    Poset d = delta1().dual();
    CHECK(d.less(d.at("ab"), d.at("a")));
    CHECK(d.dual().same_as(delta1()));
    CHECK(isomorphic(boundary_triangle(), boundary_triangle().dual()));
    Poset c = three_chain().dual();
    CHECK(c.less(c.at("c"), c.at("a")));
}

TEST_CASE("down sets, up sets and closures") {
    Poset s = delta2();
    CHECK(s.down_set(s.at("abc")).count() == 7);
    CHECK(s.up_set(s.at("a")) == s.mask_of({"a", "ab", "ac", "abc"}));
    Poset b = boundary_triangle();
    CHECK(b.closure(b.mask_of({"ab", "bc"})) == b.mask_of({"a", "b", "c", "ab", "bc"}));
    CHECK(b.hull(b.mask_of({"a"})) == b.mask_of({"a", "ab", "ac"}));
}

TEST_CASE("boundary and coboundary") {
    Poset b = boundary_triangle();
    Poset cb = cone(b);
    Mask expected = cb.full_mask();
    expected.reset(cb.at("top"));
    CHECK(boundary(cb) == expected);
    CHECK(boundary(b).none());
    Poset d1 = delta1();
    CHECK(boundary(d1) == d1.mask_of({"a", "b"}));
    Poset dc = dual_cone(b);
    Mask exp2 = dc.full_mask();
    exp2.reset(dc.at("bot"));
    CHECK(coboundary(dc) == exp2);
}

TEST_CASE("closed, open and full subposets") {
    Poset s = delta2();
    Mask bd = s.full_mask();
    bd.reset(s.at("abc"));
    CHECK(is_closed_subposet(s, bd));
    Mask top = s.mask_of({"abc"});
    CHECK(is_open_subposet(s, top));
    CHECK_FALSE(is_closed_subposet(s, top));
    Mask mixed = s.mask_of({"a", "ab"});
    CHECK_FALSE(is_closed_subposet(s, mixed));
    CHECK_FALSE(is_open_subposet(s, mixed));
    CHECK_FALSE(is_full_subposet(s, bd));
    CHECK(is_full_subposet(s, s.mask_of({"a"})));
    CHECK(is_full_subposet(s, top));
    for (Index x = 0; x < s.size(); ++x) CHECK(is_full_subposet(s, s.up_set(x)));
}

TEST_CASE("conditional completeness") {
    CHECK(is_conditionally_complete(delta2()));
    CHECK(is_conditionally_complete(simplex(4)));
    CHECK_FALSE(is_conditionally_complete(digon()));
    CHECK(is_conditionally_complete(three_chain()));
    CHECK_FALSE(is_conditionally_complete(digon().dual()));
    for (const Poset& p : {delta2(), digon(), three_chain(), boundary_triangle(), cube(2), join(antichain(2), antichain(2))})
        CHECK(is_conditionally_complete(p) == is_conditionally_complete_exhaustive(p));
}

TEST_CASE("atoms and the atom embedding") {
    CHECK(atoms(delta2()).count() == 3);
    CHECK_FALSE(is_atomic(three_chain()));
    CHECK(is_atomic(boundary_triangle()));
    MonotoneMap f = atom_embedding(boundary_triangle());
    CHECK(f.target().size() == 7);
    CHECK(is_embedding(f));
    const Poset& b = f.source();
    for (Index i = 0; i < b.size(); ++i) CHECK(f.target().label(f(i)) == b.label(i));
}

TEST_CASE("linear extension") {
    auto names = [](const Poset& p) {
        std::vector<std::string> out;
        for (Index i : linear_extension(p)) out.push_back(p.label(i));
        return out;
    };
    CHECK(names(delta1()) == std::vector<std::string>{"a", "b", "ab"});
    CHECK(names(Poset::from_relation({"b", "a"}, {})) == std::vector<std::string>{"a", "b"});
    CHECK(names(delta2()) == std::vector<std::string>{"a", "b", "c", "ab", "ac", "bc", "abc"});
}

TEST_CASE("isomorphism testing") {
    CHECK(isomorphic(simplex({"a", "b"}), cube(1)));
    auto f = are_isomorphic(boundary_triangle(), boundary_triangle().dual());
    REQUIRE(f);
    CHECK(is_isomorphism(*f));
    CHECK_FALSE(are_isomorphic(delta1(), three_chain()));
    CHECK_FALSE(isomorphic(cube(3), cube(3).dual()));
    CHECK(isomorphic(product(cube(1), cube(2)), cube(3)));
    // Relabeled copies share a canonical key.
    Poset b = boundary_simplex(3);
    std::vector<std::string> names;
    for (Index i = 0; i < b.size(); ++i) names.push_back("x" + std::to_string(b.size() - i));
    CHECK(canonical_key(b) == canonical_key(b.relabeled(names)));
    CHECK(canonical_key(b) == canonical_key(b.dual()));  // the tetrahedron is self-dual
}

TEST_CASE("coloured canonical forms distinguish colourings") {
    Poset p = antichain(3);
    std::vector<std::uint32_t> c1{0, 0, 1}, c2{1, 0, 0}, c3{1, 1, 0};
    CHECK(canonical_form(p, &c1).key == canonical_form(p, &c2).key);
    CHECK(canonical_form(p, &c1).key != canonical_form(p, &c3).key);
}

TEST_CASE("map predicates") {
    Poset d = delta1();
    Poset sq = product(d, d);
    std::vector<Index> diag(d.size());
    for (Index i = 0; i < d.size(); ++i) diag[i] = sq.at("(" + d.label(i) + "," + d.label(i) + ")");
    MonotoneMap f(d, sq, diag);
    CHECK_FALSE(is_closed_map(f));
    MonotoneMap id = MonotoneMap::identity(d);
    CHECK(is_closed_map(id));
    CHECK(is_open_map(id));
    CHECK(is_embedding(id));
    CHECK(is_full_map(id));
    CHECK_THROWS_AS(MonotoneMap(d, d, {2, 1, 0}), MapError);
    // A simplicial map abc -> ad with b, c -> d is full.
    Poset s = simplex({"a", "b", "c"});
    Poset t = simplex({"a", "d"});
    std::vector<Index> table(s.size());
    for (Index i = 0; i < s.size(); ++i) {
        std::vector<std::string> img;
        for (char ch : s.label(i)) img.push_back(ch == 'a' ? "a" : "d");
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        table[i] = t.at(face_label(img));
    }
    CHECK(is_full_map(MonotoneMap(s, t, table)));
}
