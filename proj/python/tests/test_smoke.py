import os

import pytest

import zipcert


def test_parse_and_write_round_trip():
    p = zipcert.Poset.parse("elements: a b ab\ncovers: a<ab b<ab")
    assert len(p) == 3
    assert p.less("a", "ab")
    text = p.to_text()
    assert text == "format: zipcert-poset 1\nelements: a b ab\ncovers: a<ab b<ab\n"
    assert zipcert.Poset.parse(text).isomorphic(zipcert.simplex(2))


def test_constructor_and_errors():
    p = zipcert.Poset(["x", "y", "z"], [("x", "y"), ("y", "z")])
    assert p.less("x", "z")
    with pytest.raises(ValueError):
        zipcert.Poset(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(ValueError):
        zipcert.Poset.parse("colors: red")


def test_operations():
    s = zipcert.simplex(3)
    assert len(s) == 7
    assert len(zipcert.cone(s)) == 8
    assert zipcert.join(zipcert.simplex(1), zipcert.simplex(1)).isomorphic(zipcert.simplex(2))
    assert len(zipcert.barycentric(zipcert.simplex(2))) == 5
    assert len(zipcert.cube(2)) == 9


def test_homology():
    assert zipcert.betti(zipcert.boundary_simplex(3), reduced=True) == {-1: 0, 0: 0, 1: 0, 2: 1}
    assert zipcert.betti(zipcert.boundary_simplex(2))[0] == 1
    assert zipcert.is_z_acyclic(zipcert.dunce_hat().face_poset())
    assert zipcert.euler_characteristic(zipcert.simplex(3)) == 1


def test_recognizers():
    verdict, _ = zipcert.is_simplicial(zipcert.simplex(3))
    assert verdict == "yes"
    verdict, _ = zipcert.is_sphere(zipcert.octahedron().face_poset())
    assert verdict == "yes"


def test_search_and_verify():
    tri = zipcert.FacetComplex.from_strings(["abc"])
    p = tri.face_poset()
    r = zipcert.find_zipping(p)
    assert r["status"] == "found"
    cert = r["certificate"]
    assert cert["format"] == "zipcert-certificate"
    ok, _ = zipcert.verify_certificate(cert, p, tri)
    assert ok
    cert["payload"]["steps"][0] = ["nowhere", "x"]
    ok, reason = zipcert.verify_certificate(cert, p, tri)
    assert not ok and reason

    d = zipcert.simplex(3).dual()
    r = zipcert.find_construction(d)
    assert r["status"] == "found"
    assert zipcert.verify_certificate(r["certificate"], d)[0]


def test_edge_zipping_octahedron():
    target = zipcert.FacetComplex.from_strings(["abc", "abd", "acd", "bcd"])
    r = zipcert.find_edge_zipping(zipcert.octahedron(), target)
    assert r["status"] == "found"
    assert zipcert.verify_certificate(r["certificate"], zipcert.octahedron().face_poset(), zipcert.octahedron())[0]


def test_dunce_hat_collapse_exhausts_small_budget():
    r = zipcert.find_collapse(zipcert.dunce_hat().face_poset(), budget=1)
    assert r["status"] == "exhausted"
    assert r["certificate"] is None


@pytest.mark.skipif("ZIPCERT_DATA_DIR" not in os.environ, reason="data directory not configured")
def test_data_file():
    with open(os.path.join(os.environ["ZIPCERT_DATA_DIR"], "dunce-hat.facets")) as f:
        k = zipcert.FacetComplex.parse(f.read())
    assert len(k.face_poset()) == len(zipcert.dunce_hat().face_poset())
