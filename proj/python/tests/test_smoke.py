import math

import pytest

import bslimits


def test_builtin_classes():
    assert "trees_labelled" in bslimits.builtin_names()
    with pytest.raises(ValueError):
        bslimits.singularity("trees")


def test_labelled_tree_constants():
    s = bslimits.singularity("trees_labelled")
    assert s.rho == pytest.approx(math.exp(-1), abs=1e-12)
    assert s.tau == pytest.approx(1.0, abs=1e-12)
    assert s.A == pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-9)


def test_counts_are_cayley():
    c = bslimits.counts("trees_labelled", 6)
    assert c[5] == "125/24"  # 5^4 / 5!


def test_unlabelled_tree_leaf_probabilities():
    leaf = bslimits.links("trees_unlabelled", 1)[0]
    assert leaf["size"] == 1
    assert leaf["q"] == pytest.approx(0.338322, abs=1e-5)
    assert bslimits.bs_leaf_probability("trees_unlabelled", 200) == pytest.approx(0.438156, abs=1e-5)


def test_link_masses_below_one():
    mass = bslimits.link_mass_by_size("cacti_labelled", 12)
    assert all(m > 0 for m in mass)
    assert sum(mass) < 1


def test_sampling_is_seeded():
    a = bslimits.sample_uniform("cacti_labelled", 20, 5)
    b = bslimits.sample_uniform("cacti_labelled", 20, 5)
    assert a == b
    assert a["n"] == 20 and len(a["edges"]) >= 19
    chain = bslimits.sample_limit_chain("trees_labelled", 3, 1, 0.05)
    assert len(chain["sizes"]) == 3
    assert chain["graph"]["n"] == sum(chain["sizes"]) + 1


def test_metric():
    assert bslimits.radius("star(3)", "star(inf)") == (4, False)
    assert bslimits.distance("star(3)", "star(inf)") == (0.25, False)
    assert bslimits.radius("joinall(fans)", "fan(inf)") == (8, True)
    assert bslimits.profile_size("rado", 3) == 3
    assert bslimits.normalise_family(" join( ray,star(3)) ") == "join(ray, star(3))"
    with pytest.raises(bslimits.FamilyParseError, match="position 10"):
        bslimits.radius("join(ray, stur(3))", "ray")


def test_census_and_core():
    path = {"n": 3, "root": 0, "edges": [(0, 1), (1, 2)]}
    star = {"n": 3, "root": 0, "edges": [(0, 1), (0, 2)]}
    c = bslimits.census([path, star, path], 3)
    assert c["parts"] == [[0, 2], [1]]
    assert len(c["parts"]) <= 2 ** c["types"]
    k = bslimits.core(path, [2])
    assert k["ground"] == [0, 1] and k["first"] == [2]
    with pytest.raises(bslimits.UndefinedGroundFloor):
        bslimits.core(path, [0])
    assert bslimits.isomorphic(path, {"n": 3, "root": 2, "edges": [(2, 1), (1, 0)]})
