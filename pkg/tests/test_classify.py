"""Classifier verdicts on the named examples and corpus consistency."""

import pytest

from monres.classify import (IMPLICATIONS, classify, is_homologically_monotonic,
                             lattice_linear_greedy)
from monres.lattice import LcmLattice
from monres.linalg import Field

from conftest import random_corpus


QQ = Field(0)


def verdicts(lat):
    rep = classify(lat, QQ)
    return {name: v for name, v, _ in rep.rows()}


def test_rigid4(lattices):
    v = verdicts(lattices["rigid4"])
    assert v["scarf"] == "no"
    assert v["rigid"] == "yes"
    assert v["homologically_monotonic"] == "yes"
    assert v["betti_linear"] == "yes"
    assert v["lattice_linear"] != "yes"  # known non-lattice-linear: never claimed


def test_triangle(lattices):
    v = verdicts(lattices["triangle"])
    assert v["homologically_monotonic"] == "yes"
    assert v["rigid"] == "no"
    assert v["scarf"] == "no"


def test_two_gens_scarf(lattices):
    v = verdicts(lattices["two_gens"])
    assert v["scarf"] == "yes"
    assert v["lattice_linear"] == "yes"


def test_cone3(lattices):
    v = verdicts(lattices["cone3"])
    assert v["betti_linear"] == "no"
    assert v["nearly_hm"] == "yes"
    assert v["nearly_scarf"] == "yes"
    assert v["homology_linear"] == "yes"


def test_four_gens_not_homology_linear(lattices):
    v = verdicts(lattices["four_gens"])
    assert v["homology_linear"] == "no"
    assert v["strongly_homology_linear"] == "no"


def test_wide6(lattices):
    v = verdicts(lattices["wide6"])
    assert v["betti_linear"] == "yes"
    assert v["strongly_homology_linear"] == "no"
    assert v["homology_linear"] == "yes"
    assert v["nearly_hm"] == "no"


def test_split6(lattices):
    v = verdicts(lattices["split6"])
    assert v["strongly_homology_linear"] == "yes"
    assert v["betti_linear"] == "no"
    assert v["nearly_hm"] == "no"
    assert v["homology_linear"] == "yes"


def test_nearly_scarf5_lattice_linear(lattices):
    v = verdicts(lattices["nearly_scarf5"])
    assert v["lattice_linear"] == "yes"
    assert v["nearly_scarf"] == "yes"
    assert v["homologically_monotonic"] == "no"


def test_stable7_never_homology_linear(lattices):
    v = verdicts(lattices["stable7"])
    assert v["homology_linear"] in ("no", "unknown")
    assert v["betti_linear"] == "no"


def test_flag4_nearly_hm_not_nearly_scarf(lattices):
    v = verdicts(lattices["flag4"])
    assert v["nearly_hm"] == "yes"
    assert v["nearly_scarf"] == "no"
    assert v["betti_linear"] == "no"


def test_hm_two_definitions_agree(lattices):
    # comparability form vs the equal-dimension incomparability form
    for name in ("triangle", "four_gens", "rigid4", "hexagon", "cone3", "split6", "wide6"):
        lat = lattices[name]
        direct = is_homologically_monotonic(lat, QQ).verdict == "yes"
        dims = {}
        for e in lat.elements:
            if e.id == lat.bottom:
                continue
            dims[e.id] = set(lat.homology_at(e.id, QQ))
        incomparable_form = True
        for m1, d1 in dims.items():
            for m2, d2 in dims.items():
                if m1 == m2 or not (d1 & d2):
                    continue
                if lat.lt(m1, m2) or lat.lt(m2, m1):
                    incomparable_form = False
        assert direct == incomparable_form


def test_rigid_implies_poset_resolution(lattices):
    from monres.posetres import poset_construction

    lat = lattices["rigid4"]
    assert classify(lat, QQ)["rigid"].verdict == "yes"
    assert poset_construction(lat, QQ).is_minimal_resolution()


def test_greedy_lattice_linear_runs(lattices):
    ok, _ = lattice_linear_greedy(lattices["nearly_scarf5"], QQ)
    assert ok
    ok, witness = lattice_linear_greedy(lattices["rigid4"], QQ)
    assert not ok and witness == lattices["rigid4"].top


def test_corpus_diagram_consistency():
    for ideal in random_corpus(15, r_max=5, n_max=4, seed=300):
        lat = LcmLattice.from_ideal(ideal)
        rep = classify(lat, QQ)
        assert rep.consistent(), ideal.to_text()


def test_gf2_classification_runs(lattices):
    rep = classify(LcmLattice.from_ideal(lattices["triangle"].ideal), Field(2))
    assert rep["homologically_monotonic"].verdict == "yes"
