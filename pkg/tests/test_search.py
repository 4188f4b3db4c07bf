import pytest

from acycmatch.errors import ArgumentError
from acycmatch.search import WitnessKind, acyclic_property_search, weak_acyclic_search


@pytest.mark.parametrize("n", [2, 6, 12])
def test_weak_search_holds(n):
    rep = weak_acyclic_search(n)
    assert rep.holds and rep.witness is None and rep.pairs_examined > 0


@pytest.mark.parametrize("n", [2, 3, 5])
def test_acyclic_search_holds(n):
    assert acyclic_property_search(n).holds


def test_acyclic_search_z7_witness():
    rep = acyclic_property_search(7)
    assert rep.outcome == "counterexample"
    assert (str(rep.witness.A), str(rep.witness.B)) == ("{0,1,3}", "{1,2,4}")
    assert rep.witness.kind is WitnessKind.NO_ACYCLIC_MATCHING
    assert rep.witness.verify()
    assert rep.pairs_examined == 379


@pytest.mark.parametrize("threads", [2, 3, 5])
def test_sharding_gives_same_report(threads):
    base = acyclic_property_search(7).to_dict()
    got = acyclic_property_search(7, threads=threads).to_dict()
    base.pop("elapsed_seconds"), got.pop("elapsed_seconds")
    assert base == got
    weak = weak_acyclic_search(9, threads=threads).to_dict()
    weak.pop("elapsed_seconds")
    ref = weak_acyclic_search(9).to_dict()
    ref.pop("elapsed_seconds")
    assert weak == ref


def test_symmetry_pruning_keeps_canonical_witness():
    pruned = acyclic_property_search(7, symmetry_pruning=True)
    assert str(pruned.witness.A) == "{0,1,3}"
    assert weak_acyclic_search(8, symmetry_pruning=True).holds


def test_max_size_caps_search():
    rep = acyclic_property_search(7, max_size=2)
    assert rep.holds
    assert rep.pairs_examined < acyclic_property_search(7).pairs_examined


def test_compare_bijections_agrees_on_weak_pairs():
    for n in range(2, 9):
        a = weak_acyclic_search(n).to_dict()
        b = weak_acyclic_search(n, compare_bijections=True).to_dict()
        a.pop("elapsed_seconds"), b.pop("elapsed_seconds")
        assert a == b


def test_search_report_json_shape():
    d = acyclic_property_search(7).to_dict()
    assert list(d) == ["modulus", "property", "outcome", "witness", "pairs_examined", "elapsed_seconds"]
    assert d["witness"] == {"A": "{0,1,3}", "B": "{1,2,4}", "kind": "NoAcyclicMatching"}


def test_bad_arguments():
    with pytest.raises(ArgumentError):
        acyclic_property_search(1)
    with pytest.raises(ArgumentError):
        weak_acyclic_search(5, threads=0)
    with pytest.raises(ArgumentError):
        weak_acyclic_search(5, max_size=0)
