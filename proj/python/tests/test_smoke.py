import os
import pathlib

import pytest

import treehom

CORPUS = pathlib.Path(os.environ.get("TREEHOM_CORPUS", pathlib.Path(__file__).resolve().parents[2] / "corpus"))


def test_cycle_is_rejected_with_stalled_component():
    cycle = treehom.lt_cycle()
    assert not treehom.decide_tree(cycle)
    assert not treehom.decide_semilinear(cycle)
    fp = treehom.fixpoint_levels(cycle)
    assert not fp["exhausted"]
    assert fp["stalled_component"] == ["a", "b", "c"]
    with pytest.raises(treehom.NoHomomorphism):
        treehom.build_witness(cycle)


def test_tripleu_stages_and_witness():
    s = treehom.tripleu(0, 0)
    assert len(s) == 7
    fp = treehom.fixpoint_levels(s)
    assert fp["exhausted"]
    assert fp["stages"]["a1"] == 0 and fp["stages"]["l"] == 1 and fp["stages"]["b1"] == 2
    w = treehom.build_witness(s)
    assert w["verified"]
    assert w["parents"][0] is None
    assert w["height"] == fp["stage_count"]


def test_structure_round_trip_and_errors():
    s = treehom.ConstraintStructure(["x", "y", "z"], lt=[("x", "y")], inc=[("y", "z")])
    assert s.lt("x", "y") and not s.lt("y", "x")
    assert s.inc("y", "z")
    assert treehom.ConstraintStructure.parse(s.to_text()) == s
    with pytest.raises(treehom.ParseError):
        treehom.ConstraintStructure.parse("lt a")
    with pytest.raises(treehom.UnknownLabel):
        s.lt("x", "missing")


def test_oracles_agree_on_random_structures():
    for seed in range(60):
        s = treehom.random_structure(1 + seed % 6, 0.15, 0.08, seed)
        verdict = treehom.decide_tree(s)
        assert treehom.subset_criterion_oracle(s) == verdict
        assert (treehom.extension_oracle(s) is not None) == verdict
        for h in range(3):
            assert treehom.decide_tree_height(s, h) == treehom.brute_force_tree_hom_oracle(s, h, len(s))
    with pytest.raises(treehom.SizeLimitExceeded):
        treehom.extension_oracle(treehom.chain(8))


def test_universal_embedding():
    for seed in range(20):
        order = treehom.random_semilinear_order(1 + seed % 8, seed)
        e = treehom.embed_universal(order)
        assert e["verified"]
        assert set(e["words"]) == set(order.labels)
    with pytest.raises(treehom.NotSemilinear):
        treehom.embed_universal(treehom.lt_cycle())


def test_family_placement_and_games():
    e_stage = [treehom.placement_stage(treehom.family("E", [2, s]), "d") for s in (3, 5, 7)]
    u_stage = [treehom.placement_stage(treehom.family("U", [2, s]), "d") for s in (3, 5, 7)]
    assert len(set(e_stage)) == 1
    assert u_stage == sorted(set(u_stage))
    with pytest.raises(treehom.InvalidConfig):
        treehom.family("X", [1, 2])
    assert treehom.solve_game(treehom.chain(1), treehom.chain(2), 2) == "spoiler"
    assert treehom.solve_game(treehom.chain(3), treehom.chain(3), 2) == "duplicator"
    assert treehom.find_equivalent_chain_lengths(2, 6) == [5, 6]


def test_corpus_files_load():
    files = sorted(CORPUS.glob("*.cg"))
    assert files
    for path in files:
        s = treehom.ConstraintStructure.load(str(path))
        assert len(s) > 0
