import random

import pytest

from dicegroups.elements import DiceGroup
from dicegroups.errors import LevelMismatch, PathShapeError
from dicegroups.fpalgebra import CubePoint
from dicegroups.quotient import (NotStabilized, Overflow, Stabilized, TreeLayers, enumerate_group,
                                 group_order, identity_permutation, project, schreier_sims,
                                 stabilized_order, vertex_index, vertex_path)

from conftest import random_config
from oracles import all_vertices, naive_act


def pt(s):
    return CubePoint.parse(s, 2)


def test_vertex_indexing(G):
    assert vertex_index(G, [pt("110"), pt("000")]) == 24
    assert vertex_path(G, 24, 2) == [pt("110"), pt("000")]
    with pytest.raises(PathShapeError):
        vertex_index(G, [pt("11")])
    with pytest.raises(ValueError):
        vertex_path(G, 64, 2)


def test_projection_matches_naive_action(G):
    for word in ("w", "a1 w", "w a2 w a3", "a1 a2 w a1 a2"):
        perm = project(G.from_word(word), 2)
        for idx, v in enumerate(all_vertices(G.config, 2)):
            img = naive_act(G.config, word, v)
            assert perm(idx) == img[0] * 8 + img[1]


def test_permutation_basics(G):
    a, w = project(G.from_word("a1"), 2), project(G.from_word("w"), 2)
    assert (a * a).is_identity()
    assert (a * w).order() == 4
    assert (w * a) == project(G.from_word("w a1"), 2)
    assert (a * w).inverse() == project(G.from_word("w a1"), 2)
    assert w.truncate(1).is_identity()
    assert len(set(w.one_line().split())) == 64
    assert "(" in w.cycle_notation()
    with pytest.raises(LevelMismatch):
        a * project(G.from_word("a1"), 3)


def test_tower_compatibility(G):
    rng = random.Random(1)
    for _ in range(30):
        x, y = G.random_element(rng, 4), G.random_element(rng, 4)
        assert project(x, 4).truncate(2) == project(x, 2)
        assert project(x * y, 3) == project(x, 3) * project(y, 3)


def test_small_groups(G):
    gens = [project(G.from_word(t), 3) for t in ("a1", "w")]
    assert group_order(gens) == 8
    elems = enumerate_group(gens, cap=100)
    assert len(elems) == 8
    assert isinstance(enumerate_group(gens, cap=5), Overflow)
    assert group_order([identity_permutation(gens[0].shapes)]) == 1


def test_schreier_sims_matches_enumeration():
    rng = random.Random(6)
    checked = 0
    while checked < 25:
        config = random_config(rng, max_rank=2)
        G = DiceGroup(config)
        n = 2 if config.shape(1).size * config.shape(2).size <= 81 else 1
        gens = [project(G.random_element(rng, 2), n) for _ in range(2)]
        elems = enumerate_group(gens, cap=20000)
        if isinstance(elems, Overflow):
            continue
        bsgs = schreier_sims(gens)
        assert bsgs.order() == len(elems)
        assert TreeLayers(gens).order() == len(elems)
        for g in list(elems)[:20]:
            assert bsgs.contains(g)
        checked += 1


def test_quotient_orders_are_monotone(G):
    orders = [group_order([project(G.from_word(t), n) for t in ("a1", "a2", "w")]) for n in (1, 2, 3, 4)]
    assert orders == sorted(orders)
    assert orders[-1] == 256


def test_layers_agree_with_schreier_sims_on_full_group(G):
    gens = [project(G.from_word(t), 3) for t in ("a1", "a2", "a3", "w")]
    assert TreeLayers(gens).order() == group_order(gens) == 2 ** 45


def test_stabilized_order(G):
    res = stabilized_order(G, ["a1", "w"], n_max=5)
    assert res == Stabilized(8, 2)
    res = stabilized_order(G, ["a1", "a2", "a3", "w"], n_max=4)
    assert isinstance(res, NotStabilized)
    with pytest.raises(ValueError):
        stabilized_order(G, ["w"], n_max=1)


def test_worked_examples(G):
    assert vertex_index(G, [pt("110")]) == 3
    assert vertex_index(G, [pt("110"), CubePoint.parse("101", 2)]) == 29
    assert project(G.from_word("w"), 1).is_identity()
    assert project(G.from_word("a1"), 1).cycle_notation() == "(0 1)(2 3)(4 5)(6 7)"
    assert project(G.identity(), 3).is_identity()
    abc = [G.from_word(t) for t in ("a1", "a2", "a3")]
    assert [group_order([project(x, n) for x in abc]) for n in (1, 2, 3)] == [8, 8, 8]
    assert len(enumerate_group([project(G.from_word("a1"), 1)], 10)) == 2
    assert stabilized_order(G, ["a1", "a2", "a3"], n_max=3) == Stabilized(8, 1)


def test_orders_grow_by_multiples(G):
    rng = random.Random(17)
    for _ in range(5):
        xs = [G.random_element(rng, 3) for _ in range(2)]
        orders = [group_order([project(x, n) for x in xs]) for n in (1, 2, 3)]
        assert orders[1] % orders[0] == 0 and orders[2] % orders[1] == 0
