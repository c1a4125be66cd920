from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from pipedream.perm import Permutation, inversions, length
from pipedream.rcgraph import (BudgetExceeded, LadderMove, MoveError, RCGraph, RCGraphError,
                               applicable_moves, apply_move, bottom, count_rc_graphs, diag,
                               enumerate_all, inverse_moves, is_simply_connected, label,
                               reading_word, simple_component, simple_sink, strand_types, top,
                               unapply_move, validate)

perms = st.integers(1, 6).flatmap(lambda n: st.permutations(range(1, n + 1)))

FIG4 = [
    {(2, 1), (2, 2), (3, 1)},
    {(1, 3), (2, 1), (3, 1)},
    {(1, 2), (1, 3), (3, 1)},
    {(1, 2), (1, 3), (2, 2)},
    {(1, 2), (2, 1), (2, 2)},
]


def brute_rc_graphs(w):
    """All crossing sets in the staircase whose reading word is a reduced word of w."""
    w = tuple(w)
    n = len(w)
    ell = sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])
    cells = [(i, j) for i in range(1, n) for j in range(1, n + 1 - i)]
    out = []
    for sub in combinations(cells, ell):
        word = [i + j - 1 for i, j in sorted(sub, key=lambda c: (c[0], -c[1]))]
        cur = list(range(1, n + 1))
        inv = 0
        ok = True
        for s in word:
            if cur[s - 1] > cur[s]:
                ok = False
                break
            cur[s - 1], cur[s] = cur[s], cur[s - 1]
        if ok and tuple(cur) == w:
            out.append(frozenset(sub))
    return set(out)


def test_1432_fixtures():
    w = "1432"
    B = bottom(w)
    assert B.cells == {(2, 1), (2, 2), (3, 1)}
    assert reading_word(B) == (3, 2, 3)
    assert label(B) == (0, 1, 2)
    assert {D.cells for D in enumerate_all(w)} == {frozenset(c) for c in FIG4}


def test_fig2_bottom_and_top():
    w = "156342"
    assert bottom(w).cells == {(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (4, 1), (5, 1)}
    assert top(w).cells == {(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4), (3, 2), (4, 2)}


def test_fig1_graph_validates():
    D = validate({(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 2)}, "43152")
    assert len(D) == 6


@pytest.mark.parametrize("cells,w", [
    ({(1, 1), (1, 2)}, "1432"),           # wrong length
    ({(1, 1), (2, 1), (1, 2)}, "1432"),   # word 2,1,2 evaluates to 321
    ({(1, 2)}, "21"),                     # word 2 evaluates to 132
    ({(1, 1), (2, 1)}, "2143"),
])
def test_validate_rejects(cells, w):
    with pytest.raises(RCGraphError):
        validate(cells, w)


def test_order_one_move_on_1432():
    B = bottom("1432")
    moves = applicable_moves(B)
    assert LadderMove((3, 1), 1) in moves
    D = apply_move(B, LadderMove((3, 1), 1))
    assert D.cells == {(1, 2), (2, 1), (2, 2)}
    assert label(D) == (0, 2, 1) > label(B)


def test_fig6_order_one_move():
    B = bottom("14532")
    left = RCGraph.from_cells({(1, 2), (1, 3), (3, 1), (3, 2), (4, 1)}, "14532")
    assert left in simple_component(B)
    assert LadderMove((4, 1), 1) in applicable_moves(left)
    D = apply_move(left, LadderMove((4, 1), 1))
    assert D.cells == {(1, 2), (1, 3), (2, 2), (3, 1), (3, 2)}


def test_move_errors():
    B = bottom("1432")
    with pytest.raises(MoveError):
        apply_move(B, LadderMove((3, 1), 0))
    with pytest.raises(MoveError):
        apply_move(B, LadderMove((2, 1), 0))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumeration_matches_brute_force(n):
    for w in permutations(range(1, n + 1)):
        got = {D.cells for D in enumerate_all(w)}
        assert got == brute_rc_graphs(w)


@given(perms)
@settings(max_examples=60, deadline=None)
def test_every_graph_valid_with_inversion_types(w):
    w = Permutation(w)
    graphs = enumerate_all(w)
    assert len(set(graphs)) == len(graphs)
    inv = inversions(w)
    for D in graphs:
        validate(D.cells, w)
        types = strand_types(D)
        assert set(types.values()) == inv
        assert len(types) == length(w)


@given(perms)
@settings(max_examples=60, deadline=None)
def test_moves_label_and_inverse(w):
    for D in enumerate_all(w):
        for m in applicable_moves(D):
            E = apply_move(D, m)
            if m.simple:
                assert label(E) == label(D)
            else:
                assert label(E) > label(D)
            assert unapply_move(E, m) == D
            assert m in inverse_moves(E)


@given(perms)
@settings(max_examples=40, deadline=None)
def test_non_simple_move_swaps_rung_types_only(w):
    """Outside the moved crossing and the rung rows, types are unchanged."""
    for D in enumerate_all(w):
        for m in applicable_moves(D):
            if m.simple:
                continue
            E = apply_move(D, m)
            (i, j), k = m.source, m.order
            rungs = {(x, y) for x in range(i - k, i) for y in (j, j + 1)}
            for c, t in D.types.items():
                if c != (i, j) and c not in rungs:
                    assert E.types[c] == t
            for x in range(i - k, i):
                assert E.types[(x, j)] == D.types[(x, j + 1)]
                assert E.types[(x, j + 1)] == D.types[(x, j)]
            assert E.types[m.target] == D.types[(i, j)]


def test_rung_swap_on_1432():
    B = bottom("1432")
    assert B.types == {(2, 1): (2, 4), (2, 2): (2, 3), (3, 1): (3, 4)}
    E = apply_move(B, LadderMove((3, 1), 1))
    assert E.types == {(2, 1): (2, 3), (2, 2): (2, 4), (1, 2): (3, 4)}


@given(perms)
@settings(max_examples=60, deadline=None)
def test_simple_sink_reaches_top(w):
    from pipedream.perm import count_pattern
    sink, steps = simple_sink(bottom(w))
    assert sink == top(w)
    assert steps == count_pattern("132", w)


def test_simple_connectivity_examples():
    assert not is_simply_connected("1432")
    assert is_simply_connected("132")
    assert len(simple_component(bottom("1432"))) == 4


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_all("1432", budget=4)
    assert count_rc_graphs("1432", budget=5) == 5


def test_budget_env(monkeypatch):
    monkeypatch.setenv("PIPEDREAM_BUDGET", "2")
    with pytest.raises(BudgetExceeded):
        count_rc_graphs("1432")


def test_json_round_trip():
    D = bottom("43152")
    assert RCGraph.from_json(D.to_json()) == D
    assert D.to_json()["label"] == list(label(D))


def test_identity():
    B = bottom(Permutation.identity())
    assert len(B) == 0
    assert enumerate_all("1") == [B]


def test_diag():
    assert diag((2, 3)) == 4
