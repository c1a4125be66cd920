import json
import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from pipedream.perm import Permutation, catalan_permutation, count_pattern, lehmer_code
from pipedream.rcgraph import bottom, enumerate_all
from pipedream.schubert import (RIORDAN, CoefficientTable, build_coefficients, catalan,
                                max_coefficient, max_coefficient_report, monomials, nu,
                                nu_macdonald_oracle, reduced_words, riordan_check,
                                riordan_reference, verify_nonnegativity)

perms = st.integers(1, 6).flatmap(lambda n: st.permutations(range(1, n + 1)))


@pytest.fixture(scope="module")
def table7():
    return build_coefficients(7)


def test_small_values():
    assert nu("1432") == 5
    assert nu("1") == 1
    assert nu("156342") == nu_macdonald_oracle("156342")
    assert [catalan(k) for k in range(7)] == [1, 1, 2, 5, 14, 42, 132]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_macdonald_dp_matches_word_listing(n):
    from math import factorial, prod
    for w in permutations(range(1, n + 1)):
        words = list(reduced_words(w))
        ell = len(words[0]) if words else 0
        total = sum(prod(word) for word in words)
        assert total == factorial(ell) * nu_macdonald_oracle(w)


@given(perms)
@settings(max_examples=80, deadline=None)
def test_nu_matches_oracle(w):
    assert nu(w) == nu_macdonald_oracle(w)


@given(perms)
@settings(max_examples=40, deadline=None)
def test_monomials(w):
    mono = monomials(w)
    assert sum(mono.values()) == nu(w)
    B = bottom(w)
    code = tuple(lehmer_code(w)) + (0,) * B.n
    assert B.row_counts() == code[:B.n - 1]
    assert mono[B.row_counts()] >= 1


def brute_coefficients(n):
    """Solve nu_w = 1 + sum_u c_u p_u(w) directly, size by size, over S_n."""
    c = {}
    for m in range(2, n + 1):
        for w in permutations(range(1, m + 1)):
            if w[-1] == m:
                continue
            rest = sum(cu * count_pattern(u, w) for u, cu in c.items() if len(u) < m)
            c[w] = nu(w) - 1 - rest
    return c


def test_table_matches_direct_solve(table7):
    ref = brute_coefficients(6)
    for u, cu in ref.items():
        assert table7[u] == cu


def test_frozen_values(table7):
    assert table7["132"] == 1
    assert table7["1432"] == 1
    assert table7["21"] == 0
    assert len(table7.nonzero(5)) == 23
    assert {m: len(table7.nonzero(m)) for m in range(1, 8)} == {
        1: 0, 2: 0, 3: 1, 4: 1, 5: 23, 6: 153, 7: 1369}
    assert table7["12543"] == 5


@pytest.mark.parametrize("n,value,arg", [
    (3, 1, ["132"]), (4, 1, ["1432"]), (5, 5, ["12543", "21543"]),
    (6, 37, ["126543", "216543"]), (7, 342, ["1327654"]),
])
def test_table_max(table7, n, value, arg):
    got, perms_ = max_coefficient(n, table7)
    assert (got, [str(p) for p in perms_]) == (value, arg)
    assert max_coefficient_report(n, table7)["layered"] == [True] * len(arg)


def test_nonnegative(table7):
    assert verify_nonnegativity(7, table7) == []


def test_recovers_nu_on_all_of_s6(table7):
    for w in permutations(range(1, 7)):
        total = 1
        for m in range(3, 7):
            for idx in combinations(range(6), m):
                sub = [w[k] for k in idx]
                u = tuple(sorted(sub).index(x) + 1 for x in sub)
                if u[-1] != m:
                    total += table7.get_exact(u)
        assert total == nu(w)


def test_riordan(table7):
    assert riordan_check(7, table7)
    ref = riordan_reference(10)
    assert [ref[m] for m in range(3, 11)] == list(RIORDAN[2:10])
    # A005043 as published
    assert RIORDAN[:10] == (1, 0, 1, 1, 3, 6, 15, 36, 91, 232)


def test_catalan_family():
    for m in range(2, 9):
        assert nu(catalan_permutation(m)) == catalan(m - 1)


def test_lookup_past_max_size(table7):
    with pytest.raises(KeyError):
        table7["21543876"]


def test_json_round_trip(table7):
    data = json.loads(json.dumps(table7.to_json()))
    assert CoefficientTable.from_json(data) == table7


def test_workers_and_resume(tmp_path, table7):
    t = build_coefficients(6, workers=2)
    assert t.values == {u: c for u, c in table7.values.items() if len(u) <= 6}
    ck = tmp_path / "ck"
    build_coefficients(5, checkpoint=ck)
    assert (ck / "progress.txt").read_text().startswith("coefficients, 5,")
    resumed = build_coefficients(6, checkpoint=ck, resume=True)
    assert resumed.values == t.values
