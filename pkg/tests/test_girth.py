import pytest

from dkgirth.exceptions import PaperFalsified
from dkgirth.girth import (
    GirthResult, enumerate_circuit_types, find_circuit_type, girth_bfs, girth_full_bfs,
    lower_bound, scan_conjecture, seeded_types,
)
from dkgirth.graph import GraphParams, WalkType, is_circuit_type, verify_cycle

from conftest import field


def P(k, q):
    return GraphParams(k, field(q))


@pytest.mark.parametrize("k,q,g", [(2, 3, 6), (3, 3, 8), (4, 3, 12), (2, 2, 8), (2, 4, 6), (5, 4, 10)])
def test_known_girths(k, q, g):
    res = girth_bfs(P(k, q))
    assert res.girth == g and res.status == "exact"
    assert len(res.cycle) == g and verify_cycle(res.params, res.cycle)
    assert res.witness.exact and res.witness.length == g


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_bfs_agrees_with_full_search(q):
    for k in range(2, 7):
        params = P(k, q)
        if q ** k > 10 ** 4:
            break
        assert girth_bfs(params).girth == girth_full_bfs(params).girth


def test_full_search_guard():
    with pytest.raises(ValueError):
        girth_full_bfs(P(9, 3))


def test_result_invariants():
    for q in (2, 3, 4, 5, 7):
        prev = 0
        for k in range(1, 9):
            g = girth_bfs(P(k, q)).girth
            assert g % 2 == 0 and g >= k + 4 and g >= lower_bound(k)
            # more coordinates can only lengthen the shortest cycle
            assert g >= prev
            prev = g


@pytest.mark.deliberate_falsification
def test_invariant_violation_is_flagged():
    from dkgirth.girth import _check_result
    with pytest.raises(PaperFalsified):
        _check_result(GirthResult(P(4, 3), 6, 6, "bfs"))


def test_threads_give_identical_witness():
    a = girth_bfs(P(9, 3))
    b = girth_bfs(P(9, 3), threads=4)
    assert a.girth == b.girth == 18
    assert a.cycle == b.cycle


def test_max_depth_gives_bracket():
    res = girth_bfs(P(9, 3), max_depth=12)
    assert res.girth is None and res.status == "exceeds_max_depth"
    assert 12 < res.lower <= 18


def test_memory_budget_gives_bracket():
    res = girth_bfs(P(9, 3), memory_budget=20_000)
    assert res.girth is None and res.status == "budget"
    assert lower_bound(9) <= res.lower <= 18


def test_find_circuit_type_examples():
    wt = find_circuit_type(P(2, 3), 3, "exhaustive")
    assert wt is not None and is_circuit_type(P(2, 3), wt)
    assert find_circuit_type(P(2, 3), 3, "seeded") == WalkType((1, 1, 1), (1, 1, 1))
    assert find_circuit_type(P(5, 4), 4, "graph-dfs") is None
    assert find_circuit_type(P(5, 4), 4, "exhaustive") is None
    with pytest.raises(ValueError):
        find_circuit_type(P(2, 3), 3, "nope")


@pytest.mark.parametrize("k,q", [(2, 3), (3, 3), (4, 3), (3, 4), (4, 5), (5, 4)])
def test_strategies_agree_on_the_girth(k, q):
    params = P(k, q)
    g = girth_bfs(params).girth
    for strategy in ("graph-dfs", "exhaustive"):
        for i in range(3, g // 2):
            assert find_circuit_type(params, i, strategy) is None
        wt = find_circuit_type(params, g // 2, strategy)
        assert wt is not None and is_circuit_type(params, wt, require_distinct=True)


def test_dfs_enumeration_equals_exhaustive():
    params = P(3, 3)
    from dkgirth.girth import _exhaustive
    assert set(enumerate_circuit_types(params, 4)) == set(_exhaustive(params, 4))


@pytest.mark.parametrize("q,t", [(3, 1), (3, 7), (2, 2), (2, 6), (4, 2), (5, 3)])
def test_seeded_all_ones(q, t):
    # (t + 2) a power of p
    params = P(2 * t - 1, q)
    ones = next(seeded_types(params.field, t + 2))
    assert ones.u == (1,) * (t + 2)
    assert is_circuit_type(params, ones) is not None


def test_scan_examples():
    rows = scan_conjecture([4, 3], [3, 5, 7])
    by = {(r["q"], r["k"]): r for r in rows}
    assert by[(4, 5)]["girth"] == 10 and by[(4, 5)]["status"] == "satisfied"
    assert by[(3, 7)]["girth"] == 12 and by[(3, 7)]["status"] == "satisfied"
    assert not by[(3, 7)]["in_range"]
    assert by[(3, 3)]["girth"] == 8


def test_scan_records_violations():
    # k = 4 is even: 12 != 9, recorded as a violation of the k+5 pattern
    rows = scan_conjecture([3], [4])
    assert rows[0]["status"] == "violated" and not rows[0]["in_range"]
