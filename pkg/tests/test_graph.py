import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dkgirth.field import mk_field
from dkgirth.graph import (
    LEFT, RIGHT, CircuitCertificate, GraphParams, Vertex, WalkType, check_circuit, is_adjacent,
    is_circuit_type, lemma1_coords, neighbor_of_left, neighbor_of_right, neighbors, verify_cycle,
    walk_simulate, walk_type_from_cycle,
)

from conftest import field


def P(k, q):
    return GraphParams(k, field(q))


def test_k1_is_aliased():
    assert P(1, 3).k == 2
    with pytest.raises(ValueError):
        P(0, 3)


def test_vertex_constraints():
    with pytest.raises(ValueError):
        Vertex(LEFT, (0, 1, 0))
    with pytest.raises(ValueError):
        Vertex(RIGHT, (0, 1, 0))


def test_neighbor_examples():
    params = P(2, 3)
    assert neighbor_of_left(params, params.zero(LEFT), 0) == params.zero(RIGHT)
    assert neighbor_of_left(params, params.zero(LEFT), 1) == Vertex(RIGHT, (1, 0, 0))
    assert neighbor_of_right(params, params.zero(RIGHT), 0) == params.zero(LEFT)
    assert is_adjacent(params, params.zero(LEFT), Vertex(RIGHT, (1, 0, 0)))
    assert not is_adjacent(params, params.zero(LEFT), Vertex(RIGHT, (1, 0, 1)))


def _all_vertices(params, side):
    return [params.from_key(key * 2 + (side == RIGHT)) for key in range(params.q ** params.k)]


@pytest.mark.parametrize("k,q", [(2, 2), (2, 3), (3, 3), (4, 2), (3, 4), (4, 4)])
def test_unique_neighbor_per_colour(k, q):
    params = P(k, q)
    for side in (LEFT, RIGHT):
        for v in _all_vertices(params, side):
            nbrs = list(neighbors(params, side, v.coords))
            assert len(set(nbrs)) == q
            assert [c[0] for c in nbrs] == list(range(q))
            other = RIGHT if side == LEFT else LEFT
            for c in nbrs:
                w = Vertex(other, c)
                back = (neighbor_of_right(params, w, v.color) if side == LEFT
                        else neighbor_of_left(params, w, v.color))
                assert back == v


@pytest.mark.parametrize("k,q", [(2, 3), (3, 3), (5, 3), (4, 4), (6, 2), (3, 9)])
def test_key_is_bijection(k, q):
    params = P(k, q)
    for side in (LEFT, RIGHT):
        keys = set()
        for v in _all_vertices(params, side):
            key = v.key(params)
            assert params.from_key(key) == v
            keys.add(key)
        assert len(keys) == q ** k


def test_walk_simulate_examples():
    params = P(2, 3)
    assert walk_simulate(params, WalkType((), ())) == [params.zero(LEFT), params.zero(RIGHT)]
    walk = walk_simulate(params, WalkType((1,), (1,)))
    assert len(walk) == 4 and len(set(walk)) == 4


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 10), st.sampled_from([3, 4, 5]), st.integers(1, 8), st.data())
def test_lemma1_matches_simulation(k, q, i, data):
    params = P(k, q)
    u = data.draw(st.lists(st.integers(1, q - 1), min_size=i, max_size=i))
    v = data.draw(st.lists(st.integers(1, q - 1), min_size=i, max_size=i))
    wt = WalkType(u, v)
    walk = walk_simulate(params, wt)
    coords = lemma1_coords(params, wt)
    assert coords == walk[-2].coords
    F = params.field
    total = 0
    for a in u:
        total = F.add(total, a)
    assert coords[0] == total
    # consecutive vertices adjacent, no immediate reversal
    for a in range(len(walk) - 1):
        x, y = walk[a], walk[a + 1]
        assert is_adjacent(params, x, y) if x.side == LEFT else is_adjacent(params, y, x)
        if a + 2 < len(walk):
            assert walk[a] != walk[a + 2]


def test_hexagon_accepted():
    params = P(2, 3)
    wt = WalkType((1, 1, 1), (1, 1, 1))
    assert lemma1_coords(params, wt) == (0, 0, 0)
    cert = is_circuit_type(params, wt, require_distinct=True)
    assert cert is not None and cert.length == 6 and cert.exact


def test_bad_v_sum_rejected():
    params = P(2, 3)
    cert = check_circuit(params, WalkType((1, 1, 1), (1, 1, 2)))
    assert not cert.v_sum_zero and not cert.closed
    assert is_circuit_type(params, WalkType((1, 1, 1), (1, 1, 2))) is None


def test_zero_increment_rejected():
    with pytest.raises(ValueError):
        WalkType((1, 0), (1, 1))
    with pytest.raises(ValueError):
        WalkType((1,), (1, 1, 1))


def test_certificate_json_round_trip():
    params = GraphParams(3, mk_field(3, 2))
    cert = check_circuit(params, WalkType((1, 2, 3), (4, 5, 6)), provenance="test")
    back = CircuitCertificate.from_json(cert.to_json())
    assert back.to_json() == cert.to_json()
    assert back.params == params


def test_certificate_cycle_round_trip():
    params = P(2, 3)
    cert = check_circuit(params, WalkType((1, 1, 1), (1, 1, 1)))
    cycle = walk_simulate(params, cert.walk_type)[:cert.length]
    assert verify_cycle(params, cycle)
    assert walk_type_from_cycle(params, cycle) == cert.walk_type


@pytest.mark.parametrize("k,q,i", [(2, 3, 3), (3, 3, 4), (2, 4, 3)])
def test_distinct_certificates_are_real_cycles(k, q, i):
    params = P(k, q)
    found = 0
    for seq in itertools.product(range(1, q), repeat=2 * i):
        wt = WalkType.from_interleaved(seq)
        cert = is_circuit_type(params, wt, require_distinct=True)
        if cert is None:
            continue
        found += 1
        cycle = walk_simulate(params, wt)[:2 * i]
        assert len(set(cycle)) == 2 * i and verify_cycle(params, cycle)
    assert found > 0
