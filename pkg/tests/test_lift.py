import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dkgirth.exceptions import LiftPreconditionError, PaperFalsified
from dkgirth.girth import enumerate_circuit_types, find_circuit_type, girth_bfs
from dkgirth.graph import GraphParams, WalkType, check_circuit, is_circuit_type
from dkgirth.lift import (
    RULES, chain_cor1, l4_down, lift_l4, lift_t2, lift_t3_item3, lift_t3_item4, restrict,
    t2_down, theorem4_instance,
)
from dkgirth.rho import alternating_v, rho

from conftest import field


def P(k, q):
    return GraphParams(k, field(q))


def girth_cert(k, q):
    return girth_bfs(P(k, q)).witness


def hexagon():
    return check_circuit(P(2, 3), WalkType((1, 1, 1), (1, 1, 1)))


def test_l4_hexagon():
    out = lift_l4(hexagon())
    assert out.k == 7 and out.length == 12 and out.exact
    assert out.walk_type == WalkType((1,) * 6, (1, 2, 1, 2, 1, 2))


def test_l4_round_trip():
    for k, q in [(2, 3), (4, 3), (2, 5), (6, 4), (8, 3)]:
        c = girth_cert(k, q)
        assert l4_down(lift_l4(c)).walk_type == c.walk_type


def test_l4_k8_to_k19():
    out = lift_l4(girth_cert(8, 3))
    assert out.k == 19 and out.length == 24


def test_t3_item3_hexagon():
    F = field(3)
    assert rho(1, (1,) * 5, F) == 1
    out = lift_t3_item3(hexagon())
    assert out.extra["alpha"] == 2
    assert out.walk_type.u == (2, 1, 2, 1, 2, 1)
    assert out.k == 8 and out.length == 12 and out.exact


def test_t3_item3_q4():
    out = lift_t3_item3(girth_cert(2, 4))
    assert out.k == 8 and out.length == 12


@pytest.mark.parametrize("q", [3, 4, 5, 7, 9])
def test_t3_item3_every_hexagon(q):
    # every girth-6 type at k=2 lifts; the checks inside assert the pivot equation
    params = P(2, q)
    for wt in enumerate_circuit_types(params, 3):
        out = lift_t3_item3(check_circuit(params, wt))
        assert out.k == 8 and out.exact


def test_t3_item3_w2():
    # k = 6 has girth 10 = 4w+2 for q >= 4
    out = lift_t3_item3(girth_cert(6, 4))
    assert out.k == 16 and out.length == 20


def test_t3_item4():
    out = lift_t3_item4(girth_cert(4, 4))
    assert out.k == 12 and out.length == 16
    out2 = lift_t3_item4(girth_cert(4, 2))
    assert out2.k == 12 and out2.length == 16


def test_t3_item4_from_a_long_walk():
    params = P(4, 2)
    wt = next(enumerate_circuit_types(params, 8))
    out = lift_t3_item4(check_circuit(params, wt))
    assert out.k == 12 and out.length == 32 and out.closed


def test_t3_item4_rejects_odd_characteristic():
    with pytest.raises(LiftPreconditionError):
        lift_t3_item4(girth_cert(4, 3))


@pytest.mark.parametrize("q", [4, 5])
def test_t2_transfer(q):
    params = P(5, q)
    for wt in enumerate_circuit_types(params, 5):
        c = lift_t2(check_circuit(params, wt))
        assert c.k == 6 and c.walk_type == wt
        assert t2_down(c).walk_type == wt


def test_t2_wrong_residue():
    with pytest.raises(LiftPreconditionError):
        lift_t2(hexagon())
    with pytest.raises(LiftPreconditionError):
        t2_down(hexagon())


def test_non_circuit_input_rejected():
    bad = check_circuit(P(2, 3), WalkType((1, 1, 1), (1, 1, 2)))
    for rule in RULES.values():
        with pytest.raises(LiftPreconditionError):
            rule.apply(bad)


def test_l4_down_needs_alternating_v():
    c = check_circuit(P(7, 3), WalkType((1,) * 6, (1, 2, 1, 2, 1, 2)))
    assert l4_down(c).k == 2
    with pytest.raises(LiftPreconditionError):
        l4_down(check_circuit(P(7, 3), WalkType((1,) * 6, (2, 1, 2, 1, 2, 1))))


def test_restrict():
    c = lift_l4(hexagon())
    for k in range(2, 7):
        assert restrict(c, k).closed


@pytest.mark.parametrize("base_k,t_max", [(2, 3), (4, 3), (6, 2)])
def test_chain_cor1(base_k, t_max):
    s = base_k // 2
    base = girth_cert(base_k, 4)
    assert base.length == 2 * s + 4
    chain = chain_cor1(base, t_max)
    assert len(chain) == 2 * t_max
    for t in range(1, t_max + 1):
        hi, lo = chain[2 * t - 2], chain[2 * t - 1]
        g = 2 ** t * (s + 2)
        assert hi.k == g - 4 and hi.length == g
        assert lo.k == max(g - 5, 2) and lo.length == g
        assert hi.exact and lo.exact


def test_chain_cor1_needs_characteristic_2():
    with pytest.raises(LiftPreconditionError):
        chain_cor1(hexagon(), 2)


def test_theorem4_instances():
    r = theorem4_instance(field(5), 2, 1)
    assert (r.k, r.claim, r.status) == (11, 16, "certified")
    assert r.certificates[-1].k == 11 and r.certificates[-1].length == 16
    r = theorem4_instance(field(3), 1, 2)
    assert (r.k, r.claim, r.status) == (19, 24, "certified")


def test_theorem4_hypotheses():
    with pytest.raises(LiftPreconditionError):
        theorem4_instance(field(4), 1, 1)
    with pytest.raises(LiftPreconditionError):
        theorem4_instance(field(5), 1, 1)      # 2^2 || 4, not 2^1
    with pytest.raises(LiftPreconditionError):
        theorem4_instance(field(7), 1, 3)      # 5 does not 7-divide 6


def test_theorem4_claim_only_when_search_is_too_big():
    r = theorem4_instance(field(9), 3, 1, search_limit=0)
    assert r.k == 27 and r.claim == 32
    assert r.status in ("certified", "theorem-only")


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 4, 5, 7]), st.data())
def test_l4_lifts_any_closed_walk(q, data):
    # the lift only needs a circuit, not a girth cycle
    params = P(2, q)
    types = list(enumerate_circuit_types(params, 4))
    if not types:
        return
    wt = data.draw(st.sampled_from(types))
    out = lift_l4(check_circuit(params, wt))
    assert out.k == 7 and out.length == 16 and out.closed
    assert out.walk_type.v == alternating_v(8, params.field)
