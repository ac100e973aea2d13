"""Lifting circuit types from one Lambda(k, q) to a larger k.

Every lift works on the type alone and re-checks its output with
``graph.check_circuit``.  An output that does not close up is reported as
``PaperFalsified``: the rules are theorems, so that would be a genuine
counterexample rather than a usage error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .exceptions import LiftPreconditionError, PaperFalsified
from .field import FieldSpec
from .graph import CircuitCertificate, GraphParams, WalkType, check_circuit, is_circuit_type
from .rho import alternating_v, delta_nabla, rho

__all__ = [
    "LiftRule",
    "RULES",
    "restrict",
    "lift_t2",
    "t2_down",
    "lift_l4",
    "l4_down",
    "lift_t3_item3",
    "lift_t3_item4",
    "chain_cor1",
    "theorem4_instance",
    "Theorem4Result",
]


def _recheck(cert: CircuitCertificate) -> CircuitCertificate:
    fresh = check_circuit(cert.params, cert.walk_type, cert.provenance)
    if not fresh.closed:
        raise LiftPreconditionError(
            f"input type does not close up in Lambda({cert.k},{cert.params.q})")
    fresh.extra = dict(cert.extra)
    return fresh


def _emit(params: GraphParams, wt: WalkType, rule: str, src: CircuitCertificate,
          **extra) -> CircuitCertificate:
    out = check_circuit(params, wt, provenance=f"{rule}(k={src.k})")
    out.extra = {"rule": rule, "from_k": src.k, "from_length": src.length, **extra}
    if not out.closed:
        raise PaperFalsified(
            f"{rule}: lifted type fails in Lambda({params.k},{params.q})",
            {"input": src.to_json(), "output": out.to_json()})
    return out


def restrict(cert: CircuitCertificate, k: int) -> CircuitCertificate:
    """Same type at a smaller k (fewer coordinate conditions)."""
    cert = _recheck(cert)
    if not 1 <= k <= cert.k:
        raise LiftPreconditionError(f"cannot restrict from k={cert.k} to k={k}")
    return _emit(GraphParams(k, cert.params.field), cert.walk_type, "restrict", cert)


def lift_t2(cert: CircuitCertificate) -> CircuitCertificate:
    """Same type, k = 4t+1 -> 4t+2."""
    cert = _recheck(cert)
    if cert.k % 4 != 1 or cert.k < 5:
        raise LiftPreconditionError(f"t2_up needs k = 4t+1 with t >= 1, got {cert.k}")
    return _emit(GraphParams(cert.k + 1, cert.params.field), cert.walk_type, "t2_up", cert)


def t2_down(cert: CircuitCertificate) -> CircuitCertificate:
    cert = _recheck(cert)
    if cert.k % 4 != 2 or cert.k < 6:
        raise LiftPreconditionError(f"t2_down needs k = 4t+2 with t >= 1, got {cert.k}")
    return _emit(GraphParams(cert.k - 1, cert.params.field), cert.walk_type, "t2_down", cert)


def _doubled(F: FieldSpec, seq: tuple[int, ...]) -> WalkType:
    return WalkType(seq, alternating_v(len(seq), F))


def lift_l4(cert: CircuitCertificate) -> CircuitCertificate:
    """Length 2n at k = 2s  ->  length 4n at k = 4s+3.

    The interleaved increments become the new u; v is (1, -1, 1, -1, ...).
    """
    cert = _recheck(cert)
    if cert.k % 2:
        raise LiftPreconditionError(f"l4_up needs even k, got {cert.k}")
    if len(cert.walk_type) < 3:
        raise LiftPreconditionError("l4_up needs a circuit of length >= 6")
    F = cert.params.field
    s = cert.k // 2
    wt = _doubled(F, cert.walk_type.interleaved())
    return _emit(GraphParams(4 * s + 3, F), wt, "l4_up", cert)


def l4_down(cert: CircuitCertificate) -> CircuitCertificate:
    """Inverse of ``lift_l4``: drop the alternating v and re-pair the u."""
    cert = _recheck(cert)
    F = cert.params.field
    wt = cert.walk_type
    if cert.k % 4 != 3 or len(wt) % 2:
        raise LiftPreconditionError(f"l4_down needs k = 4s+3 and an even number of steps")
    if wt.v != alternating_v(len(wt.v), F):
        raise LiftPreconditionError("l4_down needs v = (1, -1, 1, -1, ...)")
    s = (cert.k - 3) // 4
    if s < 1:
        raise LiftPreconditionError("l4_down needs s >= 1")
    return _emit(GraphParams(2 * s, F), WalkType.from_interleaved(wt.u), "l4_down", cert)


def lift_t3_item3(cert: CircuitCertificate) -> CircuitCertificate:
    """Length 4w+2 at k = 4w-2  ->  length 8w+4 at k = 8w."""
    cert = _recheck(cert)
    if cert.k % 4 != 2:
        raise LiftPreconditionError(f"t3_item3 needs k = 4w-2, got {cert.k}")
    w = (cert.k + 2) // 4
    n = 2 * w + 1
    if len(cert.walk_type) != n:
        raise LiftPreconditionError(f"t3_item3 needs length {2 * n} at k={cert.k}")
    F = cert.params.field
    seq = cert.walk_type.interleaved()
    num = rho(n - w - 1, seq[1:], F)
    den = rho(n - w - 1, seq[:-1], F)
    if num == 0 or den == 0:
        # either would give a circuit of length 4w+2 in Lambda(4w-1, q), below k+4
        raise PaperFalsified("t3_item3: vanishing rho in the scaling factor",
                             {"input": cert.to_json(), "num": num, "den": den})
    alpha = F.neg(F.div(num, den))
    scaled = tuple(F.mul(alpha, a) if j % 2 == 0 else a for j, a in enumerate(seq))
    mid = check_circuit(cert.params, WalkType.from_interleaved(scaled), "t3_item3-scaled")
    pivot = F.add(rho(n - w - 1, scaled[1:], F), rho(n - w - 1, scaled[:-1], F))
    if not mid.closed or pivot != 0:
        raise PaperFalsified("t3_item3: scaled tuple lost its circuit property",
                             {"input": cert.to_json(), "alpha": alpha, "pivot": pivot})
    return _emit(GraphParams(8 * w, F), _doubled(F, scaled), "t3_item3", cert, alpha=alpha)


def lift_t3_item4(cert: CircuitCertificate) -> CircuitCertificate:
    """Characteristic 2: length 2n at k = 4w  ->  length 4n at k = 8w+4."""
    cert = _recheck(cert)
    F = cert.params.field
    if F.p != 2:
        raise LiftPreconditionError("t3_item4 needs characteristic 2")
    if cert.k % 4:
        raise LiftPreconditionError(f"t3_item4 needs k = 4w, got {cert.k}")
    w = cert.k // 4
    n = len(cert.walk_type)
    seq = cert.walk_type.interleaved()
    table = delta_nabla(n, seq[0::2], seq[1::2], F)
    gap = F.sub(table.d(2 * w + 2), table.nb(2 * w + 2))
    if gap != 0:
        raise PaperFalsified("t3_item4: Delta - Nabla does not vanish",
                             {"input": cert.to_json(), "gap": gap})
    return _emit(GraphParams(8 * w + 4, F), _doubled(F, seq), "t3_item4", cert)


def chain_cor1(base: CircuitCertificate, t_max: int) -> list[CircuitCertificate]:
    """Certificates at k = 2^t (s+2) - 4 and 2^t (s+2) - 5 for t = 1..t_max.

    ``base`` is a circuit of length 2s+4 in Lambda(2s, q), q a power of 2.
    Output order: for each t, the -4 certificate then the -5 one.
    """
    base = _recheck(base)
    F = base.params.field
    if F.p != 2:
        raise LiftPreconditionError("chain_cor1 needs characteristic 2")
    if base.k % 2 or base.length != base.k + 4:
        raise LiftPreconditionError("chain_cor1 needs a circuit of length 2s+4 at k = 2s")
    out = [base, restrict(base, base.k - 1) if base.k > 2 else restrict(base, 1)]
    top = base
    for _ in range(2, t_max + 1):
        minus5 = lift_l4(top)
        top = lift_t3_item4(top) if top.k % 4 == 0 else lift_t3_item3(top)
        out += [top, minus5]
    for c in out:
        if c.length != 2 * ((c.k + 5) // 2):
            raise PaperFalsified("chain_cor1: lifted length is not the girth lower bound",
                                 c.to_json())
    return out


@dataclass
class Theorem4Result:
    q: int
    s: int
    t: int
    k: int
    claim: int
    status: str                      # certified | theorem-only
    base_k: int
    certificates: list[CircuitCertificate]

    def to_json(self) -> dict:
        return {
            "q": self.q, "s": self.s, "t": self.t, "k": self.k, "claim": self.claim,
            "status": self.status, "base_k": self.base_k,
            "certificates": [c.to_json() for c in self.certificates],
        }


def theorem4_instance(field: FieldSpec, s: int, t: int, search_limit: int = 200_000) -> Theorem4Result:
    """g(Lambda(2^(s+2)(2t-1) - 5, q)) = 2^(s+2)(2t-1) for odd p, (2t-1) |_p (q-1), 2^s || (q-1).

    A base circuit of length 2^(s+1)(2t-1) at k = 2^(s+1)(2t-1) - 4 is looked
    for in the seeded family, then by graph search if the search ball has at
    most ``search_limit`` vertices; it is lifted with ``lift_l4``.
    """
    from .bounds import divides_p, two_adic
    from .girth import enumerate_circuit_types, seeded_types

    q, p = field.q, field.p
    if p == 2:
        raise LiftPreconditionError("this family needs odd characteristic")
    if s < 1 or t < 1:
        raise LiftPreconditionError("s and t must be positive")
    if not divides_p(2 * t - 1, q - 1, p):
        raise LiftPreconditionError(f"{2 * t - 1} does not p-divide {q - 1}")
    if two_adic(q - 1) != s:
        raise LiftPreconditionError(f"2^{s} is not the exact power of 2 in {q - 1}")
    m = 2 ** (s + 1) * (2 * t - 1)
    k, claim, base_k = 2 * m - 5, 2 * m, m - 4
    i = m // 2
    params = GraphParams(base_k, field)
    base = None
    for wt in seeded_types(field, i):
        base = is_circuit_type(params, wt, provenance="seeded")
        if base is not None:
            break
    if base is None and q * (q - 1) ** (i - 1) <= search_limit:
        wt = next(enumerate_circuit_types(params, i), None)
        if wt is not None:
            base = is_circuit_type(params, wt, provenance="graph-dfs")
    if base is None:
        return Theorem4Result(q, s, t, k, claim, "theorem-only", base_k, [])
    top = lift_l4(base)
    if top.k != k or top.length != claim:
        raise PaperFalsified("theorem4_instance: lift landed on the wrong instance", top.to_json())
    return Theorem4Result(q, s, t, k, claim, "certified", base_k, [base, top])


@dataclass(frozen=True)
class LiftRule:
    name: str
    apply: Callable[[CircuitCertificate], CircuitCertificate]
    takes: str
    gives: str


RULES = {
    "t2": LiftRule("t2_up", lift_t2, "k=4t+1, length L", "k=4t+2, length L"),
    "t2_down": LiftRule("t2_down", t2_down, "k=4t+2, length L", "k=4t+1, length L"),
    "l4": LiftRule("l4_up", lift_l4, "k=2s, length 2n", "k=4s+3, length 4n"),
    "l4_down": LiftRule("l4_down", l4_down, "k=4s+3, length 4n", "k=2s, length 2n"),
    "t3i3": LiftRule("t3_item3", lift_t3_item3, "k=4w-2, length 4w+2", "k=8w, length 8w+4"),
    "t3i4": LiftRule("t3_item4", lift_t3_item4, "k=4w, length 2n, p=2", "k=8w+4, length 4n"),
}
