"""Implicit model of the bipartite graph Lambda(k, q).

Left vertices are (k+1)-vectors (l_0, ..., l_k) with l_1 = l_2, right
vertices are (r_0, ..., r_k) with r_1 = 0.  [l] ~ <r> iff for 2 <= i <= k

    l_i + r_i = r_0 * l_{i-2}   if i = 2, 3 (mod 4)
    l_i + r_i = l_0 * r_{i-2}   if i = 0, 1 (mod 4)

Every vertex has exactly one neighbour of each first coordinate ("colour"),
so the graph is q-regular and a walk from the all-zero edge is pinned down
by its sequence of colour increments (its *type*).  Nothing here stores
the graph; neighbours are computed on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from .field import FieldSpec, mk_field
from .rho import rho

__all__ = [
    "LEFT",
    "RIGHT",
    "GraphParams",
    "Vertex",
    "WalkType",
    "CircuitCertificate",
    "neighbor_of_left",
    "neighbor_of_right",
    "is_adjacent",
    "walk_simulate",
    "lemma1_coords",
    "check_circuit",
    "is_circuit_type",
    "verify_cycle",
    "walk_type_from_cycle",
]

LEFT = "L"
RIGHT = "R"


@dataclass(frozen=True)
class GraphParams:
    k: int
    field: FieldSpec

    def __post_init__(self):
        if self.k == 1:
            # Lambda(1, q) is taken to be a copy of Lambda(2, q)
            object.__setattr__(self, "k", 2)
        if self.k < 2:
            raise ValueError(f"k must be >= 1, got {self.k}")

    @property
    def q(self) -> int:
        return self.field.q

    def zero(self, side: str) -> Vertex:
        return Vertex(side, (0,) * (self.k + 1))

    # raw coordinate arithmetic, shared with the search code

    def right_of(self, l: Sequence[int], r0: int) -> tuple[int, ...]:
        F = self.field
        add, mul, neg = F.add_table, F.mul_table, F.neg_table
        r = [0] * (self.k + 1)
        r[0] = r0
        l0 = l[0]
        for i in range(2, self.k + 1):
            if i % 4 in (2, 3):
                r[i] = add[mul[r0][l[i - 2]]][neg[l[i]]]
            else:
                r[i] = add[mul[l0][r[i - 2]]][neg[l[i]]]
        return tuple(r)

    def left_of(self, r: Sequence[int], l0: int) -> tuple[int, ...]:
        F = self.field
        add, mul, neg = F.add_table, F.mul_table, F.neg_table
        l = [0] * (self.k + 1)
        l[0] = l0
        r0 = r[0]
        for i in range(2, self.k + 1):
            if i % 4 in (2, 3):
                l[i] = add[mul[r0][l[i - 2]]][neg[r[i]]]
            else:
                l[i] = add[mul[l0][r[i - 2]]][neg[r[i]]]
            if i == 2:
                l[1] = l[2]
        return tuple(l)

    def key(self, side: str, coords: Sequence[int]) -> int:
        """Canonical integer for a vertex; the low bit is the side."""
        free = (coords[0], coords[1], *coords[3:]) if side == LEFT else (coords[0], *coords[2:])
        q = self.field.q
        key = 0
        for c in reversed(free):
            key = key * q + c
        return key * 2 + (side == RIGHT)

    def from_key(self, key: int) -> Vertex:
        side = RIGHT if key & 1 else LEFT
        key >>= 1
        q = self.field.q
        free = []
        for _ in range(self.k):
            key, c = divmod(key, q)
            free.append(c)
        if side == LEFT:
            coords = (free[0], free[1], free[1], *free[2:])
        else:
            coords = (free[0], 0, *free[1:])
        return Vertex(side, coords)


@dataclass(frozen=True)
class Vertex:
    side: str
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.side not in (LEFT, RIGHT):
            raise ValueError(f"side must be 'L' or 'R', got {self.side!r}")
        c = self.coords
        if len(c) < 3:
            raise ValueError("a vertex needs at least 3 coordinates")
        if self.side == LEFT and c[1] != c[2]:
            raise ValueError("left vertices need l_1 == l_2")
        if self.side == RIGHT and c[1] != 0:
            raise ValueError("right vertices need r_1 == 0")

    @property
    def color(self) -> int:
        return self.coords[0]

    def key(self, params: GraphParams) -> int:
        return params.key(self.side, self.coords)

    def __str__(self) -> str:
        body = ",".join(map(str, self.coords))
        return f"[{body}]" if self.side == LEFT else f"<{body}>"


def _check_params(params: GraphParams, v: Vertex) -> None:
    if len(v.coords) != params.k + 1:
        raise ValueError(f"vertex has {len(v.coords)} coordinates, expected {params.k + 1}")


def neighbor_of_left(params: GraphParams, l: Vertex, r0: int) -> Vertex:
    """The unique right neighbour of ``l`` with first coordinate r0."""
    if l.side != LEFT:
        raise ValueError("expected a left vertex")
    _check_params(params, l)
    return Vertex(RIGHT, params.right_of(l.coords, int(r0)))


def neighbor_of_right(params: GraphParams, r: Vertex, l0: int) -> Vertex:
    """The unique left neighbour of ``r`` with first coordinate l0."""
    if r.side != RIGHT:
        raise ValueError("expected a right vertex")
    _check_params(params, r)
    return Vertex(LEFT, params.left_of(r.coords, int(l0)))


def is_adjacent(params: GraphParams, l: Vertex, r: Vertex) -> bool:
    if l.side == r.side:
        raise ValueError("adjacency is only defined between opposite sides")
    if l.side == RIGHT:
        l, r = r, l
    _check_params(params, l)
    _check_params(params, r)
    F = params.field
    lc, rc = l.coords, r.coords
    for i in range(2, params.k + 1):
        rhs = F.mul(rc[0], lc[i - 2]) if i % 4 in (2, 3) else F.mul(lc[0], rc[i - 2])
        if F.add(lc[i], rc[i]) != rhs:
            return False
    return True


@dataclass(frozen=True)
class WalkType:
    """Colour increments (u_1, v_1, u_2, v_2, ...) of a walk from the zero edge.

    ``v`` has the same length as ``u`` or one fewer.
    """

    u: tuple[int, ...]
    v: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(int(a) for a in self.u))
        object.__setattr__(self, "v", tuple(int(a) for a in self.v))
        if len(self.v) not in (len(self.u), len(self.u) - 1) and (self.u or self.v):
            raise ValueError("v must have the same length as u or one fewer")
        if any(a == 0 for a in self.u + self.v):
            raise ValueError("increments must be nonzero (the walk would backtrack)")

    @classmethod
    def from_interleaved(cls, seq: Sequence[int]) -> WalkType:
        seq = tuple(seq)
        return cls(seq[0::2], seq[1::2])

    def interleaved(self) -> tuple[int, ...]:
        out: list[int] = []
        for i, a in enumerate(self.u):
            out.append(a)
            if i < len(self.v):
                out.append(self.v[i])
        return tuple(out)

    def __len__(self) -> int:
        return len(self.u)

    def colors(self, field: FieldSpec) -> tuple[list[int], list[int]]:
        """Partial sums x_1..x_{i+1} and y_1..y_{|v|+1}, starting from 0."""
        xs, ys = [0], [0]
        for a in self.u:
            xs.append(field.add(xs[-1], a))
        for b in self.v:
            ys.append(field.add(ys[-1], b))
        return xs, ys


def walk_simulate(params: GraphParams, wt: WalkType) -> list[Vertex]:
    """Vertices [l1] <r1> [l2] <r2> ... of the walk of type ``wt`` from the zero edge."""
    F = params.field
    l = (0,) * (params.k + 1)
    r = l
    out = [Vertex(LEFT, l), Vertex(RIGHT, r)]
    x = y = 0
    for j, a in enumerate(wt.u):
        if a == 0:
            raise ValueError("zero increment")
        x = F.add(x, a)
        l = params.left_of(r, x)
        out.append(Vertex(LEFT, l))
        if j < len(wt.v):
            y = F.add(y, wt.v[j])
            r = params.right_of(l, y)
            out.append(Vertex(RIGHT, r))
    return out


def lemma1_coords(params: GraphParams, wt: WalkType) -> tuple[int, ...]:
    """Coordinates of [l^(i+1)] from rho evaluations alone (|u| = |v| = i >= 1).

    With t = (u_1, v_1, ..., u_i, v_i) and y = v_1 + ... + v_i:
      l_{4j}   = rho_{i-j-1}(t without v_i)
      l_{4j+1} = rho_{i-j-2}(t without u_1 and v_i)
      l_{4j+2} = y * l_{4j}   - rho_{i-j-1}(t)
      l_{4j+3} = y * l_{4j+1} - rho_{i-j-2}(t without u_1)
    """
    i = len(wt.u)
    if i < 1 or len(wt.v) != i:
        raise ValueError("need |u| == |v| >= 1")
    F = params.field
    t = wt.interleaved()
    seq_a, seq_b, seq_c, seq_d = t[:-1], t[1:-1], t, t[1:]
    y = 0
    for b in wt.v:
        y = F.add(y, b)
    out = []
    for idx in range(params.k + 1):
        j, r = divmod(idx, 4)
        if r == 0:
            val = rho(i - j - 1, seq_a, F)
        elif r == 1:
            val = rho(i - j - 2, seq_b, F)
        elif r == 2:
            val = F.sub(F.mul(y, rho(i - j - 1, seq_a, F)), rho(i - j - 1, seq_c, F))
        else:
            val = F.sub(F.mul(y, rho(i - j - 2, seq_b, F)), rho(i - j - 2, seq_d, F))
        out.append(val)
    return tuple(out)


@dataclass
class CircuitCertificate:
    """A walk type together with the checks it passed in a given Lambda(k, q).

    ``coords_zero`` and ``v_sum_zero`` make it a closed backtrackless walk
    (enough to bound the girth from above); ``vertices_distinct`` makes it
    an honest cycle of length ``length``.
    """

    params: GraphParams
    walk_type: WalkType
    length: int
    coords_zero: bool
    v_sum_zero: bool
    vertices_distinct: bool
    provenance: str = "manual"
    extra: dict = dc_field(default_factory=dict)

    @property
    def closed(self) -> bool:
        return self.coords_zero and self.v_sum_zero

    @property
    def exact(self) -> bool:
        return self.closed and self.vertices_distinct

    @property
    def k(self) -> int:
        return self.params.k

    def to_json(self) -> dict:
        F = self.params.field
        out = {"k": self.params.k, "p": F.p, "m": F.m}
        if F.m > 1:
            out["modulus"] = list(F.modulus)
        out.update({
            "u": list(self.walk_type.u),
            "v": list(self.walk_type.v),
            "length": self.length,
            "coords_zero": self.coords_zero,
            "v_sum_zero": self.v_sum_zero,
            "vertices_distinct": self.vertices_distinct,
            "provenance": self.provenance,
        })
        if self.extra:
            out["extra"] = self.extra
        return out

    @classmethod
    def from_json(cls, data: dict) -> CircuitCertificate:
        """Rebuild a certificate exactly as stored; flags are NOT re-checked."""
        try:
            F = mk_field(int(data["p"]), int(data.get("m", 1)), data.get("modulus"))
            params = GraphParams(int(data["k"]), F)
            wt = WalkType(data["u"], data["v"])
            return cls(params, wt, int(data["length"]), bool(data["coords_zero"]),
                       bool(data["v_sum_zero"]), bool(data["vertices_distinct"]),
                       str(data.get("provenance", "manual")), dict(data.get("extra", {})))
        except KeyError as exc:
            raise ValueError(f"certificate is missing field {exc}") from None


def verify_cycle(params: GraphParams, vertices: Sequence[Vertex]) -> bool:
    """Edge-by-edge check that ``vertices`` is a closed walk with no immediate reversal."""
    n = len(vertices)
    if n < 4 or n % 2:
        return False
    for a in range(n):
        x, y = vertices[a], vertices[(a + 1) % n]
        if x.side == y.side or not is_adjacent(params, x, y):
            return False
        if vertices[a] == vertices[(a + 2) % n]:
            return False
    return True


def check_circuit(params: GraphParams, wt: WalkType, provenance: str = "manual") -> CircuitCertificate:
    """Evaluate every circuit condition for ``wt`` in Lambda(k, q); never rejects."""
    i = len(wt.u)
    if i < 2 or len(wt.v) != i:
        raise ValueError("a circuit type needs |u| == |v| >= 2")
    F = params.field
    coords_zero = all(c == 0 for c in lemma1_coords(params, wt))
    y = 0
    for b in wt.v:
        y = F.add(y, b)
    v_sum_zero = y == 0
    walk = walk_simulate(params, wt)
    cycle = walk[:2 * i]
    distinct = len(set(cycle)) == len(cycle)
    return CircuitCertificate(params, wt, 2 * i, coords_zero, v_sum_zero, distinct, provenance)


def is_circuit_type(params: GraphParams, wt: WalkType, require_distinct: bool = False,
                    provenance: str = "manual") -> CircuitCertificate | None:
    """Certificate if ``wt`` closes up in Lambda(k, q), else None."""
    cert = check_circuit(params, wt, provenance)
    if not cert.closed:
        return None
    if require_distinct and not cert.vertices_distinct:
        return None
    return cert


def walk_type_from_cycle(params: GraphParams, cycle: Sequence[Vertex]) -> WalkType:
    """Increments of a cycle listed from the zero left vertex through the zero right vertex."""
    F = params.field
    n = len(cycle)
    if n % 2 or cycle[0] != params.zero(LEFT) or cycle[1] != params.zero(RIGHT):
        raise ValueError("cycle must start with the zero left vertex then the zero right vertex")
    lefts = [v.color for v in cycle[0::2]] + [0]
    rights = [v.color for v in cycle[1::2]] + [0]
    u = [F.sub(lefts[j + 1], lefts[j]) for j in range(n // 2)]
    v = [F.sub(rights[j + 1], rights[j]) for j in range(n // 2)]
    return WalkType(u, v)


def neighbors(params: GraphParams, side: str, coords: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Neighbour coordinates in colour order."""
    step = params.right_of if side == LEFT else params.left_of
    for c in range(params.field.q):
        yield step(coords, c)
