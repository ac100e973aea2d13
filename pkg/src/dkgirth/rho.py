"""The pair-deletion polynomials rho_s and the identities built on them.

``rho(s, w)`` is the sum, over every way of deleting s disjoint pairs of
adjacent entries from w, of the product of what remains.  It vanishes for
s < 0 or 2s > len(w), and rho_0 of the empty sequence is 1.

Values are computed with the two-term recurrence

    rho_s(w_1..w_n) = rho_{s-1}(w_1..w_{n-2}) + w_n * rho_s(w_1..w_{n-1})

as a prefix table.  ``rho_oracle`` evaluates the same quantity by brute
enumeration of the odd/even position patterns and exists only to check
``rho``.

All sequences are tuples of raw element indices of a ``FieldSpec``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .field import FieldSpec

__all__ = [
    "rho",
    "rho_row",
    "rho_table",
    "rho_oracle",
    "rho_by_deletion",
    "DeltaNablaTable",
    "delta",
    "nabla",
    "delta_nabla",
    "lemma2_sum",
    "lemma3_check",
    "alternating_v",
    "scaling_check",
]


def rho_table(omega: Sequence[int], field: FieldSpec) -> list[list[int]]:
    """Prefix table: ``table[m][s]`` is rho_s of the first m entries (0 <= s <= m//2)."""
    add, mul = field.add_table, field.mul_table
    table = [[1]]
    for m in range(1, len(omega) + 1):
        w = omega[m - 1]
        prev = table[m - 1]
        prev2 = table[m - 2] if m >= 2 else []
        row = []
        for s in range(m // 2 + 1):
            val = mul[w][prev[s]] if s < len(prev) else 0
            if s >= 1:
                val = add[val][prev2[s - 1]]
            row.append(val)
        table.append(row)
    return table


@lru_cache(maxsize=1 << 14)
def _row(field: FieldSpec, omega: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(rho_table(omega, field)[-1])


def rho_row(omega: Sequence[int], field: FieldSpec) -> tuple[int, ...]:
    """``rho_s(omega)`` for every s in 0..len(omega)//2."""
    return _row(field, tuple(omega))


def rho(s: int, omega: Sequence[int], field: FieldSpec) -> int:
    if s < 0 or 2 * s > len(omega):
        return 0
    return rho_row(omega, field)[s]


def _patterns(lo: int, hi: int, count: int, strict_first: bool) -> Iterator[tuple[int, ...]]:
    """Chains of `count` (a, b) pairs in [lo, hi].

    strict_first=False: a_1 <= b_1 < a_2 <= b_2 < ...
    strict_first=True:  a_1 < b_1 <= a_2 < b_2 <= ...
    """
    if count == 0:
        yield ()
        return
    for a in range(lo, hi + 1):
        b_lo = a + 1 if strict_first else a
        for b in range(b_lo, hi + 1):
            for rest in _patterns(b if strict_first else b + 1, hi, count - 1, strict_first):
                yield (a, b) + rest


def rho_oracle(s: int, omega: Sequence[int], field: FieldSpec) -> int:
    """rho_s by enumerating the closed-form index sets (test oracle only).

    Even length 2n, s = n - j: sum over 1 <= s1 <= t1 < s2 <= t2 < ... <= tj <= n
    of prod w_{2s_k - 1} w_{2t_k}.  Odd length 2n + 1: a leading odd position
    s0 followed by j pairs (t_k, s_k) with s_{k-1} <= t_k < s_k <= n + 1.
    """
    length = len(omega)
    if s < 0 or 2 * s > length:
        return 0
    add, mul = field.add_table, field.mul_table
    n, odd = divmod(length, 2)
    j = n - s
    total = 0
    if not odd:
        for pat in _patterns(1, n, j, strict_first=False):
            term = 1
            for a, b in zip(pat[::2], pat[1::2]):
                term = mul[term][mul[omega[2 * a - 2]][omega[2 * b - 1]]]
            total = add[total][term]
        return total
    for s0 in range(1, n + 2):
        # pairs (t_k, s_k) with s_{k-1} <= t_k < s_k <= n + 1
        for pat in _patterns(s0, n + 1, j, strict_first=True):
            term = omega[2 * s0 - 2]
            for t, sk in zip(pat[::2], pat[1::2]):
                term = mul[term][mul[omega[2 * t - 1]][omega[2 * sk - 2]]]
            total = add[total][term]
    return total


def rho_by_deletion(s: int, omega: Sequence[int], field: FieldSpec) -> int:
    """rho_s straight from the definition: delete s disjoint adjacent pairs."""
    if s < 0 or 2 * s > len(omega):
        return 0
    add, mul = field.add_table, field.mul_table

    def go(start: int, left: int) -> int:
        # sum of products of omega[start:] with `left` pairs removed
        if left == 0:
            prod = 1
            for w in omega[start:]:
                prod = mul[prod][w]
            return prod
        if len(omega) - start < 2 * left:
            return 0
        keep = mul[omega[start]][go(start + 1, left)]
        drop = go(start + 2, left - 1)
        return add[keep][drop]

    return go(0, s)


# -- Delta / Nabla aggregates ----------------------------------------------

def _interleave(u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    out = []
    for a, b in zip(u, v):
        out += (a, b)
    return tuple(out)


def delta(n: int, t: int, u: Sequence[int], v: Sequence[int], field: FieldSpec) -> int:
    """Delta^n_t.  Odd t = 2r-1: rho_{n-r}(v_1,u_2,..,u_n,v_n); even t = 2r: rho_{n-1-r}(v_1,u_2,..,u_n)."""
    seq = _interleave(u[:n], v[:n])
    if t % 2:
        r = (t + 1) // 2
        return rho(n - r, seq[1:2 * n], field)
    r = t // 2
    return rho(n - 1 - r, seq[1:2 * n - 1], field)


def nabla(n: int, t: int, u: Sequence[int], v: Sequence[int], field: FieldSpec) -> int:
    """Nabla^n_t.  Odd t = 2r-1: rho_{n-r}(u_1,v_1,..,v_{n-1},u_n); even t = 2r: rho_{n-r}(u_1,..,v_n)."""
    seq = _interleave(u[:n], v[:n])
    if t % 2:
        r = (t + 1) // 2
        return rho(n - r, seq[:2 * n - 1], field)
    r = t // 2
    return rho(n - r, seq[:2 * n], field)


@dataclass(frozen=True)
class DeltaNablaTable:
    n: int
    u: tuple[int, ...]
    v: tuple[int, ...]
    delta: tuple[int, ...]
    nabla: tuple[int, ...]

    def d(self, t: int) -> int:
        return self.delta[t] if 0 <= t < len(self.delta) else 0

    def nb(self, t: int) -> int:
        return self.nabla[t] if 0 <= t < len(self.nabla) else 0


def _check_uv(n: int, u: Sequence[int], v: Sequence[int]) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if len(u) != n or len(v) != n:
        raise ValueError(f"u and v must both have length {n}")


def delta_nabla(n: int, u: Sequence[int], v: Sequence[int], field: FieldSpec) -> DeltaNablaTable:
    """Delta^n_t and Nabla^n_t for 0 <= t <= 2n+2; everything else is zero."""
    _check_uv(n, u, v)
    u, v = tuple(u), tuple(v)
    width = 2 * n + 3
    if n == 1:
        # the interleaved sequences degenerate here; use the values listed directly
        u1, v1 = u[0], v[0]
        d = [1, v1] + [0] * (width - 2)
        nb = [1, u1, field.mul(u1, v1)] + [0] * (width - 3)
        return DeltaNablaTable(n, u, v, tuple(d), tuple(nb))
    d = tuple(delta(n, t, u, v, field) for t in range(width))
    nb = tuple(nabla(n, t, u, v, field) for t in range(width))
    return DeltaNablaTable(n, u, v, d, nb)


def lemma2_sum(n: int, j: int, u: Sequence[int], v: Sequence[int], field: FieldSpec) -> int:
    """sum_s (-1)^s Nabla^n_s Delta^n_{2j-s}; identically zero for j >= 1."""
    if j < 1:
        raise ValueError("j must be >= 1")
    table = delta_nabla(n, u, v, field)
    add, mul, neg = field.add_table, field.mul_table, field.neg_table
    total = 0
    # outside 0..2n+2 both aggregates vanish
    for s in range(0, 2 * n + 1):
        term = mul[table.nb(s)][table.d(2 * j - s)]
        total = add[total][neg[term] if s % 2 else term]
    return total


def alternating_v(count: int, field: FieldSpec) -> tuple[int, ...]:
    """(1, -1, 1, -1, ...) of the given length."""
    minus_one = field.neg(1)
    return tuple(1 if i % 2 == 0 else minus_one for i in range(count))


def _signed(sign_exp: int, x: int, field: FieldSpec) -> int:
    return field.neg(x) if sign_exp % 2 else x


def lemma3_check(n: int, t: int, u: Sequence[int], field: FieldSpec) -> list[tuple[int, int]]:
    """Both sides of the eight equalities relating rho over (u, v) to rho over u alone.

    ``u`` has 2n entries; the v entries are the fixed pattern 1, -1, 1, -1, ...
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if len(u) != 2 * n:
        raise ValueError(f"u must have {2 * n} entries, got {len(u)}")
    u = tuple(u)
    full = _interleave(u, alternating_v(2 * n, field))
    # full = (u_1, v_1, ..., u_2n, v_2n)
    a = full[:4 * n - 1]       # u_1 .. v_{2n-1}, u_{2n}
    b = full[1:4 * n - 1]      # v_1, u_2 .. v_{2n-1}, u_{2n}
    c = full                   # u_1 .. v_{2n}
    d = full[1:]               # v_1 .. u_{2n}, v_{2n}
    u_all, u_in, u_tail, u_head = u, u[1:2 * n - 1], u[1:], u[:2 * n - 1]
    add = field.add

    def r(s, seq):
        return rho(s, seq, field)

    def sg(e, x):
        return _signed(e, x, field)

    return [
        (r(2 * n - 2 * t, a),
         add(sg(t - 1, r(n - t, u_all)), sg(t, r(n - t - 1, u_in)))),
        (r(2 * n + 1 - 2 * t, a),
         add(sg(t - 1, r(n - t, u_tail)), sg(t - 1, r(n - t, u_head)))),
        (r(2 * n - 1 - 2 * t, b), sg(t, r(n - t - 1, u_in))),
        (r(2 * n - 2 * t, b), sg(t - 1, r(n - t, u_tail))),
        (r(2 * n - 2 * t, c), sg(t, r(n - t, u_all))),
        (r(2 * n + 1 - 2 * t, c), sg(t, r(n - t, u_tail))),
        (r(2 * n - 2 * t, d), sg(t, r(n - t, u_tail))),
        (r(2 * n + 1 - 2 * t, d), 0),
    ]


def scaling_check(n: int, j: int, omega: Sequence[int], a: int, b: int,
                  field: FieldSpec) -> tuple[int, int]:
    """Scale odd positions by a and even positions by b, then compare rho_{n-j}.

    Returns (rho of the scaled sequence, a^j b^j * rho) for length 2n and
    (rho of the scaled sequence, a^{j+1} b^j * rho) for length 2n + 1.
    """
    if a == 0 or b == 0:
        raise ValueError("scale factors must be nonzero")
    if len(omega) not in (2 * n, 2 * n + 1):
        raise ValueError(f"omega must have length {2 * n} or {2 * n + 1}")
    mul = field.mul
    scaled = tuple(mul(a if i % 2 == 0 else b, w) for i, w in enumerate(omega))
    factor = mul(field.pow(a, j), field.pow(b, j))
    if len(omega) % 2:
        factor = mul(factor, a)
    return rho(n - j, scaled, field), mul(factor, rho(n - j, omega, field))
