"""Girth brackets for Lambda(k, q) from number theory and the lifting rules.

``derive_girth`` keeps a [lower, upper] bracket for every k' up to a
ceiling and applies the implication rules until nothing tightens.  The
arithmetic is exact: ratios are ``fractions.Fraction`` and every upper
bound is an integer.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .exceptions import PaperFalsified

__all__ = [
    "divides_p",
    "p_divisor_list",
    "two_adic",
    "KSequence",
    "k_sequence",
    "t_q",
    "upper_bound_thm5",
    "even_lower",
    "BoundReport",
    "GirthEngine",
    "derive_girth",
    "TABLE1_K",
    "girth_table",
    "table_q3",
    "table_csv",
]

INF = math.inf


def _strip(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


def divides_p(m: int, n: int, p: int) -> bool:
    """m |_p n: m divides n * p^r for some r >= 0."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return n % _strip(m, p) == 0


def two_adic(n: int) -> int:
    """Exponent of the exact power of 2 dividing n."""
    if n < 1:
        raise ValueError("n must be positive")
    return (n & -n).bit_length() - 1


def _p_multiples(q: int, p: int, lo: int, count: int, at_least: int = 0) -> list[int]:
    """Ascending m >= lo with m |_p (q-1): every such m is d * p^r with d | (q-1)."""
    divs = [d for d in range(1, q) if (q - 1) % d == 0]
    r = 0
    while True:
        r += 1
        pool = sorted(d * p ** e for d in divs for e in range(r + 1) if d * p ** e >= lo)
        # anything not yet generated is at least p^(r+1)
        ready = [m for m in pool if m < p ** (r + 1)]
        if len(ready) >= count and (not ready or ready[-1] >= at_least):
            return ready[:max(count, sum(1 for m in ready if m <= at_least))]


def p_divisor_list(q: int, p: int, count: int) -> list[int]:
    """The first ``count`` positive m with m |_p (q-1), ascending."""
    return _p_multiples(q, p, 1, count)


def _num_divisors(n: int) -> int:
    return sum(1 for d in range(1, n + 1) if n % d == 0)


def even_lower(k: int) -> int:
    """2 * ceil((k + 4) / 2)."""
    return 2 * math.ceil((k + 4) / 2)


@dataclass(frozen=True)
class KSequence:
    """Odd k >= 1 with (k+5)/2 |_p (q-1); ``i0`` is the 0-based index of 2q-5."""

    q: int
    p: int
    ks: tuple[int, ...]
    i0: int
    n: int

    def __getitem__(self, i: int) -> int:
        return self.ks[i]

    def __len__(self) -> int:
        return len(self.ks)


def k_sequence(q: int, p: int, count: int) -> KSequence:
    if q < 3:
        raise ValueError("q must be >= 3")
    # keep going until 2q-5 is listed as well as `count` terms
    ms = _p_multiples(q, p, 3, count, at_least=q)
    ks = tuple(2 * m - 5 for m in ms)
    return KSequence(q, p, ks, ks.index(2 * q - 5), _num_divisors(q - 1))


@lru_cache(maxsize=None)
def t_q(q: int, p: int) -> Fraction:
    """Largest ratio (k_{i+1}+5)/(k_i+5) over one period starting at k = 2q-5."""
    n = _num_divisors(q - 1)
    seq = k_sequence(q, p, 1)
    seq = k_sequence(q, p, seq.i0 + n + 1)
    i0 = seq.i0
    best = max(Fraction(seq[i + 1] + 5, seq[i] + 5) for i in range(i0, i0 + n))
    if not 1 < best < p:
        raise PaperFalsified(f"T_{q} = {best} outside (1, {p})")
    return best


def upper_bound_thm5(k: int, q: int, p: int) -> tuple[Fraction, int] | None:
    """(raw bound, even-floored bound) when the growth-rate bound applies, else None."""
    if q < 3 or k < q:
        return None
    T = t_q(q, p)
    if T <= 2:
        raw = T * (k + 4)
    elif k >= 8 * T * T - 10 * T - 3:
        raw = 2 * k + 4 * T + 1
    else:
        return None
    return raw, 2 * math.floor(raw / 2)


# -- rule engine -----------------------------------------------------------

@dataclass
class BoundReport:
    k: int
    q: int
    lower: int
    upper: int | None
    exact: int | None
    rule_chain: list[str] = dc_field(default_factory=list)
    method: str = ""

    def to_json(self) -> dict:
        return {
            "k": self.k, "q": self.q, "lower": self.lower, "upper": self.upper,
            "exact": self.exact, "method": self.method, "rule_chain": self.rule_chain,
        }


class GirthEngine:
    """Fixed-point propagation of girth brackets for k = 1..ceiling at a fixed q.

    Each bound remembers the rule that produced it and the k' it came from,
    so ``chain(k)`` can replay the derivation.
    """

    RULES = ("lemma5", "theorem4", "doubling", "thm5", "monotone", "thm2",
             "t3_item1", "t3_item2", "t3_item3", "t3_item4", "cor1")

    def __init__(self, q: int, p: int, ceiling: int, disable: Iterable[str] = ()):
        self.q, self.p, self.K = q, p, max(ceiling, 2)
        self.off = set(disable)
        unknown = self.off - set(self.RULES)
        if unknown:
            raise ValueError(f"unknown rules {sorted(unknown)}")
        self.lo = [0] + [even_lower(k) for k in range(1, self.K + 1)]
        self.hi: list[float] = [INF] * (self.K + 1)
        self.why_lo: list[tuple] = [("none",)] + [("lower_bound",)] * self.K
        self.why_hi: list[tuple] = [("none",)] * (self.K + 1)

    # bracket updates

    def upper(self, k: int, val: float, rule: str, *src: int) -> bool:
        if rule.split(" ")[0] in self.off:
            return False
        if 1 <= k <= self.K and val < self.hi[k]:
            self.hi[k] = val
            self.why_hi[k] = (rule, *src)
            self._check(k)
            return True
        return False

    def lower(self, k: int, val: int, rule: str, *src: int) -> bool:
        if rule.split(" ")[0] in self.off:
            return False
        if 1 <= k <= self.K and val > self.lo[k]:
            self.lo[k] = val
            self.why_lo[k] = (rule, *src)
            self._check(k)
            return True
        return False

    def exact(self, k: int, val: int, rule: str, *src: int) -> bool:
        a = self.upper(k, val, rule, *src)
        b = self.lower(k, val, rule, *src)
        return a or b

    def is_exact(self, k: int, val: int | None = None) -> bool:
        if not 1 <= k <= self.K or self.lo[k] != self.hi[k]:
            return False
        return val is None or self.lo[k] == val

    def _check(self, k: int) -> None:
        if self.lo[k] > self.hi[k]:
            raise PaperFalsified(
                f"girth bounds crossed at k={k}, q={self.q}: [{self.lo[k]}, {self.hi[k]}]",
                {"lower_rule": self.why_lo[k], "upper_rule": self.why_hi[k]})

    # seeds

    def seed_lemma5(self) -> None:
        m = 2
        while 2 * m - 5 <= self.K:
            m += 1
            if divides_p(m, self.q - 1, self.p):
                t = m - 2
                self.exact(2 * t - 1, 2 * t + 4, f"lemma5 m={m}")
                self.exact(2 * t, 2 * t + 4, f"lemma5 m={m}")

    def seed_thm5(self) -> None:
        if self.q < 3:
            return
        T = t_q(self.q, self.p)
        for k in range(self.q, self.K + 1):
            got = upper_bound_thm5(k, self.q, self.p)
            if got is not None:
                self.upper(k, got[1], f"thm5 T={T} raw={got[0]} even-floor")

    def seed_theorem4(self) -> None:
        if self.p == 2:
            return
        s = two_adic(self.q - 1)
        t = 1
        while 2 ** (s + 2) * (2 * t - 1) - 5 <= self.K:
            if divides_p(2 * t - 1, self.q - 1, self.p):
                m = 2 ** (s + 2) * (2 * t - 1)
                self.exact(m - 5, m, f"theorem4 s={s} t={t}")
            t += 1

    def seed_doubling(self) -> None:
        if self.q < 3:
            return
        m = 2
        while 2 * m - 5 <= self.K:
            m += 1
            if not divides_p(m, self.q - 1, self.p):
                continue
            ki = 2 * m - 5
            s = 0
            while 2 ** s * (ki + 1) - 2 <= self.K:
                bound = 2 ** s * (ki + 5)
                self.upper(2 ** s * (ki + 1) - 1, bound, f"doubling k_i={ki} s={s}")
                self.upper(2 ** s * (ki + 1) - 2, bound, f"doubling k_i={ki} s={s}")
                s += 1

    # one sweep of the implication rules

    def sweep(self) -> bool:
        changed = False
        lo, hi, K = self.lo, self.hi, self.K
        # Lambda(1, q) is a copy of Lambda(2, q)
        changed |= self.upper(1, hi[2], "alias_k1", 2) | self.upper(2, hi[1], "alias_k1", 1)
        changed |= self.lower(1, lo[2], "alias_k1", 2) | self.lower(2, lo[1], "alias_k1", 1)
        for k in range(K - 1, 0, -1):
            changed |= self.upper(k, hi[k + 1], "monotone", k + 1)
        for k in range(1, K):
            changed |= self.lower(k + 1, lo[k], "monotone", k)
        for k in range(5, K, 4):
            # 4t+1 and 4t+2 have the same girth
            changed |= self.upper(k + 1, hi[k], "thm2", k) | self.upper(k, hi[k + 1], "thm2", k + 1)
            changed |= self.lower(k + 1, lo[k], "thm2", k) | self.lower(k, lo[k + 1], "thm2", k + 1)
        for s in range(1, (K - 3) // 4 + 1):
            changed |= self.upper(4 * s + 3, 2 * hi[2 * s], "t3_item1", 2 * s)
        for n in range(3, (K + 5) // 4 + 1):
            if 2 * n - 4 >= 1 and self.is_exact(2 * n - 4, 2 * n):
                changed |= self.exact(4 * n - 5, 4 * n, "t3_item2", 2 * n - 4)
        for w in range(1, K // 8 + 1):
            if self.is_exact(4 * w - 2, 4 * w + 2):
                changed |= self.exact(8 * w, 8 * w + 4, "t3_item3", 4 * w - 2)
        if self.p == 2:
            for w in range(1, (K - 4) // 8 + 1):
                changed |= self.upper(8 * w + 4, 2 * hi[4 * w], "t3_item4", 4 * w)
            changed |= self._cor1()
        return changed

    def _cor1(self) -> bool:
        changed = False
        for s in range(1, self.K // 2 + 1):
            if not self.is_exact(2 * s, 2 * s + 4):
                continue
            t = 1
            while 2 ** t * (s + 2) - 5 <= self.K:
                g = 2 ** t * (s + 2)
                changed |= self.exact(g - 4, g, f"cor1 t={t}", 2 * s)
                changed |= self.exact(g - 5, g, f"cor1 t={t}", 2 * s)
                t += 1
        return changed

    def run(self, seeds: dict[int, tuple[int, int]] | None = None) -> None:
        for k, (lo, hi) in (seeds or {}).items():
            if k <= self.K:
                self.lower(k, lo, "bfs")
                self.upper(k, hi, "bfs")
        self.seed_lemma5()
        self.seed_theorem4()
        self.seed_doubling()
        self.seed_thm5()
        while self.sweep():
            pass

    # reporting

    def chain(self, k: int) -> list[str]:
        """Rules behind the upper bound at k, following sources back to a seed."""
        out, seen = [], set()
        while k not in seen and 1 <= k <= self.K:
            seen.add(k)
            rule, *src = self.why_hi[k]
            if rule == "none":
                break
            out.append(f"k={k}: {rule} -> {self._fmt(self.hi[k])}")
            if not src:
                break
            k = src[0]
        return out

    @staticmethod
    def _fmt(x: float) -> str:
        return "inf" if x == INF else str(int(x))

    def report(self, k: int) -> BoundReport:
        if not 1 <= k <= self.K:
            raise ValueError(f"k={k} outside the engine range")
        hi = None if self.hi[k] == INF else int(self.hi[k])
        exact = hi if hi == self.lo[k] else None
        chain = self.chain(k)
        lrule = self.why_lo[k][0]
        if lrule != "lower_bound":
            chain.append(f"k={k}: lower from {lrule}")
        method = self.why_hi[k][0] if hi is not None else "none"
        if self.why_lo[k][0] == "bfs" or self.why_hi[k][0] == "bfs":
            method = "bfs"
        return BoundReport(k, self.q, self.lo[k], hi, exact, chain, method.split(" ")[0])


def derive_girth(k: int, q: int, p: int, seeds: dict[int, tuple[int, int]] | None = None,
                 ceiling: int | None = None, disable: Iterable[str] = ()) -> BoundReport:
    """Bracket for g(Lambda(k, q)) from every rule the engine knows.

    ``seeds`` maps k' to a computed (lower, upper) pair, e.g. from BFS.
    ``disable`` switches off named rules, to check that a result does not
    hinge on one of them.
    """
    eng = GirthEngine(q, p, ceiling or 4 * max(k, 2), disable)
    eng.run(seeds)
    return eng.report(k)


TABLE1_K = (2, 3, 4, 5, 6, 7, 8, 13, 14, 19, 31, 32, 39, 49, 50, 67, 79, 103, 104,
            135, 157, 158, 159, 211, 271, 319, 320)


def girth_table(q: int, ks: Iterable[int], bfs_kmax: int = 0,
                memory_budget: int = 1 << 30) -> list[BoundReport]:
    """Rule-engine brackets for each k, seeded with BFS girths for k <= bfs_kmax."""
    from .field import factor_prime_power, mk_field
    from .girth import girth_bfs
    from .graph import GraphParams

    p, m = factor_prime_power(q)
    ks = sorted(set(ks))
    F = mk_field(p, m)
    seeds = {}
    for k in range(1, min(bfs_kmax, ks[-1]) + 1):
        res = girth_bfs(GraphParams(k, F), memory_budget=memory_budget)
        seeds[k] = (res.lower, res.girth if res.girth is not None else INF)
    eng = GirthEngine(q, p, 4 * ks[-1])
    eng.run(seeds)
    return [eng.report(k) for k in ks]


def table_q3(k_max: int = 320, bfs_kmax: int = 14) -> list[BoundReport]:
    """The q = 3 rows of the published girth table, up to k_max."""
    return girth_table(3, [k for k in TABLE1_K if k <= k_max], bfs_kmax)


def table_csv(rows: Iterable[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "lower", "upper", "exact", "method"])
    for r in rows:
        w.writerow([r.k, r.lower, "" if r.upper is None else r.upper,
                    "" if r.exact is None else r.exact, r.method])
    return buf.getvalue()
