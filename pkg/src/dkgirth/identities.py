"""Seeded randomized checks of the polynomial identities.

Each check returns a ``SuiteReport``; a nonzero failure count on an
identity that holds for all inputs is a falsification, not a bug report
about the input.  Same seed, same cases, same report.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .field import FieldSpec
from .graph import GraphParams, WalkType, lemma1_coords, walk_simulate
from .rho import lemma2_sum, lemma3_check, rho, rho_by_deletion, rho_oracle, scaling_check

__all__ = ["SuiteReport", "CHECKS", "run_check"]


@dataclass
class SuiteReport:
    check: str
    q: int
    cases: int = 0
    failures: list[dict] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"check": self.check, "q": self.q, "cases": self.cases,
                "failures": self.failures[:20], "failure_count": len(self.failures), "ok": self.ok}


def _elems(rng: random.Random, F: FieldSpec, count: int, nonzero: bool = False) -> tuple[int, ...]:
    lo = 1 if nonzero else 0
    return tuple(rng.randrange(lo, F.q) for _ in range(count))


def check_lemma2(F: FieldSpec, n_max: int, samples: int, rng: random.Random) -> SuiteReport:
    rep = SuiteReport("lemma2", F.q)
    for _ in range(samples):
        n = rng.randint(1, n_max)
        u, v = _elems(rng, F, n), _elems(rng, F, n)
        for j in range(1, n + 3):
            rep.cases += 1
            val = lemma2_sum(n, j, u, v, F)
            if val:
                rep.failures.append({"n": n, "j": j, "u": u, "v": v, "value": val})
    return rep


def check_lemma3(F: FieldSpec, n_max: int, samples: int, rng: random.Random) -> SuiteReport:
    rep = SuiteReport("lemma3", F.q)
    for _ in range(samples):
        n = rng.randint(1, n_max)
        u = _elems(rng, F, 2 * n)
        for t in range(-1, n + 2):
            for idx, (lhs, rhs) in enumerate(lemma3_check(n, t, u, F)):
                rep.cases += 1
                if lhs != rhs:
                    rep.failures.append({"n": n, "t": t, "eq": idx + 1, "u": u, "lhs": lhs, "rhs": rhs})
    return rep


def check_scaling(F: FieldSpec, n_max: int, samples: int, rng: random.Random) -> SuiteReport:
    rep = SuiteReport("scaling", F.q)
    for _ in range(samples):
        n = rng.randint(1, n_max)
        omega = _elems(rng, F, 2 * n + rng.randint(0, 1))
        a, b = rng.randrange(1, F.q), rng.randrange(1, F.q)
        for j in range(0, n + 1):
            rep.cases += 1
            lhs, rhs = scaling_check(n, j, omega, a, b, F)
            if lhs != rhs:
                rep.failures.append({"n": n, "j": j, "omega": omega, "a": a, "b": b})
    return rep


def check_rho(F: FieldSpec, n_max: int, samples: int, rng: random.Random) -> SuiteReport:
    """DP against both brute-force evaluations; ``n_max`` bounds the sequence length."""
    rep = SuiteReport("rho", F.q)
    for _ in range(samples):
        omega = _elems(rng, F, rng.randint(0, n_max), nonzero=True)
        _rho_case(rep, F, omega)
    return rep


def _rho_case(rep: SuiteReport, F: FieldSpec, omega: tuple[int, ...]) -> None:
    for s in range(len(omega) // 2 + 1):
        rep.cases += 1
        vals = (rho(s, omega, F), rho_oracle(s, omega, F), rho_by_deletion(s, omega, F))
        if len(set(vals)) != 1:
            rep.failures.append({"s": s, "omega": omega, "dp/oracle/deletion": vals})


def check_rho_exhaustive(F: FieldSpec, length_max: int) -> SuiteReport:
    """Every sequence of units of length <= length_max."""
    rep = SuiteReport("rho-exhaustive", F.q)
    for length in range(length_max + 1):
        for omega in itertools.product(range(1, F.q), repeat=length):
            _rho_case(rep, F, omega)
    return rep


def check_lemma1(F: FieldSpec, k_max: int, samples: int, rng: random.Random, i_max: int = 8) -> SuiteReport:
    """Closed-form endpoint coordinates against simulating the walk, for every k <= k_max."""
    rep = SuiteReport("lemma1", F.q)
    for k in range(2, k_max + 1):
        params = GraphParams(k, F)
        for _ in range(samples):
            i = rng.randint(1, i_max)
            wt = WalkType(_elems(rng, F, i, True), _elems(rng, F, i, True))
            rep.cases += 1
            closed_form = lemma1_coords(params, wt)
            walked = walk_simulate(params, wt)[-2].coords
            if closed_form != walked:
                rep.failures.append({"k": k, "u": wt.u, "v": wt.v})
    return rep


CHECKS = {
    "lemma1": check_lemma1,
    "lemma2": check_lemma2,
    "lemma3": check_lemma3,
    "scaling": check_scaling,
    "rho": check_rho,
}


def run_check(name: str, F: FieldSpec, n: int, samples: int, seed: int) -> SuiteReport:
    if name not in CHECKS:
        raise ValueError(f"unknown check {name!r}; choose from {sorted(CHECKS)}")
    return CHECKS[name](F, n, samples, random.Random(seed))
