"""Command-line front end.

    dkgirth girth --k 13 --q 3
    dkgirth scan --q 4,5,7 --k-odd 3..15 --out scan.csv
    dkgirth verify --cert c.json
    dkgirth lift --rule l4 --cert hexagon.json --out c7.json
    dkgirth bounds --k 39 --q 3
    dkgirth table --q 3 --kmax 320 --out table1.csv
    dkgirth identities --check lemma2 --q 9 --n 6 --samples 200 --seed 7

Exit status: 0 ok, 1 a certificate failed verification, 2 a proven
statement failed (see stderr), 3 a search ran out of budget, 4 bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .bounds import derive_girth, girth_table, table_csv, TABLE1_K
from .exceptions import LiftPreconditionError, PaperFalsified
from .field import FieldSpec, mk_field, parse_q
from .girth import (
    DEFAULT_MEMORY,
    GirthResult,
    enumerate_circuit_types,
    girth_bfs,
    girth_full_bfs,
    lower_bound,
    scan_conjecture,
)
from .graph import CircuitCertificate, GraphParams, check_circuit
from .identities import CHECKS, run_check
from .lift import RULES, chain_cor1, theorem4_instance

__all__ = ["main", "build_parser"]

OK, VERIFY_FAILED, FALSIFIED, BUDGET, USAGE = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags, which is reserved here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


def _field(args) -> FieldSpec:
    p, m = parse_q(str(args.q))
    modulus = None
    if getattr(args, "modulus", None):
        modulus = [int(c) for c in args.modulus.split(",")]
    return mk_field(p, m, modulus)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _int_range(text: str) -> list[int]:
    """'3..15' or '3,5,9'."""
    if ".." in text:
        a, b = text.split("..")
        return list(range(int(a), int(b) + 1))
    return [int(x) for x in text.split(",") if x]


def _mem(text: str) -> int:
    units = {"k": 1 << 10, "m": 1 << 20, "g": 1 << 30}
    text = text.strip().lower().rstrip("b")
    if text and text[-1] in units:
        return int(float(text[:-1]) * units[text[-1]])
    return int(text)


def _load_certs(path: str) -> list[CircuitCertificate]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read certificate {path}: {exc}") from None
    items = data if isinstance(data, list) else [data]
    # a saved `girth --json` result carries its certificate under "witness"
    items = [d["witness"] if isinstance(d, dict) and "witness" in d else d for d in items]
    try:
        return [CircuitCertificate.from_json(d) for d in items]
    except (ValueError, TypeError) as exc:
        raise UsageError(f"malformed certificate: {exc}") from None


# -- subcommands -----------------------------------------------------------

def cmd_field(args) -> int:
    F = _field(args)
    info = F.to_json() | {"q": F.q}
    if args.tables:
        info |= {"add": F.add_table, "mul": F.mul_table, "neg": F.neg_table,
                 "inv": F.inv_table[1:]}
    if args.json:
        print(_dump(info))
    else:
        print(f"{F!r}: q = {F.q}, modulus (low degree first) = {list(F.modulus)}")
        if args.tables:
            for name in ("add", "mul"):
                print(f"{name}:")
                for row in info[name]:
                    print(" ".join(f"{x:>3}" for x in row))
    return OK


def _type_search(params: GraphParams, max_depth: int | None) -> GirthResult:
    # the shortest closed backtrackless walk through the root edge is the girth
    i = lower_bound(params.k) // 2
    limit = (max_depth or 4 * params.k + 16) // 2
    while i <= limit:
        wt = next(enumerate_circuit_types(params, i), None)
        if wt is not None:
            cert = check_circuit(params, wt, provenance="type-search")
            return GirthResult(params, 2 * i, 2 * i, "type-search", witness=cert)
        i += 1
    return GirthResult(params, None, 2 * i, "type-search", "exceeds_max_depth")


def cmd_girth(args) -> int:
    params = GraphParams(args.k, _field(args))
    if args.method == "bfs":
        res = girth_bfs(params, args.max_depth, args.mem, args.threads)
    elif args.method == "full":
        try:
            res = girth_full_bfs(params)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        res = _type_search(params, args.max_depth)
    if args.json:
        print(_dump(res.to_json()))
    elif res.girth is not None:
        print(res.girth)
    else:
        print(f">= {res.lower} ({res.status})")
    return OK if res.girth is not None else BUDGET


def cmd_scan(args) -> int:
    fields = [mk_field(*parse_q(q)) for q in args.q.split(",")]
    ks = _int_range(args.k) if args.k else [k for k in _int_range(args.k_odd) if k % 2]
    rows = scan_conjecture(fields, ks, memory_budget=args.mem, max_depth=args.max_depth)
    buf = io.StringIO()
    cols = ["q", "k", "girth", "lower", "upper", "status", "in_range", "method"]
    w = csv.DictWriter(buf, cols, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({c: ("" if r[c] is None else r[c]) for c in cols})
    _write(args.out, buf.getvalue())
    return BUDGET if any(r["status"] == "undecided" for r in rows) else OK


def cmd_verify(args) -> int:
    status = OK
    out = []
    for cert in _load_certs(args.cert):
        fresh = check_circuit(cert.params, cert.walk_type, cert.provenance)
        agrees = (fresh.coords_zero, fresh.v_sum_zero, fresh.vertices_distinct, fresh.length) == \
                 (cert.coords_zero, cert.v_sum_zero, cert.vertices_distinct, cert.length)
        good = fresh.closed and agrees
        if not good:
            status = VERIFY_FAILED
        out.append({"k": cert.k, "q": cert.params.q, "length": fresh.length, "closed": fresh.closed,
                    "cycle": fresh.exact, "matches_stored_flags": agrees, "ok": good})
    if args.json:
        print(_dump(out))
    else:
        for r in out:
            verdict = "OK" if r["ok"] else "FAILED"
            print(f"{verdict}: k={r['k']} q={r['q']} length={r['length']} closed={r['closed']} "
                  f"cycle={r['cycle']} flags-match={r['matches_stored_flags']}")
    return status


def cmd_lift(args) -> int:
    if args.rule == "t4":
        if args.q is None or args.s is None or args.t is None:
            raise UsageError("lift --rule t4 needs --q, --s and --t")
        try:
            res = theorem4_instance(_field(args), args.s, args.t)
        except LiftPreconditionError as exc:
            raise UsageError(str(exc)) from None
        _write(args.out, _dump(res.to_json()) + "\n")
        if args.out not in (None, "-"):
            print(f"k={res.k} claim={res.claim} status={res.status}")
        return OK
    if not args.cert:
        raise UsageError(f"lift --rule {args.rule} needs --cert")
    (cert,) = _load_certs(args.cert)[:1]
    try:
        if args.rule == "cor1":
            outs = chain_cor1(cert, args.t_max)
            payload = [c.to_json() for c in outs]
        else:
            out = RULES[args.rule].apply(cert)
            outs, payload = [out], out.to_json()
    except LiftPreconditionError as exc:
        raise UsageError(str(exc)) from None
    _write(args.out, _dump(payload) + "\n")
    if args.out not in (None, "-"):
        for c in outs:
            print(f"k={c.k} length={c.length} cycle={c.exact} ({c.provenance})")
    return OK


def cmd_bounds(args) -> int:
    F = _field(args)
    seeds = {}
    if args.seed_bfs:
        for k in range(1, args.k + 1):
            res = girth_bfs(GraphParams(k, F), max_depth=args.max_depth, memory_budget=args.mem)
            if res.girth is None:
                break
            seeds[k] = (res.girth, res.girth)
    rep = derive_girth(args.k, F.q, F.p, seeds or None)
    if args.json:
        print(_dump(rep.to_json()))
    else:
        bracket = f"{rep.exact}" if rep.exact is not None else f"[{rep.lower}, {rep.upper or 'inf'}]"
        print(f"g(Lambda({rep.k},{rep.q})) = {bracket}")
        for step in rep.rule_chain:
            print(f"  {step}")
    return OK


def cmd_table(args) -> int:
    p, m = parse_q(str(args.q))
    q = p ** m
    if args.k:
        ks = _int_range(args.k)
    elif q == 3:
        ks = [k for k in TABLE1_K if k <= args.kmax]
    else:
        ks = list(range(2, args.kmax + 1))
    rows = girth_table(q, ks, args.bfs_kmax)
    if args.json:
        _write(args.out, _dump([r.to_json() for r in rows]) + "\n")
    else:
        _write(args.out, table_csv(rows))
    return OK


def cmd_identities(args) -> int:
    F = _field(args)
    names = sorted(CHECKS) if args.check == "all" else [args.check]
    reports = [run_check(name, F, args.n, args.samples, args.seed) for name in names]
    if args.json:
        print(_dump([r.to_json() for r in reports]))
    else:
        for r in reports:
            print(f"{'PASS' if r.ok else 'FAIL'} {r.check} q={r.q} cases={r.cases} failures={len(r.failures)}")
    if not all(r.ok for r in reports):
        raise PaperFalsified("identity check failed", {"reports": [r.to_json() for r in reports]})
    return OK


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="dkgirth", description="Girth of the graphs Lambda(k, q).")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_field(p, required=True):
        p.add_argument("--q", required=required, help="field size, e.g. 9 or 3^2")
        p.add_argument("--modulus", help="comma-separated monic modulus, low degree first")

    def with_budget(p):
        p.add_argument("--max-depth", type=int, default=None)
        p.add_argument("--mem", type=_mem, default=DEFAULT_MEMORY, help="e.g. 512M, 8G")

    p = sub.add_parser("field", help="describe GF(q)")
    with_field(p)
    p.add_argument("--tables", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("girth", help="girth of one Lambda(k, q)")
    p.add_argument("--k", type=int, required=True)
    with_field(p)
    with_budget(p)
    p.add_argument("--method", choices=["bfs", "full", "type"], default="bfs")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_girth)

    p = sub.add_parser("scan", help="girth against k + 5 over a grid")
    p.add_argument("--q", required=True, help="comma-separated field sizes")
    p.add_argument("--k-odd", default="3..15", help="range of k, odd values kept")
    p.add_argument("--k", help="explicit k list or range (overrides --k-odd)")
    with_budget(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="re-check certificate file(s)")
    p.add_argument("--cert", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lift", help="apply a lifting rule")
    p.add_argument("--rule", required=True, choices=sorted(RULES) + ["cor1", "t4"])
    p.add_argument("--cert")
    p.add_argument("--out")
    p.add_argument("--t-max", type=int, default=3)
    with_field(p, required=False)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("bounds", help="derived girth bracket")
    p.add_argument("--k", type=int, required=True)
    with_field(p)
    with_budget(p)
    p.add_argument("--seed-bfs", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", help="girth table as CSV or JSON")
    p.add_argument("--q", default="3")
    p.add_argument("--kmax", type=int, default=320)
    p.add_argument("--k", help="explicit k list or range")
    p.add_argument("--bfs-kmax", type=int, default=14)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("identities", help="randomized identity checks")
    p.add_argument("--check", choices=sorted(CHECKS) + ["all"], default="all")
    with_field(p)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_identities)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PaperFalsified as exc:
        print(f"FALSIFIED: {exc}", file=sys.stderr)
        print(_dump(exc.dump), file=sys.stderr)
        return FALSIFIED
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    raise SystemExit(main())
