"""Command-line front end.

Exit codes: 0 success, 1 bad input (or an oracle that ran out of budget),
2 an internal cross-check failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .closure import coset_closure, reduce_to_quasidense, schurian_closure, singular_classes
from .duality import dual
from .errors import InputError, InvariantViolation, SearchBudgetExceeded, SRingError
from .multipliers import SchurityVerdict, is_schurian_quasidense
from .oracle import ENUM_BOUND, enumerate_exhaustive, enumerate_leung_man, oracle_is_schurian
from .ring import SRing
from .sections import (
    is_coset_ring,
    is_dense,
    is_quasidense,
    principal_sections,
    ring_radical,
    s_zero,
)

ORACLE_BOUND = 30


# -- schurity decision ----------------------------------------------------------


@dataclass(frozen=True)
class Decision:
    verdict: SchurityVerdict
    method: str
    oracle: bool | None = None

    def to_dict(self) -> dict:
        d = self.verdict.to_dict()
        d["method"] = self.method
        if self.oracle is not None:
            d["oracle_schurian"] = self.oracle
        return d


def decide_schurity(a: SRing, verify: bool = False, oracle_bound: int = ORACLE_BOUND) -> Decision:
    """Criterion on quasidense rings, reduction first otherwise.

    With ``verify`` the oracle is consulted for n <= oracle_bound and any
    disagreement raises.
    """
    if is_quasidense(a):
        v = is_schurian_quasidense(a)
        method = "criterion"
    else:
        reduced, _ = reduce_to_quasidense(a)
        inner = is_schurian_quasidense(reduced)
        v = SchurityVerdict(a, False, inner.schurian, inner.witness_section, inner.failed_condition,
                            method="reduction+criterion", surjective=inner.surjective)
        method = "reduction+criterion"
    oracle = None
    if verify and a.n <= oracle_bound:
        oracle = oracle_is_schurian(a)
        if oracle != v.schurian:
            raise InvariantViolation(f"{method} says schurian={v.schurian}, oracle says {oracle} for {a}")
    return Decision(v, method, oracle)


# -- reports --------------------------------------------------------------------


def analyze(a: SRing, verify: bool = False, oracle_bound: int = ORACLE_BOUND) -> dict:
    qd = is_quasidense(a)
    report = {
        "ring": a.to_dict(),
        "flags": {
            "quasidense": qd,
            "coset": is_coset_ring(a),
            "dense": is_dense(a),
            "trivial_radical": ring_radical(a) == 1,
        },
        "a_groups": a.a_groups(),
        "principal_sections": sorted(s.as_list() for s in principal_sections(a)),
        "s_zero": sorted(s.as_list() for s in s_zero(a)),
        "singular_classes": [c.to_dict() for c in singular_classes(a)],
        "schurity": decide_schurity(a, verify, oracle_bound).to_dict(),
    }
    if qd:
        cc = coset_closure(a).closure
        report["closure"] = {
            "coset_closure": cc.to_dict(),
            "coset_closure_rank": cc.rank,
            "schurian_closure": schurian_closure(a).to_dict(),
        }
    else:
        reduced, steps = reduce_to_quasidense(a)
        report["closure"] = {"reduced": reduced.to_dict(), "reduction_steps": len(steps)}
    d = dual(a)
    report["dual"] = {"ring": d.to_dict(), "rank": d.rank, "self_dual": d == a}
    return report


def _census_row_for_ring(args) -> dict:
    a, verify, oracle_bound = args
    row = {"quasidense": is_quasidense(a), "coset": is_coset_ring(a), "status": "ok"}
    try:
        dec = decide_schurity(a, verify, oracle_bound)
        row["schurian"] = dec.verdict.schurian
        row["oracle_agree"] = None if dec.oracle is None else dec.oracle == dec.verdict.schurian
        row["noncyclotomic_surjective"] = (
            dec.verdict.failed_condition == "cyclotomic" and bool(dec.verdict.surjective)
        )
        row["dual_agree"] = decide_schurity(dual(a)).verdict.schurian == dec.verdict.schurian
    except SearchBudgetExceeded:
        row["status"] = "budget_exceeded"
    return row


def census(n_max: int, verify: bool = False, jobs: int = 1, oracle_bound: int = ORACLE_BOUND,
           n_min: int = 1) -> list[dict]:
    rows = []
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        for n in range(n_min, n_max + 1):
            rings = enumerate_leung_man(n).rings
            work = [(a, verify, oracle_bound) for a in rings]
            if pool is not None:
                per = list(pool.map(_census_row_for_ring, work, chunksize=8))
            else:
                per = [_census_row_for_ring(w) for w in work]
            ok = [r for r in per if r["status"] == "ok"]
            checked = [r for r in ok if r["oracle_agree"] is not None]
            rows.append({
                "n": n,
                "rings": len(rings),
                "quasidense": sum(r["quasidense"] for r in per),
                "coset": sum(r["coset"] for r in per),
                "schurian": sum(r["schurian"] for r in ok),
                "oracle_checked": len(checked),
                "oracle_disagreements": sum(not r["oracle_agree"] for r in checked),
                "dual_disagreements": sum(not r["dual_agree"] for r in ok),
                "noncyclotomic_surjective": sum(r["noncyclotomic_surjective"] for r in ok),
                "budget_exceeded": len(per) - len(ok),
            })
    finally:
        if pool is not None:
            pool.shutdown()
    return rows


# -- argument handling ----------------------------------------------------------


def _read_ring(path: str) -> SRing:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read ring from {path}: {exc}") from exc
    if not isinstance(data, dict) or "n" not in data or "blocks" not in data:
        raise InputError('ring JSON must be an object with "n" and "blocks"')
    return SRing.from_dict(data)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="schurring", description="Circulant S-ring toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, ring=True):
        if ring:
            sp.add_argument("--input", required=True, help="ring JSON file, or - for stdin")
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--verify", action="store_true", help="cross-check with the oracle")
        sp.add_argument("--oracle-bound", type=int, default=ORACLE_BOUND)

    common(sub.add_parser("analyze", help="full report on one ring"))
    common(sub.add_parser("schurity", help="schurity verdict for one ring"))
    sp = sub.add_parser("closure", help="coset and schurian closure")
    common(sp)
    sp.add_argument("--kind", choices=["coset", "schurian"], default="coset")
    common(sub.add_parser("dual", help="dual S-ring"))

    sp = sub.add_parser("enumerate", help="all S-rings over Z_n as JSON lines")
    common(sp, ring=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--method", choices=["leung-man", "exhaustive"], default="leung-man")
    sp.add_argument("--enum-bound", type=int, default=ENUM_BOUND)

    sp = sub.add_parser("census", help="per-n counts and cross-checks")
    common(sp, ring=False)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--n-min", type=int, default=1)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--format", choices=["json", "tsv"], default="tsv")
    return p


def run(args: argparse.Namespace) -> None:
    cmd = args.command
    if cmd == "analyze":
        _emit(_dump(analyze(_read_ring(args.input), args.verify, args.oracle_bound)), args.out)
    elif cmd == "schurity":
        a = _read_ring(args.input)
        _emit(_dump(decide_schurity(a, args.verify, args.oracle_bound).to_dict()), args.out)
    elif cmd == "closure":
        a = _read_ring(args.input)
        if args.kind == "coset":
            _emit(_dump(coset_closure(a).to_dict()), args.out)
        else:
            res = schurian_closure(a)
            if args.verify and a.n <= args.oracle_bound:
                from .oracle import oracle_sch

                if oracle_sch(a) != res:
                    raise InvariantViolation("schurian closure differs from the oracle")
            _emit(_dump({"input": a.to_dict(), "schurian_closure": res.to_dict()}), args.out)
    elif cmd == "dual":
        _emit(_dump(dual(_read_ring(args.input)).to_dict()), args.out)
    elif cmd == "enumerate":
        if args.n < 1:
            raise InputError("--n must be positive")
        if args.method == "exhaustive":
            cen = enumerate_exhaustive(args.n, args.enum_bound)
        else:
            cen = enumerate_leung_man(args.n)
            if args.verify and args.n <= args.enum_bound:
                if set(cen.rings) != set(enumerate_exhaustive(args.n, args.enum_bound).rings):
                    raise InvariantViolation(f"enumerators disagree at n = {args.n}")
        _emit(cen.to_jsonl(), args.out)
    elif cmd == "census":
        if args.n_max < 1:
            raise InputError("--n-max must be positive")
        rows = census(args.n_max, args.verify, args.jobs, args.oracle_bound, args.n_min)
        if args.format == "json":
            text = "".join(json.dumps(r) + "\n" for r in rows)
        else:
            cols = list(rows[0]) if rows else []
            text = "\t".join(cols) + "\n" + "".join("\t".join(str(r[c]) for c in cols) + "\n" for r in rows)
        _emit(text, args.out)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        run(args)
    except InvariantViolation as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 2
    except (InputError, SearchBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SRingError as exc:  # pragma: no cover - all package errors are classified above
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
