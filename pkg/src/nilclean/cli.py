"""Command-line interface.

Exit codes: 0 success / no violation, 1 a mathematical violation was found,
2 usage or input error.  Elements are always referred to by canonical index.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .classify import (
    Signs,
    decompositions,
    lemma2_applies,
    proof_chain_scan,
    remark_scan,
    verify_lemma2,
    verify_prop1,
    verify_theorem,
)
from .errors import RingError
from .expr import format_spec, parse_spec
from .radical import quotient_by_ideal, upper_nilradical
from .ring import DEFAULT_ORDER_CAP, Ring, Zn, construct_ring

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 20160401

TSV_COLUMNS = ("spec", "order", "nil_clean", "weakly_nil_clean", "classification",
               "witness", "millis", "e_nil", "e_z3")


class UsageError(Exception):
    pass


@dataclass
class CensusRecord:
    spec_text: str
    order: int
    nil_clean: bool
    weakly_nil_clean: bool
    classification: str
    witness: Optional[int]
    millis: int
    e_nil: Optional[int] = None
    e_z3: Optional[int] = None
    agree: bool = True

    def tsv_row(self) -> list:
        return [self.spec_text, self.order, self.nil_clean, self.weakly_nil_clean,
                self.classification, self.witness, self.millis, self.e_nil, self.e_z3]

    def to_json(self) -> dict:
        fact = None
        if self.e_nil is not None:
            fact = {"e_nil": self.e_nil, "e_z3": self.e_z3}
        return {
            "spec": self.spec_text,
            "order": self.order,
            "class": self.classification,
            "witness": self.witness,
            "factorization": fact,
            "millis": self.millis,
            "nil_clean": self.nil_clean,
            "weakly_nil_clean": self.weakly_nil_clean,
        }


def _idx(x) -> Optional[int]:
    return None if x is None else x.index


def census_record(spec_text: str, max_order: int = DEFAULT_ORDER_CAP,
                  timing: bool = False) -> CensusRecord:
    t0 = time.perf_counter()
    spec = parse_spec(spec_text)
    R = construct_ring(spec, max_order)
    rep = verify_theorem(R)
    cls = rep.classification
    millis = round((time.perf_counter() - t0) * 1000) if timing else 0
    # the oracle is the reference for the weakly flag; agree records whether
    # the structural verdict matched it
    return CensusRecord(
        format_spec(spec), R.order, rep.nil_clean, rep.oracle_weakly,
        cls.verdict.value, _idx(rep.oracle_witness), millis,
        _idx(cls.e_nil), _idx(cls.e_z3), rep.agree,
    )


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    return str(v)


def tsv_lines(header, rows) -> list[str]:
    return ["\t".join(header)] + ["\t".join(_cell(v) for v in row) for row in rows]


def _emit(text: str, out: Optional[str]):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from exc


def _records_text(records: list[CensusRecord], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r.to_json()) + "\n" for r in records)
    return "\n".join(tsv_lines(TSV_COLUMNS, [r.tsv_row() for r in records])) + "\n"


def _ring(args) -> Ring:
    return construct_ring(parse_spec(args.spec), args.max_order)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    rec = census_record(args.spec, args.max_order, args.timing)
    _emit(_records_text([rec], args.format), args.out)
    return EXIT_OK if rec.agree else EXIT_VIOLATION


def _census_worker(job):
    text, cap, timing = job
    return census_record(text, cap, timing)


def cmd_census(args) -> int:
    if args.family != "Zn":
        raise UsageError(f"unknown family {args.family}")
    if args.max_n < 2:
        raise UsageError("--max-n must be at least 2")
    if args.max_n > args.max_order:
        raise UsageError(f"Z{args.max_n} exceeds --max-order {args.max_order}")
    jobs = [(format_spec(Zn(n)), args.max_order, args.timing)
            for n in range(2, args.max_n + 1)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            records = list(pool.map(_census_worker, jobs))
    else:
        records = [_census_worker(j) for j in jobs]
    _emit(_records_text(records, args.format), args.out)
    return EXIT_OK if all(r.agree for r in records) else EXIT_VIOLATION


def _verify_checks(kind: str, R: Ring, args) -> tuple[str, list[dict], dict]:
    """Run one verifier; returns (status, check rows, extra JSON fields)."""
    if kind == "prop1":
        rep = verify_prop1(R)
        chain = proof_chain_scan(R, seed=args.seed)
        checks = [
            {"check": "involution_decompositions",
             "instances": sum(rep.decomposition_counts.values()),
             "violations": [f"a={a} e={e} q={q}" for a, e, q in rep.violations]},
            {"check": "proof_chain",
             "instances": chain.checked,
             "violations": [f"e={e} q={q}: {','.join(n)}" for e, q, n in chain.failures]},
        ]
        extra = {"involutions": rep.involutions,
                 "decomposition_counts": {str(a): c for a, c in rep.decomposition_counts.items()},
                 "proof_chain_exhaustive": chain.exhaustive}
    elif kind == "lemma2":
        ok, why = lemma2_applies(R)
        if not ok:
            return "skipped", [], {"reason": why}
        rep = verify_lemma2(R)
        checks = [{"check": c, "instances": 1, "violations": [] if getattr(rep, c) else [c]}
                  for c in ("trivial_idempotents", "three_cosets_of_nil",
                            "nilpotents_form_ideal", "quotient_is_z3")]
        extra = {"quotient_order": rep.quotient_order}
    elif kind == "theorem":
        rep = verify_theorem(R)
        cls = rep.classification
        checks = [{"check": "oracle_vs_structural", "instances": 1, "violations": rep.violations}]
        extra = {"oracle_weakly_nil_clean": rep.oracle_weakly,
                 "oracle_witness": _idx(rep.oracle_witness),
                 "class": cls.verdict.value,
                 "factorization": None if cls.e_nil is None else
                 {"e_nil": cls.e_nil.index, "e_z3": cls.e_z3.index}}
    elif kind == "remark":
        rep = remark_scan(R, args.scalar_bound)

        def show(i):
            return (f"a={i.a.index} e={i.e.index} q={i.q.index} "
                    f"(alpha,beta,gamma)=({i.alpha},{i.beta},{i.gamma})")

        checks = [
            {"check": "remark_instances", "instances": rep.instances,
             "violations": [show(i) for i in rep.violations]},
            {"check": "involution_reduction", "instances": rep.involution_reductions,
             "violations": [show(i) for i in rep.reduction_failures]},
        ]
        extra = {"scalar_bound": args.scalar_bound}
    else:
        raise UsageError(f"unknown verifier {kind}")
    bad = any(c["violations"] for c in checks)
    return ("violation" if bad else "ok"), checks, extra


def cmd_verify(args) -> int:
    R = _ring(args)
    spec_text = format_spec(parse_spec(args.spec))
    status, checks, extra = _verify_checks(args.kind, R, args)
    if args.format == "json":
        doc = {"kind": args.kind, "spec": spec_text, "order": R.order,
               "status": status, "checks": checks, **extra}
        text = json.dumps(doc) + "\n"
    else:
        header = ("kind", "spec", "order", "status", "check", "instances", "violations", "detail")
        if not checks:
            rows = [[args.kind, spec_text, R.order, status, "", 0, 0, extra.get("reason", "")]]
        else:
            rows = [[args.kind, spec_text, R.order, status, c["check"], c["instances"],
                     len(c["violations"]), "; ".join(c["violations"])] for c in checks]
        text = "\n".join(tsv_lines(header, rows)) + "\n"
    _emit(text, args.out)
    return EXIT_VIOLATION if status == "violation" else EXIT_OK


def cmd_radical(args) -> int:
    R = _ring(args)
    nil = upper_nilradical(R)
    q_order = quotient_by_ideal(R, nil).order
    spec_text = format_spec(parse_spec(args.spec))
    if args.format == "json":
        text = json.dumps({"spec": spec_text, "order": R.order,
                           "members": list(nil.members), "quotient_order": q_order}) + "\n"
    else:
        text = "\n".join(tsv_lines(("spec", "order", "members", "quotient_order"),
                                   [[spec_text, R.order, nil.members, q_order]])) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_decompose(args) -> int:
    R = _ring(args)
    if not 0 <= args.element < R.order:
        raise UsageError(f"element index {args.element} outside 0..{R.order - 1}")
    ds = decompositions(R.elem(args.element), Signs(args.signs))
    rows = [{"a": d.a.index, "e": d.e.index, "q": d.q.index,
             "sign": "+" if d.sign > 0 else "-"} for d in ds]
    if args.format == "json":
        text = "".join(json.dumps(r) + "\n" for r in rows)
    else:
        text = "\n".join(tsv_lines(("a", "e", "q", "sign"),
                                   [list(r.values()) for r in rows])) + "\n"
    _emit(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-order", type=int, default=DEFAULT_ORDER_CAP,
                        help="refuse rings larger than this (default %(default)s)")
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for sampled checks")

    p = argparse.ArgumentParser(prog="nilclean",
                                description="Nil-clean decompositions of small finite rings.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common],
                       help="classify one ring (oracle and structural)")
    c.add_argument("spec")
    c.add_argument("--timing", action="store_true", help="fill the millis column")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("census", parents=[common], help="classify a family of rings")
    c.add_argument("--family", default="Zn", choices=("Zn",))
    c.add_argument("--max-n", type=int, required=True)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--timing", action="store_true", help="fill the millis column")
    c.set_defaults(func=cmd_census)

    c = sub.add_parser("verify", parents=[common], help="run one verifier on a ring")
    c.add_argument("kind", choices=("prop1", "lemma2", "theorem", "remark"))
    c.add_argument("spec")
    c.add_argument("--scalar-bound", type=int, default=2)
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("radical", parents=[common], help="upper nilradical of a ring")
    c.add_argument("spec")
    c.set_defaults(func=cmd_radical)

    c = sub.add_parser("decompose", parents=[common],
                       help="all idempotent/nilpotent decompositions of an element")
    c.add_argument("spec")
    c.add_argument("element", type=int)
    c.add_argument("--signs", choices=("plus", "both"), default="plus")
    c.set_defaults(func=cmd_decompose)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RingError, UsageError) as exc:
        print(f"nilclean: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
