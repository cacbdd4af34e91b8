"""Command-line front end.

Exit status: 0 on success, 1 when an algorithm precondition fails, 2 on I/O or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Callable

from . import testkit as tk
from .acceptance import run_all
from .config import DEFAULT_TOL, Tolerance
from .errors import MatrixFormatError, QCanonError
from .littlewood import canonical_equal, canonical_form, decompose
from .qmatrix import QMatrix
from .schur import strengthened_schur
from .special import projector_canonical, square_zero_canonical

VERBS = ("canon", "similar", "schur", "projector", "squarezero", "decompose", "gadget", "selftest")
ARITY = {"canon": 1, "similar": 2, "schur": 1, "projector": 1, "squarezero": 1, "decompose": 1, "selftest": 0}
GADGETS = ("MA", "M5", "a", "b", "c", "d")
GADGET_ARITY = {"MA": 1, "M5": 4, "a": 1, "b": 1, "c": 1, "d": 1}


@dataclass
class Command:
    verb: str
    inputs: list[str] = field(default_factory=list)
    tol: Tolerance = DEFAULT_TOL
    fmt: str = "json"
    seed: int = 0
    kind: str = "MA"
    size: int = 1
    output: str | None = None
    scale: float = 1.0

    def __post_init__(self):
        if self.verb not in VERBS:
            raise ValueError(f"unknown verb {self.verb!r}")
        if self.fmt not in ("json", "text"):
            raise ValueError(f"unknown format {self.fmt!r}")
        want = ARITY.get(self.verb)
        if want is not None and len(self.inputs) != want:
            raise ValueError(f"{self.verb} takes {want} matrix file(s), got {len(self.inputs)}")


class InputError(Exception):
    """Missing file or malformed matrix."""


def _load(path: str) -> QMatrix:
    try:
        with (sys.stdin if path == "-" else open(path, encoding="utf-8")) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return QMatrix.from_json(text)
    except MatrixFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


# text renderers -------------------------------------------------------------


def _text_canon(obj: dict, r) -> str:
    lines = ["canonical matrix:", r.canon.to_text()]
    lines.append("edges: " + (" ".join(f"({l},{m})" for l, m in obj["edges"]) or "none"))
    for e in obj["log"]:
        lines.append(f"  entry ({e['entry'][0]},{e['entry'][1]}) case {e['case']}: {e['deltaR'] or '-'}")
    return "\n".join(lines)


def _run_canon(cmd: Command, mats):
    r = canonical_form(mats[0], cmd.tol)
    obj = r.to_json_obj()
    return obj, lambda: _text_canon(obj, r)


def _run_similar(cmd: Command, mats):
    a, b = mats
    if a.shape != b.shape:
        obj = {"similar": False, "canonA": None, "canonB": None}
        return obj, lambda: "similar: false (different sizes)"
    ra, rb = canonical_form(a, cmd.tol), canonical_form(b, cmd.tol)
    same = canonical_equal(ra, rb, cmd.tol)
    obj = {"similar": same, "canonA": ra.to_json_obj(), "canonB": rb.to_json_obj()}
    return obj, lambda: "\n".join([f"similar: {str(same).lower()}", "A:", _text_canon(obj["canonA"], ra),
                                   "B:", _text_canon(obj["canonB"], rb)])


def _run_schur(cmd: Command, mats):
    f = strengthened_schur(mats[0], cmd.tol)

    def text():
        pairs = ", ".join(f"{lam:.6g}^{m}" for lam, m in zip(f.lambdas, f.sizes))
        return "\n".join([f"blocks: {pairs}", "F:", f.F.to_text(), "U:", f.U.to_text()])

    return f.to_json_obj(), text


def _run_special(reduce_: Callable):
    def run(cmd: Command, mats):
        res = reduce_(mats[0], cmd.tol)
        obj = {**res.summary.to_json_obj(), "canon": res.canon.to_json_obj()}

        def text():
            s = res.summary
            bs = " ".join(f"{b:.6g}" for b in s.b_values) or "none"
            return "\n".join([f"kind: {s.kind}", f"b values: {bs}", f"[1] blocks: {s.ones}",
                              f"[0] blocks: {s.zeros}", "canonical matrix:", res.canon.to_text()])

        return obj, text

    return run


def _run_decompose(cmd: Command, mats):
    d = decompose(canonical_form(mats[0], cmd.tol), cmd.tol)
    obj = d.to_json_obj()

    def text():
        out = ["permutation: " + " ".join(map(str, obj["permutation"]))]
        for comp, b in zip(obj["components"], d.blocks):
            out += [f"component {comp}:", b.to_text()]
        return "\n".join(out)

    return obj, text


def _gadget(cmd: Command):
    want = GADGET_ARITY[cmd.kind]
    if cmd.inputs:
        if len(cmd.inputs) != want:
            raise ValueError(f"gadget {cmd.kind} takes {want} matrix file(s), got {len(cmd.inputs)}")
        blocks = [_load(p) for p in cmd.inputs]
    else:
        rng = tk.make_rng(cmd.seed)
        if cmd.kind == "a":
            blocks = [QMatrix(tk.random_qmatrix(rng, cmd.size).z1)]
        else:
            blocks = [tk.random_qmatrix(rng, cmd.size) for _ in range(want)]
    if cmd.kind == "MA":
        out = tk.gadget_MA(blocks[0])
    elif cmd.kind == "M5":
        out = tk.gadget_M5(*blocks)
    else:
        out = tk.gadget_wild(cmd.kind, blocks[0])
    if isinstance(out, tuple):
        obj = {"A": out[0].to_json_obj(), "B": out[1].to_json_obj()}
        return obj, lambda: "A:\n" + out[0].to_text() + "\nB:\n" + out[1].to_text()
    return out.to_json_obj(), out.to_text


def _selftest(cmd: Command):
    results = run_all(cmd.seed, cmd.tol, cmd.scale)
    obj = {
        "passed": all(r.passed for r in results),
        "criteria": [{"number": r.number, "name": r.name, "passed": r.passed, "trials": r.trials,
                      "failures": r.failures} for r in results],
    }
    return obj, lambda: "\n".join(r.line() for r in results)


HANDLERS = {
    "canon": _run_canon,
    "similar": _run_similar,
    "schur": _run_schur,
    "projector": _run_special(projector_canonical),
    "squarezero": _run_special(square_zero_canonical),
    "decompose": _run_decompose,
}


def run(cmd: Command, out=None, err=None) -> int:
    """Execute ``cmd``; write the report to ``out`` and diagnostics to ``err``."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    status = 0
    try:
        if cmd.verb == "gadget":
            obj, text = _gadget(cmd)
        elif cmd.verb == "selftest":
            obj, text = _selftest(cmd)
            status = 0 if obj["passed"] else 1
        else:
            mats = [_load(p) for p in cmd.inputs]
            obj, text = HANDLERS[cmd.verb](cmd, mats)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except QCanonError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return 2
    report = json.dumps(obj) if cmd.fmt == "json" else text()
    if cmd.output:
        try:
            with open(cmd.output, "w", encoding="utf-8") as fh:
                fh.write(report + "\n")
        except OSError as exc:
            print(f"error: cannot write {cmd.output}: {exc.strerror or exc}", file=err)
            return 2
    else:
        print(report, file=out)
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcanon", description="Unitary similarity of quaternion matrices.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("inputs", nargs="*", help="matrix files in the JSON matrix format ('-' for stdin)")
    p.add_argument("--eps-rank", type=float, default=DEFAULT_TOL.eps_rank)
    p.add_argument("--eps-eig", type=float, default=DEFAULT_TOL.eps_eig)
    p.add_argument("--eps-canon", type=float, default=DEFAULT_TOL.eps_canon)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")
    p.add_argument("--kind", choices=GADGETS, default="MA", help="gadget construction")
    p.add_argument("--size", type=int, default=1, help="block size of random gadget inputs")
    p.add_argument("--scale", type=float, default=1.0, help="selftest trial-count multiplier")
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = Tolerance(args.eps_rank, args.eps_eig, args.eps_canon)
        cmd = Command(args.verb, list(args.inputs), tol, args.fmt, args.seed, args.kind, args.size,
                      args.output, args.scale)
    except ValueError as exc:
        parser.error(str(exc))
    return run(cmd)


if __name__ == "__main__":
    sys.exit(main())
