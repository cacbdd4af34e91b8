"""Desk-scale acceptance suites.

Each ``criterion_*`` function runs one suite from a seed and returns a
:class:`CriterionResult`.  Graphs produced along the way are collected in a
shared :class:`SuiteContext` so that the forest and decomposition checks can
look at every canonical result.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .config import DEFAULT_TOL, Tolerance
from .decomp import rank, svd
from .littlewood import (
    CanonicalResult,
    canonical_equal,
    canonical_form,
    components,
    decompose,
    graph,
    is_forest,
)
from .qmatrix import QMatrix, adjoint_complex
from .quaternion import standardize
from .schur import check_schur_shape, conjugate_partition, strengthened_schur, weyr_characteristic
from .special import assemble_blocks, projector_canonical, square_zero_canonical
from . import testkit as tk

# tolerances pinned by the acceptance contract
INVARIANCE_ATOL = 1e-6
SCHUR_RTOL = 1e-8
SCHUR_LAMBDA_ATOL = 1e-8
B_VALUE_ATOL = 1e-8
SVD_RTOL = 1e-10
SVD_SIGMA_ATOL = 1e-8
ORACLE_WORD_LEN = 4


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    trials: int
    failures: int
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = ", ".join(f"{k}={_fmt(v)}" for k, v in self.details.items())
        return (f"[{tag}] criterion {self.number:2d} {self.name}: {self.trials} trials, "
                f"{self.failures} failures, {self.seconds:.1f}s" + (f" ({extra})" if extra else ""))


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.3g}"
    return str(v)


@dataclass
class SuiteContext:
    """Canonical results gathered across suites, for the structural checks."""

    tol: Tolerance = DEFAULT_TOL
    results: list[tuple[str, CanonicalResult]] = field(default_factory=list)
    oracle_log: dict = field(default_factory=dict)

    def canon(self, a: QMatrix, source: str) -> CanonicalResult:
        r = canonical_form(a, self.tol)
        self.results.append((source, r))
        return r


def _timed(fn: Callable[[], CriterionResult]) -> CriterionResult:
    t0 = time.perf_counter()
    res = fn()
    res.seconds = time.perf_counter() - t0
    return res


# 1 ---------------------------------------------------------------------------


def criterion_invariance(ctx: SuiteContext, seed: int = 1, trials: int = 300) -> CriterionResult:
    """Canonical form of ``U*AU`` equals that of ``A``; the trace-word oracle agrees."""
    rng = tk.make_rng(seed)
    fails = 0
    oracle_fails = 0
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(2, 7))
        a = tk.random_nonderogatory(rng, n)
        u = tk.haar_unitary(n, rng)
        b = u.H @ a @ u
        try:
            ra, rb = ctx.canon(a, "invariance"), ctx.canon(b, "invariance")
        except Exception:
            fails += 1
            continue
        d = float((ra.canon - rb.canon).entry_norms().max())
        worst = max(worst, d)
        if d > INVARIANCE_ATOL or ra.cases != rb.cases or ra.edge_set != rb.edge_set:
            fails += 1
        if not tk.trace_word_oracle(a, b, ORACLE_WORD_LEN):
            oracle_fails += 1
    ctx.oracle_log["suite1_oracle_false"] = oracle_fails
    ctx.oracle_log["suite1_trials"] = trials
    return CriterionResult(1, "canonical invariance", fails == 0, trials, fails, details={"worst": worst})


# 2 ---------------------------------------------------------------------------


def _planted_pair(rng: np.random.Generator, n: int) -> tuple[QMatrix, QMatrix]:
    """Same triangular form except for the modulus of the first superdiagonal entry."""
    t = tk.random_triangular(rng, n)
    q = t[0, 1]
    if abs(q) < 0.5:
        q = tk.random_entry(rng, "general")
        t = t.with_entry(0, 1, q)
    t2 = t.with_entry(0, 1, q * 1.5)
    u, v = tk.haar_unitary(n, rng), tk.haar_unitary(n, rng)
    return u.H @ t @ u, v.H @ t2 @ v


def criterion_separation(ctx: SuiteContext, seed: int = 2, trials: int = 100) -> CriterionResult:
    """Non-similar pairs are never declared similar; the oracle never contradicts a verdict."""
    rng = tk.make_rng(seed)
    fails = 0
    both_false = 0
    contradictions = 0
    for k in range(trials):
        n = int(rng.integers(2, 7))
        if k % 2 == 0:
            a, b = tk.random_nonderogatory(rng, n), tk.random_nonderogatory(rng, n)
        else:
            a, b = _planted_pair(rng, n)
        try:
            ra, rb = ctx.canon(a, "separation"), ctx.canon(b, "separation")
        except Exception:
            fails += 1
            continue
        same = canonical_equal(ra, rb, ctx.tol)
        oracle = tk.trace_word_oracle(a, b, ORACLE_WORD_LEN)
        if same:
            fails += 1
            if not oracle:
                contradictions += 1
        elif not oracle:
            both_false += 1
    ctx.oracle_log["suite2_both_false"] = both_false
    ctx.oracle_log["suite2_contradictions"] = contradictions
    ctx.oracle_log["suite2_trials"] = trials
    return CriterionResult(2, "canonical separation", fails == 0, trials, fails)


# 3 ---------------------------------------------------------------------------


def criterion_schur(ctx: SuiteContext, seed: int = 3, trials: int = 200) -> CriterionResult:
    rng = tk.make_rng(seed)
    fails = 0
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(1, 7))
        a, lams, weyrs = tk.random_real_spectrum(rng, n)
        try:
            f = strengthened_schur(a, ctx.tol)
            w = tk.haar_unitary(n, rng)
            g = strengthened_schur(w.H @ a @ w, ctx.tol)
        except Exception:
            fails += 1
            continue
        resid = (f.U.H @ a @ f.U - f.F).norm()
        worst = max(worst, resid / max(a.norm(), np.finfo(float).tiny))
        planted = tuple(p for wy in weyrs for p in wy.parts)
        ok = (
            resid <= SCHUR_RTOL * a.norm()
            and check_schur_shape(f.F, f.lambdas, f.sizes)
            and f.sizes == planted == g.sizes
            and np.allclose(f.lambdas, g.lambdas, rtol=0, atol=SCHUR_LAMBDA_ATOL)
        )
        fails += not ok
    return CriterionResult(3, "strengthened Schur", fails == 0, trials, fails, details={"worst_rel_resid": worst})


# 4 ---------------------------------------------------------------------------


def criterion_weyr(ctx: SuiteContext, seed: int = 4, trials: int = 50) -> CriterionResult:
    rng = tk.make_rng(seed)
    fails = 0
    for _ in range(trials):
        n = int(rng.integers(1, 7))
        a, segre = tk.planted_nilpotent(rng, n)
        r = conjugate_partition(segre).parts
        ok = all(rank(a ** l, ctx.tol) == sum(r[l:]) for l in range(1, len(r) + 1))
        ok = ok and weyr_characteristic(a, 0.0, ctx.tol).parts == r
        fails += not ok
    return CriterionResult(4, "Weyr rank identity", fails == 0, trials, fails)


# 5 ---------------------------------------------------------------------------


def criterion_special(ctx: SuiteContext, seed: int = 5, trials: int = 200) -> CriterionResult:
    rng = tk.make_rng(seed)
    fails = 0
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(2, 7))
        for make, reduce_, square in (
            (tk.random_projector, projector_canonical, lambda c: c @ c == c),
            (tk.random_square_zero, square_zero_canonical, lambda c: c @ c == QMatrix.zeros(c.rows)),
        ):
            a, planted = make(rng, n)
            try:
                got = reduce_(a, ctx.tol).summary
            except Exception:
                fails += 1
                continue
            canon = assemble_blocks(got)
            ok = (
                len(got.b_values) == len(planted.b_values)
                and (got.ones, got.zeros) == (planted.ones, planted.zeros)
                and bool(square(canon))
            )
            if ok and got.b_values:
                err = float(np.max(np.abs(np.subtract(got.b_values, planted.b_values))))
                worst = max(worst, err)
                ok = err <= B_VALUE_ATOL
            fails += not ok
    return CriterionResult(5, "projector and square-zero forms", fails == 0, 2 * trials, fails,
                           details={"worst_b_err": worst})


# 7 ---------------------------------------------------------------------------


def criterion_realizability(ctx: SuiteContext, seed: int = 7, trials: int = 50) -> CriterionResult:
    rng = tk.make_rng(seed)
    fails = 0
    for _ in range(trials):
        n = int(rng.integers(1, 7))
        edges = tk.random_forest(rng, n)
        w = tk.forest_witness(n, edges)
        try:
            r = ctx.canon(w, "realizability")
        except Exception:
            fails += 1
            continue
        ok = r.canon.allclose(w, ctx.tol.eps_canon * (1.0 + w.norm())) and r.edge_set == frozenset(edges)
        fails += not ok
    return CriterionResult(7, "forest realizability", fails == 0, trials, fails)


# 9 ---------------------------------------------------------------------------


def criterion_gadget(ctx: SuiteContext, seed: int = 9, trials: int = 100) -> CriterionResult:
    rng = tk.make_rng(seed)
    fails = 0
    positives = 0
    for k in range(trials):
        a = tk.random_quaternion(rng)
        if k % 2 == 0:
            s = tk.random_quaternion(rng)
            b = s.inverse() * a * s
        else:
            b = tk.random_quaternion(rng)
        ma, mb = tk.gadget_MA(a), tk.gadget_MA(b)
        try:
            ra, rb = ctx.canon(ma, "gadget"), ctx.canon(mb, "gadget")
        except Exception:
            fails += 1
            continue
        verdict = canonical_equal(ra, rb, ctx.tol)
        expected = abs(standardize(a) - standardize(b)) <= ctx.tol.eps_canon * (1.0 + abs(a))
        positives += verdict
        fails += verdict != expected
    return CriterionResult(9, "gadget M_a", fails == 0, trials, fails, details={"similar": positives})


# 10 --------------------------------------------------------------------------


def criterion_svd(ctx: SuiteContext, seed: int = 10, trials: int = 200) -> CriterionResult:
    rng = tk.make_rng(seed)
    fails = 0
    worst_r = worst_s = 0.0
    for _ in range(trials):
        m, n = (int(x) for x in rng.integers(1, 7, 2))
        a = tk.random_qmatrix(rng, m, n)
        res = svd(a, ctx.tol)
        rr = (a - res.reconstruct()).norm() / a.norm()
        ref = np.linalg.svd(adjoint_complex(a), compute_uv=False)
        got = np.sort(np.repeat(res.sigma, 2))[::-1]
        ds = float(np.max(np.abs(got - ref))) if len(got) == len(ref) else np.inf
        worst_r, worst_s = max(worst_r, rr), max(worst_s, ds)
        fails += not (rr <= SVD_RTOL and ds <= SVD_SIGMA_ATOL)
    return CriterionResult(10, "quaternion SVD", fails == 0, trials, fails,
                           details={"worst_rel_recon": worst_r, "worst_sigma": worst_s})


# structural checks over everything gathered so far --------------------------------


def criterion_forest(ctx: SuiteContext) -> CriterionResult:
    bad = sum(not is_forest(r.canon.rows, graph(r)) for _, r in ctx.results)
    return CriterionResult(6, "forest property", bad == 0 and bool(ctx.results), len(ctx.results), bad)


def _exactly_block_diagonal(r: CanonicalResult, d) -> bool:
    n = r.canon.rows
    mask = np.ones((n, n), dtype=bool)
    k = 0
    for c in d.components:
        mask[k:k + len(c), k:k + len(c)] = False
        k += len(c)
    return not np.any(d.permuted.entry_norms()[mask] != 0.0)


def criterion_decomposition(ctx: SuiteContext) -> CriterionResult:
    fails = 0
    blocks = 0
    for _, r in ctx.results:
        try:
            d = decompose(r, ctx.tol)
        except Exception:
            fails += 1
            continue
        ok = _exactly_block_diagonal(r, d)
        for b in d.blocks:
            blocks += 1
            rb = canonical_form(b, ctx.tol)
            ok = ok and rb.canon.allclose(b, ctx.tol.eps_canon * (1.0 + b.norm()))
            ok = ok and len(components(b.rows, graph(rb))) == 1
        fails += not ok
    return CriterionResult(8, "decomposition", fails == 0 and bool(ctx.results), len(ctx.results), fails,
                           details={"blocks": blocks})


def criterion_oracle(ctx: SuiteContext) -> CriterionResult:
    s1 = ctx.oracle_log.get("suite1_oracle_false")
    contra = ctx.oracle_log.get("suite2_contradictions")
    if s1 is None or contra is None:
        raise RuntimeError("run suites 1 and 2 before the oracle cross-check")
    bad = s1 + contra
    checks = ctx.oracle_log["suite1_trials"] + ctx.oracle_log["suite2_trials"]
    return CriterionResult(11, "oracle cross-check", bad == 0, checks, bad,
                           details={"suite1_oracle_false": s1, "suite2_both_false": ctx.oracle_log["suite2_both_false"]})


# driver ----------------------------------------------------------------------


def run_all(seed: int = 0, tol: Tolerance = DEFAULT_TOL, scale: float = 1.0) -> list[CriterionResult]:
    """Run every criterion; ``scale`` multiplies the trial counts (for quick runs)."""
    ctx = SuiteContext(tol)
    n = lambda k: max(2, int(round(k * scale)))  # noqa: E731
    out = [
        _timed(lambda: criterion_invariance(ctx, seed + 1, n(300))),
        _timed(lambda: criterion_separation(ctx, seed + 2, n(100))),
        _timed(lambda: criterion_schur(ctx, seed + 3, n(200))),
        _timed(lambda: criterion_weyr(ctx, seed + 4, n(50))),
        _timed(lambda: criterion_special(ctx, seed + 5, n(200))),
        _timed(lambda: criterion_realizability(ctx, seed + 7, n(50))),
        _timed(lambda: criterion_gadget(ctx, seed + 9, n(100))),
        _timed(lambda: criterion_svd(ctx, seed + 10, n(200))),
        _timed(lambda: criterion_forest(ctx)),
        _timed(lambda: criterion_decomposition(ctx)),
        _timed(lambda: criterion_oracle(ctx)),
    ]
    return sorted(out, key=lambda r: r.number)

