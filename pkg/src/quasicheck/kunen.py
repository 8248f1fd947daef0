"""Per-lemma verification pipeline for N1 quasigroups.

verify_kunen walks a fixed list of step checks over a concrete model and
records a pass/fail verdict with a witness for every step; no step ever
raises on semantic failure, so the report doubles as a counterexample
microscope on models where a hypothesis is weakened.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .collapse import collapse_check, generated_partition, left_translations
from .identities import builtin_n1, holds
from .magma import (
    CayleyTable,
    EndoMap,
    Quasigroup,
    analyze_endomap,
    check_latin,
    identity_element,
    j_map,
    k_map,
)

STEP_ORDER = (
    "J_EQ_K",
    "EQ1_TWO_SIDED",
    "VALUE_IDEMPOTENT",
    "MAP_IDEMPOTENT",
    "FIX_EQ_IM",
    "STAR_STEP",
    "RIGHT_INVOLUTION",
    "LEFT_INVARIANCE",
    "COEQ_TERMINAL",
    "J_CONSTANT",
    "IDENTITY_TWO_SIDED",
)


@dataclass(frozen=True)
class StepResult:
    step_id: str
    passed: bool
    witness: Optional[dict[str, int]] = None

    def to_dict(self) -> dict:
        return {"step_id": self.step_id, "passed": self.passed, "witness": self.witness}


def check_right_involution(q: Quasigroup) -> StepResult:
    """For all x, y: (x * j(y)) * j(y) = x, i.e. each R_{j(y)} is an involution."""
    e = q.table.entries
    j = j_map(q).values
    for x in range(q.order):
        for y in range(q.order):
            u = j[y]
            if e[e[x][u]][u] != x:
                return StepResult("RIGHT_INVOLUTION", False, {"x": x, "y": y})
    return StepResult("RIGHT_INVOLUTION", True)


def check_left_invariance(q: Quasigroup) -> StepResult:
    """For all a, x: j(a*x) = j(x)."""
    e = q.table.entries
    j = j_map(q).values
    for a in range(q.order):
        for x in range(q.order):
            if j[e[a][x]] != j[x]:
                return StepResult("LEFT_INVARIANCE", False, {"a": a, "x": x})
    return StepResult("LEFT_INVARIANCE", True)


def check_star_step(q: Quasigroup) -> StepResult:
    """For idempotent u in the image of j: ((x*u)*u)*u = x*u for all x.

    Also cancels the common right factor via the inverse of the (bijective)
    right translation R_u and checks the conclusion (x*u)*u = x, which must
    agree with the right-involution check restricted to such u.
    """
    n = q.order
    e = q.table.entries
    j = j_map(q).values
    for u in sorted(set(j)):
        if e[u][u] != u:
            continue
        # inverse of R_u: inv[t*u] = t
        inv = [0] * n
        for t in range(n):
            inv[e[t][u]] = t
        for x in range(n):
            xu = e[x][u]
            if e[e[xu][u]][u] != xu:
                return StepResult("STAR_STEP", False, {"x": x, "u": u})
            if inv[xu] != x or e[xu][u] != x:
                return StepResult("STAR_STEP", False, {"x": x, "u": u})
    return StepResult("STAR_STEP", True)


def _check_j_eq_k(q: Quasigroup, j: EndoMap, k: EndoMap) -> StepResult:
    for x in range(q.order):
        if j.values[x] != k.values[x]:
            return StepResult("J_EQ_K", False, {"x": x})
    return StepResult("J_EQ_K", True)


def _check_eq1(q: Quasigroup, j: EndoMap) -> StepResult:
    e = q.table.entries
    for x in range(q.order):
        if e[x][j.values[x]] != x or e[j.values[x]][x] != x:
            return StepResult("EQ1_TWO_SIDED", False, {"x": x})
    return StepResult("EQ1_TWO_SIDED", True)


def _check_value_idempotent(q: Quasigroup, j: EndoMap) -> StepResult:
    e = q.table.entries
    for x in range(q.order):
        u = j.values[x]
        if e[u][u] != u:
            return StepResult("VALUE_IDEMPOTENT", False, {"x": x})
    return StepResult("VALUE_IDEMPOTENT", True)


def _check_map_idempotent(j: EndoMap) -> StepResult:
    for x in range(j.order):
        if j.values[j.values[x]] != j.values[x]:
            return StepResult("MAP_IDEMPOTENT", False, {"x": x})
    return StepResult("MAP_IDEMPOTENT", True)


def _check_fix_eq_im(j: EndoMap) -> StepResult:
    a = analyze_endomap(j)
    if a.fixed_points == a.image:
        return StepResult("FIX_EQ_IM", True)
    x = min(a.fixed_points.symmetric_difference(a.image))
    return StepResult("FIX_EQ_IM", False, {"x": x})


def _check_coeq_terminal(q: Quasigroup) -> StepResult:
    part = generated_partition(q.order, left_translations(q))
    if part.num_blocks == 1:
        return StepResult("COEQ_TERMINAL", True)
    other = next(x for x in range(q.order) if part.block_id[x] != part.block_id[0])
    return StepResult("COEQ_TERMINAL", False, {"x": 0, "y": other})


def _check_j_constant(q: Quasigroup, j: EndoMap) -> StepResult:
    v = collapse_check(j, left_translations(q))
    if v.is_constant and v.idempotent_ok and v.transitivity_ok and v.coequalization_ok:
        return StepResult("J_CONSTANT", True)
    if not v.coequalization_ok:
        i, x = v.coequalization_witness
        return StepResult("J_CONSTANT", False, {"a": i, "x": x})
    if not v.transitivity_ok:
        x, y = v.transitivity_witness
        return StepResult("J_CONSTANT", False, {"x": x, "y": y})
    x = next(z for z in range(q.order) if j.values[z] != j.values[0])
    return StepResult("J_CONSTANT", False, {"x": x})


def _check_identity_two_sided(q: Quasigroup, j: EndoMap) -> StepResult:
    scanned = identity_element(q.table)
    jv = j.values[0] if len(set(j.values)) == 1 else None
    if jv is not None and scanned is not None and jv == scanned:
        return StepResult("IDENTITY_TWO_SIDED", True)
    if jv is None:
        x = next(z for z in range(q.order) if j.values[z] != j.values[0])
        return StepResult("IDENTITY_TWO_SIDED", False, {"x": x})
    if scanned is None:
        x = next(z for z in range(q.order) if q.table.entries[jv][z] != z)
        return StepResult("IDENTITY_TWO_SIDED", False, {"x": x})
    return StepResult("IDENTITY_TWO_SIDED", False, {"j": jv, "e": scanned})


def run_steps(q: Quasigroup) -> tuple[StepResult, ...]:
    """Evaluate every pipeline step on a quasigroup, without short-circuiting."""
    j = j_map(q)
    k = k_map(q)
    return (
        _check_j_eq_k(q, j, k),
        _check_eq1(q, j),
        _check_value_idempotent(q, j),
        _check_map_idempotent(j),
        _check_fix_eq_im(j),
        check_star_step(q),
        check_right_involution(q),
        check_left_invariance(q),
        _check_coeq_terminal(q),
        _check_j_constant(q, j),
        _check_identity_two_sided(q, j),
    )


@dataclass(frozen=True)
class KunenReport:
    model_order: int
    is_quasigroup: bool
    latin_witness: Optional[dict] = None
    n1_holds: Optional[bool] = None
    n1_witness: Optional[dict[str, int]] = None
    steps: tuple[StepResult, ...] = ()
    identity_element: Optional[int] = None
    is_loop: bool = False

    @property
    def all_steps_passed(self) -> bool:
        return bool(self.steps) and all(s.passed for s in self.steps)

    def to_dict(self) -> dict:
        return {
            "model_order": self.model_order,
            "is_quasigroup": self.is_quasigroup,
            "latin_witness": self.latin_witness,
            "n1_holds": self.n1_holds,
            "n1_witness": self.n1_witness,
            "steps": [s.to_dict() for s in self.steps],
            "identity_element": self.identity_element,
            "is_loop": self.is_loop,
        }


def verify_kunen(
    t: CayleyTable, force_n1: bool = False, force_steps: bool = False
) -> KunenReport:
    """Run the full pipeline on a model.

    Steps are populated only for N1 quasigroups; force_n1 additionally
    evaluates N1 (and the identity scan) on a non-Latin table, and
    force_steps runs the step list on a quasigroup even when N1 fails
    (useful for localizing which step breaks on a near-miss model).
    """
    latin = check_latin(t)
    if not latin.is_quasigroup:
        w = latin.witness
        lw = {"kind": w.kind, "index": w.index, "value": w.value}
        if not force_n1:
            return KunenReport(t.order, False, latin_witness=lw)
        v = holds(t, builtin_n1())
        e = identity_element(t)
        return KunenReport(
            t.order,
            False,
            latin_witness=lw,
            n1_holds=v.holds,
            n1_witness=v.witness,
            identity_element=e,
            is_loop=False,
        )

    v = holds(t, builtin_n1())
    e = identity_element(t)
    if not v.holds and not force_steps:
        return KunenReport(
            t.order, True, n1_holds=False, n1_witness=v.witness,
            identity_element=e, is_loop=e is not None,
        )

    q = Quasigroup.from_table(t)
    steps = run_steps(q)
    return KunenReport(
        t.order,
        True,
        n1_holds=v.holds,
        n1_witness=v.witness,
        steps=steps,
        identity_element=e,
        is_loop=e is not None,
    )


@dataclass
class ScanSummary:
    """Outcome of running the pipeline over every Latin square of one order."""

    order: int
    latin_total: int = 0
    n1_reports: list[KunenReport] = field(default_factory=list)
    violations: list[KunenReport] = field(default_factory=list)

    @property
    def n1_total(self) -> int:
        return len(self.n1_reports)

    @property
    def loop_total(self) -> int:
        return sum(1 for r in self.n1_reports if r.is_loop)


def exhaustive_scan(order: int) -> ScanSummary:
    """Verify the whole theorem over every Latin square of the given order."""
    from .search import SearchSpec, enumerate_tables

    n1 = builtin_n1()
    summary = ScanSummary(order)
    for t in enumerate_tables(SearchSpec(order)):
        summary.latin_total += 1
        if not holds(t, n1).holds:
            continue
        report = verify_kunen(t)
        summary.n1_reports.append(report)
        if not (report.all_steps_passed and report.is_loop):
            summary.violations.append(report)
    return summary
