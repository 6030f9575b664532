"""Unknotting plans, certificates and the dictionary-order search for U.

A plan names chords to virtualize and chords to change.  It is certified when
the resulting diagram reaches the trivial knot (or the unlink with the same
number of components) by classical moves, and the certificate carries that
move trace so anybody can replay it.

Costs ``(n, m)`` are compared in dictionary order.  ``search_min`` walks the
costs in that order and returns the first one with a certified plan, next to
the invariant lower bound.  Both describe the given diagram; the value is a
knot invariant only when the two meet.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .families import ExpectedProfile, FamilySpec, d_qr_regime, generate, single_virtualization_scan
from .gauss import GaussDiagram, crossing_change, serialize
from .invariants import (
    UnknottingIndex,
    component_writhe_vectors,
    ell_invariant,
    linking_number,
    lower_bound_knot,
    lower_bound_link,
    minimal_crossing_check,
    span_total,
    writhe_vector,
)
from .moves import Budget, MoveTrace, is_trivial, trace_to_json

__all__ = [
    "UnknottingPlan",
    "UnknottingCertificate",
    "IndexInterval",
    "SearchReport",
    "VirtualizationBound",
    "TheoremReport",
    "TheoremMismatch",
    "SEARCH_BUDGET",
    "apply_plan",
    "certify",
    "search_min",
    "virtualization_lower_bound",
    "verify_theorem",
]

#: budget for each plan tried inside ``search_min``; most candidates are
#: settled by greedy reduction, and the rest would otherwise dominate run time
SEARCH_BUDGET = Budget(r2_expand_depth=1, r3_cap=64, frontier_cap=2_000)


@dataclass(frozen=True)
class UnknottingPlan:
    virtualize: frozenset[int] = frozenset()
    change: frozenset[int] = frozenset()

    def __init__(self, virtualize: Iterable[int] = (), change: Iterable[int] = ()):
        object.__setattr__(self, "virtualize", frozenset(virtualize))
        object.__setattr__(self, "change", frozenset(change))
        if self.virtualize & self.change:
            raise ValueError(f"chords {sorted(self.virtualize & self.change)} are both virtualized and changed")

    @property
    def cost(self) -> UnknottingIndex:
        return UnknottingIndex(len(self.virtualize), len(self.change))

    def check(self, d: GaussDiagram) -> None:
        missing = (self.virtualize | self.change) - set(d.chord_ids)
        if missing:
            raise ValueError(f"plan names chords {sorted(missing)} absent from the diagram")

    def to_json(self) -> dict:
        return {"virtualize": sorted(self.virtualize), "change": sorted(self.change)}

    @classmethod
    def from_json(cls, obj: dict) -> "UnknottingPlan":
        return cls(obj.get("virtualize", ()), obj.get("change", ()))


def apply_plan(d: GaussDiagram, plan: UnknottingPlan) -> GaussDiagram:
    """Delete the virtualized chords and flip the changed ones."""
    plan.check(d)
    out = d.without(plan.virtualize)
    for c in sorted(plan.change):
        out = crossing_change(out, c)
    return out


@dataclass(frozen=True)
class UnknottingCertificate:
    source: GaussDiagram
    plan: UnknottingPlan
    trace: MoveTrace

    @property
    def cost(self) -> UnknottingIndex:
        return self.plan.cost

    def verify(self) -> bool:
        """Replay plan and moves from scratch and check the end is trivial."""
        try:
            start = apply_plan(self.source, self.plan)
        except ValueError:
            return False
        if start.canonical_key != self.trace.initial.canonical_key:
            return False
        if not self.trace.replays():
            return False
        end = self.trace.final
        return end.num_chords == 0 and end.num_components == self.source.num_components

    def to_json(self) -> dict:
        return {
            "source": serialize(self.source, canonical=False),
            "plan": self.plan.to_json(),
            "cost": self.cost.to_json(),
            "trace": trace_to_json(self.trace),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "UnknottingCertificate":
        from .gauss import parse_gauss_code
        from .moves import trace_from_json

        return cls(parse_gauss_code(obj["source"]), UnknottingPlan.from_json(obj["plan"]),
                   trace_from_json(obj["trace"]))


def certify(d: GaussDiagram, plan: UnknottingPlan, budget: Budget | None = None) -> UnknottingCertificate | None:
    """Certificate for ``plan`` on ``d``, or ``None`` when the search is inconclusive."""
    result = is_trivial(apply_plan(d, plan), budget)
    if not result.trivial:
        return None
    cert = UnknottingCertificate(d, plan, result.trace)
    if not cert.verify():  # pragma: no cover - would be a move engine bug
        raise AssertionError("emitted certificate does not replay")
    return cert


@dataclass(frozen=True)
class IndexInterval:
    lower: UnknottingIndex
    upper: UnknottingIndex | None

    def __post_init__(self):
        if self.upper is not None and self.upper < self.lower:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    def to_json(self) -> dict:
        return {"lower": self.lower.to_json(), "upper": self.upper.to_json() if self.upper else None}

    def __str__(self) -> str:
        return f"[{self.lower},{self.upper if self.upper else '?'}]"


@dataclass(frozen=True)
class SearchReport:
    """Outcome of ``search_min``.

    ``level`` is ``"knot"`` when the invariant lower bound meets the certified
    upper bound and ``"diagram"`` otherwise.  ``skipped`` lists plans whose
    triviality search was inconclusive; if it is non-empty the upper bound
    may be too high.
    """

    interval: IndexInterval
    certificate: UnknottingCertificate | None
    skipped: tuple[UnknottingPlan, ...] = ()
    plans_tried: int = 0
    plans_pruned: int = 0
    cap_exceeded: bool = False

    @property
    def level(self) -> str:
        return "knot" if self.interval.exact else "diagram"

    @property
    def conclusive(self) -> bool:
        return self.certificate is not None and not self.skipped

    def to_json(self) -> dict:
        return {
            "interval": self.interval.to_json(),
            "level": self.level,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "skipped_inconclusive": [p.to_json() for p in self.skipped],
            "plans_tried": self.plans_tried,
            "plans_pruned": self.plans_pruned,
            "cap_exceeded": self.cap_exceeded,
        }


def _lower(d: GaussDiagram) -> UnknottingIndex:
    return lower_bound_knot(d) if d.num_components == 1 else lower_bound_link(d)


def _looks_trivial(d: GaussDiagram) -> bool:
    # every trivial diagram has these invariants zero
    if d.num_components == 1:
        return writhe_vector(d).is_zero()
    if any(not w.is_zero() for w in component_writhe_vectors(d)):
        return False
    pairs = itertools.combinations(range(d.num_components), 2)
    return span_total(d).total == 0 and all(linking_number(d, i, j) == 0 for i, j in pairs)


def _costs(total: int, max_n: int | None, max_m: int | None) -> Iterator[tuple[int, int]]:
    for n in range(0, total + 1 if max_n is None else min(total, max_n) + 1):
        for m in range(0, total - n + 1 if max_m is None else min(total - n, max_m) + 1):
            yield n, m


def _plans(d: GaussDiagram, n: int, m: int) -> Iterator[UnknottingPlan]:
    ids = d.chord_ids
    for v in itertools.combinations(ids, n):
        rest = [c for c in ids if c not in v]
        for c in itertools.combinations(rest, m):
            yield UnknottingPlan(v, c)


def search_min(
    d: GaussDiagram,
    budget: Budget | None = None,
    *,
    max_n: int | None = None,
    max_m: int | None = None,
    cap: int = 14,
    threads: int = 1,
    prune: bool = True,
) -> SearchReport:
    """Least cost, in dictionary order, of a plan that certifiably unknots ``d``.

    Within a cost, plans are tried in lexicographic order of their sorted
    chord tuples and the first certified one wins.  With ``prune`` a plan is
    skipped without search when the resulting diagram has a nonzero
    invariant that every trivial diagram lacks; this never discards a
    certifiable plan.
    """
    budget = budget or SEARCH_BUDGET
    lower = _lower(d)
    if d.num_chords > cap:
        return SearchReport(IndexInterval(lower, None), None, cap_exceeded=True)
    tried = pruned = 0
    skipped: list[UnknottingPlan] = []

    def attempt(plan: UnknottingPlan):
        target = apply_plan(d, plan)
        if prune and not _looks_trivial(target):
            return plan, "pruned", None
        cert = certify(d, plan, budget)
        return plan, ("certified" if cert else "inconclusive"), cert

    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for n, m in _costs(d.num_chords, max_n, max_m):
            plans = list(_plans(d, n, m))
            results = pool.map(attempt, plans) if pool else map(attempt, plans)
            winner = None
            for plan, status, cert in results:
                tried += 1
                if status == "pruned":
                    pruned += 1
                elif status == "inconclusive":
                    skipped.append(plan)
                elif winner is None:
                    winner = cert
                    if pool is None:
                        break
            if winner is not None:
                upper = winner.cost
                return SearchReport(IndexInterval(lower, upper), winner, tuple(skipped), tried, pruned)
    finally:
        if pool:
            pool.shutdown()
    return SearchReport(IndexInterval(lower, None), None, tuple(skipped), tried, pruned)


# ---------------------------------------------------------------------------
# lower bound through virtualization subsets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VirtualizationBound:
    """Lower bound on the cost of any plan for this diagram.

    Crossing changes keep ``J_n - J_{-n}`` fixed, so a plan must first
    virtualize a set S making the writhe vector symmetric, and then needs at
    least half of ``sum |J_n|`` of what is left in crossing changes.  ``value``
    is ``(t, m)`` with t the least such |S| and m the least half-sum over those S;
    ``witness`` is one S achieving it.
    """

    value: UnknottingIndex
    witness: tuple[int, ...]
    subsets_checked: int


def virtualization_lower_bound(d: GaussDiagram, max_t: int | None = None,
                               cap: int = 2_000_000) -> VirtualizationBound:
    if d.num_components != 1:
        raise ValueError("virtualization bound is defined for knot diagrams")
    ids = d.chord_ids
    limit = len(ids) if max_t is None else min(max_t, len(ids))
    checked = 0
    for t in range(limit + 1):
        best: tuple[int, tuple[int, ...]] | None = None
        for s in itertools.combinations(ids, t):
            checked += 1
            if checked > cap:
                raise RuntimeError(f"virtualization bound needs more than {cap} subsets")
            w = writhe_vector(d.without(s))
            if w.is_symmetric():
                half = (w.abs_sum() + 1) // 2
                if best is None or half < best[0]:
                    best = (half, s)
        if best is not None:
            return VirtualizationBound(UnknottingIndex(t, best[0]), best[1], checked)
    raise RuntimeError("no virtualization set within max_t gives a symmetric writhe vector")


# ---------------------------------------------------------------------------
# checking the family theorems
# ---------------------------------------------------------------------------


class TheoremMismatch(AssertionError):
    def __init__(self, report: "TheoremReport"):
        super().__init__(report.summary())
        self.report = report


@dataclass(frozen=True)
class TheoremReport:
    spec: FamilySpec
    claimed: UnknottingIndex
    invariant_lower: UnknottingIndex
    lower: UnknottingIndex
    upper: UnknottingIndex | None
    certificate: UnknottingCertificate | None
    checks: dict[str, tuple[object, object]] = field(default_factory=dict)
    regime: str | None = None

    @property
    def failed_checks(self) -> list[str]:
        return [k for k, (want, got) in self.checks.items() if want != got]

    @property
    def passed(self) -> bool:
        return self.lower == self.claimed and self.upper == self.claimed and not self.failed_checks

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        parts = [f"{status} {self.spec}: claimed U={self.claimed}, lower={self.lower}, upper={self.upper}"]
        for k in self.failed_checks:
            want, got = self.checks[k]
            parts.append(f"  {k}: expected {want}, got {got}")
        return "\n".join(parts)

    def to_json(self) -> dict:
        return {
            "family": self.spec.to_json(),
            "passed": self.passed,
            "claimed": self.claimed.to_json(),
            "invariant_lower": self.invariant_lower.to_json(),
            "lower": self.lower.to_json(),
            "upper": self.upper.to_json() if self.upper else None,
            "regime": self.regime,
            "checks": {k: {"expected": _jsonable(w), "got": _jsonable(g), "ok": w == g}
                       for k, (w, g) in self.checks.items()},
            "certificate": self.certificate.to_json() if self.certificate else None,
        }


def _jsonable(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    return x


def _family_checks(spec: FamilySpec, d: GaussDiagram, prof: ExpectedProfile) -> dict:
    checks: dict[str, tuple[object, object]] = {}
    name, v = spec.name, spec.params
    if name == "K_upper":
        w = writhe_vector(d)
        m, p = v["m"], v["p"]
        checks["J_{p-1}"] = (-m, w[p - 1])
        checks["J_{1-p}"] = (-m, w[1 - p])
    elif name == "K_lower":
        w = writhe_vector(d)
        m, p = v["m"], v["p"]
        for key, n, want in (("J_{-1}", -1, 1 - p), ("J_{p-1}", p - 1, -1), ("J_p", p, -m), ("J_{-p}", -p, -m)):
            checks[key] = (want, w[n])
        rows = single_virtualization_scan(spec)
        checks["scan"] = (len(rows), sum(r.matches for r in rows))
    elif name in ("D_npm", "D_npm_qrt") and prof.minimal:
        report = minimal_crossing_check(d)
        checks["minimal_crossing"] = (True, report.minimal)
        checks["crossing_count"] = (v["n"] + 2 * v["m"] + v["p"] - v["q"], d.num_chords)
        checks["sum_abs_J"] = (d.num_chords, writhe_vector(d).abs_sum())
    elif name == "LinkFamily":
        checks["span"] = (v["n"], span_total(d).total)
        checks["ell"] = (0, ell_invariant(d).total)
    return checks


def verify_theorem(spec: FamilySpec | str, budget: Budget | None = None, *, strict: bool = True,
                   **params: int) -> TheoremReport:
    """Recompute both bounds for a family member and compare with its claimed U.

    The lower bound is the invariant bound for links and the virtualization
    bound for knots; the upper bound is the certified cost of the family's
    plan.  With ``strict`` any disagreement raises ``TheoremMismatch``.
    """
    if isinstance(spec, str):
        spec = FamilySpec(spec, **params)
    d, prof = generate(spec)
    if prof.unknotting_index is None:
        raise ValueError(f"{spec} has no claimed unknotting index")
    if d.num_components == 1:
        inv_lower = lower_bound_knot(d)
        lower = virtualization_lower_bound(d).value
    else:
        inv_lower = lower = lower_bound_link(d)
    virt, change = prof.plan_chords()
    cert = certify(d, UnknottingPlan(virt, change), budget)
    upper = cert.cost if cert else None
    regime = None
    if spec.name == "D_qr":
        regime = d_qr_regime(spec["n"], spec["q"], spec["r"])
    report = TheoremReport(spec, prof.unknotting_index, inv_lower, lower, upper, cert,
                           _family_checks(spec, d, prof), regime)
    if strict and not report.passed:
        raise TheoremMismatch(report)
    return report
