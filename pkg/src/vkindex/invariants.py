"""Index-type invariants of virtual knots and links and the bounds they give.

Labeling convention (Cheng coloring).  Walking along a component, the arc label
changes at every endpoint: by ``-sign`` when passing over a crossing and by
``+sign`` when passing under it.  At a crossing the strand running from
bottom-left to top-right therefore loses one and the other strand gains one,
whichever of them is on top.  With ``a`` the incoming label of the first strand
and ``b`` that of the second, the index of the crossing is ``sign * (a - b - 1)``,
which in endpoint terms is::

    index(c) = label_in(over end) - label_in(under end) - sign(c)

The four-chord exhaustive test in the suite confirms this is the only one of
eight candidate conventions that is R-move invariant and gives the virtual
trefoil its known writhe vector.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .gauss import OVER, UNDER, GaussDiagram

__all__ = [
    "ChengColoring",
    "WritheVector",
    "UnknottingIndex",
    "SpanPair",
    "SpanReport",
    "EllReport",
    "LaurentPolynomial",
    "MinimalityReport",
    "BudgetExceeded",
    "cheng_coloring",
    "index",
    "indices",
    "index_by_linking",
    "writhe_vector",
    "affine_index_polynomial",
    "component_writhe_vectors",
    "span_pair",
    "span_total",
    "linking_number",
    "ell_invariant",
    "lower_bound_knot",
    "lower_bound_link",
    "minimal_crossing_check",
]


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its configured cap."""


def _require_knot(d: GaussDiagram) -> None:
    if d.num_components != 1:
        raise ValueError(f"expected a knot diagram, got {d.num_components} components")


# ---------------------------------------------------------------------------
# coloring and index
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChengColoring:
    """Arc labels of a knot diagram.

    ``labels[i]`` is the label of the arc that ends at endpoint position ``i``;
    the arc running into position 0 (the basepoint arc) is labeled 0.  A
    diagram without chords has the single label ``(0,)``.
    """

    labels: tuple[int, ...]
    increments: tuple[int, ...]

    def incoming(self, position: int) -> int:
        return self.labels[position]

    def outgoing(self, position: int) -> int:
        return self.labels[position] + self.increments[position]


def _increment(passage: str, sign: int) -> int:
    return -sign if passage == OVER else sign


def cheng_coloring(d: GaussDiagram) -> ChengColoring:
    _require_knot(d)
    comp = d.components[0]
    if not comp:
        return ChengColoring((0,), (0,))
    incs = tuple(_increment(p, d.signs[c]) for c, p in comp)
    labels = [0]
    for inc in incs[:-1]:
        labels.append(labels[-1] + inc)
    if labels[-1] + incs[-1] != 0:  # pragma: no cover - each chord adds -s + s
        raise AssertionError("coloring does not close up")
    return ChengColoring(tuple(labels), incs)


def index(d: GaussDiagram, chord: int) -> int:
    """Index of a crossing read off the Cheng coloring."""
    coloring = cheng_coloring(d)
    ch = d.chord(chord)
    return coloring.incoming(ch.over.position) - coloring.incoming(ch.under.position) - ch.sign


def indices(d: GaussDiagram) -> dict[int, int]:
    coloring = cheng_coloring(d)
    out = {}
    for ch in d.chords():
        out[ch.id] = coloring.incoming(ch.over.position) - coloring.incoming(ch.under.position) - ch.sign
    return out


def index_by_linking(d: GaussDiagram, chord: int) -> int:
    """Index as a signed count of the chords interleaved with ``chord``.

    Going forward from the under endpoint of ``chord`` to its over endpoint,
    each crossed chord contributes its sign if its under endpoint is met and
    minus its sign if its over endpoint is met.  Chords with both or neither
    endpoint on that arc cancel out.
    """
    _require_knot(d)
    comp = d.components[0]
    ch = d.chord(chord)
    n = len(comp)
    total = 0
    i = (ch.under.position + 1) % n
    while i != ch.over.position:
        other, passage = comp[i]
        s = d.signs[other]
        total += s if passage == UNDER else -s
        i = (i + 1) % n
    return total


# ---------------------------------------------------------------------------
# writhe vector and affine index polynomial
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WritheVector:
    """The n-th writhes ``J_n`` for ``n != 0``, stored sparsely."""

    entries: Mapping[int, int]
    total_signed_count: int = 0

    def __post_init__(self):
        clean = {int(n): int(v) for n, v in self.entries.items() if n != 0 and v != 0}
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, n: int) -> int:
        return self.entries.get(n, 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, WritheVector):
            return self.entries == other.entries
        if isinstance(other, Mapping):
            return self.entries == WritheVector(other).entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self.entries.items()))

    def __repr__(self) -> str:
        return f"WritheVector({self.entries})"

    def support(self) -> list[int]:
        return list(self.entries)

    def abs_sum(self) -> int:
        return sum(abs(v) for v in self.entries.values())

    def is_zero(self) -> bool:
        return not self.entries

    def asymmetric_at(self) -> int | None:
        """Least positive ``n`` with ``J_n != J_-n``, or ``None`` if symmetric."""
        for n in sorted({abs(k) for k in self.entries}):
            if self[n] != self[-n]:
                return n
        return None

    def is_symmetric(self) -> bool:
        return self.asymmetric_at() is None

    def to_json(self) -> dict[str, int]:
        return {str(n): v for n, v in self.entries.items()}


def writhe_vector(d: GaussDiagram) -> WritheVector:
    counts: dict[int, int] = {}
    for chord, ind in indices(d).items():
        counts[ind] = counts.get(ind, 0) + d.signs[chord]
    return WritheVector(counts, sum(d.signs.values()))


@dataclass(frozen=True)
class LaurentPolynomial:
    coefficients: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(n): int(v) for n, v in self.coefficients.items() if v != 0}
        object.__setattr__(self, "coefficients", dict(sorted(clean.items())))

    def __getitem__(self, n: int) -> int:
        return self.coefficients.get(n, 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPolynomial):
            return self.coefficients == other.coefficients
        if other == 0:
            return not self.coefficients
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self.coefficients.items()))

    def evaluate(self, t: float) -> float:
        return sum(c * t**n for n, c in self.coefficients.items())

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        out = ""
        for n, c in self.coefficients.items():
            mono = "" if n == 0 else "t" if n == 1 else f"t^{n}"
            mag = str(abs(c)) if abs(c) != 1 or not mono else ""
            sep = ("-" if c < 0 else "") if not out else (" - " if c < 0 else " + ")
            out += sep + mag + mono
        return out


def affine_index_polynomial(d: GaussDiagram) -> LaurentPolynomial:
    """``sum over crossings of sign * (t^index - 1)``.

    The coefficient of ``t^n`` (n != 0) is ``J_n``; the constant term makes the
    polynomial vanish at ``t = 1`` and on the empty diagram.
    """
    w = writhe_vector(d)
    coeffs = dict(w.entries)
    coeffs[0] = -sum(w.entries.values())
    return LaurentPolynomial(coeffs)


def component_writhe_vectors(d: GaussDiagram) -> list[WritheVector]:
    return [writhe_vector(d.component_subdiagram(k)) for k in range(d.num_components)]


# ---------------------------------------------------------------------------
# span, linking number and ell for links
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpanPair:
    i: int
    j: int
    alpha_plus: int
    alpha_minus: int
    beta_plus: int
    beta_minus: int

    @property
    def span(self) -> int:
        return abs((self.alpha_plus - self.alpha_minus) - (self.beta_plus - self.beta_minus))

    @property
    def over_linking(self) -> int:
        return self.alpha_plus - self.alpha_minus


@dataclass(frozen=True)
class SpanReport:
    pairs: Mapping[tuple[int, int], SpanPair]

    @property
    def per_pair(self) -> dict[tuple[int, int], int]:
        return {k: p.span for k, p in self.pairs.items()}

    @property
    def total(self) -> int:
        return sum(p.span for p in self.pairs.values())

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "pairs": {f"{i},{j}": p.span for (i, j), p in self.pairs.items()},
        }


def _check_components(d: GaussDiagram, i: int, j: int) -> None:
    k = d.num_components
    if not (0 <= i < k and 0 <= j < k) or i == j:
        raise ValueError(f"invalid component pair ({i}, {j}) for a {k}-component diagram")


def span_pair(d: GaussDiagram, i: int, j: int) -> SpanPair:
    """Linking-crossing counts between components ``i`` and ``j``.

    ``alpha`` counts crossings where ``i`` passes over ``j``, ``beta`` those
    where it passes under, split by sign.
    """
    _check_components(d, i, j)
    ap = am = bp = bm = 0
    for ch in d.chords():
        comps = (ch.over.component, ch.under.component)
        if comps == (i, j):
            if ch.sign > 0:
                ap += 1
            else:
                am += 1
        elif comps == (j, i):
            if ch.sign > 0:
                bp += 1
            else:
                bm += 1
    return SpanPair(i, j, ap, am, bp, bm)


def span_total(d: GaussDiagram) -> SpanReport:
    """Span summed over unordered component pairs."""
    if d.num_components < 2:
        raise ValueError("span needs at least two components")
    pairs = {
        (i, j): span_pair(d, i, j) for i, j in itertools.combinations(range(d.num_components), 2)
    }
    return SpanReport(pairs)


def linking_number(d: GaussDiagram, i: int, j: int) -> int:
    """Signed count of crossings where component ``i`` passes over ``j``.

    On a classical diagram this is the usual linking number.  For virtual
    links the over- and under-counts can differ; inside ``ell_invariant`` it is
    only evaluated on diagrams of span 0, where both agree.
    """
    return span_pair(d, i, j).over_linking


@dataclass(frozen=True)
class EllReport:
    per_pair: Mapping[tuple[int, int], int]
    witnesses: Mapping[tuple[int, int], tuple[frozenset[int], ...]]

    @property
    def total(self) -> int:
        return sum(self.per_pair.values())


def _ell_two_component(d: GaussDiagram, cap: int) -> tuple[int, tuple[frozenset[int], ...]]:
    span = span_pair(d, 0, 1).span
    linking = d.linking_chords()
    count = math.comb(len(linking), span)
    if count > cap:
        raise BudgetExceeded(f"ell enumeration needs {count} subsets, cap is {cap}")
    family = []
    best = None
    for subset in itertools.combinations(linking, span):
        reduced = d.without(subset)
        if span_pair(reduced, 0, 1).span != 0:
            continue
        family.append(frozenset(subset))
        lk = abs(linking_number(reduced, 0, 1))
        best = lk if best is None else min(best, lk)
    return (best if best is not None else 0), tuple(family)


def ell_invariant(d: GaussDiagram, cap: int = 1_000_000) -> EllReport:
    """ell for every pair of components, by exhaustive subset enumeration.

    For the pair ``{i, j}`` the two-component sub-diagram is formed,
    all sets of ``span`` linking chords whose virtualization kills the span are
    listed (the witness family), and the least ``|lk|`` left over is taken.
    """
    if d.num_components < 2:
        raise ValueError("ell needs at least two components")
    per_pair = {}
    witnesses = {}
    for i, j in itertools.combinations(range(d.num_components), 2):
        value, family = _ell_two_component(d.sublink([i, j]), cap)
        per_pair[(i, j)] = value
        witnesses[(i, j)] = family
    return EllReport(per_pair, witnesses)


# ---------------------------------------------------------------------------
# lower bounds on the unknotting index
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class UnknottingIndex:
    """``(virtualizations, crossing changes)``, compared in dictionary order."""

    virtualizations: int
    crossing_changes: int

    def __iter__(self) -> Iterator[int]:
        yield self.virtualizations
        yield self.crossing_changes

    def __str__(self) -> str:
        return f"({self.virtualizations},{self.crossing_changes})"

    def to_json(self) -> list[int]:
        return [self.virtualizations, self.crossing_changes]


def _half_up(total: int) -> int:
    return (total + 1) // 2


def lower_bound_knot(d: GaussDiagram) -> UnknottingIndex:
    """Dictionary-order max of the two writhe bounds.

    An asymmetric writhe vector forces at least one virtualization; otherwise
    half the total absolute writhe, rounded up, bounds the crossing changes.
    """
    w = writhe_vector(d)
    by_asymmetry = UnknottingIndex(0 if w.is_symmetric() else 1, 0)
    by_total = UnknottingIndex(0, _half_up(w.abs_sum()))
    return max(by_asymmetry, by_total)


def lower_bound_link(d: GaussDiagram, cap: int = 1_000_000) -> UnknottingIndex:
    """``(span, sum of ell over pairs + half the component writhe totals)``."""
    span = span_total(d).total
    ell = ell_invariant(d, cap).total
    writhe = sum(w.abs_sum() for w in component_writhe_vectors(d))
    return UnknottingIndex(span, ell + _half_up(writhe))


@dataclass(frozen=True)
class MinimalityReport:
    minimal: bool
    crossing_number: int | None
    same_index_same_sign: bool
    no_zero_index: bool


def minimal_crossing_check(d: GaussDiagram) -> MinimalityReport:
    """Sufficient test for a diagram realizing the minimal crossing number.

    If crossings of equal index always share a sign and no crossing has index
    0, then ``sum_k |J_k|`` equals the crossing count, and no equivalent
    diagram can have fewer crossings.
    """
    ind = indices(d)
    sign_by_index: dict[int, set[int]] = {}
    for chord, k in ind.items():
        sign_by_index.setdefault(k, set()).add(d.signs[chord])
    cond_a = all(len(s) == 1 for s in sign_by_index.values())
    cond_b = all(k != 0 for k in ind.values())
    if cond_a and cond_b:
        total = writhe_vector(d).abs_sum()
        if total != d.num_chords:  # pragma: no cover - implied by (a) and (b)
            raise AssertionError(f"sum |J_k| = {total} but there are {d.num_chords} crossings")
        return MinimalityReport(True, d.num_chords, cond_a, cond_b)
    return MinimalityReport(False, None, cond_a, cond_b)
