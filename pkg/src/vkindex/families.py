"""Parametric families of virtual knot and link diagrams.

Every generator builds a Gauss code from a few repeating segments and an
independent description of what the diagram should look like: the sign and
index of every labelled crossing, the writhe vector, the unknotting index and
a plan (crossings to virtualize, crossings to change) that makes it trivial.
The diagram is only returned after its recomputed invariants agree with that
description.

Labels follow the usual pictures: ``c1..`` and ``d1..`` for the named
crossings, ``b1..bp`` for the twist block, ``c``/``d`` for the two extra
crossings of ``K_lower`` and ``t1..`` for linking crossings.

=========================  ==================================================
``K_upper(m, p)``          U = (0, m); J_{p-1} = J_{1-p} = -m
``K_lower(m, p)``          U = (1, m)
``D(n, p)``                twist block of p crossings threaded by n chords
``D_tilde(n, p)``          ``D(n, p)`` with the orientation reversed
``D_qr(n, p, q, r)``       ``D(n, p)`` minus q odd and r even block crossings
``D_npm(n, p, m, q)``      ``D_qr(n, p, q, 0)`` plus m clasps; U = (n, m)
``D_npm_qrt(n,p,m,q,r,t)`` ``D(n, p)`` plus m clasps, minus q, r, t crossings
``LinkFamily(k, n, m, p)`` k components, n linking crossings; U = (n, m)
=========================  ==================================================
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .gauss import OVER, UNDER, GaussDiagram, virtualize
from .invariants import (
    UnknottingIndex,
    WritheVector,
    component_writhe_vectors,
    ell_invariant,
    indices,
    lower_bound_knot,
    lower_bound_link,
    minimal_crossing_check,
    span_total,
    writhe_vector,
)

__all__ = [
    "FamilySpec",
    "ExpectedProfile",
    "FamilyValidationError",
    "PARAMETERS",
    "generate",
    "d_qr_formula",
    "d_qr_regime",
    "single_virtualization_scan",
    "ScanRow",
    "Distinction",
    "distinguish",
]

PARAMETERS: Mapping[str, tuple[str, ...]] = MappingProxyType(
    {
        "K_upper": ("m", "p"),
        "K_lower": ("m", "p"),
        "D": ("n", "p"),
        "D_tilde": ("n", "p"),
        "D_qr": ("n", "p", "q", "r"),
        "D_npm": ("n", "p", "m", "q"),
        "D_npm_qrt": ("n", "p", "m", "q", "r", "t"),
        "LinkFamily": ("k", "n", "m", "p"),
    }
)


class FamilyValidationError(AssertionError):
    """A generated diagram disagrees with its expected profile."""


@dataclass(frozen=True)
class FamilySpec:
    """A family name with integer parameters, checked on construction.

    >>> FamilySpec("K_upper", m=2, p=3)
    FamilySpec('K_upper', m=2, p=3)
    """

    name: str
    params: Mapping[str, int]

    def __init__(self, name: str, params: Mapping[str, int] | None = None, **kwargs: int):
        if name not in PARAMETERS:
            raise ValueError(f"unknown family {name!r}; expected one of {', '.join(PARAMETERS)}")
        values = dict(params or {})
        values.update(kwargs)
        if name == "D_npm" and "q" not in values and "n" in values:
            values["q"] = values["n"] + 3
        expected = PARAMETERS[name]
        missing = [k for k in expected if k not in values]
        extra = [k for k in values if k not in expected]
        if missing or extra:
            raise ValueError(f"{name} takes parameters {', '.join(expected)}; missing {missing}, unexpected {extra}")
        values = {k: int(values[k]) for k in expected}
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "params", MappingProxyType(values))
        _check_parameters(name, values)

    def __getitem__(self, key: str) -> int:
        return self.params[key]

    def __hash__(self) -> int:
        return hash((self.name, tuple(self.params.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FamilySpec):
            return NotImplemented
        return self.name == other.name and dict(self.params) == dict(other.params)

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"FamilySpec({self.name!r}, {args})"

    def __str__(self) -> str:
        return f"{self.name}({','.join(str(v) for v in self.params.values())})"

    def to_json(self) -> dict:
        return {"name": self.name, "params": dict(self.params)}


def _check_parameters(name: str, v: dict[str, int]) -> None:
    def need(cond: bool, msg: str) -> None:
        if not cond:
            raise ValueError(f"{name}: {msg} (got {v})")

    if name == "K_upper":
        need(v["m"] >= 1 and v["p"] >= 2, "needs m >= 1 and p >= 2")
    elif name == "K_lower":
        need(v["m"] >= 1 and v["p"] >= 5, "needs m >= 1 and p >= 5")
    elif name in ("D", "D_tilde"):
        need(v["n"] >= 1 and v["p"] >= 1, "needs n >= 1 and p >= 1")
    elif name == "D_qr":
        need(v["n"] >= 1, "needs n >= 1")
        need(v["p"] >= 1 and v["p"] % 2 == 1, "needs odd p")
        need(0 <= v["q"] <= (v["p"] + 1) // 2, "q exceeds the number of odd block labels")
        need(0 <= v["r"] <= (v["p"] - 1) // 2, "r exceeds the number of even block labels")
    elif name == "D_npm":
        need(v["n"] >= 1 and v["m"] >= 1, "needs n >= 1 and m >= 1")
        need(v["p"] % 2 == 1, "needs odd p")
        need(v["p"] > v["q"] > v["n"] + 2, "needs p > q > n + 2")
        need(v["q"] <= (v["p"] + 1) // 2, "q exceeds the number of odd block labels")
    elif name == "D_npm_qrt":
        need(v["n"] >= 1 and v["m"] >= 0, "needs n >= 1 and m >= 0")
        need(v["p"] >= 1 and v["p"] % 2 == 1, "needs odd p")
        need(0 <= v["q"] <= (v["p"] + 1) // 2, "q exceeds the number of odd block labels")
        need(0 <= v["r"] <= (v["p"] - 1) // 2, "r exceeds the number of even block labels")
        need(0 <= v["t"] <= 2 * v["m"], "t exceeds the number of clasp crossings")
    elif name == "LinkFamily":
        need(v["k"] >= 2, "a link needs k >= 2 components")
        need(v["n"] >= 1 and v["m"] >= 1 and v["p"] >= 2, "needs n, m >= 1 and p >= 2")


@dataclass(frozen=True)
class ExpectedProfile:
    """What a generated diagram is supposed to be, stated independently of it.

    ``labels`` maps crossing labels to chord ids.  ``index`` and ``sign`` are
    keyed by label.  For links ``index`` covers the self-crossings of every
    component and ``span``/``ell`` are filled in.  The plan is given in
    labels; ``plan_chords`` converts it to chord ids.
    """

    spec: FamilySpec
    labels: Mapping[str, int]
    sign: Mapping[str, int]
    index: Mapping[str, int]
    writhe: WritheVector | tuple[WritheVector, ...]
    unknotting_index: UnknottingIndex | None
    plan_virtualize: tuple[str, ...]
    plan_change: tuple[str, ...]
    lower_bound: UnknottingIndex | None = None
    crossing_count: int = 0
    span: int | None = None
    ell: int | None = None
    minimal: bool | None = None
    notes: Mapping[str, object] = field(default_factory=dict)

    def plan_chords(self) -> tuple[frozenset[int], frozenset[int]]:
        return (
            frozenset(self.labels[x] for x in self.plan_virtualize),
            frozenset(self.labels[x] for x in self.plan_change),
        )

    def writhe_from_labels(self) -> WritheVector:
        """Writhe vector recomputed from ``sign`` x ``index`` (knots only)."""
        acc: Counter[int] = Counter()
        for label, k in self.index.items():
            acc[k] += self.sign[label]
        return WritheVector(dict(acc))

    def by_class(self, prefix: str) -> list[int]:
        """Indices of the labels ``prefix1, prefix2, ...`` in order."""
        keys = sorted((int(k[len(prefix):]), k) for k in self.index if k[len(prefix):].isdigit() and k.startswith(prefix))
        return [self.index[k] for _, k in keys]

    def to_json(self) -> dict:
        w = self.writhe
        return {
            "family": self.spec.to_json(),
            "labels": dict(self.labels),
            "sign": dict(self.sign),
            "index": dict(self.index),
            "writhe": w.to_json() if isinstance(w, WritheVector) else [x.to_json() for x in w],
            "unknotting_index": self.unknotting_index.to_json() if self.unknotting_index else None,
            "lower_bound": self.lower_bound.to_json() if self.lower_bound else None,
            "plan": {"virtualize": list(self.plan_virtualize), "change": list(self.plan_change)},
            "crossing_count": self.crossing_count,
            "span": self.span,
            "ell": self.ell,
            "minimal": self.minimal,
        }


# ---------------------------------------------------------------------------
# word building
# ---------------------------------------------------------------------------


class _Builder:
    def __init__(self) -> None:
        self.labels: dict[str, int] = {}
        self.signs: dict[int, int] = {}

    def chord(self, label: str, sign: int) -> int:
        cid = len(self.labels) + 1
        self.labels[label] = cid
        self.signs[cid] = sign
        return cid

    def over(self, label: str) -> tuple[int, str]:
        return (self.labels[label], OVER)

    def under(self, label: str) -> tuple[int, str]:
        return (self.labels[label], UNDER)


def _k_word(b: _Builder, m: int, p: int, lower: bool) -> list:
    """Twisted clasp chain with a vertical block of p crossings.

    Per clasp i the crossings d_{2i-1}, d_{2i} form a clasp and c_i a kink
    threading it; the block crossings run across the whole chain.
    """
    for i in range(1, m + 1):
        b.chord(f"c{i}", +1)
        b.chord(f"d{2 * i - 1}", -1)
        b.chord(f"d{2 * i}", -1)
    for j in range(1, p + 1):
        b.chord(f"b{j}", -1)
    if lower:
        b.chord("d", -1)
        b.chord("c", +1)
    w = []
    for i in range(1, m + 1):
        w += [b.over(f"d{2 * i - 1}"), b.under(f"d{2 * i}")]
    w += [b.under(f"b{j}") for j in range(1, p + 1)]
    if lower:
        w.append(b.under("d"))
    for i in range(m, 0, -1):
        w += [b.under(f"c{i}"), b.over(f"d{2 * i}"), b.under(f"d{2 * i - 1}"), b.over(f"c{i}")]
    w += [b.over(f"b{j}") for j in range(p, 0, -1)]
    if lower:
        w += [b.over("c"), b.over("d"), b.under("c")]
    return w


def _d_word(b: _Builder, n: int, p: int, m: int = 0) -> list:
    """n chords ``c_i`` threaded through an alternating block, then m clasps."""
    for j in range(1, p + 1):
        b.chord(f"b{j}", -1)
    for i in range(1, n + 1):
        b.chord(f"c{i}", -1)
    for j in range(1, 2 * m + 1):
        b.chord(f"d{j}", -1)
    first = {j: b.over(f"b{j}") if j % 2 else b.under(f"b{j}") for j in range(1, p + 1)}
    second = {j: b.under(f"b{j}") if j % 2 else b.over(f"b{j}") for j in range(1, p + 1)}
    w = [first[j] for j in range(1, p + 1)]
    w += [b.over(f"c{i}") for i in range(1, n + 1)]
    w += [second[j] for j in range(p, 0, -1)]
    w += [b.under(f"c{i}") for i in range(1, n + 1)]
    for i in range(1, m + 1):
        a, e = f"d{2 * i - 1}", f"d{2 * i}"
        w += [b.over(a), b.under(e), b.under(a), b.over(e)]
    return w


def _drop(labels: dict[str, int], signs: dict[int, int], words: list[list], gone: list[str]):
    ids = {labels[x] for x in gone}
    words = [[t for t in w if t[0] not in ids] for w in words]
    labels = {k: v for k, v in labels.items() if k not in gone}
    signs = {c: s for c, s in signs.items() if c not in ids}
    return labels, signs, words


# ---------------------------------------------------------------------------
# expected values, written down from the case analysis rather than computed
# ---------------------------------------------------------------------------


def d_qr_regime(n: int, q: int, r: int) -> str:
    """Which branch of the piecewise unknotting-index formula applies."""
    s = q - r
    hits = [
        name
        for name, cond in (
            ("negative", -n < s < 0),
            ("small", 0 <= s <= 2),
            ("middle", 2 < s < n + 2),
        )
        if cond
    ]
    if len(hits) > 1:  # pragma: no cover - the three ranges are disjoint
        raise AssertionError(f"parameters hit several regimes: {hits}")
    return hits[0] if hits else "otherwise"


def d_qr_formula(n: int, p: int, q: int, r: int) -> UnknottingIndex:
    """Unknotting index of ``D_qr(n, p, q, r)`` for odd p."""
    regime = d_qr_regime(n, q, r)
    if regime == "negative":
        return UnknottingIndex(r - q, (p + n - 2 * r) // 2)
    if regime == "small":
        return UnknottingIndex(0, (p + n - q - r) // 2)
    if regime == "middle":
        return UnknottingIndex(q - r - 2, (p + n - 2 * q + 2) // 2)
    return UnknottingIndex(n, 0)


def _d_qr_plan(n: int, p: int, q: int, r: int) -> tuple[list[str], list[str]]:
    odd_left = [f"b{j}" for j in range(1, p + 1, 2)][q:]
    even_left = [f"b{j}" for j in range(2, p + 1, 2)][r:]
    c = [f"c{i}" for i in range(1, n + 1)]

    def small(s: int, evens: list[str]) -> list[str]:
        # the c's to change, by the difference s = q - r after virtualizing
        chosen = {0: c[(n + 2) // 2 - 1:], 1: c[: n // 2], 2: c[(n + 4) // 2 - 1:]}[s]
        return list(evens) + chosen

    regime = d_qr_regime(n, q, r)
    s = q - r
    if regime == "small":
        return [], small(s, even_left)
    if regime == "middle":
        return even_left[: s - 2], small(2, even_left[s - 2:])
    if regime == "negative":
        return odd_left[: r - q], small(0, even_left)
    return c, []


def _k_profile(spec: FamilySpec, labels: dict[str, int], lower: bool) -> dict:
    m, p = spec["m"], spec["p"]
    sign, index = {}, {}
    odd, even = (p, -p) if lower else (p - 1, -(p - 1))
    for i in range(1, m + 1):
        sign[f"c{i}"], index[f"c{i}"] = 1, 0
        sign[f"d{2 * i - 1}"], index[f"d{2 * i - 1}"] = -1, odd
        sign[f"d{2 * i}"], index[f"d{2 * i}"] = -1, even
    for j in range(1, p + 1):
        sign[f"b{j}"], index[f"b{j}"] = -1, (-1 if lower else 0)
    change = [f"d{2 * i}" for i in range(1, m + 1)]
    if lower:
        sign["d"], index["d"] = -1, p - 1
        sign["c"], index["c"] = 1, -1
        writhe = WritheVector({-1: 1 - p, p - 1: -1, p: -m, -p: -m})
        return dict(sign=sign, index=index, writhe=writhe, unknotting_index=UnknottingIndex(1, m),
                    plan_virtualize=("d",), plan_change=tuple(change), lower_bound=UnknottingIndex(1, 0))
    writhe = WritheVector({p - 1: -m, 1 - p: -m})
    return dict(sign=sign, index=index, writhe=writhe, unknotting_index=UnknottingIndex(0, m),
                plan_virtualize=(), plan_change=tuple(change), lower_bound=UnknottingIndex(0, m))


def _d_profile(n: int, p: int, m: int, q: int, r: int, t: int, reverse: bool) -> tuple[dict, dict]:
    sign, index = {}, {}
    flip = -1 if reverse else 1
    for j in range(1, p + 1):
        sign[f"b{j}"] = -1
        index[f"b{j}"] = flip * (-n if j % 2 else n)
    for i in range(1, n + 1):
        sign[f"c{i}"] = -1
        index[f"c{i}"] = flip * (2 * i - n - q + r)
    gone_d = {f"d{j}" for j in range(1, t + 1)}
    for j in range(1, 2 * m + 1):
        if f"d{j}" in gone_d:
            continue
        partner = f"d{j + 1}" if j % 2 else f"d{j - 1}"
        sign[f"d{j}"] = -1
        index[f"d{j}"] = 0 if partner in gone_d else flip * (1 if j % 2 else -1)
    gone = [f"b{j}" for j in range(1, p + 1, 2)][:q] + [f"b{j}" for j in range(2, p + 1, 2)][:r]
    for x in gone:
        del sign[x], index[x]
    acc: Counter[int] = Counter()
    for label, k in index.items():
        acc[k] += sign[label]
    return dict(sign=sign, index=index, writhe=WritheVector(dict(acc))), {"virtualized": gone + sorted(gone_d)}


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------


def _build(spec: FamilySpec) -> tuple[GaussDiagram, ExpectedProfile]:
    name, v = spec.name, spec.params
    b = _Builder()
    if name in ("K_upper", "K_lower"):
        lower = name == "K_lower"
        word = _k_word(b, v["m"], v["p"], lower)
        d = GaussDiagram([word], b.signs)
        prof = _k_profile(spec, b.labels, lower)
        return d, ExpectedProfile(spec, MappingProxyType(b.labels), crossing_count=d.num_chords, **prof)

    if name in ("D", "D_tilde", "D_qr", "D_npm", "D_npm_qrt"):
        n, p = v["n"], v["p"]
        m = v.get("m", 0)
        q, r, t = v.get("q", 0), v.get("r", 0), v.get("t", 0)
        word = _d_word(b, n, p, m)
        prof, notes = _d_profile(n, p, m, q, r, t, reverse=(name == "D_tilde"))
        labels, signs, (word,) = _drop(b.labels, b.signs, [word], notes["virtualized"])
        d = GaussDiagram([word], signs)
        if name == "D_tilde":
            d = d.reversed()
        uk = None
        plan_v: list[str] = []
        plan_c: list[str] = []
        minimal = None
        if name == "D_npm" or (name == "D_npm_qrt" and r == 0 and t == 0 and p > q > n + 2 and m >= 1):
            uk = UnknottingIndex(n, m)
            plan_v = [f"c{i}" for i in range(1, n + 1)]
            plan_c = [f"d{2 * i}" for i in range(1, m + 1)]
            minimal = True
        elif name == "D_npm_qrt":
            # no closed formula; this plan still trivializes the diagram
            plan_v = [f"c{i}" for i in range(1, n + 1)]
            plan_c = [f"d{2 * i}" for i in range(1, m + 1) if f"d{2 * i}" in labels and f"d{2 * i - 1}" in labels]
        elif p % 2 == 1:
            uk = d_qr_formula(n, p, q, r)
            plan_v, plan_c = _d_qr_plan(n, p, q, r)
        else:
            plan_v = [f"c{i}" for i in range(1, n + 1)]
        return d, ExpectedProfile(
            spec,
            MappingProxyType(labels),
            crossing_count=d.num_chords,
            unknotting_index=uk,
            plan_virtualize=tuple(plan_v),
            plan_change=tuple(plan_c),
            lower_bound=uk,
            minimal=minimal,
            notes=MappingProxyType(notes),
            **prof,
        )

    if name == "LinkFamily":
        return _build_link(spec)
    raise ValueError(f"unknown family {name!r}")  # pragma: no cover


def link_core_components(k: int, n: int) -> int:
    """Number of linked components used before padding with trivial circles.

    The chain of linking crossings needs ``2 <= k <= n + 1``; larger ``k`` is
    reached by adding unlinked trivial components.
    """
    return min(k, max(2, n)) if k > n else k


def _build_link(spec: FamilySpec) -> tuple[GaussDiagram, ExpectedProfile]:
    k, n, m, p = (spec[x] for x in ("k", "n", "m", "p"))
    core = link_core_components(k, n)
    b = _Builder()
    words: list[list] = [_k_word(b, m, p, lower=False)] + [[] for _ in range(core - 1)]
    prof = _k_profile(FamilySpec("K_upper", m=m, p=p), b.labels, lower=False)
    for i in range(1, n + 1):
        b.chord(f"t{i}", +1)
    # t_i joins components i and i+1 for i <= core-2, the rest join the last two
    for i in range(1, n + 1):
        upper = min(i, core - 1)
        words[upper - 1].append(b.over(f"t{i}"))
        words[upper].append(b.under(f"t{i}"))
    words += [[] for _ in range(k - core)]
    d = GaussDiagram(words, b.signs)
    sign = dict(prof["sign"])
    sign.update({f"t{i}": 1 for i in range(1, n + 1)})
    writhe = (prof["writhe"],) + tuple(WritheVector({}) for _ in range(k - 1))
    profile = ExpectedProfile(
        spec,
        MappingProxyType(b.labels),
        sign=sign,
        index=prof["index"],
        writhe=writhe,
        unknotting_index=UnknottingIndex(n, m),
        plan_virtualize=tuple(f"t{i}" for i in range(1, n + 1)),
        plan_change=prof["plan_change"],
        lower_bound=UnknottingIndex(n, m),
        crossing_count=d.num_chords,
        span=n,
        ell=0,
        notes=MappingProxyType({"linked_components": core, "padding": k - core}),
    )
    return d, profile


def _validate(d: GaussDiagram, prof: ExpectedProfile) -> None:
    problems = []
    if set(prof.labels.values()) != set(d.chord_ids):
        # nothing below is meaningful against the wrong chord set
        raise FamilyValidationError(f"{prof.spec}: labels do not cover the chords")
    for label, s in prof.sign.items():
        if d.signs[prof.labels[label]] != s:
            problems.append(f"sign of {label}: expected {s}, got {d.signs[prof.labels[label]]}")
    if d.num_chords != prof.crossing_count:
        problems.append("crossing count")
    if d.num_components == 1:
        got = indices(d)
        for label, k in prof.index.items():
            if got[prof.labels[label]] != k:
                problems.append(f"index of {label}: expected {k}, got {got[prof.labels[label]]}")
        w = writhe_vector(d)
        if w != prof.writhe:
            problems.append(f"writhe vector: expected {prof.writhe}, got {w}")
        if prof.writhe != prof.writhe_from_labels():
            problems.append("profile writhe is not the sum of sign x index")
        if prof.lower_bound is not None and prof.spec.name in ("K_upper", "K_lower"):
            lb = lower_bound_knot(d)
            if lb != prof.lower_bound:
                problems.append(f"lower bound: expected {prof.lower_bound}, got {lb}")
        if prof.minimal is not None and minimal_crossing_check(d).minimal != prof.minimal:
            problems.append("minimal crossing check")
    else:
        sub = d.component_subdiagram(0)
        got = indices(sub)
        for label, k in prof.index.items():
            if got[prof.labels[label]] != k:
                problems.append(f"index of {label}: expected {k}, got {got[prof.labels[label]]}")
        if tuple(component_writhe_vectors(d)) != tuple(prof.writhe):
            problems.append("component writhe vectors")
        if span_total(d).total != prof.span:
            problems.append(f"span: expected {prof.span}, got {span_total(d).total}")
        if ell_invariant(d).total != prof.ell:
            problems.append("ell")
        if lower_bound_link(d) != prof.lower_bound:
            problems.append(f"link lower bound: expected {prof.lower_bound}, got {lower_bound_link(d)}")
    if set(prof.plan_virtualize) & set(prof.plan_change):
        problems.append("plan sets overlap")
    if problems:
        raise FamilyValidationError(f"{prof.spec}: " + "; ".join(problems))


def generate(spec: FamilySpec | str, **params: int) -> tuple[GaussDiagram, ExpectedProfile]:
    """Build the family member and check it against its expected profile.

    Raises:
        ValueError: parameters outside the family's range.
        FamilyValidationError: the built diagram disagrees with the profile.
    """
    if isinstance(spec, str):
        spec = FamilySpec(spec, **params)
    d, prof = _build(spec)
    _validate(d, prof)
    return d, prof


# ---------------------------------------------------------------------------
# single-crossing virtualizations of K_lower
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    label: str
    case: int
    writhe: WritheVector
    expected: WritheVector
    lower_bound: UnknottingIndex

    @property
    def matches(self) -> bool:
        return self.writhe == self.expected


def _case_of(label: str) -> int:
    if label == "c":
        return 2
    if label == "d":
        return 6
    kind, num = label[0], int(label[1:])
    if kind == "c":
        return 1
    if kind == "b":
        return 3
    return 4 if num % 2 == 0 else 5


def _case_writhe(case: int, m: int, p: int) -> WritheVector:
    """Writhe vector after virtualizing one crossing, by the crossing's kind."""
    table = {
        1: {-1: 1 - p, p - 1: -1, p: -(m - 1), -p: -(m - 1), p + 1: -1, -(p + 1): -1},
        2: {-1: -p, -p: -m, p: -1 - m},
        3: {-1: 2 - p, p - 2: -1, p - 1: -m, 1 - p: -m},
        4: {-1: 2, -2: -p, p - 2: -1, p: -m, -p: -(m - 1)},
        5: {-1: 1, 1: 1, -p: -m, p: -m},
        6: {p - 1: -m, 1 - p: -m},
    }
    return WritheVector(table[case])


def single_virtualization_scan(spec: FamilySpec | None = None, *, m: int | None = None,
                               p: int | None = None) -> list[ScanRow]:
    """Writhe vector of ``K_lower(m, p)`` with each crossing virtualized in turn.

    Rows carry the crossing's kind (1: c_i, 2: c, 3: block, 4: even d_i,
    5: odd d_i, 6: d) and the writhe vector predicted for that kind.
    """
    if spec is None:
        spec = FamilySpec("K_lower", m=m, p=p)
    if spec.name != "K_lower":
        raise ValueError("the scan is defined for K_lower")
    d, prof = generate(spec)
    rows = []
    for label, cid in sorted(prof.labels.items(), key=lambda kv: kv[1]):
        k = virtualize(d, cid)
        case = _case_of(label)
        rows.append(ScanRow(label, case, writhe_vector(k), _case_writhe(case, spec["m"], spec["p"]),
                            lower_bound_knot(k)))
    return rows


# ---------------------------------------------------------------------------
# telling family members apart
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Distinction:
    """Invariants that differ between two diagrams.

    ``writhe`` is ``(component, n, J_n first, J_n second)`` for the first
    differing coefficient; ``crossing_number`` is set when both diagrams pass
    the minimal-crossing test with different counts.
    """

    writhe: tuple[int, int, int, int] | None
    crossing_number: tuple[int, int] | None

    @property
    def distinguished(self) -> bool:
        return self.writhe is not None or self.crossing_number is not None

    def __bool__(self) -> bool:
        return self.distinguished

    def to_json(self) -> dict:
        if not self.distinguished:
            return {"distinguished": False, "witness": "not distinguished"}
        out: dict = {"distinguished": True}
        if self.writhe is not None:
            comp, n, a, b = self.writhe
            out["writhe"] = {"component": comp, "n": n, "values": [a, b]}
        if self.crossing_number is not None:
            out["crossing_number"] = list(self.crossing_number)
        return out


def _writhes(d: GaussDiagram) -> list[WritheVector]:
    return [writhe_vector(d)] if d.num_components == 1 else component_writhe_vectors(d)


def distinguish(first: FamilySpec | GaussDiagram, second: FamilySpec | GaussDiagram) -> Distinction:
    d1 = generate(first)[0] if isinstance(first, FamilySpec) else first
    d2 = generate(second)[0] if isinstance(second, FamilySpec) else second
    witness = None
    w1, w2 = _writhes(d1), _writhes(d2)
    for comp, (a, b) in enumerate(zip(w1, w2)):
        keys = sorted(set(a.support()) | set(b.support()), key=lambda n: (abs(n), n))
        diff = [n for n in keys if a[n] != b[n]]
        if diff:
            witness = (comp, diff[0], a[diff[0]], b[diff[0]])
            break
    crossing = None
    if d1.num_components == 1 and d2.num_components == 1:
        r1, r2 = minimal_crossing_check(d1), minimal_crossing_check(d2)
        if r1.minimal and r2.minimal and r1.crossing_number != r2.crossing_number:
            crossing = (r1.crossing_number, r2.crossing_number)
    return Distinction(witness, crossing)

