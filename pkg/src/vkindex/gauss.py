"""Gauss diagrams of virtual knots and links.

A virtual link diagram is stored as its Gauss diagram: one oriented circle per
component and one signed chord per classical crossing.  Virtual crossings leave
no trace, so the virtual Reidemeister moves act as the identity here.

Each circle is a cyclic sequence of endpoint tokens ``(chord, passage)`` where
``passage`` is ``"O"`` (the strand passes over) or ``"U"``.  Text form::

    O1+U2-O3+U1+O2-U3+          one component
    O1+U2-|U1+O2-               two components
    O1+U1+||                    three components, two of them without chords

The unicode minus sign is accepted for ``-``.  An empty component is written as
nothing between two ``|`` separators; the empty string is the trivial knot.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Sequence

__all__ = [
    "OVER",
    "UNDER",
    "Endpoint",
    "Chord",
    "GaussDiagram",
    "FlatDiagram",
    "GaussCodeError",
    "parse_gauss_code",
    "serialize",
    "crossing_change",
    "virtualize",
    "flatten",
    "to_json",
    "from_json",
]

OVER = "O"
UNDER = "U"

Token = tuple[int, str]


class GaussCodeError(ValueError):
    """Malformed or inconsistent Gauss code.

    ``position`` is the character offset of the offending token when known.
    """

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class Endpoint(NamedTuple):
    chord: int
    passage: str
    component: int
    position: int


class Chord(NamedTuple):
    id: int
    sign: int
    over: Endpoint
    under: Endpoint

    @property
    def is_self_chord(self) -> bool:
        return self.over.component == self.under.component


def _other(passage: str) -> str:
    return UNDER if passage == OVER else OVER


class GaussDiagram:
    """Immutable multi-component Gauss diagram.

    Args:
        components: one sequence of ``(chord, passage)`` tokens per circle, in
            the order met when travelling along the orientation.
        signs: crossing sign (+1 or -1) of every chord.

    The constructor validates that each chord occurs exactly once over and
    once under.  Operations never mutate a diagram; they return new ones.
    """

    def __init__(self, components: Iterable[Iterable[Token]], signs: Mapping[int, int]):
        comps = tuple(tuple((int(c), str(p)) for c, p in comp) for comp in components)
        if not comps:
            raise GaussCodeError("a diagram needs at least one component")
        self._components = comps
        self._signs = dict(signs)
        self._sign_items = tuple(sorted(self._signs.items()))
        self._validate()

    @property
    def components(self) -> tuple[tuple[Token, ...], ...]:
        return self._components

    @property
    def signs(self) -> Mapping[int, int]:
        return MappingProxyType(self._signs)

    def __hash__(self) -> int:
        return hash((self._components, self._sign_items))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaussDiagram):
            return NotImplemented
        return self._components == other._components and self._sign_items == other._sign_items

    def __repr__(self) -> str:
        return f"GaussDiagram({serialize(self, canonical=False)!r})"

    def _validate(self) -> None:
        seen: dict[int, list[str]] = {}
        for comp in self.components:
            for chord, passage in comp:
                if passage not in (OVER, UNDER):
                    raise GaussCodeError(f"bad passage {passage!r} for chord {chord}")
                seen.setdefault(chord, []).append(passage)
        for chord, passages in seen.items():
            if len(passages) != 2:
                raise GaussCodeError(f"chord {chord} appears {len(passages)} time(s), expected 2")
            if sorted(passages) != [OVER, UNDER]:
                raise GaussCodeError(f"chord {chord} has passage {passages[0]} twice")
        if set(seen) != set(self.signs):
            missing = set(seen) ^ set(self.signs)
            raise GaussCodeError(f"sign table does not match chords: {sorted(missing)}")
        for chord, s in self.signs.items():
            if s not in (1, -1):
                raise GaussCodeError(f"chord {chord} has sign {s}, expected +1 or -1")

    # -- basic queries -------------------------------------------------

    @property
    def chord_ids(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self._sign_items)

    @property
    def num_chords(self) -> int:
        return len(self._sign_items)

    @property
    def num_components(self) -> int:
        return len(self.components)

    def sign(self, chord: int) -> int:
        return self.signs[chord]

    @cached_property
    def _endpoints(self) -> dict[int, dict[str, Endpoint]]:
        table: dict[int, dict[str, Endpoint]] = {}
        for k, comp in enumerate(self.components):
            for i, (chord, passage) in enumerate(comp):
                table.setdefault(chord, {})[passage] = Endpoint(chord, passage, k, i)
        return table

    def endpoint(self, chord: int, passage: str) -> Endpoint:
        try:
            return self._endpoints[chord][passage]
        except KeyError:
            raise KeyError(f"unknown chord {chord}") from None

    def chord(self, chord: int) -> Chord:
        ends = self._endpoints.get(chord)
        if ends is None:
            raise KeyError(f"unknown chord {chord}")
        return Chord(chord, self.signs[chord], ends[OVER], ends[UNDER])

    def chords(self) -> list[Chord]:
        return [self.chord(c) for c in self.chord_ids]

    def endpoints(self) -> list[Endpoint]:
        return [
            Endpoint(chord, passage, k, i)
            for k, comp in enumerate(self.components)
            for i, (chord, passage) in enumerate(comp)
        ]

    def is_self_chord(self, chord: int) -> bool:
        return self.chord(chord).is_self_chord

    def self_chords(self, component: int | None = None) -> list[int]:
        out = []
        for c in self.chord_ids:
            ch = self.chord(c)
            if ch.is_self_chord and (component is None or ch.over.component == component):
                out.append(c)
        return out

    def linking_chords(self) -> list[int]:
        return [c for c in self.chord_ids if not self.is_self_chord(c)]

    def is_trivial_diagram(self) -> bool:
        """No classical crossings left (the trivial knot or unlink)."""
        return self.num_chords == 0

    # -- derived diagrams ----------------------------------------------

    def without(self, chords: Iterable[int]) -> "GaussDiagram":
        """Delete the given chords (repeated virtualization)."""
        drop = set(chords)
        comps = [[t for t in comp if t[0] not in drop] for comp in self.components]
        signs = {c: s for c, s in self.signs.items() if c not in drop}
        return GaussDiagram(comps, signs)

    def component_subdiagram(self, component: int) -> "GaussDiagram":
        """Knot diagram of one component, keeping only its self-chords."""
        keep = set(self.self_chords(component))
        comp = [t for t in self.components[component] if t[0] in keep]
        return GaussDiagram([comp], {c: self.signs[c] for c in keep})

    def sublink(self, indices: Sequence[int]) -> "GaussDiagram":
        """Diagram formed by the chosen components and the chords among them."""
        chosen = set(indices)
        keep = {
            c
            for c in self.chord_ids
            if self.chord(c).over.component in chosen and self.chord(c).under.component in chosen
        }
        comps = [[t for t in self.components[k] if t[0] in keep] for k in indices]
        return GaussDiagram(comps, {c: self.signs[c] for c in keep})

    def relabeled(self, mapping: Mapping[int, int]) -> "GaussDiagram":
        comps = [[(mapping[c], p) for c, p in comp] for comp in self.components]
        return GaussDiagram(comps, {mapping[c]: s for c, s in self.signs.items()})

    def reversed(self) -> "GaussDiagram":
        """Reverse the orientation of every component (signs are unchanged)."""
        comps = [tuple(reversed(comp)) for comp in self.components]
        return GaussDiagram(comps, self.signs)

    def disjoint_union(self, other: "GaussDiagram") -> "GaussDiagram":
        shift = max(self.chord_ids, default=0)
        moved = other.relabeled({c: c + shift for c in other.chord_ids})
        signs = dict(self.signs)
        signs.update(moved.signs)
        return GaussDiagram(self.components + moved.components, signs)

    # -- canonical form --------------------------------------------------

    @cached_property
    def canonical(self) -> "GaussDiagram":
        return _canonical(self)

    @cached_property
    def canonical_key(self) -> tuple:
        """Hashable isomorphism invariant (equal iff the diagrams are isomorphic)."""
        c = self.canonical
        return tuple(
            tuple((chord, passage, c.signs[chord]) for chord, passage in comp)
            for comp in c.components
        )

    def is_isomorphic(self, other: "GaussDiagram") -> bool:
        return self.canonical_key == other.canonical_key

    def __str__(self) -> str:
        return serialize(self)


# ---------------------------------------------------------------------------
# canonicalization
# ---------------------------------------------------------------------------

_PASSAGE_RANK = {OVER: 0, UNDER: 1}


def _component_candidates(comp, signs, labels, next_label):
    """All rotations of ``comp`` rendered under an extension of ``labels``."""
    n = len(comp)
    out = []
    for r in range(n):
        lab = dict(labels)
        nxt = next_label
        key = []
        for i in range(n):
            chord, passage = comp[(r + i) % n]
            if chord not in lab:
                lab[chord] = nxt
                nxt += 1
            key.append((lab[chord], _PASSAGE_RANK[passage], 0 if signs[chord] > 0 else 1))
        out.append((tuple(key), r, lab, nxt))
    return out


def _canonical(d: GaussDiagram) -> GaussDiagram:
    """Lexicographically least relabeled rotation, components ordered greedily.

    Components are placed one at a time; at each step the candidate (any
    remaining component, any rotation) giving the least token sequence under
    first-appearance renumbering is kept, with ties carried forward.  Since a
    placed component's rendering never depends on later choices, this yields
    the least key overall, so isomorphic diagrams get identical output.
    Chordless components go last.
    """
    nonempty = [k for k, comp in enumerate(d.components) if comp]
    empties = len(d.components) - len(nonempty)
    # state: (remaining indices, labels, next_label, chosen rotations)
    states = [(tuple(nonempty), {}, 1, ())]
    for _ in range(len(nonempty)):
        best = None
        nxt_states = []
        seen = set()
        for remaining, labels, nl, chosen in states:
            for k in remaining:
                for key, r, lab, nl2 in _component_candidates(d.components[k], d.signs, labels, nl):
                    if best is not None and key > best:
                        continue
                    if best is None or key < best:
                        best = key
                        nxt_states = []
                        seen = set()
                    rest = tuple(x for x in remaining if x != k)
                    sig = (rest, tuple(sorted(lab.items())))
                    if sig in seen:
                        continue
                    seen.add(sig)
                    nxt_states.append((rest, lab, nl2, chosen + ((k, r),)))
        states = nxt_states
    _, labels, _, chosen = states[0]
    comps = []
    for k, r in chosen:
        comp = d.components[k]
        rot = comp[r:] + comp[:r]
        comps.append(tuple((labels[c], p) for c, p in rot))
    comps.extend(() for _ in range(empties))
    signs = {labels[c]: s for c, s in d.signs.items()}
    return GaussDiagram(comps, signs)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"([OU])(\d+)([+\-−])")
_PARTIAL = re.compile(r"([OU])(\d*)")


def parse_gauss_code(text: str) -> GaussDiagram:
    """Parse the ``O1+U2-...|...`` text form into a validated diagram.

    Raises:
        GaussCodeError: on a syntax error (with the character position) or
            when a chord is not mentioned exactly once over and once under
            with the same sign.
    """
    components: list[list[Token]] = [[]]
    signs: dict[int, int] = {}
    first_pos: dict[int, int] = {}
    passages: dict[int, list[str]] = {}
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "|":
            components.append([])
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if m is None:
            partial = _PARTIAL.match(text, i)
            if partial is not None:
                j = partial.end()
                if not partial.group(2):
                    raise GaussCodeError(f"expected a chord number after {ch!r}", j)
                raise GaussCodeError(f"expected a sign + or - after {partial.group(0)!r}", j)
            raise GaussCodeError(f"unexpected character {ch!r}", i)
        passage, num, sgn = m.groups()
        chord = int(num)
        if chord <= 0:
            raise GaussCodeError("chord ids must be positive integers", i)
        s = 1 if sgn == "+" else -1
        if chord in signs:
            if signs[chord] != s:
                raise GaussCodeError(f"sign mismatch for chord {chord}", i)
            if len(passages[chord]) >= 2:
                raise GaussCodeError(f"chord {chord} mentioned more than twice", i)
            if passages[chord][0] == passage:
                raise GaussCodeError(f"chord {chord} has passage {passage} twice", i)
        else:
            signs[chord] = s
            first_pos[chord] = i
            passages[chord] = []
        passages[chord].append(passage)
        components[-1].append((chord, passage))
        i = m.end()
    for chord, ps in passages.items():
        if len(ps) != 2:
            raise GaussCodeError(f"chord {chord} mentioned only once", first_pos[chord])
    return GaussDiagram(components, signs)


def _token_str(chord: int, passage: str, sign: int) -> str:
    return f"{passage}{chord}{'+' if sign > 0 else '-'}"


def serialize(d: GaussDiagram, canonical: bool = True) -> str:
    """Render ``d`` as Gauss code; canonical form unless ``canonical=False``."""
    if canonical:
        d = d.canonical
    return "|".join(
        "".join(_token_str(c, p, d.signs[c]) for c, p in comp) for comp in d.components
    )


def to_json(d: GaussDiagram, canonical: bool = True) -> dict:
    if canonical:
        d = d.canonical
    return {
        "components": [
            [{"chord": c, "passage": p, "sign": d.signs[c]} for c, p in comp]
            for comp in d.components
        ]
    }


def from_json(obj: dict | str) -> GaussDiagram:
    if isinstance(obj, str):
        obj = json.loads(obj)
    comps = []
    signs: dict[int, int] = {}
    for comp in obj["components"]:
        tokens = []
        for tok in comp:
            chord = int(tok["chord"])
            s = int(tok["sign"])
            if signs.setdefault(chord, s) != s:
                raise GaussCodeError(f"sign mismatch for chord {chord}")
            tokens.append((chord, tok["passage"]))
        comps.append(tokens)
    return GaussDiagram(comps, signs)


# ---------------------------------------------------------------------------
# unknotting operations
# ---------------------------------------------------------------------------


def _require(d: GaussDiagram, chord: int) -> None:
    if chord not in d.signs:
        raise KeyError(f"unknown chord {chord}")


def crossing_change(d: GaussDiagram, chord: int) -> GaussDiagram:
    """Swap over/under at ``chord`` and negate its sign."""
    _require(d, chord)
    comps = [[(c, _other(p)) if c == chord else (c, p) for c, p in comp] for comp in d.components]
    signs = dict(d.signs)
    signs[chord] = -signs[chord]
    return GaussDiagram(comps, signs)


def virtualize(d: GaussDiagram, chord: int) -> GaussDiagram:
    """Replace the crossing by a virtual one: the chord is deleted."""
    _require(d, chord)
    return d.without([chord])


@dataclass(frozen=True)
class FlatDiagram:
    """Gauss diagram with the crossing information forgotten.

    A flat crossing still tells its two strands apart (which one crosses the
    other from right to left), so each chord keeps an arrow but loses its sign
    and over/under data.  It is stored as the lift in which every chord is
    positive, i.e. the arrow points from the ``O`` endpoint to the ``U`` one.
    """

    lift: GaussDiagram

    def __post_init__(self):
        if any(s != 1 for s in self.lift.signs.values()):
            raise ValueError("flat lift must have all signs +1")

    @property
    def num_chords(self) -> int:
        return self.lift.num_chords

    @property
    def canonical_key(self) -> tuple:
        return self.lift.canonical_key

    def __str__(self) -> str:
        # arrows written as tail "T" / head "H"
        d = self.lift.canonical
        return "|".join(
            "".join(("T" if p == OVER else "H") + str(c) for c, p in comp) for comp in d.components
        )


def flatten(d: GaussDiagram) -> FlatDiagram:
    lifted = d
    for c in d.chord_ids:
        if d.signs[c] < 0:
            lifted = crossing_change(lifted, c)
    return FlatDiagram(lifted)
