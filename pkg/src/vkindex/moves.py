"""Classical Reidemeister moves on Gauss diagrams and triviality search.

Move kinds are ``R1-``/``R2-`` (remove one or two chords), ``R1+``/``R2+``
(insert them) and ``R3`` (slide a strand across a crossing).  Virtual moves
are identities on Gauss diagrams and do not appear.

Sites identify endpoints by ``(chord, passage)`` so that a recorded trace can
be replayed on the diagram it came from.  Insertions create chords numbered
after the current maximum id.

R3 admissibility.  The three chords ``a`` (top over middle), ``b`` (top over
bottom) and ``c`` (middle over bottom) meet in three adjacent endpoint pairs.
With ``t``, ``u``, ``v`` equal to +1 when the top strand meets ``a`` before
``b``, the middle strand ``a`` before ``c`` and the bottom strand ``b`` before
``c``, a planar triangle exists exactly when, for some handedness ``h``::

    sign(a) = h*t*u,   sign(b) = h*t*v,   sign(c) = h*u*v

Flat diagrams are handled through their all-positive lift: a flat move is
allowed when some choice of crossing data makes it a classical one.
"""

from __future__ import annotations

import heapq
import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from .gauss import OVER, UNDER, FlatDiagram, GaussDiagram, crossing_change, flatten

__all__ = [
    "Move",
    "MoveTrace",
    "Budget",
    "SearchResult",
    "StaleMoveError",
    "find_moves",
    "find_expansions",
    "apply_move",
    "replay",
    "greedy_simplify",
    "is_trivial",
    "flat_is_trivial",
    "project_trace",
    "trace_to_json",
    "trace_from_json",
]

Site = tuple


class StaleMoveError(ValueError):
    """The move does not apply to the given diagram."""


@dataclass(frozen=True)
class Move:
    kind: str
    site: Site
    direction: str
    flat: bool = False

    def to_json(self) -> dict:
        return {"kind": self.kind, "site": _site_to_json(self.site), "direction": self.direction,
                "flat": self.flat}

    @classmethod
    def from_json(cls, obj: dict) -> "Move":
        return cls(obj["kind"], _site_from_json(obj["site"]), obj["direction"], bool(obj.get("flat", False)))


def _site_to_json(site: Any) -> Any:
    if isinstance(site, tuple):
        return [_site_to_json(x) for x in site]
    return site


def _site_from_json(obj: Any) -> Any:
    if isinstance(obj, list):
        return tuple(_site_from_json(x) for x in obj)
    return obj


@dataclass(frozen=True)
class MoveTrace:
    initial: GaussDiagram
    steps: tuple[Move, ...]
    final: GaussDiagram

    def replays(self) -> bool:
        try:
            return replay(self.initial, self.steps).canonical_key == self.final.canonical_key
        except StaleMoveError:
            return False

    def __len__(self) -> int:
        return len(self.steps)


def trace_to_json(trace: MoveTrace) -> dict:
    from .gauss import serialize

    return {
        "initial": serialize(trace.initial, canonical=False),
        "steps": [m.to_json() for m in trace.steps],
        "final": serialize(trace.final, canonical=False),
    }


def trace_from_json(obj: dict | str) -> MoveTrace:
    from .gauss import parse_gauss_code

    if isinstance(obj, str):
        obj = json.loads(obj)
    return MoveTrace(
        parse_gauss_code(obj["initial"]),
        tuple(Move.from_json(m) for m in obj["steps"]),
        parse_gauss_code(obj["final"]),
    )


# ---------------------------------------------------------------------------
# adjacency helpers
# ---------------------------------------------------------------------------


def _pos(d: GaussDiagram, e: tuple[int, str]) -> tuple[int, int]:
    ep = d.endpoint(*e)
    return ep.component, ep.position


def _follows(d: GaussDiagram, e1, e2) -> bool:
    """True when ``e2`` comes right after ``e1`` along the orientation."""
    k1, i1 = _pos(d, e1)
    k2, i2 = _pos(d, e2)
    return k1 == k2 and (i1 + 1) % len(d.components[k1]) == i2


def _adjacent(d: GaussDiagram, e1, e2) -> bool:
    return e1 != e2 and (_follows(d, e1, e2) or _follows(d, e2, e1))


def _other(p: str) -> str:
    return UNDER if p == OVER else OVER


# ---------------------------------------------------------------------------
# move detection
# ---------------------------------------------------------------------------


def _r1_sites(d: GaussDiagram) -> list[Site]:
    return [(c,) for c in d.chord_ids if _adjacent(d, (c, OVER), (c, UNDER))]


def _r2_ok(d: GaussDiagram, x: int, y: int, flat: bool) -> bool:
    if flat:
        return _adjacent(d, (x, OVER), (y, UNDER)) and _adjacent(d, (x, UNDER), (y, OVER))
    return (
        d.signs[x] == -d.signs[y]
        and _adjacent(d, (x, OVER), (y, OVER))
        and _adjacent(d, (x, UNDER), (y, UNDER))
    )


def _r2_sites(d: GaussDiagram, flat: bool) -> list[Site]:
    return [(x, y) for x, y in itertools.combinations(d.chord_ids, 2) if _r2_ok(d, x, y, flat)]


def _triangles(d: GaussDiagram) -> list[tuple]:
    """Triples of adjacent endpoint pairs joining three chords in a cycle."""
    found = set()
    ends = [(ep.chord, ep.passage) for ep in d.endpoints()]
    for e1 in ends:
        for e2 in ends:
            if e1[0] >= e2[0] or not _follows(d, e1, e2) and not _follows(d, e2, e1):
                continue
            x, y = e1[0], e2[0]
            f1 = (x, _other(e1[1]))
            f2 = (y, _other(e2[1]))
            for g1 in ends:
                z = g1[0]
                if z in (x, y) or not _adjacent(d, f1, g1):
                    continue
                g2 = (z, _other(g1[1]))
                if _adjacent(d, f2, g2):
                    pairs = frozenset(
                        frozenset(p) for p in ((e1, e2), (f1, g1), (f2, g2))
                    )
                    found.add(pairs)
    out = []
    for pairs in found:
        ordered = tuple(sorted(tuple(sorted(p)) for p in pairs))
        out.append(ordered)
    return sorted(out)


def _orient(d: GaussDiagram, first, second) -> tuple[int, ...]:
    """Possible values (+1 first-then-second, -1 reverse) along a strand."""
    vals = []
    if _follows(d, first, second):
        vals.append(1)
    if _follows(d, second, first):
        vals.append(-1)
    return tuple(vals)


def _r3_signed_ok(d: GaussDiagram, pairs: tuple) -> bool:
    top = bottom = middle = None
    for p in pairs:
        passages = sorted(e[1] for e in p)
        if passages == [OVER, OVER]:
            top = p
        elif passages == [UNDER, UNDER]:
            bottom = p
        else:
            middle = p
    if top is None or bottom is None or middle is None:
        return False
    (mo,) = [e for e in middle if e[1] == OVER]
    (mu,) = [e for e in middle if e[1] == UNDER]
    c, a = mo[0], mu[0]
    top_chords = {e[0] for e in top}
    bottom_chords = {e[0] for e in bottom}
    if top_chords != {a} | (top_chords - {a}) or a not in top_chords or c not in bottom_chords:
        return False
    (b,) = top_chords - {a}
    if bottom_chords != {b, c}:
        return False
    sa, sb, sc = d.signs[a], d.signs[b], d.signs[c]
    for t in _orient(d, (a, OVER), (b, OVER)):
        for u in _orient(d, (a, UNDER), (c, OVER)):
            for v in _orient(d, (b, UNDER), (c, UNDER)):
                for h in (1, -1):
                    if sa == h * t * u and sb == h * t * v and sc == h * u * v:
                        return True
    return False


def _r3_ok(d: GaussDiagram, pairs: tuple, flat: bool) -> bool:
    if not flat:
        return _r3_signed_ok(d, pairs)
    chords = sorted({e[0] for p in pairs for e in p})
    for flips in itertools.product((False, True), repeat=3):
        lifted = d
        for chord, flip in zip(chords, flips):
            if flip:
                lifted = crossing_change(lifted, chord)
        relabeled = tuple(
            tuple((e[0], _other(e[1]) if flips[chords.index(e[0])] else e[1]) for e in p)
            for p in pairs
        )
        if _r3_signed_ok(lifted, relabeled):
            return True
    return False


def find_moves(d: GaussDiagram, flat: bool = False) -> list[Move]:
    """All reducing R1/R2 moves and all R3 moves of ``d``, in a fixed order."""
    moves = [Move("R1-", s, "reduce", flat) for s in _r1_sites(d)]
    moves += [Move("R2-", s, "reduce", flat) for s in _r2_sites(d, flat)]
    moves += [Move("R3", pairs, "slide", flat) for pairs in _triangles(d) if _r3_ok(d, pairs, flat)]
    return moves


def _reductions(d: GaussDiagram, flat: bool) -> list[Move]:
    moves = [Move("R1-", s, "reduce", flat) for s in _r1_sites(d)]
    return moves + [Move("R2-", s, "reduce", flat) for s in _r2_sites(d, flat)]


def _gaps(d: GaussDiagram) -> list[tuple[int, int]]:
    return [(k, g) for k, comp in enumerate(d.components) for g in range(max(1, len(comp)))]


def find_expansions(d: GaussDiagram, flat: bool = False, r1: bool = False) -> list[Move]:
    """Chord-inserting moves: every R2 insertion (and R1 if asked)."""
    moves = []
    gaps = _gaps(d)
    if r1:
        for k, g in gaps:
            for first in (OVER, UNDER):
                for s in ((1,) if flat else (1, -1)):
                    moves.append(Move("R1+", (k, g, first, s), "expand", flat))
    for (k1, g1), (k2, g2) in itertools.combinations_with_replacement(gaps, 2):
        for parallel in (True, False):
            if flat:
                options = [(OVER, UNDER, 1, 1)]
            else:
                options = [(OVER, OVER, 1, -1), (OVER, OVER, -1, 1)]
            for px, py, sx, sy in options:
                moves.append(Move("R2+", (k1, g1, k2, g2, px, py, sx, sy, parallel), "expand", flat))
    return moves


# ---------------------------------------------------------------------------
# applying moves
# ---------------------------------------------------------------------------


def _insert(d: GaussDiagram, inserts: list[tuple[int, int, list]], signs: dict) -> GaussDiagram:
    comps = [list(comp) for comp in d.components]
    # insert from the back so earlier gap indices stay valid; same gap keeps order
    for k, g, tokens in sorted(inserts, key=lambda x: (x[0], x[1]), reverse=True):
        comps[k][g:g] = tokens
    new_signs = dict(d.signs)
    new_signs.update(signs)
    return GaussDiagram(comps, new_signs)


def apply_move(d: GaussDiagram, move: Move) -> GaussDiagram:
    """Apply ``move`` after re-checking that it is legal on ``d``.

    Raises:
        StaleMoveError: when the site is missing or the move is not legal.
    """
    flat = move.flat
    try:
        if move.kind == "R1-":
            (c,) = move.site
            if not _adjacent(d, (c, OVER), (c, UNDER)):
                raise StaleMoveError(f"chord {c} is not a kink")
            return d.without([c])
        if move.kind == "R2-":
            x, y = move.site
            if not _r2_ok(d, x, y, flat):
                raise StaleMoveError(f"chords {x}, {y} do not form an R2 pair")
            return d.without([x, y])
        if move.kind == "R3":
            pairs = move.site
            if not _r3_ok(d, pairs, flat):
                raise StaleMoveError("not an R3 triangle")
            comps = [list(comp) for comp in d.components]
            for e1, e2 in pairs:
                if not _adjacent(d, e1, e2):
                    raise StaleMoveError("R3 pair not adjacent")
                k1, i1 = _pos(d, e1)
                k2, i2 = _pos(d, e2)
                comps[k1][i1], comps[k2][i2] = comps[k2][i2], comps[k1][i1]
            return GaussDiagram(comps, d.signs)
        new_id = max(d.chord_ids, default=0) + 1
        if move.kind == "R1+":
            k, g, first, s = move.site
            tokens = [(new_id, first), (new_id, _other(first))]
            return _insert(d, [(k, g, tokens)], {new_id: s})
        if move.kind == "R2+":
            k1, g1, k2, g2, px, py, sx, sy, parallel = move.site
            x, y = new_id, new_id + 1
            first = [(x, px), (y, py)]
            second = [(x, _other(px)), (y, _other(py))]
            if not parallel:
                second.reverse()
            if (k1, g1) == (k2, g2):
                out = _insert(d, [(k1, g1, first + second)], {x: sx, y: sy})
            else:
                out = _insert(d, [(k1, g1, first), (k2, g2, second)], {x: sx, y: sy})
            if not _r2_ok(out, x, y, flat):
                raise StaleMoveError("inserted chords do not form an R2 pair")
            return out
    except (KeyError, IndexError, ValueError) as exc:
        if isinstance(exc, StaleMoveError):
            raise
        raise StaleMoveError(str(exc)) from exc
    raise StaleMoveError(f"unknown move kind {move.kind!r}")


def replay(d: GaussDiagram, steps: Iterable[Move]) -> GaussDiagram:
    for m in steps:
        d = apply_move(d, m)
    return d


# ---------------------------------------------------------------------------
# simplification and search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Budget:
    """Search limits for triviality detection.

    ``r2_expand_depth`` caps chord insertions along one path, ``r3_cap`` the R3
    moves along one path, ``frontier_cap`` the number of distinct diagrams
    explored, and ``r3_lookahead`` the R3-only depth greedy simplification
    tries in order to unlock a reduction.
    """

    r2_expand_depth: int = 2
    r3_cap: int = 64
    frontier_cap: int = 100_000
    r3_lookahead: int = 3

    @classmethod
    def from_mapping(cls, values: dict) -> "Budget":
        known = {k: int(v) for k, v in values.items() if k in cls.__dataclass_fields__}
        return cls(**known)


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a triviality search; ``trace`` is set only when trivial."""

    trivial: bool
    trace: MoveTrace | None
    explored: int = 0

    @property
    def verdict(self) -> str:
        return "yes" if self.trivial else "inconclusive"

    def __bool__(self) -> bool:
        return self.trivial


def _reduce_fully(d: GaussDiagram, flat: bool, steps: list[Move]) -> GaussDiagram:
    while True:
        red = _reductions(d, flat)
        if not red:
            return d
        d = apply_move(d, red[0])
        steps.append(red[0])


def _r3_unlock(d: GaussDiagram, flat: bool, depth: int) -> list[Move] | None:
    """Shortest R3-only sequence (up to ``depth``) after which a reduction exists."""
    frontier = [(d, [])]
    seen = {d.canonical_key}
    for _ in range(depth):
        nxt = []
        for cur, path in frontier:
            for m in find_moves(cur, flat):
                if m.kind != "R3":
                    continue
                new = apply_move(cur, m)
                key = new.canonical_key
                if key in seen:
                    continue
                seen.add(key)
                if _reductions(new, flat):
                    return path + [m]
                nxt.append((new, path + [m]))
        frontier = nxt
    return None


def _greedy(d: GaussDiagram, flat: bool, budget: Budget) -> MoveTrace:
    steps: list[Move] = []
    cur = _reduce_fully(d, flat, steps)
    r3_used = 0
    while cur.num_chords and r3_used < budget.r3_cap:
        unlock = _r3_unlock(cur, flat, min(budget.r3_lookahead, budget.r3_cap - r3_used))
        if unlock is None:
            break
        for m in unlock:
            cur = apply_move(cur, m)
            steps.append(m)
        r3_used += len(unlock)
        cur = _reduce_fully(cur, flat, steps)
    return MoveTrace(d, tuple(steps), cur)


def greedy_simplify(d: GaussDiagram, budget: Budget | None = None) -> MoveTrace:
    """Reduce with R1/R2 to a fixpoint, using short R3 detours to unlock more."""
    return _greedy(d, False, budget or Budget())


def _is_target(d: GaussDiagram, components: int) -> bool:
    return d.num_chords == 0 and d.num_components == components


def _search(d: GaussDiagram, flat: bool, budget: Budget) -> SearchResult:
    greedy = _greedy(d, flat, budget)
    if _is_target(greedy.final, d.num_components):
        return SearchResult(True, greedy, 1)
    start = greedy.final
    # best-first over (chords, insertions used, R3 used, canonical key)
    counter = itertools.count()
    heap = [(start.num_chords, 0, 0, start.canonical_key, next(counter), start, list(greedy.steps))]
    best_seen = {start.canonical_key: (0, 0)}
    explored = 0
    while heap and explored < budget.frontier_cap:
        _, ins, r3, _, _, cur, path = heapq.heappop(heap)
        explored += 1
        candidates = [m for m in find_moves(cur, flat) if m.kind == "R3"] if r3 < budget.r3_cap else []
        if ins < budget.r2_expand_depth:
            candidates += find_expansions(cur, flat)
        for m in candidates:
            try:
                new = apply_move(cur, m)
            except StaleMoveError:
                continue
            steps = path + [m]
            new = _reduce_fully(new, flat, steps)
            n_ins = ins + (m.kind == "R2+")
            n_r3 = r3 + (m.kind == "R3")
            if _is_target(new, d.num_components):
                trace = MoveTrace(d, tuple(steps), new)
                return SearchResult(True, trace, explored)
            key = new.canonical_key
            prev = best_seen.get(key)
            if prev is not None and prev[0] <= n_ins and prev[1] <= n_r3:
                continue
            best_seen[key] = (n_ins, n_r3)
            heapq.heappush(heap, (new.num_chords, n_ins, n_r3, key, next(counter), new, steps))
    return SearchResult(False, None, explored)


def is_trivial(d: GaussDiagram, budget: Budget | None = None) -> SearchResult:
    """Budgeted search for a move sequence to the trivial knot or unlink.

    A ``yes`` comes with a replayable trace ending at a diagram with no chords
    and the same number of components.  Failure is only ever inconclusive.
    """
    return _search(d, False, budget or Budget())


def flat_is_trivial(f: FlatDiagram | GaussDiagram, budget: Budget | None = None) -> SearchResult:
    if isinstance(f, GaussDiagram):
        f = flatten(f)
    return _search(f.lift, True, budget or Budget())


def _project_move(d: GaussDiagram, m: Move) -> Move:
    def flip(e):
        return (e[0], _other(e[1])) if d.signs[e[0]] < 0 else e

    if m.kind == "R3":
        site = tuple(sorted(tuple(sorted(flip(e) for e in p)) for p in m.site))
    elif m.kind == "R1+":
        k, g, first, s = m.site
        site = (k, g, first if s > 0 else _other(first), 1)
    elif m.kind == "R2+":
        k1, g1, k2, g2, px, py, sx, sy, parallel = m.site
        px, py = (px if sx > 0 else _other(px)), (py if sy > 0 else _other(py))
        site = (k1, g1, k2, g2, px, py, 1, 1, parallel)
    else:
        site = m.site
    return Move(m.kind, site, m.direction, True)


def project_trace(trace: MoveTrace) -> MoveTrace:
    """The flat image of a classical trace, as moves on all-positive lifts."""
    cur, steps = trace.initial, []
    for m in trace.steps:
        steps.append(_project_move(cur, m))
        cur = apply_move(cur, m)
    start = flatten(trace.initial).lift
    return MoveTrace(start, tuple(steps), replay(start, steps))
