import itertools
import random

import pytest

from vkindex.gauss import OVER, UNDER, GaussDiagram


def random_diagram(rng: random.Random, chords: int, components: int = 1) -> GaussDiagram:
    """Uniform-ish random diagram: endpoints shuffled, then cut into circles."""
    tokens = [(c, p) for c in range(1, chords + 1) for p in (OVER, UNDER)]
    rng.shuffle(tokens)
    cuts = sorted(rng.randint(0, len(tokens)) for _ in range(components - 1))
    comps, prev = [], 0
    for cut in cuts + [len(tokens)]:
        comps.append(tokens[prev:cut])
        prev = cut
    signs = {c: rng.choice((1, -1)) for c in range(1, chords + 1)}
    return GaussDiagram(comps, signs)


def all_knot_diagrams(chords: int, signed: bool = True):
    """Every one-component diagram with the given chord count, up to isomorphism."""
    seen = set()
    if chords == 0:
        yield GaussDiagram([[]], {})
        return
    rest = [(c, p) for c in range(1, chords + 1) for p in (OVER, UNDER)]
    # fix the first token as O1 to cut down rotations and relabellings
    rest.remove((1, OVER))
    seen_words = set()
    for perm in itertools.permutations(rest):
        word = ((1, OVER),) + perm
        # relabel by first appearance
        order = {}
        for c, _ in word:
            order.setdefault(c, len(order) + 1)
        word = tuple((order[c], p) for c, p in word)
        if word in seen_words:
            continue
        seen_words.add(word)
        for signs in itertools.product((1, -1), repeat=chords) if signed else [(1,) * chords]:
            d = GaussDiagram([word], dict(zip(range(1, chords + 1), signs)))
            key = d.canonical_key
            if key not in seen:
                seen.add(key)
                yield d


def braid_closure(word, strands: int) -> GaussDiagram:
    """Closure of a braid word; generator +i has the left strand over."""
    perm = list(range(strands))
    tokens = {s: [] for s in range(strands)}
    signs = {}
    for c, g in enumerate(word, 1):
        i = abs(g) - 1
        left, right = perm[i], perm[i + 1]
        over, under = (left, right) if g > 0 else (right, left)
        tokens[over].append((c, OVER))
        tokens[under].append((c, UNDER))
        signs[c] = 1 if g > 0 else -1
        perm[i], perm[i + 1] = right, left
    nxt = {perm[j]: j for j in range(strands)}
    seen, comps = set(), []
    for s in range(strands):
        if s in seen:
            continue
        comp, t = [], s
        while t not in seen:
            seen.add(t)
            comp += tokens[t]
            t = nxt[t]
        comps.append(comp)
    return GaussDiagram(comps, signs)


VIRTUAL_TREFOIL = "O1+O2+U1+U2+"


@pytest.fixture
def rng():
    return random.Random(20261014)


# one PASS/FAIL line per acceptance criterion, printed after the run

_CRITERIA: dict[str, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(key, text): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    key, text = mark.args
    entry = _CRITERIA.setdefault(key, [text, True, 0.0, "", 0, 0])
    entry[1] = entry[1] and rep.passed
    entry[2] += rep.duration
    entry[4] += 1
    entry[5] += rep.failed
    if rep.failed and not entry[3]:
        entry[3] = str(rep.longrepr.reprcrash.message if hasattr(rep.longrepr, "reprcrash") else rep.longrepr)
        entry[3] = entry[3].splitlines()[0][:160]


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: (int(k.split(".")[0].rstrip("abcdef")), k)):
        text, ok, secs, why, runs, failed = _CRITERIA[key]
        line = f"criterion {key:<6} {'PASS' if ok else 'FAIL'}  {secs:7.2f}s  {text}"
        if not ok:
            line += f"  [{failed}/{runs} failed; first: {why}]"
        terminalreporter.write_line(line)
