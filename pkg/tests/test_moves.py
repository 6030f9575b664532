import pytest

from conftest import VIRTUAL_TREFOIL, all_knot_diagrams, braid_closure, random_diagram
from vkindex.families import FamilySpec, generate
from vkindex.gauss import GaussDiagram, crossing_change, flatten, parse_gauss_code
from vkindex.invariants import affine_index_polynomial, component_writhe_vectors, span_total, writhe_vector
from vkindex.moves import (
    Budget,
    Move,
    MoveTrace,
    StaleMoveError,
    apply_move,
    find_expansions,
    find_moves,
    flat_is_trivial,
    greedy_simplify,
    is_trivial,
    project_trace,
    replay,
    trace_from_json,
    trace_to_json,
)


def _r3(d):
    return [m for m in find_moves(d) if m.kind == "R3"]


def _isomorphic_results(d, moves):
    return {apply_move(d, m).canonical_key for m in moves}


def test_kink_has_one_r1():
    d = parse_gauss_code("O1+U1+")
    moves = find_moves(d)
    assert [m.kind for m in moves] == ["R1-"]
    assert apply_move(d, moves[0]).num_chords == 0


def test_parallel_opposite_pair_has_one_r2():
    d = parse_gauss_code("O1+U2-U1+O2-")
    moves = find_moves(d)
    assert [(m.kind, m.site) for m in moves] == [("R2-", (1, 2))]
    assert apply_move(d, moves[0]).num_chords == 0


def test_r2_needs_opposite_signs():
    # the same bigon with equal signs is the virtual trefoil
    for code in ("O1+O2+U1+U2+", "O1-O2-U1-U2-"):
        assert find_moves(parse_gauss_code(code)) == []
    assert [m.kind for m in find_moves(parse_gauss_code("O1+O2-U1+U2-"))] == ["R2-"]


def test_virtual_trefoil_has_no_moves():
    assert find_moves(parse_gauss_code(VIRTUAL_TREFOIL)) == []


# braid relations give R3 triangles with known answers
@pytest.mark.parametrize(
    "left, right",
    [
        ((1, 2, 1), (2, 1, 2)),
        ((-1, -2, -1), (-2, -1, -2)),
        ((1, 2, -1), (-2, 1, 2)),
        ((-1, 2, 1), (2, 1, -2)),
        ((1, -2, -1), (-2, -1, 2)),
        ((-1, -2, 1), (2, -1, -2)),
    ],
)
def test_r3_matches_braid_relations(left, right):
    for tail in ((), (1,), (2, -1), (-2, -2)):
        a = braid_closure(left + tail, 3)
        b = braid_closure(right + tail, 3)
        assert b.canonical_key in _isomorphic_results(a, _r3(a))
        assert a.canonical_key in _isomorphic_results(b, _r3(b))


@pytest.mark.parametrize("word", [(1, -2, 1), (-1, 2, -1), (2, -1, 2), (-2, 1, -2)])
def test_cyclic_triangle_is_not_r3(word):
    # no strand lies over both others, so the triangle cannot slide
    d = braid_closure(word, 3)
    assert _r3(d) == []


def test_r3_is_its_own_inverse_exhaustive():
    for n in (3, 4):
        for d in all_knot_diagrams(n):
            for m in _r3(d):
                e = apply_move(d, m)
                assert m in find_moves(e)
                assert apply_move(e, m) == d


def test_r3_preserves_invariants_exhaustive():
    count = 0
    for n in (3, 4):
        for d in all_knot_diagrams(n):
            for m in _r3(d):
                e = apply_move(d, m)
                count += 1
                assert e.num_chords == d.num_chords
                assert writhe_vector(e) == writhe_vector(d)
                assert affine_index_polynomial(e) == affine_index_polynomial(d)
    assert count > 0


def test_r3_changes_exactly_three_adjacent_pairs():
    # a forbidden move would transpose a single pair of endpoints
    for n in (2, 3):
        for d in all_knot_diagrams(n):
            for m in find_moves(d):
                e = apply_move(d, m)
                if m.kind != "R3":
                    assert e.num_chords < d.num_chords
                    continue
                moved = sum(x != y for x, y in zip(d.components[0], e.components[0]))
                assert moved == 6


def test_no_move_is_a_forbidden_move():
    # forbidden moves swap two adjacent over (or under) endpoints of different chords
    for n in (2, 3):
        for d in all_knot_diagrams(n):
            word = d.components[0]
            forbidden = set()
            for i in range(len(word)):
                j = (i + 1) % len(word)
                (a, p), (b, q) = word[i], word[j]
                if a != b and p == q:
                    w = list(word)
                    w[i], w[j] = w[j], w[i]
                    forbidden.add(GaussDiagram([w], d.signs).canonical_key)
            forbidden.discard(d.canonical_key)
            results = _isomorphic_results(d, find_moves(d))
            assert not results & forbidden


def _walk_checks(d, rng, steps):
    knot = d.num_components == 1
    for _ in range(steps):
        moves = find_moves(d) + rng.sample(find_expansions(d, r1=True), 3)
        m = rng.choice(moves)
        e = apply_move(d, m)
        if knot:
            assert writhe_vector(e) == writhe_vector(d)
        else:
            assert span_total(e).total == span_total(d).total
            assert component_writhe_vectors(e) == component_writhe_vectors(d)
        delta = {"R1-": -1, "R2-": -2, "R3": 0, "R1+": 1, "R2+": 2}[m.kind]
        assert e.num_chords == d.num_chords + delta
        d = e if e.num_chords < 12 else d


def test_random_moves_preserve_writhe_vector(rng):
    for _ in range(25):
        _walk_checks(random_diagram(rng, rng.randint(1, 6)), rng, 20)


def test_random_moves_preserve_span(rng):
    for _ in range(25):
        _walk_checks(random_diagram(rng, rng.randint(1, 6), rng.randint(2, 3)), rng, 20)


def test_trace_json_replays(rng):
    for _ in range(30):
        d = random_diagram(rng, rng.randint(1, 5), rng.randint(1, 2))
        steps, cur = [], d
        for _ in range(6):
            m = rng.choice(find_moves(cur) + find_expansions(cur, r1=True)[:5])
            cur = apply_move(cur, m)
            steps.append(m)
        trace = MoveTrace(d, tuple(steps), cur)
        assert trace.replays()
        back = trace_from_json(trace_to_json(trace))
        assert back.replays()
        assert back.final.canonical_key == cur.canonical_key
        assert [m.to_json() for m in back.steps] == [m.to_json() for m in steps]


def test_move_json_roundtrip():
    m = Move("R3", (((1, "O"), (2, "O")), ((1, "U"), (3, "O")), ((2, "U"), (3, "U"))), "slide")
    assert Move.from_json(m.to_json()) == m


def test_stale_moves_raise():
    d = parse_gauss_code("O1+U1+O2+O3+U2+U3+")
    (m,) = find_moves(d)
    e = apply_move(d, m)
    with pytest.raises(StaleMoveError):
        apply_move(e, m)
    with pytest.raises(StaleMoveError):
        apply_move(parse_gauss_code(VIRTUAL_TREFOIL), Move("R2-", (1, 2), "reduce"))
    with pytest.raises(StaleMoveError):
        apply_move(d, Move("R1-", (9,), "reduce"))
    with pytest.raises(StaleMoveError):
        apply_move(d, Move("R4", (), "reduce"))


def test_greedy_unknots_k_upper_after_plan():
    d, prof = generate(FamilySpec("K_upper", m=2, p=3))
    _, change = prof.plan_chords()
    for c in change:
        d = crossing_change(d, c)
    trace = greedy_simplify(d)
    assert trace.final.num_chords == 0
    assert trace.replays()


def test_greedy_nested_double_kink():
    d = parse_gauss_code("O1+O2-U2-U1+")
    trace = greedy_simplify(d)
    assert trace.final.num_chords == 0 and len(trace) == 2


def test_greedy_leaves_virtual_trefoil_alone():
    d = parse_gauss_code(VIRTUAL_TREFOIL)
    trace = greedy_simplify(d)
    assert trace.final == d and len(trace) == 0


def test_greedy_preserves_writhe(rng):
    for _ in range(100):
        d = random_diagram(rng, rng.randint(0, 7))
        trace = greedy_simplify(d)
        assert writhe_vector(trace.final) == writhe_vector(d)
        assert not [m for m in find_moves(trace.final) if m.kind != "R3"]


def test_empty_is_trivial():
    res = is_trivial(parse_gauss_code(""))
    assert res.verdict == "yes" and len(res.trace) == 0
    assert is_trivial(parse_gauss_code("||")).trivial


def test_virtual_trefoil_inconclusive():
    for budget in (Budget(0, 0, 10), Budget(), Budget(3, 64, 2000)):
        res = is_trivial(parse_gauss_code(VIRTUAL_TREFOIL), budget)
        assert res.verdict == "inconclusive" and res.trace is None


def test_is_trivial_needs_r3():
    # a positive R3 triangle closed up by two kinks' worth of cancelling pairs
    d = braid_closure((1, 2, 1, -2, -1, -2), 3)
    assert [m for m in find_moves(d) if m.kind != "R3"] == []
    res = is_trivial(d)
    assert res.trivial and res.trace.replays()
    assert res.trace.final.num_components == 3


def test_is_trivial_soundness(rng):
    small = Budget(1, 8, 200)
    for _ in range(150):
        d = random_diagram(rng, rng.randint(1, 5))
        res = is_trivial(d, small)
        if res.trivial:
            assert writhe_vector(d).is_zero()
            assert res.trace.replays() and res.trace.final.num_chords == 0


def test_link_trivial_keeps_components():
    d = parse_gauss_code("O1+O2-|U1+U2-")
    res = is_trivial(d)
    assert res.trivial and res.trace.final.num_components == 2


def test_flat_kink_and_flat_virtual_trefoil():
    assert flat_is_trivial(flatten(parse_gauss_code("O1+U1+"))).trivial
    # a flat crossing change is free, so the virtual trefoil flattens to a trivial curve
    res = flat_is_trivial(parse_gauss_code(VIRTUAL_TREFOIL))
    assert res.trivial and res.trace.replays()


def test_flat_asymmetric_writhe_never_trivial(rng):
    for _ in range(150):
        d = random_diagram(rng, rng.randint(2, 5))
        if not writhe_vector(d).is_symmetric():
            assert not flat_is_trivial(d, Budget(1, 8, 200)).trivial


def test_flat_moves_preserve_flat_writhe(rng):
    # J_n - J_-n survives crossing changes, so flat moves must keep it
    def odd_part(d):
        w = writhe_vector(d)
        return {abs(k): w[abs(k)] - w[-abs(k)] for k in w.support() if w[k] != w[-k]}

    for _ in range(60):
        f = flatten(random_diagram(rng, rng.randint(1, 6))).lift
        for m in find_moves(f, flat=True) + find_expansions(f, flat=True)[:4]:
            out = apply_move(f, m)
            assert odd_part(out) == odd_part(f)


def test_d_npm_flat_after_virtualizing_c():
    d, prof = generate(FamilySpec("D_npm", n=1, p=7, m=1))
    virt, _ = prof.plan_chords()
    res = flat_is_trivial(d.without(virt))
    assert res.trivial


def test_flat_subsumption_with_projected_trace(rng):
    checked = 0
    for _ in range(200):
        d = random_diagram(rng, rng.randint(1, 5), rng.randint(1, 2))
        res = is_trivial(d, Budget(1, 8, 200))
        if not res.trivial:
            continue
        checked += 1
        proj = project_trace(res.trace)
        assert proj.initial == flatten(d).lift
        assert proj.replays() and proj.final.num_chords == 0
        assert flat_is_trivial(d, Budget(1, 8, 200)).trivial
    assert checked >= 10


def test_projection_commutes_with_moves(rng):
    for _ in range(100):
        d = random_diagram(rng, rng.randint(1, 5), rng.randint(1, 2))
        m = rng.choice(find_moves(d) + find_expansions(d, r1=True))
        trace = MoveTrace(d, (m,), apply_move(d, m))
        assert project_trace(trace).final == flatten(trace.final).lift

