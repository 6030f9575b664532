import dataclasses
import itertools

import pytest

import vkindex.unknotting as unk
from conftest import VIRTUAL_TREFOIL, all_knot_diagrams, random_diagram
from vkindex.families import FamilySpec, generate, single_virtualization_scan
from vkindex.gauss import parse_gauss_code
from vkindex.invariants import UnknottingIndex, lower_bound_knot, writhe_vector
from vkindex.moves import Budget
from vkindex.unknotting import (
    IndexInterval,
    TheoremMismatch,
    UnknottingCertificate,
    UnknottingPlan,
    apply_plan,
    certify,
    search_min,
    verify_theorem,
    virtualization_lower_bound,
)


def test_plan_rejects_overlap_and_missing():
    with pytest.raises(ValueError):
        UnknottingPlan([1], [1])
    with pytest.raises(ValueError):
        apply_plan(parse_gauss_code("O1+U1+"), UnknottingPlan([2]))


def test_empty_plan_is_identity():
    d = parse_gauss_code(VIRTUAL_TREFOIL)
    assert apply_plan(d, UnknottingPlan()) == d


def test_apply_plan_order_independent(rng):
    for _ in range(100):
        d = random_diagram(rng, rng.randint(2, 7))
        ids = list(d.chord_ids)
        rng.shuffle(ids)
        k = rng.randint(0, len(ids))
        v, c = ids[: k // 2], ids[k // 2 : k]
        a = apply_plan(d, UnknottingPlan(v, c))
        b = apply_plan(apply_plan(d, UnknottingPlan(change=c)), UnknottingPlan(v))
        assert a == b


def test_certify_trivial_diagram():
    cert = certify(parse_gauss_code(""), UnknottingPlan())
    assert cert.cost == UnknottingIndex(0, 0) and cert.verify()


def test_certify_virtual_trefoil_by_one_change():
    d = parse_gauss_code(VIRTUAL_TREFOIL)
    cert = certify(d, UnknottingPlan(change=[1]))
    assert cert.cost == UnknottingIndex(0, 1) and cert.verify()
    assert certify(d, UnknottingPlan()) is None


def test_certify_d_by_virtualizing_c():
    d, prof = generate(FamilySpec("D", n=3, p=5))
    cs = [prof.labels[f"c{i}"] for i in range(1, 4)]
    cert = certify(d, UnknottingPlan(cs))
    assert cert is not None and cert.cost == UnknottingIndex(3, 0)


def test_certify_link_family():
    d, prof = generate(FamilySpec("LinkFamily", k=3, n=2, m=2, p=3))
    ts = [c for label, c in prof.labels.items() if label.startswith("t")]
    _, change = prof.plan_chords()
    cert = certify(d, UnknottingPlan(ts, change))
    assert cert is not None and cert.cost == UnknottingIndex(2, 2)
    assert cert.trace.final.num_components == 3


def test_certificate_json_roundtrip_and_tamper():
    d = parse_gauss_code(VIRTUAL_TREFOIL)
    cert = certify(d, UnknottingPlan(change=[2]))
    back = UnknottingCertificate.from_json(cert.to_json())
    assert back.verify() and back.cost == cert.cost
    bad = dataclasses.replace(back, plan=UnknottingPlan())
    assert not bad.verify()
    bad = dataclasses.replace(back, plan=UnknottingPlan(change=[9]))
    assert not bad.verify()


def test_interval_order_check():
    with pytest.raises(ValueError):
        IndexInterval(UnknottingIndex(1, 0), UnknottingIndex(0, 5))
    assert IndexInterval(UnknottingIndex(0, 1), UnknottingIndex(0, 1)).exact
    assert not IndexInterval(UnknottingIndex(0, 1), None).exact


@pytest.mark.parametrize(
    "code, value",
    [("O1+U1+", (0, 0)), (VIRTUAL_TREFOIL, (0, 1)), ("", (0, 0)), ("O1+O2-|U1+U2-", (0, 0))],
)
def test_search_min_small(code, value):
    rep = search_min(parse_gauss_code(code))
    assert rep.interval.lower == rep.interval.upper == UnknottingIndex(*value)
    assert rep.level == "knot" and rep.conclusive and rep.certificate.verify()


def test_search_min_k_upper_1_2():
    d, _ = generate(FamilySpec("K_upper", m=1, p=2))
    rep = search_min(d)
    assert rep.interval.lower == rep.interval.upper == UnknottingIndex(0, 1)


def test_search_min_cap():
    d, _ = generate(FamilySpec("K_upper", m=3, p=5))
    rep = search_min(d, cap=5)
    assert rep.cap_exceeded and rep.interval.upper is None
    assert rep.interval.lower == lower_bound_knot(d)


def test_search_min_threads_agree(rng):
    for _ in range(10):
        d = random_diagram(rng, rng.randint(2, 5))
        a = search_min(d, threads=1)
        b = search_min(d, threads=4)
        assert a.interval == b.interval
        assert (a.certificate is None) == (b.certificate is None)
        if a.certificate:
            assert a.certificate.plan == b.certificate.plan


def _cost_order():
    for n in range(0, 4):
        for m in range(0, 4 - n):
            yield n, m


def test_search_min_dictionary_order_exhaustive():
    # double enumeration: every plan of every cost, certified without pruning
    budget = Budget(r2_expand_depth=0, r3_cap=8, frontier_cap=200)
    for chords in range(4):
        for d in all_knot_diagrams(chords):
            rep = search_min(d, budget)
            ids = d.chord_ids
            first = None
            for n, m in _cost_order():
                if n + m > len(ids):
                    continue
                for v in itertools.combinations(ids, n):
                    rest = [c for c in ids if c not in v]
                    if any(certify(d, UnknottingPlan(v, c), budget) for c in itertools.combinations(rest, m)):
                        first = UnknottingIndex(n, m)
                        break
                if first is not None:
                    break
            assert rep.interval.upper == first, d
            if first is not None:
                assert rep.interval.lower <= first


def test_bound_consistency_random(rng):
    for _ in range(80):
        d = random_diagram(rng, rng.randint(0, 5), rng.randint(1, 2))
        rep = search_min(d)
        if rep.interval.upper is not None:
            assert rep.interval.lower <= rep.interval.upper
            assert rep.certificate.verify()


def test_virtualization_bound():
    d = parse_gauss_code(VIRTUAL_TREFOIL)
    vb = virtualization_lower_bound(d)
    assert vb.value == UnknottingIndex(0, 1) and vb.witness == ()
    d = parse_gauss_code("O1+O2+U1+O3-U2+U3-")
    vb = virtualization_lower_bound(d)
    assert vb.value.virtualizations >= 1
    assert writhe_vector(d.without(vb.witness)).is_symmetric()
    with pytest.raises(ValueError):
        virtualization_lower_bound(parse_gauss_code("O1+|U1+"))


def test_virtualization_bound_never_exceeds_search(rng):
    for _ in range(60):
        d = random_diagram(rng, rng.randint(0, 5))
        rep = search_min(d)
        vb = virtualization_lower_bound(d).value
        assert vb >= lower_bound_knot(d)
        if rep.interval.upper is not None:
            assert vb <= rep.interval.upper


@pytest.mark.parametrize(
    "params, value, regime",
    [
        (dict(n=2, p=5, q=1, r=0), (0, 3), "small"),
        (dict(n=2, p=9, q=5, r=0), (2, 0), "otherwise"),
        (dict(n=3, p=7, q=4, r=0), (2, 2), "middle"),
        (dict(n=3, p=7, q=0, r=2), (2, 3), "negative"),
    ],
)
def test_verify_theorem_d_qr(params, value, regime):
    rep = verify_theorem("D_qr", **params)
    assert rep.passed and rep.regime == regime
    assert rep.lower == rep.upper == rep.claimed == UnknottingIndex(*value)
    assert rep.certificate.verify()


def test_d_qr_example_beyond_odd_labels_is_rejected():
    with pytest.raises(ValueError):
        FamilySpec("D_qr", n=2, p=7, q=5, r=0)


@pytest.mark.parametrize(
    "spec",
    [
        FamilySpec("K_upper", m=2, p=3),
        FamilySpec("K_lower", m=1, p=5),
        FamilySpec("D_npm", n=1, p=7, m=1),
        FamilySpec("LinkFamily", k=2, n=1, m=1, p=2),
    ],
    ids=str,
)
def test_verify_theorem_families(spec):
    rep = verify_theorem(spec)
    assert rep.passed and not rep.failed_checks
    assert rep.to_json()["passed"] is True


def test_verify_theorem_reports_mismatch(monkeypatch):
    real = unk.generate

    def lying(spec):
        d, prof = real(spec)
        return d, dataclasses.replace(prof, unknotting_index=UnknottingIndex(0, 9))

    monkeypatch.setattr(unk, "generate", lying)
    with pytest.raises(TheoremMismatch) as exc:
        verify_theorem(FamilySpec("K_upper", m=1, p=2))
    assert "FAIL" in str(exc.value)
    rep = verify_theorem(FamilySpec("K_upper", m=1, p=2), strict=False)
    assert not rep.passed and rep.upper == UnknottingIndex(0, 1)


@pytest.mark.parametrize("m, p", [(1, 5), (1, 7), (2, 5), (2, 7)])
def test_single_virtualization_closure(m, p):
    # every crossing but d and the odd d_i forces a virtualization
    for row in single_virtualization_scan(m=m, p=p):
        if row.case == 6:
            assert row.lower_bound == UnknottingIndex(0, m)
        elif row.case == 5:
            assert row.lower_bound == UnknottingIndex(0, m + 1)
        else:
            assert row.lower_bound >= UnknottingIndex(1, 0)
        # so a plan spending its one virtualization anywhere still needs m changes
        if row.lower_bound.virtualizations == 0:
            assert row.lower_bound.crossing_changes >= m
