import json

import pytest

from tcbounds import bounds
from tcbounds.bounds import (
    EvalOptions, bundle_view, canonical, connectivity, cover_size, dimension, evaluate,
    list_facts, list_rules, orbit_space,
)
from tcbounds.errors import InconsistentBounds, NotInCatalog, RingUnavailable, UnsupportedCombination
from tcbounds.expr import CP, PPS, RP, Gpps, Klein, Sphere, SurfaceN, Torus, Xg
from tcbounds.parser import parse_space_expr as P


@pytest.mark.parametrize("text,inv,interval", [
    ("S(3)", "cat", (2, 2)),
    ("S(2)", "tc", (3, 3)),
    ("S(3)", "tc", (2, 2)),
    ("T(3)", "tc", (4, 4)),
    ("CP(3)", "tc", (7, 7)),
    ("Gr(2,4)", "cat", (5, 5)),
    ("Gr(2,4)", "tc", (9, 9)),
    ("RP(3)", "cat", (4, 4)),
    ("K(2)", "tc", (5, 5)),
    ("K(5)", "tc", (8, 9)),
    ("Xg(2,4)", "tc", (8, 8)),
    ("DG(2,4;[1,3])", "cat", (7, 7)),
    ("X(SigN(3);(2,2),(3,2))", "cat", (5, 5)),
    ("Z2[conj,antipodal]{CP(1)*S(3)}", "eqtc", (4, 4)),
    ("Z2[refl(2),antipodal]{S(3)*SigO(2)}", "eqcat", (4, 4)),
])
def test_intervals(text, inv, interval):
    assert evaluate(text, inv).interval == interval


def test_canonical_names():
    assert canonical(RP(1)) == Sphere(1) == canonical(Torus(1))
    assert canonical(P("SigO(0)")) == Sphere(2)
    assert canonical(SurfaceN(1)) == RP(2)
    assert canonical(Xg(2, 2)) == SurfaceN(3)
    assert canonical(P("Gr(1,4)")) == CP(3) == canonical(P("Gr(3,4)"))
    assert canonical(P("P(4)")) == RP(4)
    assert canonical(P("X(S(1);(1,1),(1,1))")) == Klein(3)
    assert canonical(P("X(SigN(2);(1,1))")) == Xg(1, 3)
    assert canonical(P("X(RP(2);(3,0),(2,0))")) == PPS((2, 2, 3))
    assert canonical(P("X(RP(3);(2,0))")) == Gpps(RP(3), ((2, 0),))


def test_aliases_share_results():
    assert evaluate("K(3)", "tc") is evaluate(Klein(3), "TC")


def test_dimension_and_connectivity():
    assert dimension(P("DG(2,4;[1,3])")) == 12
    assert dimension(P("X(SigN(3);(2,2),(3,2))")) == 7
    assert connectivity(P("S(3)*S(5)")) == 2
    assert connectivity(P("K(3)")) == 0


def test_derivation_tight_and_cited():
    r = evaluate("K(4)", "tc")
    assert {s.side for s in r.derivation} >= {"lower", "upper"}
    for s in r.derivation:
        if s.side == "lower":
            assert s.value == r.lower
        elif s.side == "upper" and not s.informational:
            assert s.value == r.upper
        assert s.cite
    assert all(leaf.cite for leaf in r.leaves())


def test_json_is_stable():
    a = evaluate("Xg(1,3)", "tc").to_json()
    b = evaluate("Xg(1,3)", "tc").to_json()
    assert a == b
    doc = json.loads(a)
    assert doc["lower"] == doc["upper"] == 7 and doc["exact"]


def test_invariant_must_match_expression():
    with pytest.raises(UnsupportedCombination):
        evaluate("S(2)", "eqtc")
    with pytest.raises(UnsupportedCombination):
        evaluate("Z2[antipodal]{S(2)}", "tc")
    with pytest.raises(ValueError):
        evaluate("S(2)", "volume")


def test_unknown_rule_rejected():
    with pytest.raises(ValueError):
        EvalOptions(disabled={"Z9"})


def test_field_restriction_changes_computation():
    # with the cited value switched off only the computed zero-divisor bound remains
    q_only = evaluate("CP(2)", "tc", EvalOptions(fields=("Q",), disabled={"L4"}))
    gf2_only = evaluate("CP(2)", "tc", EvalOptions(fields=("GF2",), disabled={"L4"}))
    assert q_only.lower == 5
    assert gf2_only.lower == 4


def test_strict_raises_where_default_skips():
    opts = EvalOptions(max_tensor_dim=10)
    r = evaluate("K(4)", "tc", opts)
    assert any("skipped" in n for n in r.notes)
    with pytest.raises(RingUnavailable):
        evaluate("K(4)", "tc", EvalOptions(max_tensor_dim=10, strict=True))


def test_disabling_widens():
    full = evaluate("Xg(1,3)", "tc")
    weak = evaluate("Xg(1,3)", "tc", EvalOptions(disabled={"U8d", "L4"}))
    assert weak.lower <= full.lower and (weak.upper is None or weak.upper >= full.upper)


def test_inconsistent_bounds_detected(monkeypatch):
    monkeypatch.setattr(bounds, "_computed", lambda what, e, field, cap: 40)
    with pytest.raises(InconsistentBounds):
        evaluate("S(2)", "cat", EvalOptions(max_tensor_dim=12345))


@pytest.mark.parametrize("text,action,kind,size", [
    ("T(4)", "conj", "motion", 7),
    ("S(1)", "conj", "motion", 3),
    ("CP(3)", "conj", "motion", 7),
])
def test_cover_catalog(text, action, kind, size):
    assert cover_size(P(text), action, kind) == size


def test_cover_catalog_miss():
    with pytest.raises(NotInCatalog):
        cover_size(P("K(3)"), "conj")


def test_bundle_views():
    v = bundle_view(P("K(3)"))
    assert v is not None
    assert bundle_view(P("S(3)")) is None


def test_free_orbit_space():
    assert orbit_space([(Sphere(3), "antipodal")]) == RP(3)


def test_rule_and_fact_listing():
    rules = list_rules()
    ids = [r[0] for r in rules]
    assert len(ids) == len(set(ids)) == 40
    assert all(src for *_, src in rules)
    assert list_facts()
