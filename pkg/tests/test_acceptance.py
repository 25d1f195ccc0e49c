"""Acceptance suite: every published integer value, checked exactly, plus the property suites.

Run with pytest, or directly with ``python3 tests/test_acceptance.py`` for a
plain list of pass/fail lines.
"""

import time
from math import comb

import pytest

from acceptance_lines import record
from oracles import box_partitions_poincare, sphere_square_divisor_square
from tcbounds import rings
from tcbounds.algebra import basic_divisor
from tcbounds.bounds import evaluate
from tcbounds.invariants import cup_length, zero_divisor_cup_length

TIME_LIMIT = 60.0


def _interval(text, inv):
    r = evaluate(text, inv)
    return [r.lower, r.upper]


def _check(key, rows):
    """rows: (label, expected, actual, ok); records one line and asserts all rows."""
    bad = [r for r in rows if not r[3]]
    detail = f"{len(rows) - len(bad)}/{len(rows)} rows"
    if bad:
        detail += "; " + "; ".join(f"{lab}: expected {exp}, got {act}" for lab, exp, act, _ in bad)
    record(key, not bad, detail)
    assert not bad, detail


def _eq(label, expected, actual):
    return (label, expected, actual, expected == actual)


def _timed(fn):
    t0 = time.perf_counter()
    rows = fn()
    elapsed = time.perf_counter() - t0
    rows.append(("time", f"< {TIME_LIMIT}s", f"{elapsed:.1f}s", elapsed < TIME_LIMIT))
    return rows


def klein_upper(n):
    k, odd = divmod(n, 2)
    return 3 * k + 3 if odd else 3 * k + 2


def test_criterion_1_small_klein_tc():
    _check("1", _timed(lambda: [
        _eq("TC(K(2))", [5, 5], _interval("K(2)", "tc")),
        _eq("TC(K(3))", [6, 6], _interval("K(3)", "tc")),
    ]))


def test_criterion_2_klein_tc_intervals():
    _check("2", _timed(lambda: [
        _eq(f"TC(K({n}))", [n + 3, klein_upper(n)], _interval(f"K({n})", "tc")) for n in range(4, 9)
    ]))


GN = [(0, 3), (1, 3), (1, 4), (2, 5)]


def test_criterion_3_xg_category_and_cup_length():
    def rows():
        out = []
        for g, n in GN:
            out.append(_eq(f"cat(Xg({g},{n}))", [n + 1, n + 1], _interval(f"Xg({g},{n})", "cat")))
            out.append(_eq(f"cl_GF2(Xg({g},{n}))", n, cup_length(rings.xg(g, n))[0]))
        return out
    _check("3", _timed(rows))


def test_criterion_4a_xg_zcl_witness():
    def rows():
        A = rings.xg(1, 3)
        k, w = zero_divisor_cup_length(A)
        x1 = basic_divisor(A, A.gen_index("x1"))
        y1 = basic_divisor(A, A.gen_index("y1"))
        pattern = sum(f == x1 for f in w.factors) >= 3 and sum(f == y1 for f in w.factors) >= 3
        return [
            ("witness length", ">= 6", len(w), len(w) >= 6),
            ("witness has three x1 and three y1 divisors", True, pattern, pattern),
            _eq("witness recomputes", True, bool(w.value) and w.recompute() == w.value),
        ]
    _check("4a", _timed(rows))


def test_criterion_4b_xg_tc():
    _check("4b", _timed(lambda: [
        _eq("TC(Xg(1,3))", [7, 7], _interval("Xg(1,3)", "tc")),
        _eq("TC(Xg(1,4))", [8, 8], _interval("Xg(1,4)", "tc")),
        _eq("TC(Xg(2,3))", [7, 7], _interval("Xg(2,3)", "tc")),
        _eq("TC(Xg(2,4))", [8, 8], _interval("Xg(2,4)", "tc")),
    ]))


def test_criterion_5_grassmann_cup_length_and_dimension():
    def rows():
        out = []
        for d, n in [(1, 2), (1, 4), (2, 4), (2, 5)]:
            A = rings.grassmann(d, n)
            out.append(_eq(f"cl_Q(Gr({d},{n}))", d * (n - d), cup_length(A)[0]))
            out.append(_eq(f"dim H*(Gr({d},{n}))", comb(n, d), A.dim))
            out.append(_eq(f"Poincare(Gr({d},{n})) vs box partitions", box_partitions_poincare(d, n), A.poincare()))
        return out
    _check("5", _timed(rows))


def test_criterion_6_dold_grassmann_category():
    def rows():
        out = []
        for d, n, ns in [(2, 4, (1,)), (2, 4, (1, 3)), (1, 3, (2, 2))]:
            v = d * (n - d) + ns[0] + len(ns)
            text = f"DG({d},{n};[{','.join(map(str, ns))}])"
            out.append(_eq(f"cat({text})", [v, v], _interval(text, "cat")))
        return out
    _check("6", _timed(rows))


def test_criterion_7_projective_product_cup_length():
    _check("7", _timed(lambda: [
        _eq(f"cl_GF2(P{ns})", ns[0] + len(ns) - 1, cup_length(rings.pps(*ns))[0])
        for ns in [(1, 3), (2, 2), (1, 1, 5)]
    ]))


def test_criterion_8_rational_zcl():
    def rows():
        out = [_eq(f"zcl_Q(CP({n}))", 2 * n, zero_divisor_cup_length(rings.complex_projective(n, "Q"))[0])
               for n in range(1, 6)]
        for n in (1, 2, 3, 4, 5, 6):
            expected = 1 if n % 2 else 2
            out.append(_eq(f"zcl_Q(S({n}))", expected, zero_divisor_cup_length(rings.sphere(n, "Q"))[0]))
            # by hand: z^2 vanishes exactly for odd spheres
            out.append(_eq(f"hand z^2 on S({n}) vanishes", n % 2 == 1, not sphere_square_divisor_square(n)))
        return out
    _check("8", _timed(rows))


def test_criterion_9_equivariant_tc():
    cases = [
        ("Z2[conj,antipodal]{CP(1)*S(3)}", 1, 1, 0),
        ("Z2[conj,antipodal,antipodal]{CP(2)*S(2)*S(3)}", 2, 2, 1),
        ("Z2[conj,antipodal]{CP(3)*S(2)}", 3, 1, 1),
    ]

    def rows():
        out = [_eq(f"TC_Z2({t})", [r + k + 2 * n + 1] * 2, _interval(t, "eqtc")) for t, n, r, k in cases]
        gr = "Z2[conj,antipodal]{Gr(2,4)*S(2)}"
        out.append(_eq(f"TC_Z2({gr})", [2 * 2 * 2 + 1 + 1 + 1] * 2, _interval(gr, "eqtc")))
        return out
    _check("9", _timed(rows))


def test_criterion_10_property_suites():
    """Runs the property module in a fresh interpreter and records whether every case passed."""
    import pathlib
    import subprocess
    import sys

    here = pathlib.Path(__file__).with_name("test_properties.py")
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", str(here)],
                          capture_output=True, text=True, cwd=here.parent)
    code = proc.returncode
    elapsed = time.perf_counter() - t0
    rows = [("property suite exit status", 0, int(code), code == 0),
            ("time", f"< {TIME_LIMIT}s", f"{elapsed:.1f}s", elapsed < TIME_LIMIT)]
    _check("10", rows)


if __name__ == "__main__":
    import sys

    from acceptance_lines import LINES

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    for key in sorted(LINES, key=lambda k: (int(k.rstrip("ab")), k)):
        print(LINES[key])
    sys.exit(1 if failed else 0)
