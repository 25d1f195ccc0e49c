"""Constructors for the cohomology rings of the supported space families.

Every constructor checks the Poincare polynomial of what it built against an
independent count and raises :class:`ValidationFailure` on disagreement.
Constructors with only integer parameters are memoized; the rings are
immutable, so sharing instances is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .algebra import (
    Element,
    GeneratorSpec,
    GradedAlgebra,
    Presentation,
    adjoin_root,
    attach_steenrod,
    build_algebra,
    tensor,
    unit_algebra,
)
from .errors import BadAlpha, BadParameter, BadW1, FieldMismatch, MixedAmbient, ValidationFailure
from .linalg import FieldTag


def _field(field) -> FieldTag:
    return FieldTag.parse(field)


def _poly_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _validate(A: GradedAlgebra, expected: Sequence[int]) -> GradedAlgebra:
    expected = list(expected)
    while len(expected) > 1 and expected[-1] == 0:
        expected.pop()
    if A.poincare() != expected:
        raise ValidationFailure(f"{A.name}: Poincare polynomial {A.poincare()} != expected {expected}")
    return A


def _mark(A: GradedAlgebra, kind: str, manifold_dim: int | None, **extra) -> GradedAlgebra:
    A.metadata.update(kind=kind, manifold_dim=manifold_dim, **extra)
    return A


def _exterior_poincare(degrees: Sequence[int]) -> list[int]:
    out = [1]
    for d in degrees:
        out = _poly_mul(out, [1] + [0] * (d - 1) + [1])
    return out


# --- classic rings -------------------------------------------------------------

@lru_cache(maxsize=None)
def sphere(n: int, field="GF2") -> GradedAlgebra:
    F = _field(field)
    if n < 1:
        raise BadParameter("sphere dimension must be >= 1")
    p = Presentation(F, [GeneratorSpec("x", n, True)])
    if F is FieldTag.GF2:
        p.steenrod = {"x": [(1, (1,))]}
    A = build_algebra(p, name=f"S^{n}")
    return _mark(_validate(A, _exterior_poincare([n])), "sphere", n)


@lru_cache(maxsize=None)
def real_projective(n: int, field="GF2") -> GradedAlgebra:
    F = _field(field)
    if n < 1:
        raise BadParameter("RP^n needs n >= 1")
    if F is FieldTag.Q:
        # rationally RP^n looks like a point (n even) or S^n (n odd)
        if n % 2 == 0:
            return _mark(unit_algebra(F), "rp", n)
        return _mark(_validate(build_algebra(Presentation(F, [GeneratorSpec("x", n, True)]),
                                             name=f"RP^{n}"), _exterior_poincare([n])), "rp", n)
    p = Presentation(F, [GeneratorSpec("a", 1)], [[(1, (n + 1,))]],
                     steenrod={"a": [(1, (1,)), (1, (2,))]})
    A = build_algebra(p, name=f"RP^{n}")
    return _mark(_validate(A, [1] * (n + 1)), "rp", n)


@lru_cache(maxsize=None)
def complex_projective(n: int, field="GF2") -> GradedAlgebra:
    F = _field(field)
    if n < 1:
        raise BadParameter("CP^n needs n >= 1")
    p = Presentation(F, [GeneratorSpec("c", 2)], [[(1, (n + 1,))]])
    if F is FieldTag.GF2:
        p.steenrod = {"c": [(1, (1,)), (1, (2,))]}
    A = build_algebra(p, name=f"CP^{n}")
    return _mark(_validate(A, [1, 0] * n + [1]), "cp", 2 * n)


@lru_cache(maxsize=None)
def torus(n: int, field="GF2") -> GradedAlgebra:
    F = _field(field)
    if n < 1:
        raise BadParameter("torus dimension must be >= 1")
    gens = [GeneratorSpec(f"x{i}", 1, True) for i in range(1, n + 1)]
    p = Presentation(F, gens)
    if F is FieldTag.GF2:
        p.steenrod = {g.name: [(1, tuple(int(k == i) for k in range(n)))] for i, g in enumerate(gens)}
    A = build_algebra(p, name=f"T^{n}")
    return _mark(_validate(A, _exterior_poincare([1] * n)), "torus", n)


@lru_cache(maxsize=None)
def surface_orientable(g: int, field="GF2") -> GradedAlgebra:
    """Sigma_g: a_i b_i is the top class, every other product of degree-1 classes vanishes."""
    F = _field(field)
    if g < 0:
        raise BadParameter("genus must be >= 0")
    if g == 0:
        A = build_algebra(Presentation(F, [GeneratorSpec("x", 2, True)]), name="Sigma_0")
        return _mark(_validate(A, [1, 0, 1]), "surface_o", 2)
    gens = []
    for i in range(1, g + 1):
        gens += [GeneratorSpec(f"a{i}", 1, True), GeneratorSpec(f"b{i}", 1, True)]
    n = 2 * g

    def mono(*idx):
        e = [0] * n
        for k in idx:
            e[k] += 1
        return tuple(e)

    a = lambda i: 2 * i
    b = lambda i: 2 * i + 1
    rels = []
    for i in range(g):
        for j in range(i + 1, g):
            rels.append([(1, mono(a(i), a(j)))])
            rels.append([(1, mono(b(i), b(j)))])
        for j in range(g):
            if i != j:
                rels.append([(1, mono(a(i), b(j)))])
        if i:
            rels.append([(1, mono(a(i), b(i))), (-1, mono(a(0), b(0)))])
    A = build_algebra(Presentation(F, gens, rels), name=f"Sigma_{g}")
    return _mark(_validate(A, [1, n, 1]), "surface_o", 2)


@lru_cache(maxsize=None)
def surface_nonorientable(h: int, field="GF2") -> GradedAlgebra:
    """N_h: x_i x_j = 0 for i != j, all x_i^2 equal the top class, x_i^3 = 0."""
    F = _field(field)
    if h < 1:
        raise BadParameter("N_h needs h >= 1")
    if F is not FieldTag.GF2:
        raise FieldMismatch("the non-orientable surface ring is provided over GF(2) only")
    A = _nonorientable_algebra(h, f"N_{h}")
    return _mark(_validate(A, [1, h, 1]), "surface_n", 2)


def _nonorientable_algebra(h: int, name: str) -> GradedAlgebra:
    gens = [GeneratorSpec(f"x{i}", 1) for i in range(1, h + 1)]

    def mono(*idx):
        e = [0] * h
        for k in idx:
            e[k] += 1
        return tuple(e)

    rels = []
    for i in range(h):
        for j in range(i + 1, h):
            rels.append([(1, mono(i, j))])
        rels.append([(1, mono(i, i, i))])
        if i:
            rels.append([(1, mono(i, i)), (1, mono(0, 0))])
    return build_algebra(Presentation(FieldTag.GF2, gens, rels, top_degree=2), name=name)


CLASSIC = {
    "sphere": sphere,
    "rp": real_projective,
    "cp": complex_projective,
    "torus": torus,
    "surface_o": surface_orientable,
    "surface_n": surface_nonorientable,
}


def classic_ring(kind: str, n: int, field="GF2") -> GradedAlgebra:
    try:
        ctor = CLASSIC[kind]
    except KeyError:
        raise BadParameter(f"unknown ring kind {kind!r}; choose from {sorted(CLASSIC)}") from None
    return ctor(n, field)


# --- Grassmannians ------------------------------------------------------------------

def complete_homogeneous_relations(d: int, n: int) -> list[dict[tuple[int, ...], int]]:
    """Integer polynomials h_j in c_1..c_d, j = 0..n, with (1 + c_1 + ... + c_d) * sum h_j = 1."""
    h: list[dict[tuple[int, ...], int]] = [{(0,) * d: 1}]
    for j in range(1, n + 1):
        acc: dict[tuple[int, ...], int] = {}
        for i in range(1, min(d, j) + 1):
            for m, c in h[j - i].items():
                m2 = list(m)
                m2[i - 1] += 1
                m2 = tuple(m2)
                acc[m2] = acc.get(m2, 0) - c
        h.append({m: c for m, c in acc.items() if c})
    return h


def gaussian_binomial_poincare(d: int, n: int) -> list[int]:
    """Cell counts of Gr_d(C^n) per real degree: partitions in a d x (n-d) box."""
    k = n - d
    # count[s] = partitions of s fitting in a d x k box, by dynamic programming
    counts = {(0, 0): 1}  # (parts used, last part bound) folded into a table below
    table = [[0] * (d * k + 1) for _ in range(k + 1)]
    # table[b][s]: partitions with at most `rows` parts each <= b summing to s
    for b in range(k + 1):
        table[b][0] = 1
    for _ in range(d):
        new = [[0] * (d * k + 1) for _ in range(k + 1)]
        for b in range(k + 1):
            for s in range(d * k + 1):
                # choose the largest part p <= b of the next row
                new[b][s] = sum(table[p][s - p] for p in range(min(b, s) + 1))
        table = new
    del counts
    out = []
    for s in range(d * k + 1):
        out += [table[k][s], 0]
    return out[:-1]


@lru_cache(maxsize=None)
def grassmann(d: int, n: int, field="Q") -> GradedAlgebra:
    """Complex Grassmannian ring Z[c_1..c_d]/(h_{n-d+1}, ..., h_n) reduced to ``field``."""
    F = _field(field)
    if not 1 <= d < n:
        raise BadParameter("Gr(d,n) needs 1 <= d < n")
    h = complete_homogeneous_relations(d, n)
    gens = [GeneratorSpec(f"c{i}", 2 * i) for i in range(1, d + 1)]
    rels = [sorted(((c, m) for m, c in h[j].items()), key=lambda t: t[1])
            for j in range(n - d + 1, n + 1)]
    A = build_algebra(Presentation(F, gens, rels, top_degree=2 * d * (n - d)), name=f"Gr({d},{n})")
    _validate(A, gaussian_binomial_poincare(d, n))
    if A.dim != math.comb(n, d):
        raise ValidationFailure(f"Gr({d},{n}) has dimension {A.dim}")
    c1 = A.gen(0)
    top = c1 ** (d * (n - d))
    if F is FieldTag.Q and not top:
        raise ValidationFailure("c_1^{d(n-d)} vanished")
    if top * c1:
        raise ValidationFailure("c_1^{d(n-d)+1} is nonzero")
    return _mark(A, "grassmann", 2 * d * (n - d), d=d, n=n)


# --- generalized projective product spaces ------------------------------------------

@dataclass(frozen=True)
class GppsSpec:
    """Base ring of the orbit space, its double-cover class and sphere factors."""

    base: GradedAlgebra
    alpha: Element
    factors: tuple[tuple[int, int], ...]


def _transport(x: Element, E: GradedAlgebra) -> Element:
    """Carry an element of a base ring into an extension whose generators extend the base's."""
    pad = E.ngens - x.algebra.ngens
    return E.element({m + (0,) * pad: c for m, c in x.terms.items()})


def gpps(spec: GppsSpec, name: str = "") -> GradedAlgebra:
    """Adjoin b_j of degree n_j with b_j^2 = C(n_j+1-p_j, n_j) alpha^{n_j} b_j.

    Steenrod data ``Sq(b_j) = (1+alpha)^{n_j+1-p_j} b_j`` is attached when the
    base ring carries Steenrod data and the formula is unstable-consistent.
    """
    base, alpha = spec.base, spec.alpha
    if base.field is not FieldTag.GF2:
        raise FieldMismatch("generalized projective product rings are built over GF(2)")
    if alpha.algebra is not base:
        raise BadAlpha("alpha must be an element of the base ring")
    if not alpha or alpha.degree != 1:
        raise BadAlpha("alpha must be a nonzero homogeneous class of degree 1")
    factors = tuple((int(a), int(b)) for a, b in spec.factors)
    for nj, pj in factors:
        if nj < 1 or not 0 <= pj <= nj:
            raise BadParameter(f"factor ({nj},{pj}) needs n >= 1 and 0 <= p <= n")
    if [f[0] for f in factors] != sorted(f[0] for f in factors):
        raise BadParameter("factors must be sorted by sphere dimension")
    A = base
    for j, (nj, pj) in enumerate(factors, start=1):
        a = _transport(alpha, A)
        coeff = math.comb(nj + 1 - pj, nj) % 2
        u = coeff * a ** nj
        sq = None
        if A.steenrod is not None:
            m = nj + 1 - pj
            # the total-square formula is only unstable-consistent when the
            # terms above degree 2*n_j vanish; otherwise drop the Sq data
            if not any(math.comb(m, k) % 2 and a ** k for k in range(nj + 1, m + 1)):
                sq = (A.one + a) ** m
        A = adjoin_root(A, f"b{j}", nj, u, square_data=sq,
                        alg_name=name or f"X({base.name}; {factors})")
    expected = _poly_mul(base.poincare(), _exterior_poincare([f[0] for f in factors]))
    _validate(A, expected)
    top = base.metadata.get("manifold_dim")
    dim = None if top is None else top + sum(f[0] for f in factors)
    return _mark(A, "gpps", dim, factors=factors, p_zero_extension=any(p == 0 for _, p in factors))


@lru_cache(maxsize=None)
def klein(n: int) -> GradedAlgebra:
    if n < 2:
        raise BadParameter("K_n needs n >= 2")
    base = real_projective(1)
    A = gpps(GppsSpec(base, base.gen("a"), ((1, 1),) * (n - 1)), name=f"K_{n}")
    return _mark(A, "klein", n)


@lru_cache(maxsize=None)
def projective_product(ns: tuple[int, ...]) -> GradedAlgebra:
    ns = tuple(ns)
    if not ns or any(k < 1 for k in ns):
        raise BadParameter("P(n_1..n_r) needs r >= 1 and every n_i >= 1")
    if list(ns) != sorted(ns):
        raise BadParameter("P(n_1..n_r) needs n_1 <= ... <= n_r")
    base = real_projective(ns[0])
    A = gpps(GppsSpec(base, base.gen("a"), tuple((k, 0) for k in ns[1:])), name=f"P{ns}")
    return _mark(A, "pps", sum(ns), ns=ns)


def pps(*ns: int) -> GradedAlgebra:
    if len(ns) == 1 and isinstance(ns[0], (tuple, list)):
        ns = tuple(ns[0])
    return projective_product(tuple(ns))


def xg(g: int, n: int, w1: Element | None = None) -> GradedAlgebra:
    """Ring of X_g^{n-2}: N_{g+1} extended by y_s of degree 1 with y_s^2 = w1*y_s."""
    if w1 is None:
        return _xg_default(g, n)
    if g < 0 or n < 2:
        raise BadParameter("X_g^{n-2} needs g >= 0 and n >= 2")
    base = w1.algebra
    if base.metadata.get("kind") != "surface_n" or base.ngens != g + 1:
        raise MixedAmbient(f"w1 must be an element of the N_{g + 1} ring")
    return _xg(g, n, w1)


@lru_cache(maxsize=None)
def _xg_default(g: int, n: int) -> GradedAlgebra:
    if g < 0 or n < 2:
        raise BadParameter("X_g^{n-2} needs g >= 0 and n >= 2")
    base = surface_nonorientable(g + 1)
    w1 = base.zero
    for x in base.gens():
        w1 = w1 + x
    return _xg(g, n, w1)


def _xg(g: int, n: int, w1: Element) -> GradedAlgebra:
    if not w1 or w1.degree != 1:
        raise BadW1("w1 must be a nonzero homogeneous class of degree 1")
    A = w1.algebra.relabelled(f"X_{g}^{n - 2}")
    w1 = Element(A, w1.vec)
    for s in range(1, n - 1):
        A = adjoin_root(A, f"y{s}", 1, _transport(w1, A), alg_name=f"X_{g}^{n - 2}")
    _validate(A, _poly_mul([1, g + 1, 1], _exterior_poincare([1] * (n - 2))))
    return _mark(A, "xg", n, g=g, n=n)


def product_model(base: GradedAlgebra, fibre: GradedAlgebra) -> GradedAlgebra:
    """Ring of a fibre bundle whose fibre is totally non-homologous to zero."""
    A = tensor(base, fibre)
    db, df = base.metadata.get("manifold_dim"), fibre.metadata.get("manifold_dim")
    return _mark(A, "product", None if db is None or df is None else db + df)


@lru_cache(maxsize=None)
def dold_grassmann(d: int, n: int, ns: tuple[int, ...]) -> GradedAlgebra:
    A = product_model(projective_product(tuple(ns)), grassmann(d, n, "GF2"))
    A.name = f"DG({d},{n};{list(ns)})"
    return A
