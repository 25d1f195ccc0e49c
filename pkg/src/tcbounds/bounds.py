"""Interval bounds for cat, TC and their Z2-equivariant versions.

Every invariant of an expression is an interval ``[lower, upper]`` obtained as
the max of all lower-bound rules and the min of all upper-bound rules that
apply.  Rules either combine engine values (kind ``COMPUTED``) or quote a
closed formula from the literature (kind ``CITED``).  Sub-invariants are
evaluated recursively and memoized; the dependency graph is acyclic
(``tc`` may consult ``cat``, equivariant invariants may consult plain ones,
never the other way round), so results do not depend on evaluation order.

Conventions: ``cat`` and ``TC`` are normalized, so ``cat(point) = 1``.
An upper bound of ``None`` means unbounded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence, Union

from . import rings
from .algebra import GradedAlgebra, tensor
from .errors import (
    InconsistentBounds,
    NotInCatalog,
    RingUnavailable,
    TCBoundsError,
    UnsupportedCombination,
)
from .expr import (
    CP,
    PPS,
    RP,
    DoldGrassmann,
    Gpps,
    Grassmann,
    Klein,
    Product,
    SpaceExpr,
    Sphere,
    SurfaceN,
    SurfaceO,
    Torus,
    Xg,
    Z2Product,
    action_parameter,
    factors,
    product_of,
    render,
)
from .invariants import cup_length, zero_divisor_cup_length
from .linalg import FieldTag
from .parser import parse_space_expr

LOWER, UPPER, VALUE = "lower", "upper", "value"
COMPUTED, CITED = "COMPUTED", "CITED"
INVARIANTS = ("cat", "tc", "eqcat", "eqtc")


# --- rule inventory --------------------------------------------------------------

@dataclass(frozen=True)
class Rule:
    id: str
    direction: str  # lower | upper | both | info | computation
    statement: str
    source: str
    kind: str = COMPUTED


_RULES = [
    Rule("L0", "lower", "1 <= cat(X), 1 <= TC(X)", "normalization"),
    Rule("L1", "lower", "cl_R(X) + 1 <= cat(X)", "cup-length-bound"),
    Rule("L2", "lower", "zl_R(X) + 1 <= TC(X)", "zero-divisor-bound"),
    Rule("L3", "lower", "cat(X) <= TC(X)", "cat-below-tc"),
    Rule("L4", "both", "value or bound quoted from the cited-facts table", "cited-fact", CITED),
    Rule("L5", "lower", "cat(X) <= cat_G(X), TC(X) <= TC_G(X)", "forget-action"),
    Rule("U1", "upper", "cat(X) <= dim(X) + 1", "dimension-bound"),
    Rule("U1c", "upper", "cat(X) <= dim(X)/(c+1) + 1 for c-connected X", "connectivity-bound"),
    Rule("U2", "upper", "TC(X) <= 2 cat(X) - 1", "tc-via-cat"),
    Rule("U2b", "upper", "TC(X) <= cat(X x X)", "tc-via-square"),
    Rule("U3", "upper", "cat(X x Y) <= cat(X) + cat(Y) - 1", "product-inequality-cat"),
    Rule("U4", "upper", "TC(X x Y) <= TC(X) + TC(Y) - 1", "product-inequality-tc"),
    Rule("U5", "upper", "cat(X(M,N)) <= q + cat(N/s) - 1, q = invariant categorical cover of M",
         "bundle-cat-cover"),
    Rule("U6", "upper", "TC(X(M,N)) <= q + cat(N/s x N/s) - 1, q = invariant motion cover of M",
         "bundle-tc-cover"),
    Rule("U7", "both", "n+3 <= TC(K_n) <= 3k+2 (n = 2k), 3k+3 (n = 2k+1)", "klein-tc", CITED),
    Rule("U8a", "both", "cl(N/s)+r+1 <= cat(X((n,p),N)) <= cat(N/s)+r for 1 <= p_j <= n_j",
         "gpps-cat"),
    Rule("U8b", "both", "zl(N/s)+r+1 <= TC(X((n,p),N)) <= cat(N/s x N/s)+2r for n_j >= 2, p_j >= 2",
         "gpps-tc"),
    Rule("U8c", "both", "cat(X((n,p),Sigma_g)) = r+3, r+4 <= TC <= 2r+5 for n_j >= 2, p_j >= 2",
         "gpps-surface", CITED),
    Rule("U8d", "both", "cat(X_g^{n-2}) = n+1, n+4 <= TC <= 3k+2 (n = 2k), 3k+4 (n = 2k+1)",
         "xg-bounds", CITED),
    Rule("U8e", "both", "cat(X(Gr_d(C^n), n_1..n_r)) = d(n-d) + n_1 + r", "dold-grassmann-cat", CITED),
    Rule("U8f", "both", "zl(Gr)+zl(RP^{n_1})+r <= TC(X(Gr, n..)) <= 2d(n-d)+2(n_1+r)-1",
         "dold-grassmann-tc"),
    Rule("U8g", "both", "m+cl(P)+1 <= cat(X(CP^m, n..)) <= m+cat(P)", "dold-cp-cat"),
    Rule("U8h", "both", "zl(CP^m)+r+zl(RP^{n_1}) <= TC(X(CP^m, n..)) <= 2(n_1+r+m)-1",
         "dold-cp-tc"),
    Rule("U8i", "lower", "cl(M)+r+n_1 <= cat(X(M, n_1..n_r)) for n_1 >= 2", "dold-cat-lower"),
    Rule("U8j", "lower", "zl(M)+zl(RP^{n_1})+r <= TC(X(M, n_1..n_r)) for n_1 >= 2", "dold-tc-lower"),
    Rule("E1", "both", "cl(N/s)+r+1 <= cat_Z2(prod S^{n_i} x N) <= cat(N/s)+r for 1 <= p_i <= n_i",
         "equivariant-cat-free"),
    Rule("E2", "both", "r+k+zl_Q(N)+1 <= TC_Z2(prod S^{n_i} x N) <= r+k+TC_Z2(N) (p=0), "
         "2r+TC_Z2(N) (p>=2)", "equivariant-tc-spheres"),
    Rule("E3", "both", "TC_Z2(CP^n x prod S) = r+k+2n+1, TC_Z2(Gr x prod S) = 2d(n-d)+r+k+1",
         "equivariant-tc-exact", CITED),
    Rule("E4", "both", "n_1+r+cl(M) <= cat_Z2(M x prod S^{n_i}) <= n_1+r+cat_Z2(M)-1",
         "equivariant-cat-dold"),
    Rule("E5", "both", "cat_G(X) = cat(X/G) for a free action on a metrizable X", "free-action-cat"),
    Rule("E6", "upper", "cat_G(X x Y) <= cat_G(X) + cat_G(Y) - 1", "product-inequality-eqcat"),
    Rule("E7", "upper", "TC_G(X) <= 2 cat_G(X) - 1 for G-connected X", "eqtc-via-eqcat"),
    Rule("E8", "upper", "TC_G(X x Y) <= TC_G(X) + TC_G(Y) - 1", "product-inequality-eqtc"),
    Rule("E9", "upper", "cat_G(M) <= q, q = invariant categorical cover of M", "eqcat-cover"),
    Rule("I1", "info", "TC(E) <= TC(B) + TC*_G(F) - 1", "strong-equivariant-fibration"),
    Rule("I2", "info", "TC(E) <= TC(F) * cat(B x B)", "fibration-product"),
    Rule("C1", "computation", "cup-length of the mod-2 or rational cohomology ring", "computed-cl"),
    Rule("C2", "computation", "zero-divisor cup-length of the cohomology ring", "computed-zcl"),
    Rule("C3", "computation", "dimension of the manifold", "structural-dim"),
    Rule("C4", "computation", "size of an invariant cover from the cover catalog", "cover-catalog", CITED),
]
RULES: dict[str, Rule] = {r.id: r for r in _RULES}


@dataclass(frozen=True)
class Fact:
    id: str
    statement: str
    source: str


FACTS: dict[str, Fact] = {f.id: f for f in [
    Fact("F1", "cat(S^n) = 2", "fact:sphere-cat"),
    Fact("F2", "TC(S^n) = 2 (n odd), 3 (n even)", "fact:sphere-tc"),
    Fact("F3", "TC_Z2(S^n) = 2 (n odd), 3 (n even) for the antipodal action", "fact:sphere-eqtc"),
    Fact("F4", "TC(CP^n) = 2n+1", "fact:cp-tc"),
    Fact("F5", "TC(K_n) >= n+3", "fact:klein-tc-lower"),
    Fact("F6", "cat(P(n_1..n_r)) = n_1 + r", "fact:pps-cat"),
    Fact("F7", "cat_Z2(CP^n) = n+1 for complex conjugation", "fact:cp-eqcat"),
    Fact("F8", "TC*_Z2(S^1) is infinite for complex conjugation", "fact:circle-strong-eqtc"),
    Fact("K1", "(S^1)^m with conjugation: motion cover 3k+1 (m = 2k), 3k (m = 2k-1); "
               "categorical cover m+1", "catalog:circles"),
    Fact("K2", "prod S^{n_i} with refl(p_i), 1 <= p_i <= n_i: categorical cover r+1; "
               "motion cover 2r+1 when every n_i >= 2 and p_i >= 2", "catalog:spheres"),
    Fact("K3", "CP^n with conjugation: categorical cover n+1, motion cover 2n+1", "catalog:cp"),
    Fact("K4", "Gr_d(C^n) with conjugation: categorical cover d(n-d)+1, motion cover 2d(n-d)+1",
         "catalog:grassmann"),
]}


def list_rules() -> list[tuple[str, str, str, str]]:
    """``(id, direction, statement, source)`` for every inference rule."""
    return [(r.id, r.direction, r.statement, r.source) for r in _RULES]


def list_facts() -> list[tuple[str, str, str]]:
    return [(f.id, f.statement, f.source) for f in FACTS.values()]


# --- results ------------------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    rule: str
    side: str
    value: int | None
    cite: str
    kind: str
    note: str = ""
    children: tuple = ()
    informational: bool = False

    def to_dict(self) -> dict:
        d = {
            "rule": self.rule,
            "side": self.side,
            "value": "unbounded" if self.value is None else self.value,
            "cite": self.cite,
            "kind": self.kind,
            "children": [c.to_dict() for c in self.children],
        }
        if self.note:
            d["note"] = self.note
        if self.informational:
            d["informational"] = True
        return d

    def leaves(self) -> Iterable["Step"]:
        kids = [c for c in self.children if isinstance(c, Step)]
        subs = [c for c in self.children if isinstance(c, BoundResult)]
        if not kids and not subs:
            yield self
        for c in kids:
            yield from c.leaves()
        for s in subs:
            for st in s.derivation:
                yield from st.leaves()


@dataclass(frozen=True)
class BoundResult:
    invariant: str
    expr: SpaceExpr
    lower: int
    upper: int | None
    derivation: tuple[Step, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    @property
    def interval(self) -> tuple[int, int | None]:
        return self.lower, self.upper

    def to_dict(self) -> dict:
        d = {
            "invariant": self.invariant,
            "expr": render(self.expr),
            "lower": self.lower,
            "upper": "unbounded" if self.upper is None else self.upper,
            "exact": self.exact,
            "derivation": [s.to_dict() for s in self.derivation],
        }
        if self.notes:
            d["notes"] = list(self.notes)
        return d

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)

    def leaves(self) -> list[Step]:
        return [leaf for s in self.derivation for leaf in s.leaves()]

    def __str__(self) -> str:
        up = "inf" if self.upper is None else self.upper
        return f"{self.invariant}({render(self.expr)}) in [{self.lower}, {up}]"


@dataclass(frozen=True)
class EvalOptions:
    fields: tuple[str, ...] = ("GF2", "Q")
    disabled: frozenset = frozenset()
    max_tensor_dim: int = 20000
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "disabled", frozenset(self.disabled))
        object.__setattr__(self, "fields", tuple(FieldTag.parse(f).name for f in self.fields))
        unknown = self.disabled - RULES.keys()
        if unknown:
            raise ValueError(f"unknown rule ids: {sorted(unknown)}")


# --- structure of expressions --------------------------------------------------------

def canonical(e: SpaceExpr) -> SpaceExpr:
    """Rewrite to a preferred name for the same space (RP(1) -> S(1), Gr(1,n) -> CP(n-1), ...)."""
    if isinstance(e, Torus) and e.n == 1:
        return Sphere(1)
    if isinstance(e, RP) and e.n == 1:
        return Sphere(1)
    if isinstance(e, SurfaceO) and e.g == 0:
        return Sphere(2)
    if isinstance(e, SurfaceN) and e.h == 1:
        return RP(2)
    if isinstance(e, Xg) and e.n == 2:
        return canonical(SurfaceN(e.g + 1))
    if isinstance(e, Grassmann) and e.d in (1, e.n - 1):
        return CP(e.n - 1)
    if isinstance(e, PPS) and len(e.ns) == 1:
        return canonical(RP(e.ns[0]))
    if isinstance(e, Product):
        return Product(canonical(e.left), canonical(e.right))
    if isinstance(e, Z2Product):
        return Z2Product(product_of([canonical(a) for a in factors(e.expr)]), e.actions)
    if isinstance(e, Gpps):
        base = canonical(e.base)
        fs = e.factors
        m = len(fs)
        if all(f == (1, 1) for f in fs):
            if base == Sphere(1):
                return Klein(m + 1)
            if base == RP(2):
                return Xg(0, m + 2)
            if isinstance(base, SurfaceN):
                return Xg(base.h - 1, m + 2)
        if all(p == 0 for _, p in fs):
            if base == Sphere(1) or isinstance(base, RP):
                n1 = 1 if base == Sphere(1) else base.n
                if all(nj >= n1 for nj, _ in fs):
                    return PPS((n1,) + tuple(nj for nj, _ in fs))
        return Gpps(base, fs)
    return e


def dimension(e: SpaceExpr) -> int:
    if isinstance(e, (Sphere, RP, Torus, Klein)):
        return e.n
    if isinstance(e, CP):
        return 2 * e.n
    if isinstance(e, Grassmann):
        return 2 * e.d * (e.n - e.d)
    if isinstance(e, (SurfaceO, SurfaceN)):
        return 2
    if isinstance(e, PPS):
        return sum(e.ns)
    if isinstance(e, Xg):
        return e.n
    if isinstance(e, DoldGrassmann):
        return 2 * e.d * (e.n - e.d) + sum(e.ns)
    if isinstance(e, Gpps):
        return dimension(e.base) + sum(n for n, _ in e.factors)
    if isinstance(e, Product):
        return dimension(e.left) + dimension(e.right)
    if isinstance(e, Z2Product):
        return dimension(e.expr)
    raise TypeError(e)


def connectivity(e: SpaceExpr) -> int:
    """A lower bound for the connectivity (0 when only path-connectedness is known)."""
    if isinstance(e, Sphere):
        return e.n - 1
    if isinstance(e, (CP, Grassmann)):
        return 1
    if isinstance(e, Product):
        return min(connectivity(e.left), connectivity(e.right))
    return 0


# --- cohomology rings of expressions ----------------------------------------------------

def _unavailable(e: SpaceExpr, F: FieldTag, why: str = "") -> RingUnavailable:
    return RingUnavailable(f"no {F.name} cohomology ring for {render(e)}" + (f": {why}" if why else ""))


def _double_cover_class(base: SpaceExpr, B: GradedAlgebra):
    """The degree-one class of the double cover over an orbit space, when known."""
    if isinstance(base, (Sphere, RP, PPS)) and (not isinstance(base, Sphere) or base.n == 1):
        return B.gen(0)
    if isinstance(base, SurfaceN):
        out = B.zero
        for x in B.gens():
            out = out + x
        return out
    return None


@lru_cache(maxsize=512)
def ring_of(e: SpaceExpr, field: str = "GF2", max_dim: int = 20000) -> GradedAlgebra:
    """Cohomology ring of a plain expression; raises :class:`RingUnavailable`."""
    F = FieldTag.parse(field)
    e = canonical(e)
    gf2 = F is FieldTag.GF2
    try:
        if isinstance(e, Sphere):
            return rings.sphere(e.n, F.name)
        if isinstance(e, RP):
            return rings.real_projective(e.n, F.name)
        if isinstance(e, CP):
            return rings.complex_projective(e.n, F.name)
        if isinstance(e, Torus):
            return rings.torus(e.n, F.name)
        if isinstance(e, Grassmann):
            return rings.grassmann(e.d, e.n, F.name)
        if isinstance(e, SurfaceO):
            return rings.surface_orientable(e.g, F.name)
        if isinstance(e, Product):
            left, right = ring_of(e.left, field, max_dim), ring_of(e.right, field, max_dim)
            if left.dim * right.dim > max_dim:
                raise _unavailable(e, F, f"tensor dimension {left.dim * right.dim} exceeds {max_dim}")
            return tensor(left, right, name=render(e))
        if not gf2:
            raise _unavailable(e, F, "only the mod-2 ring is modelled")
        if isinstance(e, SurfaceN):
            return rings.surface_nonorientable(e.h)
        if isinstance(e, PPS):
            return rings.projective_product(e.ns)
        if isinstance(e, Klein):
            return rings.klein(e.n)
        if isinstance(e, Xg):
            return rings.xg(e.g, e.n)
        if isinstance(e, DoldGrassmann):
            return rings.dold_grassmann(e.d, e.n, e.ns)
        if isinstance(e, Gpps):
            B = ring_of(e.base, "GF2", max_dim)
            alpha = _double_cover_class(canonical(e.base), B)
            if alpha is None:
                raise _unavailable(e, F, "the double-cover class of the base is not modelled")
            return rings.gpps(rings.GppsSpec(B, alpha, e.factors), name=render(e))
    except RingUnavailable:
        raise
    except TCBoundsError as exc:
        raise _unavailable(e, F, str(exc)) from exc
    raise _unavailable(e, F)


@lru_cache(maxsize=2048)
def _computed(what: str, e: SpaceExpr, field: str, max_dim: int) -> int:
    """cl or zcl; products are summed over factors (both lengths are additive over a field)."""
    if isinstance(e, Product):
        return _computed(what, canonical(e.left), field, max_dim) + _computed(what, canonical(e.right), field, max_dim)
    A = ring_of(e, field, max_dim)
    if what == "cl":
        return cup_length(A)[0]
    if A.dim * A.dim > max_dim:
        raise _unavailable(e, FieldTag.parse(field), f"square has dimension {A.dim ** 2} > {max_dim}")
    return zero_divisor_cup_length(A, witness_budget=0)[0]


# --- cover catalog -------------------------------------------------------------------

Item = tuple[SpaceExpr, str]


def _normalize_items(pairs: Sequence[Item]) -> list[Item]:
    """Expand tori into circles and write sphere involutions as ``refl(p)``."""
    out: list[Item] = []
    for atom, tag in pairs:
        atom = canonical(atom)
        if isinstance(atom, Torus):
            out.extend([(Sphere(1), "refl(1)")] * atom.n)
        elif isinstance(atom, Sphere):
            p = 1 if tag == "conj" else action_parameter(tag)
            out.append((atom, f"refl({p})"))
        else:
            out.append((atom, tag))
    return out


def _sphere_p(item: Item) -> int | None:
    atom, tag = item
    return action_parameter(tag) if isinstance(atom, Sphere) else None


def _is_free(item: Item) -> bool:
    atom, tag = item
    return _sphere_p(item) == 0 or (isinstance(atom, SurfaceO) and tag == "antipodal")


def _catalog(items: Sequence[Item], kind: str) -> tuple[int, str]:
    if kind not in ("motion", "categorical"):
        raise ValueError("kind must be 'motion' or 'categorical'")
    if items and all(_sphere_p(i) is not None for i in items):
        r = len(items)
        ps = [(i[0].n, _sphere_p(i)) for i in items]
        if all(n == 1 and p == 1 for n, p in ps):
            if kind == "categorical":
                return r + 1, "K1"
            k, odd = divmod(r, 2)
            return (3 * k + 1 if not odd else 3 * (k + 1)), "K1"
        if all(1 <= p <= n for n, p in ps):
            if kind == "categorical":
                return r + 1, "K2"
            if all(n >= 2 and p >= 2 for n, p in ps):
                return 2 * r + 1, "K2"
    if len(items) == 1 and items[0][1] == "conj":
        atom = items[0][0]
        if isinstance(atom, CP):
            return (atom.n + 1 if kind == "categorical" else 2 * atom.n + 1), "K3"
        if isinstance(atom, Grassmann):
            c = atom.d * (atom.n - atom.d)
            return (c + 1 if kind == "categorical" else 2 * c + 1), "K4"
    desc = " x ".join(f"{render(a)}[{t}]" for a, t in items)
    raise NotInCatalog(f"no {kind} cover recorded for {desc}")


def cover_size(pattern: SpaceExpr | Sequence[Item], action: str | Sequence[str] = "conj",
               kind: str = "motion") -> int:
    """Size of an invariant cover of ``pattern`` (``motion``: of its square).

    ``pattern`` is an expression whose atoms all carry ``action`` (or one tag
    per atom), or a list of ``(atom, tag)`` pairs.
    """
    if isinstance(pattern, SpaceExpr):
        atoms = factors(pattern)
        tags = [action] * len(atoms) if isinstance(action, str) else list(action)
        if len(tags) != len(atoms):
            raise ValueError("one involution per factor is required")
        pairs = list(zip(atoms, tags))
    else:
        pairs = list(pattern)
    return _catalog(_normalize_items(pairs), kind)[0]


# --- bundle views --------------------------------------------------------------------

@dataclass(frozen=True)
class BundleView:
    """``fibre -> X -> base`` where ``base`` is the orbit space of a free involution."""

    base: SpaceExpr
    fibre: tuple[Item, ...]
    family: str  # gpps | dold | pps


def bundle_view(e: SpaceExpr) -> BundleView | None:
    if isinstance(e, Klein):
        return BundleView(Sphere(1), ((Sphere(1), "refl(1)"),) * (e.n - 1), "gpps")
    if isinstance(e, Xg) and e.n >= 3:
        return BundleView(canonical(SurfaceN(e.g + 1)), ((Sphere(1), "refl(1)"),) * (e.n - 2), "gpps")
    if isinstance(e, Gpps):
        return BundleView(canonical(e.base), tuple((Sphere(n), f"refl({p})") for n, p in e.factors), "gpps")
    if isinstance(e, DoldGrassmann):
        return BundleView(canonical(PPS(e.ns)), ((canonical(Grassmann(e.d, e.n)), "conj"),), "dold")
    if isinstance(e, PPS) and len(e.ns) >= 2:
        return BundleView(canonical(RP(e.ns[0])), tuple((Sphere(n), "refl(0)") for n in e.ns[1:]), "pps")
    return None


def _product_split(e: SpaceExpr) -> tuple[SpaceExpr, SpaceExpr] | None:
    if isinstance(e, Product):
        return e.left, e.right
    if isinstance(e, Torus) and e.n >= 2:
        return canonical(Torus(e.n - 1)), Sphere(1)
    return None


def _free_quotient(free: Sequence[Item]) -> SpaceExpr | None:
    if not free:
        return None
    if all(_sphere_p(i) == 0 for i in free):
        return canonical(PPS(tuple(i[0].n for i in free)))
    if len(free) == 1 and isinstance(free[0][0], SurfaceO):
        return canonical(SurfaceN(free[0][0].g + 1))
    return None


def orbit_space(items: Sequence[Item]) -> SpaceExpr | None:
    """Orbit space of a free diagonal involution, when it has a name in the grammar."""
    free = [i for i in items if _is_free(i)]
    rest = [i for i in items if not _is_free(i)]
    base = _free_quotient(free)
    if base is None:
        return None
    if not rest:
        return base
    if all(_sphere_p(i) is not None for i in rest):
        return canonical(Gpps(base, tuple((i[0].n, _sphere_p(i)) for i in rest)))
    if len(rest) == 1 and rest[0][1] == "conj" and all(_sphere_p(i) == 0 for i in free):
        atom = rest[0][0]
        ns = tuple(i[0].n for i in free)
        if isinstance(atom, CP):
            return DoldGrassmann(1, atom.n + 1, ns)
        if isinstance(atom, Grassmann):
            return DoldGrassmann(atom.d, atom.n, ns)
    return None


def _sub_z(items: Sequence[Item]) -> Z2Product:
    return Z2Product(product_of([a for a, _ in items]), tuple(t for _, t in items))


def _fixed_set_connected(item: Item) -> bool:
    atom, tag = item
    if tag == "conj" and isinstance(atom, (CP, Grassmann)):
        return True
    p = _sphere_p(item)
    return p is not None and p >= 2


# --- the engine ----------------------------------------------------------------------

def _add(a: int | None, b: int | None, c: int = 0) -> int | None:
    return None if a is None or b is None else a + b + c


class _Engine:
    def __init__(self, options: EvalOptions):
        self.opts = options
        self.memo: dict[tuple[SpaceExpr, str], BoundResult] = {}

    def on(self, rid: str) -> bool:
        return rid not in self.opts.disabled

    # steps ----------------------------------------------------------------------

    def step(self, rid: str, side: str, value, children=(), note="", cite=None, kind=None,
             informational=False) -> Step:
        rule = RULES[rid]
        return Step(rid, side, value, cite or rule.source, kind or rule.kind, note,
                    tuple(children), informational)

    def fact(self, fid: str, side: str, value, note="") -> Step:
        f = FACTS[fid]
        return Step("L4", side, value, f.source, CITED, note or f.statement)

    def both(self, out: list, rid: str, lo, hi, children=(), note="", cite=None, kind=None):
        if lo is not None:
            out.append(self.step(rid, LOWER, lo, children, note, cite, kind))
        if hi is not None:
            out.append(self.step(rid, UPPER, hi, children, note, cite, kind))

    def computed(self, what: str, e: SpaceExpr, field: str, notes: list) -> Step | None:
        rid = "C1" if what == "cl" else "C2"
        e = canonical(e)
        try:
            value = _computed(what, e, field, self.opts.max_tensor_dim)
        except RingUnavailable as exc:
            if self.opts.strict:
                raise
            notes.append(f"{what}_{field} skipped: {exc}")
            return None
        return self.step(rid, VALUE, value, note=f"{what}_{field}({render(e)}) = {value}")

    def cover(self, items: Sequence[Item], kind: str) -> Step | None:
        try:
            q, fid = _catalog(items, kind)
        except NotInCatalog:
            return None
        return self.step("C4", VALUE, q, cite=FACTS[fid].source, note=f"{kind} cover of size {q}")

    # evaluation -------------------------------------------------------------------

    def get(self, e: SpaceExpr, inv: str) -> BoundResult:
        e = canonical(e)
        key = (e, inv)
        if key in self.memo:
            return self.memo[key]
        out: list[Step] = [self.step("L0", LOWER, 1)]
        notes: list[str] = []
        getattr(self, f"_{inv}")(e, out, notes)
        firm = [s for s in out if not s.informational]
        lower = max(s.value for s in firm if s.side == LOWER)
        uppers = [s.value for s in firm if s.side == UPPER and s.value is not None]
        upper = min(uppers) if uppers else None
        if upper is not None and lower > upper:
            bad = [f"{s.rule}:{s.side}={s.value}" for s in firm if s.side in (LOWER, UPPER)]
            raise InconsistentBounds(f"{inv}({render(e)}): lower {lower} > upper {upper} from {bad}")
        keep = tuple(
            s for s in out
            if s.informational
            or (s.side == LOWER and s.value == lower)
            or (s.side == UPPER and s.value == upper and upper is not None)
        )
        res = BoundResult(inv, e, lower, upper, keep, tuple(dict.fromkeys(notes)))
        self.memo[key] = res
        return res

    # lusternik-schnirelmann category ------------------------------------------------

    def _cat(self, e: SpaceExpr, out: list, notes: list) -> None:
        if isinstance(e, Z2Product):
            raise UnsupportedCombination("cat takes a plain space; use eqcat for Z2[...]{...}")
        if self.on("L1"):
            for F in self.opts.fields:
                leaf = self.computed("cl", e, F, notes)
                if leaf is not None:
                    out.append(self.step("L1", LOWER, leaf.value + 1, [leaf], note=f"over {F}"))
        d = dimension(e)
        dim_leaf = self.step("C3", VALUE, d, note=f"dim {render(e)} = {d}")
        if self.on("U1"):
            out.append(self.step("U1", UPPER, d + 1, [dim_leaf]))
        c = connectivity(e)
        if self.on("U1c") and c >= 1:
            out.append(self.step("U1c", UPPER, d // (c + 1) + 1, [dim_leaf], note=f"{c}-connected"))
        if self.on("L4"):
            if isinstance(e, Sphere):
                out += [self.fact("F1", LOWER, 2), self.fact("F1", UPPER, 2)]
            if isinstance(e, PPS):
                v = e.ns[0] + len(e.ns)
                out += [self.fact("F6", LOWER, v), self.fact("F6", UPPER, v)]
        split = _product_split(e)
        if split and self.on("U3"):
            a, b = (self.get(x, "cat") for x in split)
            if a.upper is not None and b.upper is not None:
                out.append(self.step("U3", UPPER, a.upper + b.upper - 1, [a, b]))
        view = bundle_view(e)
        if view is not None:
            self._cat_bundle(e, view, out, notes)
        if isinstance(e, Xg) and self.on("U8d"):
            self.both(out, "U8d", e.n + 1, e.n + 1)
        if isinstance(e, DoldGrassmann):
            self._cat_dold(e, out, notes)

    def _cat_bundle(self, e, view: BundleView, out, notes) -> None:
        r = len(view.fibre)
        if self.on("U5"):
            q = self.cover(view.fibre, "categorical")
            if q is not None:
                cb = self.get(view.base, "cat")
                if cb.upper is not None:
                    out.append(self.step("U5", UPPER, q.value + cb.upper - 1, [q, cb]))
        if view.family != "gpps":
            return
        ps = [(a.n, _sphere_p((a, t))) for a, t in view.fibre]
        if self.on("U8a") and all(1 <= p <= n for n, p in ps):
            leaf = self.computed("cl", view.base, "GF2", notes)
            cb = self.get(view.base, "cat")
            if leaf is not None:
                out.append(self.step("U8a", LOWER, leaf.value + r + 1, [leaf]))
            if cb.upper is not None:
                out.append(self.step("U8a", UPPER, cb.upper + r, [cb]))
        if (self.on("U8c") and isinstance(view.base, SurfaceN) and view.base.h >= 1
                and all(n >= 2 and p >= 2 for n, p in ps)):
            self.both(out, "U8c", r + 3, r + 3, note="cat part")

    def _cat_dold(self, e: DoldGrassmann, out, notes) -> None:
        c = e.d * (e.n - e.d)
        n1, r = e.ns[0], len(e.ns)
        if self.on("U8e"):
            self.both(out, "U8e", c + n1 + r, c + n1 + r)
        fibre = canonical(Grassmann(e.d, e.n))
        base = canonical(PPS(e.ns))
        if self.on("U8g") and isinstance(fibre, CP):
            m = fibre.n
            leaf = self.computed("cl", base, "GF2", notes)
            cb = self.get(base, "cat")
            if leaf is not None:
                out.append(self.step("U8g", LOWER, m + leaf.value + 1, [leaf]))
            if cb.upper is not None:
                out.append(self.step("U8g", UPPER, m + cb.upper, [cb]))
        if self.on("U8i") and n1 >= 2:
            leaf = self.computed("cl", fibre, "GF2", notes)
            if leaf is not None:
                out.append(self.step("U8i", LOWER, leaf.value + r + n1, [leaf]))

    # topological complexity ---------------------------------------------------------

    def _tc(self, e: SpaceExpr, out: list, notes: list) -> None:
        if isinstance(e, Z2Product):
            raise UnsupportedCombination("tc takes a plain space; use eqtc for Z2[...]{...}")
        if self.on("L2"):
            for F in self.opts.fields:
                leaf = self.computed("zcl", e, F, notes)
                if leaf is not None:
                    out.append(self.step("L2", LOWER, leaf.value + 1, [leaf], note=f"over {F}"))
        cat = self.get(e, "cat")
        if self.on("L3"):
            out.append(self.step("L3", LOWER, cat.lower, [cat]))
        if self.on("U2") and cat.upper is not None:
            out.append(self.step("U2", UPPER, 2 * cat.upper - 1, [cat]))
        if self.on("U2b"):
            sq = self.get(Product(e, e), "cat")
            if sq.upper is not None:
                out.append(self.step("U2b", UPPER, sq.upper, [sq]))
        if self.on("L4"):
            if isinstance(e, Sphere):
                v = 2 if e.n % 2 else 3
                out += [self.fact("F2", LOWER, v), self.fact("F2", UPPER, v)]
            if isinstance(e, CP):
                out += [self.fact("F4", LOWER, 2 * e.n + 1), self.fact("F4", UPPER, 2 * e.n + 1)]
            if isinstance(e, Klein):
                out.append(self.fact("F5", LOWER, e.n + 3))
        split = _product_split(e)
        if split and self.on("U4"):
            a, b = (self.get(x, "tc") for x in split)
            if a.upper is not None and b.upper is not None:
                out.append(self.step("U4", UPPER, a.upper + b.upper - 1, [a, b]))
        if isinstance(e, Klein) and self.on("U7"):
            k, odd = divmod(e.n, 2)
            self.both(out, "U7", e.n + 3, 3 * k + 3 if odd else 3 * k + 2)
        if isinstance(e, Xg) and e.n >= 3 and self.on("U8d"):
            k, odd = divmod(e.n, 2)
            self.both(out, "U8d", e.n + 4, 3 * k + 4 if odd else 3 * k + 2)
        view = bundle_view(e)
        if view is not None:
            self._tc_bundle(e, view, out, notes)
        if isinstance(e, DoldGrassmann):
            self._tc_dold(e, out, notes)

    def _tc_bundle(self, e, view: BundleView, out, notes) -> None:
        r = len(view.fibre)
        base_sq = Product(view.base, view.base)
        if self.on("U6"):
            q = self.cover(view.fibre, "motion")
            if q is not None:
                cbb = self.get(base_sq, "cat")
                if cbb.upper is not None:
                    out.append(self.step("U6", UPPER, q.value + cbb.upper - 1, [q, cbb]))
        if view.family == "gpps":
            ps = [(a.n, _sphere_p((a, t))) for a, t in view.fibre]
            if all(n >= 2 and p >= 2 for n, p in ps):
                if self.on("U8b"):
                    leaf = self.computed("zcl", view.base, "GF2", notes)
                    cbb = self.get(base_sq, "cat")
                    if leaf is not None:
                        out.append(self.step("U8b", LOWER, leaf.value + r + 1, [leaf]))
                    if cbb.upper is not None:
                        out.append(self.step("U8b", UPPER, cbb.upper + 2 * r, [cbb]))
                if self.on("U8c") and isinstance(view.base, SurfaceN):
                    self.both(out, "U8c", r + 4, 2 * r + 5, note="TC part")
        if self.on("I1") and list(view.fibre) == [(Sphere(1), "refl(1)")]:
            tb = self.get(view.base, "tc")
            star = self.fact("F8", VALUE, None)
            out.append(self.step("I1", UPPER, None, [tb, star], informational=True,
                                 note="the fibre term is infinite"))
        if self.on("I2"):
            fibre = product_of([a for a, _ in view.fibre])
            tf = self.get(fibre, "tc")
            cbb = self.get(base_sq, "cat")
            value = None if tf.upper is None or cbb.upper is None else tf.upper * cbb.upper
            out.append(self.step("I2", UPPER, value, [tf, cbb], informational=True))

    def _tc_dold(self, e: DoldGrassmann, out, notes) -> None:
        c = e.d * (e.n - e.d)
        n1, r = e.ns[0], len(e.ns)
        fibre = canonical(Grassmann(e.d, e.n))
        zf = self.computed("zcl", fibre, "GF2", notes)
        zr = self.computed("zcl", canonical(RP(n1)), "GF2", notes)
        have = zf is not None and zr is not None
        if self.on("U8f"):
            self.both(out, "U8f", zf.value + zr.value + r if have else None,
                      2 * c + 2 * (n1 + r) - 1, [zf, zr] if have else ())
        if self.on("U8h") and isinstance(fibre, CP):
            m = fibre.n
            self.both(out, "U8h", zf.value + r + zr.value if have else None,
                      2 * (n1 + r + m) - 1, [zf, zr] if have else (),
                      note="k, the number of even n_i, does not enter these bounds")
        if self.on("U8j") and n1 >= 2 and have:
            out.append(self.step("U8j", LOWER, zf.value + zr.value + r, [zf, zr]))

    # equivariant category -----------------------------------------------------------

    def _items(self, e: SpaceExpr) -> list[Item]:
        if not isinstance(e, Z2Product):
            raise UnsupportedCombination("equivariant invariants need a Z2[...]{...} expression")
        return _normalize_items(e.atoms())

    def _eqcat(self, e: Z2Product, out: list, notes: list) -> None:
        items = self._items(e)
        free = [i for i in items if _is_free(i)]
        rest = [i for i in items if not _is_free(i)]
        if self.on("L5"):
            plain = self.get(e.expr, "cat")
            out.append(self.step("L5", LOWER, plain.lower, [plain]))
        if free and self.on("E5"):
            orbit = orbit_space(items)
            if orbit is not None:
                co = self.get(orbit, "cat")
                self.both(out, "E5", co.lower, co.upper, [co], note=f"orbit space {render(orbit)}")
        quotient = _free_quotient(free)
        ps = [(i[0].n, _sphere_p(i)) for i in rest]
        if (self.on("E1") and quotient is not None and rest
                and all(p is not None and 1 <= p <= n for n, p in ps)):
            r = len(rest)
            if len(free) == 1 and isinstance(free[0][0], SurfaceO):
                self.both(out, "E1", r + 3, r + 3, kind=CITED, note="surface case")
            else:
                leaf = self.computed("cl", quotient, "GF2", notes)
                cq = self.get(quotient, "cat")
                if leaf is not None:
                    out.append(self.step("E1", LOWER, leaf.value + r + 1, [leaf]))
                if cq.upper is not None:
                    out.append(self.step("E1", UPPER, cq.upper + r, [cq]))
        if (self.on("E4") and len(rest) == 1 and rest[0][1] == "conj"
                and isinstance(rest[0][0], (CP, Grassmann)) and free
                and all(_sphere_p(i) == 0 for i in free)):
            n1, r = min(i[0].n for i in free), len(free)
            leaf = self.computed("cl", rest[0][0], "GF2", notes)
            cm = self.get(_sub_z(rest), "eqcat")
            if leaf is not None:
                out.append(self.step("E4", LOWER, n1 + r + leaf.value, [leaf]))
            if cm.upper is not None:
                out.append(self.step("E4", UPPER, n1 + r + cm.upper - 1, [cm]))
        if not free:
            if self.on("E9"):
                q = self.cover(items, "categorical")
                if q is not None:
                    out.append(self.step("E9", UPPER, q.value, [q]))
            if self.on("L4") and len(items) == 1 and isinstance(items[0][0], CP):
                v = items[0][0].n + 1
                out += [self.fact("F7", LOWER, v), self.fact("F7", UPPER, v)]
            if self.on("E6") and len(items) >= 2:
                a, b = self.get(_sub_z(items[:1]), "eqcat"), self.get(_sub_z(items[1:]), "eqcat")
                if a.upper is not None and b.upper is not None:
                    out.append(self.step("E6", UPPER, a.upper + b.upper - 1, [a, b]))

    # equivariant topological complexity ---------------------------------------------

    def _eqtc(self, e: Z2Product, out: list, notes: list) -> None:
        items = self._items(e)
        if self.on("L5"):
            plain = self.get(e.expr, "tc")
            out.append(self.step("L5", LOWER, plain.lower, [plain]))
        if self.on("L4") and len(items) == 1 and _sphere_p(items[0]) == 0:
            v = 2 if items[0][0].n % 2 else 3
            out += [self.fact("F3", LOWER, v), self.fact("F3", UPPER, v)]
        for antipodal in (True, False):
            group = [i for i in items if _sphere_p(i) is not None and i[0].n >= 2
                     and (_sphere_p(i) == 0 if antipodal else _sphere_p(i) >= 2)]
            rest = [i for i in items if i not in group]
            if group and rest:
                self._eqtc_spheres(group, rest, antipodal, out, notes)
        if (self.on("E7") and all(_fixed_set_connected(i) for i in items)):
            c = self.get(e, "eqcat")
            if c.upper is not None:
                out.append(self.step("E7", UPPER, 2 * c.upper - 1, [c]))
        if self.on("E8") and len(items) >= 2:
            a, b = self.get(_sub_z(items[:1]), "eqtc"), self.get(_sub_z(items[1:]), "eqtc")
            if a.upper is not None and b.upper is not None:
                out.append(self.step("E8", UPPER, a.upper + b.upper - 1, [a, b]))

    def _eqtc_spheres(self, group, rest, antipodal, out, notes) -> None:
        r = len(group)
        k = sum(1 for a, _ in group if a.n % 2 == 0)
        if self.on("E2"):
            n_expr = product_of([a for a, _ in rest])
            leaf = self.computed("zcl", n_expr, "Q", notes)
            tn = self.get(_sub_z(rest), "eqtc")
            if leaf is not None:
                out.append(self.step("E2", LOWER, r + k + leaf.value + 1, [leaf], note=f"r={r}, k={k}"))
            if tn.upper is not None:
                hi = r + k + tn.upper if antipodal else 2 * r + tn.upper
                out.append(self.step("E2", UPPER, hi, [tn], note=f"r={r}, k={k}"))
        if self.on("E3") and antipodal and len(rest) == 1 and rest[0][1] == "conj":
            atom = rest[0][0]
            if isinstance(atom, CP):
                v = r + k + 2 * atom.n + 1
            elif isinstance(atom, Grassmann):
                v = 2 * atom.d * (atom.n - atom.d) + r + k + 1
            else:
                return
            self.both(out, "E3", v, v, note=f"r={r}, k={k}")


# --- public entry points ---------------------------------------------------------------

_ALIASES = {"cat": "cat", "tc": "tc", "eqcat": "eqcat", "eqtc": "eqtc",
            "cat_z2": "eqcat", "tc_z2": "eqtc"}
_ENGINES: dict[EvalOptions, _Engine] = {}


def _engine(options: EvalOptions) -> _Engine:
    eng = _ENGINES.get(options)
    if eng is None:
        if len(_ENGINES) > 64:
            _ENGINES.clear()
        eng = _ENGINES[options] = _Engine(options)
    return eng


def evaluate(expr: Union[str, SpaceExpr], invariant: str = "tc",
             options: EvalOptions | None = None) -> BoundResult:
    """Bounds for ``invariant`` (cat, tc, eqcat, eqtc) of ``expr``."""
    if isinstance(expr, str):
        expr = parse_space_expr(expr)
    inv = _ALIASES.get(invariant.lower())
    if inv is None:
        raise ValueError(f"unknown invariant {invariant!r}; choose from {', '.join(INVARIANTS)}")
    if isinstance(expr, Z2Product) != inv.startswith("eq"):
        raise UnsupportedCombination(
            f"{inv} does not apply to {render(expr)}"
            + ("; equivariant invariants need Z2[...]{...}" if inv.startswith("eq")
               else "; use eqcat/eqtc for Z2[...]{...}")
        )
    return _engine(options or EvalOptions()).get(expr, inv)
