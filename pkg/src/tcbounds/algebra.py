"""Finitely presented graded-commutative algebras over GF(2) and Q.

An algebra is stored as a finite monomial basis together with the left action
of each generator on that basis.  Every other product is derived from those
actions: a basis monomial ``g0^e0 g1^e1 ...`` stands for the ordered product
of its generators, so multiplying by it means applying the generator actions
right to left.

Three constructions produce the actions:

* :func:`build_algebra` completes a presentation degree by degree.  In degree
  ``d`` the space ``A_d`` is the cokernel of ``(+)_g A_{d-|g|} -> A_d`` modulo
  the Koszul relations between generators, the square-zero relations and the
  presentation's relations of degree ``d``.  This needs no signed Groebner
  basis, so odd generators with arbitrary relations work over Q.
* :func:`tensor` combines two algebras with the Koszul sign rule.
* :func:`adjoin_root` adjoins ``b`` with ``b^2 = u*b`` over an existing ring.

Monomial order is graded reverse lexicographic where later generators rank
higher; pivots in each degree go to the largest monomials so the surviving
basis labels are the smallest ones.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    FieldMismatch,
    InfiniteDimensional,
    MixedAmbient,
    NonHomogeneousRelation,
    NoSteenrodData,
    PresentationError,
)
from .linalg import Echelon, FieldTag, Scalar, Subspace, Vector, axpy, nullspace, scale

Monomial = tuple  # tuple[int, ...], one exponent per generator
Polynomial = dict  # dict[Monomial, Scalar]


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: int
    square_zero: bool = False


@dataclass
class Presentation:
    """Generators and homogeneous relations of a graded-commutative algebra.

    ``relations`` holds polynomials as lists of ``(coefficient, exponents)``
    pairs; ``steenrod`` maps generator names to their total square written in
    the same form.  ``top_degree`` is optional and only sharpens the runaway
    guard of the completion.
    """

    field: FieldTag
    generators: list[GeneratorSpec]
    relations: list[list[tuple[Scalar, Monomial]]] = dc_field(default_factory=list)
    steenrod: dict[str, list[tuple[Scalar, Monomial]]] = dc_field(default_factory=dict)
    top_degree: int | None = None

    def __post_init__(self):
        self.field = FieldTag.parse(self.field)
        self.generators = [
            g if isinstance(g, GeneratorSpec) else GeneratorSpec(**g) for g in self.generators
        ]
        n = len(self.generators)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise PresentationError(f"duplicate generator names in {names}")
        for g in self.generators:
            if not isinstance(g.degree, int) or g.degree < 1:
                raise PresentationError(f"generator {g.name!r} must have degree >= 1")
        self.relations = [
            [(self.field.scalar(c), _check_exps(e, n)) for c, e in rel] for rel in self.relations
        ]
        self.steenrod = {
            name: [(self.field.scalar(c), _check_exps(e, n)) for c, e in poly]
            for name, poly in self.steenrod.items()
        }
        unknown = set(self.steenrod) - set(names)
        if unknown:
            raise PresentationError(f"steenrod data for unknown generators {sorted(unknown)}")

    def normalized_generators(self) -> list[GeneratorSpec]:
        if self.field is FieldTag.GF2:
            return list(self.generators)
        return [
            GeneratorSpec(g.name, g.degree, g.square_zero or g.degree % 2 == 1)
            for g in self.generators
        ]

    # JSON ------------------------------------------------------------------

    def to_dict(self) -> dict:
        out = {
            "field": self.field.value,
            "generators": [
                {"name": g.name, "degree": g.degree, "square_zero": g.square_zero}
                for g in self.generators
            ],
            "relations": [[[_coeff_json(c), list(e)] for c, e in rel] for rel in self.relations],
            "steenrod": {
                name: [[_coeff_json(c), list(e)] for c, e in poly]
                for name, poly in self.steenrod.items()
            },
        }
        if self.top_degree is not None:
            out["top_degree"] = self.top_degree
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, separators=(",", ":"))

    @classmethod
    def from_dict(cls, doc: Mapping) -> "Presentation":
        try:
            return cls(
                field=FieldTag.parse(doc["field"]),
                generators=[GeneratorSpec(g["name"], g["degree"], g.get("square_zero", False))
                            for g in doc["generators"]],
                relations=[[(_coeff_parse(c), tuple(e)) for c, e in rel]
                           for rel in doc.get("relations", [])],
                steenrod={name: [(_coeff_parse(c), tuple(e)) for c, e in poly]
                          for name, poly in doc.get("steenrod", {}).items()},
                top_degree=doc.get("top_degree"),
            )
        except (KeyError, TypeError) as exc:
            raise PresentationError(f"malformed presentation document: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "Presentation":
        return cls.from_dict(json.loads(text))


def _check_exps(e, n: int) -> Monomial:
    e = tuple(int(x) for x in e)
    if len(e) != n or any(x < 0 for x in e):
        raise PresentationError(f"bad exponent vector {e} for {n} generators")
    return e


def _coeff_json(c: Scalar):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return int(c)


def _coeff_parse(c):
    return Fraction(c) if isinstance(c, str) else c


def monomial_key(m: Monomial, degrees: Sequence[int]) -> tuple:
    """Ascending sort key for weighted grevlex (later generators rank higher)."""
    return (sum(e * d for e, d in zip(m, degrees)), tuple(-e for e in m))


def _odd_swap_sign(m: Monomial, g: int, degrees: Sequence[int]) -> bool:
    """True when moving generator ``g`` in front of ``m``'s earlier factors flips sign."""
    if degrees[g] % 2 == 0:
        return False
    return sum(m[i] * degrees[i] for i in range(g)) % 2 == 1


# --- the algebra ------------------------------------------------------------

class GradedAlgebra:
    """A finite-dimensional graded-commutative algebra over GF(2) or Q.

    Instances are immutable after construction.  ``basis[i]`` is the exponent
    vector of the i-th basis monomial; index 0 is always the unit.
    """

    def __init__(
        self,
        field: FieldTag,
        generators: Sequence[GeneratorSpec],
        basis: Sequence[Monomial],
        act: Callable[[int, int], Vector],
        presentation: Presentation,
        steenrod: Mapping[int, Vector] | None = None,
        name: str = "",
        metadata: Mapping | None = None,
    ):
        self.field = field
        self.generators = tuple(generators)
        self.gen_degrees = tuple(g.degree for g in self.generators)
        self.basis = tuple(tuple(m) for m in basis)
        if not self.basis or any(self.basis[0]):
            raise PresentationError("basis must start with the unit monomial")
        self.degrees = tuple(self.monomial_degree(m) for m in self.basis)
        self.index = {m: i for i, m in enumerate(self.basis)}
        by_degree: dict[int, list[int]] = {}
        for i, d in enumerate(self.degrees):
            by_degree.setdefault(d, []).append(i)
        self.by_degree = {d: tuple(v) for d, v in by_degree.items()}
        self.top_degree = max(self.degrees)
        self._act_fn = act
        self._act_cache: dict[tuple[int, int], Vector] = {}
        self._mul_cache: dict[tuple[int, int], Vector] = {}
        self._sq_cache: dict[int, Vector] = {}
        self.presentation = presentation
        self.steenrod = dict(steenrod) if steenrod is not None else None
        self.name = name
        self.metadata = dict(metadata or {})

    # structure ---------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def monomial_degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.gen_degrees))

    def gen_index(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise KeyError(name)

    def poincare(self) -> list[int]:
        return [len(self.by_degree.get(d, ())) for d in range(self.top_degree + 1)]

    def act(self, g: int, i: int) -> Vector:
        """Generator ``g`` times basis element ``i`` (cached, read-only)."""
        key = (g, i)
        v = self._act_cache.get(key)
        if v is None:
            v = self._act_fn(g, i)
            self._act_cache[key] = v
        return v

    def act_vec(self, g: int, v: Vector) -> Vector:
        out: Vector = {}
        for i, c in v.items():
            axpy(self.field, out, c, self.act(g, i))
        return out

    def word(self, m: Monomial) -> list[int]:
        return [g for g, e in enumerate(m) for _ in range(e)]

    def monomial_vector(self, m: Monomial) -> Vector:
        """Normal form of the ordered free monomial ``m``."""
        v: Vector = {0: self.field.one}
        for g in reversed(self.word(m)):
            v = self.act_vec(g, v)
            if not v:
                break
        return v

    def mul_basis(self, i: int, j: int) -> Vector:
        key = (i, j)
        v = self._mul_cache.get(key)
        if v is None:
            v = {j: self.field.one}
            for g in reversed(self.word(self.basis[i])):
                v = self.act_vec(g, v)
                if not v:
                    break
            self._mul_cache[key] = v
        return v

    def mul_vec(self, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                axpy(self.field, out, a * b, self.mul_basis(i, j))
        return out

    # elements ----------------------------------------------------------------

    def element(self, v: Vector | Mapping[Monomial, Scalar] | None = None) -> "Element":
        """Element from basis coordinates, or from a free polynomial keyed by monomials."""
        if not v:
            return Element(self, {})
        first = next(iter(v))
        if isinstance(first, tuple):
            out: Vector = {}
            for m, c in v.items():
                c = self.field.scalar(c)
                if c:
                    axpy(self.field, out, c, self.monomial_vector(tuple(m)))
            return Element(self, out)
        return Element(self, {k: self.field.scalar(c) for k, c in v.items() if self.field.scalar(c)})

    @property
    def one(self) -> "Element":
        return Element(self, {0: self.field.one})

    @property
    def zero(self) -> "Element":
        return Element(self, {})

    def gen(self, name_or_index: str | int) -> "Element":
        g = name_or_index if isinstance(name_or_index, int) else self.gen_index(name_or_index)
        m = tuple(1 if k == g else 0 for k in range(self.ngens))
        return Element(self, self.monomial_vector(m))

    def gens(self) -> list["Element"]:
        return [self.gen(i) for i in range(self.ngens)]

    def basis_element(self, i: int) -> "Element":
        return Element(self, {i: self.field.one})

    def parse_monomial_name(self, m: Monomial) -> str:
        parts = []
        for g, e in enumerate(m):
            if e == 1:
                parts.append(self.generators[g].name)
            elif e > 1:
                parts.append(f"{self.generators[g].name}^{e}")
        return "*".join(parts) or "1"

    # Steenrod ------------------------------------------------------------------

    def total_square_basis(self, i: int) -> Vector:
        if self.steenrod is None:
            raise NoSteenrodData(f"{self.name or 'algebra'} carries no Steenrod data")
        v = self._sq_cache.get(i)
        if v is None:
            v = {0: 1}
            for g in self.word(self.basis[i]):
                v = self.mul_vec(v, self.steenrod[g])
            self._sq_cache[i] = v
        return v

    def relabelled(self, name: str) -> "GradedAlgebra":
        """A copy sharing the multiplication data but with its own name and metadata."""
        B = GradedAlgebra(self.field, self.generators, self.basis, self.act, self.presentation,
                          self.steenrod, name=name, metadata=self.metadata)
        return B

    # derived objects --------------------------------------------------------

    @cached_property
    def square(self) -> "GradedAlgebra":
        """The tensor square ``A (x) A``, cached."""
        return tensor(self, self)

    def __repr__(self) -> str:
        label = self.name or "GradedAlgebra"
        return f"<{label} over {self.field.value}: dim {self.dim}, top degree {self.top_degree}>"


class Element:
    """A finite formal sum of basis monomials with field coefficients."""

    __slots__ = ("algebra", "vec")

    def __init__(self, algebra: GradedAlgebra, vec: Vector):
        self.algebra = algebra
        self.vec = vec

    @property
    def terms(self) -> dict[Monomial, Scalar]:
        return {self.algebra.basis[i]: c for i, c in sorted(self.vec.items())}

    def _check(self, other: "Element") -> None:
        if other.algebra is not self.algebra:
            raise MixedAmbient("elements live in different algebras")

    def _lift(self, other) -> "Element":
        if isinstance(other, Element):
            self._check(other)
            return other
        c = self.algebra.field.scalar(other)
        return Element(self.algebra, {0: c} if c else {})

    def __add__(self, other) -> "Element":
        other = self._lift(other)
        out = dict(self.vec)
        axpy(self.algebra.field, out, self.algebra.field.one, other.vec)
        return Element(self.algebra, out)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element(self.algebra, scale(self.algebra.field, self.algebra.field.sign(True), self.vec))

    def __sub__(self, other) -> "Element":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Element":
        return self._lift(other) - self

    def __mul__(self, other) -> "Element":
        if isinstance(other, Element):
            self._check(other)
            return Element(self.algebra, self.algebra.mul_vec(self.vec, other.vec))
        c = self.algebra.field.scalar(other)
        return Element(self.algebra, scale(self.algebra.field, c, self.vec))

    def __rmul__(self, other) -> "Element":
        c = self.algebra.field.scalar(other)
        return Element(self.algebra, scale(self.algebra.field, c, self.vec))

    def __pow__(self, n: int) -> "Element":
        out = self.algebra.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.algebra is other.algebra and self.vec == other.vec
        if other == 0:
            return not self.vec
        return NotImplemented

    def __hash__(self):
        return hash((id(self.algebra), frozenset(self.vec.items())))

    def __bool__(self) -> bool:
        return bool(self.vec)

    def degrees(self) -> set[int]:
        return {self.algebra.degrees[i] for i in self.vec}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        ds = self.degrees()
        if len(ds) != 1:
            return None
        return next(iter(ds))

    def component(self, d: int) -> "Element":
        return Element(self.algebra, {i: c for i, c in self.vec.items() if self.algebra.degrees[i] == d})

    def __repr__(self) -> str:
        if not self.vec:
            return "0"
        A = self.algebra
        parts = []
        for i in sorted(self.vec, key=lambda k: (A.degrees[k], k)):
            c = self.vec[i]
            name = A.parse_monomial_name(A.basis[i])
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ")


# --- operations ---------------------------------------------------------------

def multiply(A: GradedAlgebra, x: Element, y: Element) -> Element:
    if x.algebra is not A or y.algebra is not A:
        raise MixedAmbient("elements do not belong to the given algebra")
    return x * y


def _declared_top(p: Presentation, gens: Sequence[GeneratorSpec]) -> int:
    if p.top_degree is not None:
        return max(1, p.top_degree)
    max_rel = 1
    for rel in p.relations:
        for _, e in rel:
            max_rel = max(max_rel, sum(x * g.degree for x, g in zip(e, gens)))
    total = 0
    for g in gens:
        total += g.degree if g.square_zero else max(max_rel, g.degree)
    return max(1, total)


def build_algebra(p: Presentation, degree_cap: int | None = None, name: str = "") -> GradedAlgebra:
    """Complete a presentation to a finite monomial basis with generator actions."""
    F = p.field
    gens = p.normalized_generators()
    n = len(gens)
    gdeg = [g.degree for g in gens]
    sqz = [g.square_zero for g in gens]

    def vanishes(m: Monomial) -> bool:
        return any(e >= 2 and z for e, z in zip(m, sqz))

    rels_by_degree: dict[int, list[Polynomial]] = {}
    for rel in p.relations:
        poly: Polynomial = {}
        for c, e in rel:
            c = F.scalar(c)
            if not c or vanishes(e):
                continue
            s = poly.get(e, 0) + c
            s = F.scalar(s)
            if s:
                poly[e] = s
            else:
                poly.pop(e, None)
        if not poly:
            continue
        degs = {sum(x * d for x, d in zip(e, gdeg)) for e in poly}
        if len(degs) != 1:
            raise NonHomogeneousRelation(f"relation mixes degrees {sorted(degs)}")
        d = degs.pop()
        if d == 0:
            raise PresentationError("a relation of degree 0 kills the unit")
        rels_by_degree.setdefault(d, []).append(poly)

    cap = degree_cap if degree_cap is not None else 4 * _declared_top(p, gens)

    basis: list[Monomial] = [tuple([0] * n)]
    by_deg: dict[int, list[int]] = {0: [0]}
    table: dict[tuple[int, int], Vector] = {}

    def act_vec(g: int, v: Vector) -> Vector:
        out: Vector = {}
        for i, c in v.items():
            axpy(F, out, c, table[(g, i)])
        return out

    def nf(m: Monomial) -> Vector:
        v: Vector = {0: F.one}
        for g in reversed([g for g, e in enumerate(m) for _ in range(e)]):
            v = act_vec(g, v)
            if not v:
                break
        return v

    maxg = max(gdeg) if gdeg else 1
    zero_run = 0
    d = 0
    while n and zero_run < maxg:
        d += 1
        if d > cap:
            raise InfiniteDimensional(
                f"completion still finds basis monomials in degree {d} > cap {cap}"
            )
        cols: list[tuple[int, int]] = []
        for g in range(n):
            if gdeg[g] <= d:
                cols.extend((g, s) for s in by_deg.get(d - gdeg[g], ()))
        if not cols:
            by_deg[d] = []
            zero_run += 1
            continue

        def label(col):
            g, s = col
            m = list(basis[s])
            m[g] += 1
            return tuple(m)

        def col_key(col):
            m = label(col)
            # invalid labels (a square-zero generator squared) sort first so they pivot
            return (0 if vanishes(m) else 1, tuple(-x for x in monomial_key(m, gdeg)[1]), -col[0])

        cols.sort(key=col_key)
        pos = {c: k for k, c in enumerate(cols)}

        def lift(g: int, v: Vector, coeff: Scalar, row: Vector) -> None:
            for s, c in v.items():
                axpy(F, row, coeff * c, {pos[(g, s)]: F.one})

        ech = Echelon(F, len(cols))
        for g in range(n):
            for h in range(g + 1, n):
                lo = d - gdeg[g] - gdeg[h]
                for t in by_deg.get(lo, ()):
                    row: Vector = {}
                    lift(g, table[(h, t)], F.one, row)
                    neg = (gdeg[g] * gdeg[h]) % 2 == 1
                    lift(h, table[(g, t)], -F.sign(neg) if F is FieldTag.Q else 1, row)
                    if row:
                        ech.insert(row)
            if sqz[g]:
                for t in by_deg.get(d - 2 * gdeg[g], ()):
                    row = {}
                    lift(g, table[(g, t)], F.one, row)
                    if row:
                        ech.insert(row)
        for poly in rels_by_degree.get(d, ()):
            row = {}
            for m, c in poly.items():
                g = next(k for k, e in enumerate(m) if e)
                rest = list(m)
                rest[g] -= 1
                lift(g, nf(tuple(rest)), c, row)
            if row:
                ech.insert(row)

        reduced = ech.rref()
        pivots = {piv for piv, _ in reduced}
        free = [k for k in range(len(cols)) if k not in pivots]
        labels = [label(cols[k]) for k in free]
        if any(vanishes(m) for m in labels) or len(set(labels)) != len(labels):
            raise PresentationError("completion produced an inconsistent basis; presentation is malformed")
        # ascending grevlex order within the degree
        order = sorted(range(len(free)), key=lambda k: monomial_key(labels[k], gdeg))
        col_to_global: dict[int, int] = {}
        col_sign: dict[int, Scalar] = {}
        new_idx = []
        for k in order:
            gi = len(basis)
            basis.append(labels[k])
            new_idx.append(gi)
            c = free[k]
            g, s = cols[c]
            col_to_global[c] = gi
            col_sign[c] = F.sign(_odd_swap_sign(basis[s], g, gdeg))
        by_deg[d] = new_idx
        for c in free:
            table[cols[c]] = {col_to_global[c]: col_sign[c]}
        for piv, row in reduced:
            v: Vector = {}
            for c, coeff in row.items():
                if c == piv:
                    continue
                axpy(F, v, -coeff if F is FieldTag.Q else 1, {col_to_global[c]: col_sign[c]})
            table[cols[piv]] = v
        zero_run = 0 if new_idx else zero_run + 1

    def act(g: int, i: int) -> Vector:
        return table.get((g, i), {})

    # Entries never filled are products landing beyond the last nonzero degree.
    A = GradedAlgebra(F, gens, basis, act, presentation=p, name=name)
    if p.steenrod:
        attach_steenrod(A, {g: [(c, e) for c, e in poly] for g, poly in p.steenrod.items()})
    return A


def attach_steenrod(A: GradedAlgebra, data: Mapping[str, Iterable[tuple[Scalar, Monomial]] | "Element"]) -> GradedAlgebra:
    """Attach total-square data for every generator (GF(2) only) and check axioms."""
    if A.field is not FieldTag.GF2:
        raise FieldMismatch("Steenrod squares are defined here only over GF(2)")
    sq: dict[int, Vector] = {}
    for name, poly in data.items():
        g = A.gen_index(name)
        if isinstance(poly, Element):
            v = dict(poly.vec)
        else:
            v = A.element({tuple(e): c for c, e in poly}).vec if poly else {}
        sq[g] = v
    missing = [A.generators[g].name for g in range(A.ngens) if g not in sq]
    if missing:
        raise NoSteenrodData(f"no total square given for {missing}")
    for g, v in sq.items():
        x = A.gen(g)
        _check_unstable(A, x, Element(A, v))
    A.steenrod = sq
    A._sq_cache.clear()
    return A


def _check_unstable(A: GradedAlgebra, x: Element, sqx: Element) -> None:
    if not x:
        return
    d = x.degree
    if d is None:
        raise ValueError("unstable axiom check needs a homogeneous element")
    if sqx.component(d) != x:
        raise AssertionError(f"Sq^0 component of Sq({x}) is {sqx.component(d)}, not {x}")
    if sqx.component(2 * d) != x * x:
        raise AssertionError(f"top component of Sq({x}) differs from its square")
    if any(k < d or k > 2 * d for k in sqx.degrees()):
        raise AssertionError(f"Sq({x}) has components outside degrees {d}..{2 * d}")


def steenrod_apply(A: GradedAlgebra, x: Element) -> Element:
    """Total Steenrod square of ``x`` via the Cartan formula on generator data."""
    if A.field is not FieldTag.GF2:
        raise FieldMismatch("Steenrod squares are defined here only over GF(2)")
    if x.algebra is not A:
        raise MixedAmbient("element does not belong to the algebra")
    if A.steenrod is None:
        raise NoSteenrodData(f"{A.name or 'algebra'} carries no Steenrod data")
    result = A.zero
    for d in sorted(x.degrees()):
        part = x.component(d)
        out: Vector = {}
        for i in part.vec:
            axpy(A.field, out, 1, A.total_square_basis(i))
        sq = Element(A, out)
        _check_unstable(A, part, sq)
        result = result + sq
    return result


# --- tensor products -------------------------------------------------------------

def _rename(left: Sequence[GeneratorSpec], right: Sequence[GeneratorSpec]) -> list[GeneratorSpec]:
    taken = {g.name for g in left}
    out = []
    for g in right:
        name = g.name
        while name in taken:
            name += "'"
        taken.add(name)
        out.append(GeneratorSpec(name, g.degree, g.square_zero))
    return out


def tensor(A: GradedAlgebra, B: GradedAlgebra, name: str = "") -> GradedAlgebra:
    """Graded tensor product with ``(a(x)b)(a'(x)b') = (-1)^{|b||a'|} aa'(x)bb'``."""
    if A.field is not B.field:
        raise FieldMismatch(f"cannot tensor {A.field.value} with {B.field.value}")
    F = A.field
    nA = A.ngens
    gens = list(A.generators) + _rename(A.generators, B.generators)
    pairs = sorted(
        ((i, j) for i in range(A.dim) for j in range(B.dim)),
        key=lambda ij: (A.degrees[ij[0]] + B.degrees[ij[1]], ij),
    )
    index = {ij: k for k, ij in enumerate(pairs)}
    basis = [A.basis[i] + B.basis[j] for i, j in pairs]

    def act(g: int, k: int) -> Vector:
        i, j = pairs[k]
        out: Vector = {}
        if g < nA:
            for i2, c in A.act(g, i).items():
                out[index[(i2, j)]] = c
        else:
            h = g - nA
            s = F.sign(F is FieldTag.Q and (B.gen_degrees[h] * A.degrees[i]) % 2 == 1)
            for j2, c in B.act(h, j).items():
                out[index[(i, j2)]] = s * c if F is FieldTag.Q else c
        return out

    pA, pB = A.presentation, B.presentation
    nB = B.ngens
    rels = [[(c, tuple(e) + (0,) * nB) for c, e in rel] for rel in pA.relations]
    rels += [[(c, (0,) * nA + tuple(e)) for c, e in rel] for rel in pB.relations]
    pres = Presentation(F, gens, rels, top_degree=A.top_degree + B.top_degree)
    steen = None
    if A.steenrod is not None and B.steenrod is not None:
        steen = {}
        for g, v in A.steenrod.items():
            steen[g] = {index[(i, 0)]: c for i, c in v.items()}
        for h, v in B.steenrod.items():
            steen[nA + h] = {index[(0, j)]: c for j, c in v.items()}
        pres.steenrod = _steenrod_presentation(gens, basis, steen)
    T = GradedAlgebra(F, gens, basis, act, presentation=pres, steenrod=steen,
                      name=name or f"({A.name or 'A'} (x) {B.name or 'B'})")
    T.metadata["factors"] = (A, B)
    T.metadata["pairs"] = tuple(pairs)
    return T


def _steenrod_presentation(gens, basis, steen: Mapping[int, Vector]) -> dict:
    return {gens[g].name: [(c, basis[i]) for i, c in sorted(v.items())] for g, v in sorted(steen.items())}


def unit_algebra(field: FieldTag | str = FieldTag.GF2) -> GradedAlgebra:
    """The ground field as a graded algebra concentrated in degree 0."""
    F = FieldTag.parse(field)
    A = build_algebra(Presentation(F, []), name="unit")
    if F is FieldTag.GF2:
        A.steenrod = {}
    return A


# --- square-root extensions ---------------------------------------------------

def adjoin_root(
    A: GradedAlgebra,
    name: str,
    degree: int,
    u: Element,
    square_data: Element | None = None,
    alg_name: str = "",
) -> GradedAlgebra:
    """Adjoin ``b`` of the given degree subject to ``b^2 = u*b``.

    The result is free over ``A`` on ``{1, b}``.  ``square_data`` is the total
    Steenrod square of ``b`` written as ``w*b`` with ``w`` in ``A``; it is only
    used when ``A`` itself carries Steenrod data.
    """
    if u.algebra is not A:
        raise MixedAmbient("u must be an element of the base algebra")
    if u and u.degree != degree:
        raise PresentationError(f"b^2 = u*b needs |u| = {degree}")
    F = A.field
    nA = A.ngens
    gens = list(A.generators) + [GeneratorSpec(name, degree, False)]
    if any(g.name == name for g in A.generators):
        raise PresentationError(f"generator name {name!r} already used")
    dA = A.dim
    # basis: A-basis then A-basis times b, regrouped by degree
    pairs = sorted(
        ((i, e) for e in (0, 1) for i in range(dA)),
        key=lambda ie: (A.degrees[ie[0]] + ie[1] * degree, ie[1], ie[0]),
    )
    index = {ie: k for k, ie in enumerate(pairs)}
    basis = [A.basis[i] + (e,) for i, e in pairs]
    uvec = u.vec

    def act(g: int, k: int) -> Vector:
        i, e = pairs[k]
        if g < nA:
            return {index[(i2, e)]: c for i2, c in A.act(g, i).items()}
        neg = F is FieldTag.Q and (degree * A.degrees[i]) % 2 == 1
        s = F.sign(neg)
        if e == 0:
            return {index[(i, 1)]: s}
        # b * (a b) = +-a b^2 = +-(a u) b
        au = A.mul_vec({i: F.one}, uvec)
        return {index[(i2, 1)]: (s * c if F is FieldTag.Q else c) for i2, c in au.items()}

    p = A.presentation
    rels = [[(c, tuple(e) + (0,)) for c, e in rel] for rel in p.relations]
    zero = (0,) * nA
    rel = [(F.one, zero + (2,))]
    for i, c in sorted(uvec.items()):
        rel.append((-c if F is FieldTag.Q else c, A.basis[i] + (1,)))
    rels.append(rel)
    pres = Presentation(F, gens, rels, top_degree=A.top_degree + degree)
    steen = None
    if A.steenrod is not None and square_data is not None:
        if square_data.algebra is not A:
            raise MixedAmbient("square data must live in the base algebra")
        steen = {g: {index[(i, 0)]: c for i, c in v.items()} for g, v in A.steenrod.items()}
        steen[nA] = {index[(i, 1)]: c for i, c in square_data.vec.items()}
        pres.steenrod = _steenrod_presentation(gens, basis, steen)
    E = GradedAlgebra(F, gens, basis, act, presentation=pres, steenrod=steen,
                      name=alg_name or f"{A.name or 'A'}[{name}]")
    if steen is not None:
        attach_steenrod(E, {gens[g].name: Element(E, v) for g, v in steen.items()})
    return E


# --- multiplication kernel --------------------------------------------------------

def multiplication_kernel(A: GradedAlgebra) -> Subspace:
    """Kernel of the cup product ``A (x) A -> A`` in the coordinates of ``A.square``."""
    AA = A.square
    pairs = AA.metadata["pairs"]
    columns = [A.mul_basis(i, j) for i, j in pairs]
    return nullspace(A.field, columns, A.dim)


def basic_divisor(A: GradedAlgebra, g: int | str) -> Element:
    """``x (x) 1 - 1 (x) x`` for a generator ``x`` of ``A``, inside ``A.square``."""
    if isinstance(g, str):
        g = A.gen_index(g)
    AA = A.square
    return AA.gen(g) - AA.gen(A.ngens + g)


def tensor_element(A: GradedAlgebra, x: Element, y: Element) -> Element:
    """``x (x) y`` inside ``A.square``."""
    AA = A.square
    index = {ij: k for k, ij in enumerate(AA.metadata["pairs"])}
    out: Vector = {}
    for i, a in x.vec.items():
        for j, b in y.vec.items():
            axpy(A.field, out, a * b, {index[(i, j)]: A.field.one})
    return Element(AA, out)
