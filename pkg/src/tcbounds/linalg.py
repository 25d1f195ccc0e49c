"""Exact linear algebra over GF(2) and the rationals.

Vectors are sparse ``dict[int, scalar]`` maps that never store zeros.  Over
GF(2) the echelon machinery packs rows into Python ints (bit ``i`` is
coordinate ``i``) so that row operations are single XORs.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, Iterator, Union

Scalar = Union[int, Fraction]
Vector = dict  # dict[int, Scalar]


class FieldTag(enum.Enum):
    GF2 = "GF2"
    Q = "Q"

    @classmethod
    def parse(cls, value: "FieldTag | str") -> "FieldTag":
        if isinstance(value, FieldTag):
            return value
        key = str(value).strip().upper()
        if key in ("GF2", "Z2", "F2"):
            return cls.GF2
        if key in ("Q", "QQ", "RATIONAL"):
            return cls.Q
        raise ValueError(f"unknown field {value!r}")

    def scalar(self, x) -> Scalar:
        if self is FieldTag.GF2:
            if isinstance(x, Fraction):
                if x.denominator % 2 == 0:
                    raise ZeroDivisionError(f"{x} has no image in GF(2)")
                x = x.numerator
            return int(x) % 2
        return Fraction(x)

    @property
    def one(self) -> Scalar:
        return 1 if self is FieldTag.GF2 else Fraction(1)

    @property
    def zero(self) -> Scalar:
        return 0 if self is FieldTag.GF2 else Fraction(0)

    def sign(self, negative: bool) -> Scalar:
        if self is FieldTag.GF2 or not negative:
            return self.one
        return Fraction(-1)


# --- sparse vector helpers -------------------------------------------------

def axpy(field: FieldTag, y: Vector, a: Scalar, x: Vector) -> Vector:
    """In place ``y += a*x``; returns ``y``."""
    if not a:
        return y
    if field is FieldTag.GF2:
        for k in x:
            if k in y:
                del y[k]
            else:
                y[k] = 1
        return y
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)
    return y


def scale(field: FieldTag, a: Scalar, x: Vector) -> Vector:
    if not a:
        return {}
    if field is FieldTag.GF2:
        return dict(x)
    return {k: a * v for k, v in x.items()}


def to_bits(x: Vector) -> int:
    out = 0
    for k in x:
        out |= 1 << k
    return out


def from_bits(bits: int) -> Vector:
    out = {}
    while bits:
        low = bits & -bits
        out[low.bit_length() - 1] = 1
        bits ^= low
    return out


def _lowbit(bits: int) -> int:
    return (bits & -bits).bit_length() - 1


# --- incremental echelon form ------------------------------------------------

class Echelon:
    """Row echelon form built one vector at a time.

    The pivot of a row is its smallest nonzero coordinate.  ``insert`` reports
    whether the vector enlarged the span, which is what the ideal-power
    iterations need to keep an independent spanning set of actual products.
    """

    def __init__(self, field: FieldTag, dim: int):
        self.field = field
        self.dim = dim
        self._rows: dict[int, object] = {}  # pivot -> row (int bits or Vector)

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, v: Vector):
        """Return the remainder of ``v`` (same packed form as the rows)."""
        if self.field is FieldTag.GF2:
            r = to_bits(v) if isinstance(v, dict) else v
            rows = self._rows
            while r:
                p = _lowbit(r)
                row = rows.get(p)
                if row is None:
                    break
                r ^= row
            return r
        r = dict(v)
        rows = self._rows
        while r:
            p = min(r)
            row = rows.get(p)
            if row is None:
                break
            axpy(self.field, r, -r[p], row)
        return r

    def insert(self, v: Vector) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        if self.field is FieldTag.GF2:
            self._rows[_lowbit(r)] = r
        else:
            p = min(r)
            inv = 1 / r[p]
            self._rows[p] = {k: c * inv for k, c in r.items()}
        return True

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def rref(self) -> list[tuple[int, Vector]]:
        """Reduced echelon rows as ``(pivot, vector)`` sorted by pivot."""
        pivots = sorted(self._rows)
        if self.field is FieldTag.GF2:
            rows = dict(self._rows)
            for i in range(len(pivots) - 1, -1, -1):
                p = pivots[i]
                prow = rows[p]
                for q in pivots[:i]:
                    if (rows[q] >> p) & 1:
                        rows[q] ^= prow
            return [(p, from_bits(rows[p])) for p in pivots]
        rows = {p: dict(r) for p, r in self._rows.items()}
        for i in range(len(pivots) - 1, -1, -1):
            p = pivots[i]
            prow = rows[p]
            for q in pivots[:i]:
                c = rows[q].get(p)
                if c:
                    axpy(self.field, rows[q], -c, prow)
        return [(p, rows[p]) for p in pivots]


class Subspace:
    """A subspace of ``field^dim`` stored in canonical reduced echelon form.

    Two subspaces are equal iff their canonical row lists are equal.
    """

    def __init__(self, field: FieldTag, dim: int, vectors: Iterable[Vector] = ()):
        self.field = field
        self.dim = dim
        ech = Echelon(field, dim)
        for v in vectors:
            if any(k < 0 or k >= dim for k in v):
                raise IndexError("vector coordinate outside ambient dimension")
            ech.insert(v)
        self._ech = ech
        rows = ech.rref()
        self.pivots: tuple[int, ...] = tuple(p for p, _ in rows)
        self.basis: tuple[Vector, ...] = tuple(r for _, r in rows)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dimension

    def __iter__(self) -> Iterator[Vector]:
        return iter(self.basis)

    def contains(self, v: Vector) -> bool:
        return self._ech.contains(v)

    __contains__ = contains

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field, self.dim, self.basis) == (other.field, other.dim, other.basis)

    def __hash__(self):
        return hash((self.field, self.dim, self.pivots))

    def __repr__(self) -> str:
        return f"Subspace({self.field.value}, dim={self.dimension} in {self.dim})"


def nullspace(field: FieldTag, columns: list[Vector], nrows: int) -> Subspace:
    """Kernel of the linear map whose ``j``-th column is ``columns[j]``.

    Solved by Gaussian elimination on the transposed system; independent of
    any structure the caller may know about the map.
    """
    ncols = len(columns)
    # Row-reduce the matrix rows (indexed by output coordinate).
    rows: list[Vector] = [dict() for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, c in col.items():
            rows[i][j] = c
    ech = Echelon(field, ncols)
    for r in rows:
        ech.insert(r)
    reduced = ech.rref()
    pivset = {p for p, _ in reduced}
    kernel: list[Vector] = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = {f: field.one}
        for p, row in reduced:
            c = row.get(f)
            if c:
                v[p] = -c if field is FieldTag.Q else 1
        kernel.append(v)
    return Subspace(field, ncols, kernel)


def rank(field: FieldTag, vectors: Iterable[Vector], dim: int) -> int:
    ech = Echelon(field, dim)
    for v in vectors:
        ech.insert(v)
    return len(ech)
