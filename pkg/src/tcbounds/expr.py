"""Abstract syntax for space expressions.

Nodes are frozen dataclasses, so they hash and compare structurally and can
key the bound engine's memo table.  Parameters are validated on construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import ParameterError


class SpaceExpr:
    """Marker base class for every expression node."""

    __slots__ = ()

    def __str__(self) -> str:
        return render(self)

    def __mul__(self, other: "SpaceExpr") -> "Product":
        return Product(self, other)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterError(msg)


@dataclass(frozen=True)
class Sphere(SpaceExpr):
    n: int

    def __post_init__(self):
        _need(self.n >= 1, f"S(n) needs n >= 1, got {self.n}")


@dataclass(frozen=True)
class RP(SpaceExpr):
    n: int

    def __post_init__(self):
        _need(self.n >= 1, f"RP(n) needs n >= 1, got {self.n}")


@dataclass(frozen=True)
class CP(SpaceExpr):
    n: int

    def __post_init__(self):
        _need(self.n >= 1, f"CP(n) needs n >= 1, got {self.n}")


@dataclass(frozen=True)
class Torus(SpaceExpr):
    n: int

    def __post_init__(self):
        _need(self.n >= 1, f"T(n) needs n >= 1, got {self.n}")


@dataclass(frozen=True)
class Grassmann(SpaceExpr):
    d: int
    n: int

    def __post_init__(self):
        _need(1 <= self.d < self.n, f"Gr(d,n) needs 1 <= d < n, got ({self.d},{self.n})")


@dataclass(frozen=True)
class SurfaceO(SpaceExpr):
    g: int

    def __post_init__(self):
        _need(self.g >= 0, f"SigO(g) needs g >= 0, got {self.g}")


@dataclass(frozen=True)
class SurfaceN(SpaceExpr):
    h: int

    def __post_init__(self):
        _need(self.h >= 1, f"SigN(h) needs h >= 1, got {self.h}")


@dataclass(frozen=True)
class PPS(SpaceExpr):
    ns: tuple[int, ...]

    def __post_init__(self):
        ns = tuple(sorted(self.ns))
        _need(len(ns) >= 1 and ns[0] >= 1, f"P(...) needs at least one entry, all >= 1, got {ns}")
        object.__setattr__(self, "ns", ns)


@dataclass(frozen=True)
class Klein(SpaceExpr):
    n: int

    def __post_init__(self):
        _need(self.n >= 2, f"K(n) needs n >= 2, got {self.n}")


@dataclass(frozen=True)
class Xg(SpaceExpr):
    g: int
    n: int

    def __post_init__(self):
        _need(self.g >= 0 and self.n >= 2, f"Xg(g,n) needs g >= 0 and n >= 2, got ({self.g},{self.n})")


@dataclass(frozen=True)
class DoldGrassmann(SpaceExpr):
    d: int
    n: int
    ns: tuple[int, ...]

    def __post_init__(self):
        _need(1 <= self.d < self.n, f"DG(d,n;...) needs 1 <= d < n, got ({self.d},{self.n})")
        ns = tuple(sorted(self.ns))
        _need(len(ns) >= 1 and ns[0] >= 1, f"DG sphere list needs entries >= 1, got {ns}")
        object.__setattr__(self, "ns", ns)


@dataclass(frozen=True)
class Gpps(SpaceExpr):
    """Orbit space ``base`` carrying sphere factors ``(n_j, p_j)``."""

    base: SpaceExpr
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        fs = tuple(sorted((int(a), int(b)) for a, b in self.factors))
        _need(len(fs) >= 1, "X(base; ...) needs at least one sphere factor")
        for nj, pj in fs:
            _need(nj >= 1 and 0 <= pj <= nj, f"sphere factor ({nj},{pj}) needs n >= 1 and 0 <= p <= n")
        _need(not isinstance(self.base, Z2Product), "the base of X(...) must be a plain space")
        object.__setattr__(self, "factors", fs)


@dataclass(frozen=True)
class Product(SpaceExpr):
    left: SpaceExpr
    right: SpaceExpr

    def __post_init__(self):
        _need(not isinstance(self.left, Z2Product) and not isinstance(self.right, Z2Product),
              "Z2[...]{...} can only appear at the top level")


# --- involutions ----------------------------------------------------------------

_REFL = re.compile(r"refl\((\d+)\)\Z")


def action_parameter(tag: str) -> int | None:
    """The ``p`` of a ``refl(p)`` tag (``antipodal`` is ``refl(0)``); None otherwise."""
    if tag == "antipodal":
        return 0
    m = _REFL.match(tag)
    return int(m.group(1)) if m else None


def _check_action(atom: SpaceExpr, tag: str) -> None:
    if tag == "conj":
        ok = isinstance(atom, (CP, Grassmann, Torus)) or (isinstance(atom, Sphere) and atom.n == 1)
    elif tag == "antipodal":
        ok = isinstance(atom, (Sphere, SurfaceO))
    else:
        p = action_parameter(tag)
        _need(p is not None, f"unknown involution {tag!r}")
        ok = isinstance(atom, Sphere) and p <= atom.n
    _need(ok, f"involution {tag!r} is not available on {render(atom)}")


def factors(e: SpaceExpr) -> list[SpaceExpr]:
    """Flatten nested products into their atoms, left to right."""
    if isinstance(e, Product):
        return factors(e.left) + factors(e.right)
    return [e]


def product_of(atoms: list[SpaceExpr]) -> SpaceExpr:
    out = atoms[0]
    for a in atoms[1:]:
        out = Product(out, a)
    return out


@dataclass(frozen=True)
class Z2Product(SpaceExpr):
    """``expr`` with a diagonal involution; one tag per atom, or a single tag for all."""

    expr: SpaceExpr
    actions: tuple[str, ...]

    def __post_init__(self):
        acts = tuple(self.actions)
        atoms = factors(self.expr)
        _need(len(acts) in (1, len(atoms)),
              f"Z2[...] lists {len(acts)} involutions for {len(atoms)} factors")
        for atom, tag in zip(atoms, acts * len(atoms) if len(acts) == 1 else acts):
            _check_action(atom, tag)
        object.__setattr__(self, "actions", acts)

    def atoms(self) -> list[tuple[SpaceExpr, str]]:
        atoms = factors(self.expr)
        acts = self.actions * len(atoms) if len(self.actions) == 1 else self.actions
        return list(zip(atoms, acts))


Expr = Union[Sphere, RP, CP, Torus, Grassmann, SurfaceO, SurfaceN, PPS, Klein, Xg,
             DoldGrassmann, Gpps, Product, Z2Product]


# --- rendering --------------------------------------------------------------------

def _ints(xs) -> str:
    return ",".join(str(x) for x in xs)


def render(e: SpaceExpr) -> str:
    """Canonical text in the expression grammar; ``parse(render(e)) == e``."""
    if isinstance(e, Sphere):
        return f"S({e.n})"
    if isinstance(e, RP):
        return f"RP({e.n})"
    if isinstance(e, CP):
        return f"CP({e.n})"
    if isinstance(e, Torus):
        return f"T({e.n})"
    if isinstance(e, Grassmann):
        return f"Gr({e.d},{e.n})"
    if isinstance(e, SurfaceO):
        return f"SigO({e.g})"
    if isinstance(e, SurfaceN):
        return f"SigN({e.h})"
    if isinstance(e, PPS):
        return f"P({_ints(e.ns)})"
    if isinstance(e, Klein):
        return f"K({e.n})"
    if isinstance(e, Xg):
        return f"Xg({e.g},{e.n})"
    if isinstance(e, DoldGrassmann):
        return f"DG({e.d},{e.n};[{_ints(e.ns)}])"
    if isinstance(e, Gpps):
        pairs = ",".join(f"({a},{b})" for a, b in e.factors)
        return f"X({render(e.base)};{pairs})"
    if isinstance(e, Product):
        right = render(e.right)
        if isinstance(e.right, Product):
            right = f"({right})"
        return f"{render(e.left)} * {right}"
    if isinstance(e, Z2Product):
        return f"Z2[{','.join(e.actions)}]{{{render(e.expr)}}}"
    raise TypeError(f"not a space expression: {e!r}")
