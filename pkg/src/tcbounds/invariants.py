"""Cup-length, zero-divisor cup-length, Poincare polynomials and duality checks.

Both lengths are fixed-point iterations on subspaces.  Each level keeps an
independent list of actual products together with back-pointers, so the
certificate for the final level is read off by following the pointers.

For cup-length the generators suffice as left factors: a product of ``t``
positive-degree classes is nonzero only if some word of ``t`` generators is.
For zero divisors the same holds with the basic divisors ``g(x)1 - 1(x)g``,
because they generate the kernel of multiplication as an ideal.  The slower
``method="kernel"`` iteration multiplies by a full kernel basis instead and is
kept as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import (
    Element,
    GradedAlgebra,
    basic_divisor,
    multiplication_kernel,
)
from .linalg import Echelon, FieldTag, Vector, rank


@dataclass(frozen=True)
class WitnessProduct:
    factors: tuple[Element, ...]
    value: Element

    def __len__(self) -> int:
        return len(self.factors)

    def recompute(self) -> Element:
        if not self.factors:
            return self.value.algebra.one
        out = self.factors[0]
        for f in self.factors[1:]:
            out = out * f
        return out

    def to_json(self) -> list[dict[str, str | int]]:
        return [_term_map(f) for f in self.factors]


def _term_map(x: Element) -> dict[str, int | str]:
    A = x.algebra
    out = {}
    for i, c in sorted(x.vec.items()):
        c = int(c) if A.field is FieldTag.GF2 or c.denominator == 1 else str(c)
        out[A.parse_monomial_name(A.basis[i])] = c
    return out


def _power_iteration(
    A: GradedAlgebra,
    left: Sequence[Element],
    start: Iterable[Element],
) -> tuple[int, list[Element]]:
    """Largest ``t`` with a nonzero product ``l_1 ... l_t``; also one such chain.

    Level 1 is spanned by ``start`` (a subset of ``left`` or products of it),
    level ``t+1`` by ``l * s`` for ``l`` in ``left`` and ``s`` kept at level ``t``.
    """
    level: list[tuple[Vector, int, int]] = []  # (vector, factor index, parent index)
    ech = Echelon(A.field, A.dim)
    for k, z in enumerate(start):
        if ech.insert(z.vec):
            level.append((z.vec, k, -1))
    if not level:
        return 0, []
    history = [level]
    while True:
        ech = Echelon(A.field, A.dim)
        nxt: list[tuple[Vector, int, int]] = []
        for parent, (v, _, _) in enumerate(history[-1]):
            for k, z in enumerate(left):
                w = A.mul_vec(z.vec, v)
                if w and ech.insert(w):
                    nxt.append((w, k, parent))
        if not nxt:
            break
        history.append(nxt)
    # read back the chain ending at the first vector of the last level
    chain = []
    idx = 0
    for lvl in reversed(history):
        _, k, parent = lvl[idx]
        chain.append(left[k])
        idx = parent
    return len(history), chain


def _product(A: GradedAlgebra, factors: Sequence[Element]) -> Element:
    out = A.one
    for f in factors:
        out = out * f
    return out


def cup_length(A: GradedAlgebra) -> tuple[int, WitnessProduct]:
    gens = A.gens()
    k, chain = _power_iteration(A, gens, gens)
    w = WitnessProduct(tuple(chain), _product(A, chain))
    return k, w


def divisor_product(A: GradedAlgebra, exponents: Sequence[int]) -> Element:
    """Product of basic divisors with the given multiplicity per generator."""
    AA = A.square
    out = AA.one
    for g, e in enumerate(exponents):
        if e:
            out = out * basic_divisor(A, g) ** e
    return out


def _lex_first_divisor_witness(A: GradedAlgebra, k: int, budget: int) -> tuple[int, ...] | None:
    """Exponent vector of a nonzero product of ``k`` basic divisors, lexicographically largest.

    Depth-first over exponents of generator 0, then 1, ...; a zero partial
    product prunes the branch.  Gives up after ``budget`` multiplications.
    """
    AA = A.square
    divisors = [basic_divisor(A, g) for g in range(A.ngens)]
    n = len(divisors)
    spent = 0

    def dfs(g: int, remaining: int, acc: Element, exps: list[int]):
        nonlocal spent
        if remaining == 0:
            return tuple(exps) + (0,) * (n - g)
        if g == n:
            return None
        powers = [acc]
        for _ in range(remaining):
            spent += 1
            if spent > budget:
                raise TimeoutError
            nxt = powers[-1] * divisors[g]
            if not nxt:
                break
            powers.append(nxt)
        for e in range(len(powers) - 1, -1, -1):
            found = dfs(g + 1, remaining - e, powers[e], exps + [e])
            if found is not None:
                return found
        return None

    try:
        return dfs(0, k, AA.one, [])
    except TimeoutError:
        return None


def zero_divisor_cup_length(
    A: GradedAlgebra,
    method: str = "divisors",
    witness_budget: int = 5000,
) -> tuple[int, WitnessProduct]:
    """Zero-divisor cup-length of ``A`` with a certificate inside ``A (x) A``.

    With the default method the certificate is a product of basic divisors;
    when affordable the lexicographically first such product is returned, so
    earlier generators appear with the highest possible multiplicity.
    """
    AA = A.square
    if method == "divisors":
        divisors = [basic_divisor(A, g) for g in range(A.ngens)]
        k, chain = _power_iteration(AA, divisors, divisors)
        if k:
            exps = _lex_first_divisor_witness(A, k, witness_budget)
            if exps is not None:
                chain = [divisors[g] for g, e in enumerate(exps) for _ in range(e)]
    elif method == "kernel":
        Z = [Element(AA, dict(v)) for v in multiplication_kernel(A).basis]
        k, chain = _power_iteration(AA, Z, Z)
    else:
        raise ValueError(f"unknown method {method!r}")
    return k, WitnessProduct(tuple(chain), _product(AA, chain))


def poincare_polynomial(A: GradedAlgebra) -> list[int]:
    return A.poincare()


def duality_check(A: GradedAlgebra, d: int) -> bool:
    """Poincare duality in formal dimension ``d``: 1-dim top group and perfect pairings."""
    if any(deg > d for deg in A.degrees):
        return False
    top = A.by_degree.get(d, ())
    if len(top) != 1:
        return False
    t = top[0]
    for k in range(d + 1):
        rows = A.by_degree.get(k, ())
        cols = A.by_degree.get(d - k, ())
        if not rows:
            continue
        matrix = []
        for i in rows:
            row = {}
            for c, j in enumerate(cols):
                v = A.mul_basis(i, j).get(t)
                if v:
                    row[c] = v
            matrix.append(row)
        if rank(A.field, matrix, len(cols)) != len(rows):
            return False
    return True
