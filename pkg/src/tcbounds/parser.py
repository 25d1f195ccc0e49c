"""Recursive-descent parser for the space-expression grammar.

    expr    := term ('*' term)*
    term    := '(' expr ')' | 'Z2' '[' action (',' action)* ']' '{' expr '}' | family
    family  := 'S(' int ')' | 'RP(' int ')' | 'CP(' int ')' | 'T(' int ')'
             | 'Gr(' int ',' int ')' | 'SigO(' int ')' | 'SigN(' int ')'
             | 'P(' int (',' int)* ')' | 'K(' int ')' | 'Xg(' int ',' int ')'
             | 'DG(' int ',' int ';' '[' int (',' int)* ']' ')'
             | 'X(' expr ';' pair (',' pair)* ')'
    pair    := '(' int ',' int ')'
    action  := 'conj' | 'antipodal' | 'refl(' int ')'

Whitespace is ignored between tokens.  Errors carry the offset and the set of
tokens that would have been accepted there.
"""

from __future__ import annotations

from .errors import ExprSyntaxError
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
)

FAMILIES = ("S", "RP", "CP", "T", "Gr", "SigO", "SigN", "P", "K", "Xg", "DG", "X")
ACTIONS = ("conj", "antipodal", "refl")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # lexical helpers -----------------------------------------------------------

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, expected) -> ExprSyntaxError:
        self.skip()
        return ExprSyntaxError(self.text, self.pos, list(expected))

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.fail([repr(ch)])
        self.pos += 1

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def ident(self, expected) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if start == self.pos or not self.text[start].isalpha():
            self.pos = start
            raise self.fail(expected)
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.fail(["integer"])
        return int(self.text[start:self.pos])

    def int_list(self, close: str) -> list[int]:
        out = [self.integer()]
        while self.accept(","):
            out.append(self.integer())
        self.expect(close)
        return out

    # grammar -----------------------------------------------------------------------

    def parse(self) -> SpaceExpr:
        e = self.expr()
        if self.peek():
            raise self.fail(["'*'", "end of input"])
        return e

    def expr(self) -> SpaceExpr:
        e = self.term()
        while self.accept("*"):
            e = Product(e, self.term())
        return e

    def term(self) -> SpaceExpr:
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        start = self.pos
        expected = ["'('", "'Z2'"] + [repr(f) for f in FAMILIES]
        name = self.ident(expected)
        if name == "Z2":
            return self.z2()
        if name not in FAMILIES:
            self.pos = start
            raise self.fail(expected)
        self.expect("(")
        return getattr(self, f"family_{name}")()

    def z2(self) -> Z2Product:
        self.expect("[")
        actions = [self.action()]
        while self.accept(","):
            actions.append(self.action())
        self.expect("]")
        self.expect("{")
        inner = self.expr()
        self.expect("}")
        return Z2Product(inner, tuple(actions))

    def action(self) -> str:
        start = self.pos
        name = self.ident([repr(a) for a in ACTIONS])
        if name == "refl":
            self.expect("(")
            p = self.integer()
            self.expect(")")
            return f"refl({p})"
        if name not in ACTIONS:
            self.pos = start
            raise self.fail([repr(a) for a in ACTIONS])
        return name

    def _one(self) -> int:
        n = self.integer()
        self.expect(")")
        return n

    def _two(self) -> tuple[int, int]:
        a = self.integer()
        self.expect(",")
        b = self.integer()
        self.expect(")")
        return a, b

    def family_S(self):
        return Sphere(self._one())

    def family_RP(self):
        return RP(self._one())

    def family_CP(self):
        return CP(self._one())

    def family_T(self):
        return Torus(self._one())

    def family_Gr(self):
        return Grassmann(*self._two())

    def family_SigO(self):
        return SurfaceO(self._one())

    def family_SigN(self):
        return SurfaceN(self._one())

    def family_P(self):
        return PPS(tuple(self.int_list(")")))

    def family_K(self):
        return Klein(self._one())

    def family_Xg(self):
        return Xg(*self._two())

    def family_DG(self):
        d = self.integer()
        self.expect(",")
        n = self.integer()
        self.expect(";")
        self.expect("[")
        ns = self.int_list("]")
        self.expect(")")
        return DoldGrassmann(d, n, tuple(ns))

    def family_X(self):
        base = self.expr()
        self.expect(";")
        pairs = [self.pair()]
        while self.accept(","):
            pairs.append(self.pair())
        self.expect(")")
        return Gpps(base, tuple(pairs))

    def pair(self) -> tuple[int, int]:
        self.expect("(")
        return self._two()


def parse_space_expr(text: str) -> SpaceExpr:
    """Parse ``text``; raises :class:`ExprSyntaxError` or :class:`ParameterError`."""
    return _Parser(text).parse()
