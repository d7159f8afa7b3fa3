"""
Parsers for factor expressions ("I(2,3)+IV(5)"), TRO shapes ("[(2,3),(1,1)]")
and K₀ matrices ("[[2,1]]").
"""

import json
import re
from dataclasses import dataclass

from app.core.cartan_factors import FactorDescriptor
from app.core.errors import DomainError, ParseError, ShapeError
from app.core.k_invariant import K0Morphism
from app.core.lifting import TROShape

# roman numerals longest first so "III" is not read as "I"
_SUMMAND = re.compile(r'\s*(III|II|IV|I)\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*')
_PAIR = re.compile(r'\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*')


@dataclass(frozen=True)
class FactorExpression:
    summands: tuple

    def __post_init__(self):
        summands = tuple(self.summands)
        if not summands:
            raise DomainError("a factor expression needs at least one summand")
        object.__setattr__(self, "summands", summands)

    def render(self) -> str:
        return "+".join(str(d) for d in self.summands)

    def __str__(self):
        return self.render()


def parse_expression(text: str) -> FactorExpression:
    summands = []
    pos = 0
    while True:
        m = _SUMMAND.match(text, pos)
        if m is None:
            raise ParseError("expected I(n,m), II(n), III(n) or IV(d)", pos)
        kind, first, second = m.group(1), m.group(2), m.group(3)
        params = (int(first),) if second is None else (int(first), int(second))
        try:
            summands.append(FactorDescriptor(kind, params))
        except DomainError as e:
            raise ParseError(str(e), m.start(1)) from e
        pos = m.end()
        if pos == len(text):
            return FactorExpression(tuple(summands))
        if text[pos] != "+":
            raise ParseError(f"expected '+'", pos)
        pos += 1


def parse_tro_shape(text: str) -> TROShape:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError("a TRO shape is written [(n,m),...]", 0)
    inner_start = text.index("[") + 1
    inner = text[inner_start:text.rindex("]")]
    pairs = []
    pos = 0
    while True:
        m = _PAIR.match(inner, pos)
        if m is None:
            raise ParseError(f"expected (n,m)", inner_start + pos)
        pairs.append((int(m.group(1)), int(m.group(2))))
        pos = m.end()
        if pos == len(inner):
            break
        if inner[pos] != ",":
            raise ParseError(f"expected ','", inner_start + pos)
        pos += 1
    try:
        return TROShape(tuple(pairs))
    except ShapeError as e:
        raise ParseError(str(e), 0) from e


def parse_alpha(text: str) -> K0Morphism:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"alpha is not a JSON matrix: {e.msg}", e.pos) from e
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) and r for r in rows):
        raise ParseError("alpha must be a nonempty list of nonempty rows", 0)
    if not all(isinstance(x, int) and not isinstance(x, bool) for r in rows for x in r):
        raise ParseError("alpha entries must be integers", 0)
    try:
        alpha = K0Morphism(tuple(tuple(r) for r in rows))
    except ShapeError as e:
        raise ParseError(str(e), 0) from e
    if not alpha.is_positive():
        raise ParseError("alpha entries must be nonnegative", 0)
    return alpha
