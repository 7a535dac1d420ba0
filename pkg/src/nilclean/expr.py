"""Text syntax for ring descriptions.

Grammar::

    spec := prod
    prod := atom { "x" atom }
    atom := "Z" nat | "M" nat "(" spec ")" | "nilquo(" spec ")" | "(" spec ")"
    nat  := nonzero digit { digit }

Products associate to the left and bind looser than the prefix forms, so
``M2(Z2 x Z3)`` is a matrix ring over a product.  Keywords are case
sensitive; whitespace is allowed around ``x`` and parentheses.
"""

from __future__ import annotations

from .errors import InvalidSpec, SpecSyntaxError
from .ring import Matrix, NilQuotient, Product, RingSpec, Zn


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, expected: str = "", at: int | None = None):
        at = self.pos if at is None else at
        # keep the offset inside the input; end-of-input errors point at the last char
        at = max(0, min(at, len(self.text) - 1))
        raise SpecSyntaxError(message, at, expected)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, literal: str):
        self.skip_ws()
        if not self.text.startswith(literal, self.pos):
            found = self.peek() or "end of input"
            self.error(f"expected {literal!r}, found {found!r}", literal)
        self.pos += len(literal)

    def nat(self, what: str) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if not digits:
            self.error(f"expected {what}", "digit")
        if digits == "0":
            raise InvalidSpec(f"{what} must be positive", start)
        if digits[0] == "0":
            self.error(f"leading zero in {what}", "nonzero digit", start)
        return int(digits)

    def spec(self) -> RingSpec:
        node = self.atom()
        while True:
            self.skip_ws()
            if self.peek() != "x":
                return node
            self.pos += 1
            node = Product(node, self.atom())

    def atom(self) -> RingSpec:
        self.skip_ws()
        if self.text.startswith("nilquo", self.pos):
            self.pos += len("nilquo")
            self.expect("(")
            inner = self.spec()
            self.expect(")")
            return NilQuotient(inner)
        c = self.peek()
        if c == "Z":
            self.pos += 1
            return Zn(self.nat("modulus"))
        if c == "M":
            self.pos += 1
            k = self.nat("matrix size")
            self.expect("(")
            inner = self.spec()
            self.expect(")")
            return Matrix(k, inner)
        if c == "(":
            self.pos += 1
            inner = self.spec()
            self.expect(")")
            return inner
        self.error(f"unexpected {c or 'end of input'!r}", "'Z', 'M', 'nilquo(' or '('")


def parse_spec(text: str) -> RingSpec:
    """Parse ring-description text.

    Raises :class:`SpecSyntaxError` or :class:`InvalidSpec`, both carrying
    the byte offset of the problem.
    """
    p = _Parser(text)
    spec = p.spec()
    p.skip_ws()
    if p.pos != len(text):
        p.error(f"trailing input {text[p.pos:]!r}", "end of input")
    return spec


def format_spec(spec: RingSpec) -> str:
    """Canonical text for ``spec``; ``parse_spec`` inverts it exactly."""
    if isinstance(spec, Zn):
        return f"Z{spec.n}"
    if isinstance(spec, Matrix):
        return f"M{spec.k}({format_spec(spec.base)})"
    if isinstance(spec, NilQuotient):
        return f"nilquo({format_spec(spec.base)})"
    if isinstance(spec, Product):
        right = format_spec(spec.right)
        if isinstance(spec.right, Product):
            right = f"({right})"
        return f"{format_spec(spec.left)} x {right}"
    raise TypeError(f"not a ring description: {spec!r}")


# spec-facing names
parse = parse_spec
format = format_spec  # noqa: A001
