"""Expression grammar for polynomial vector fields.

Components are separated by ``;``.  Within a component: variables
``x0 .. x(n-1)``, integer and rational literals (``3``, ``1/2``), the
operators ``+ - * ^`` with ``^`` a nonnegative integer power, and
parentheses.  The unicode minus sign is accepted.  Whitespace is
insignificant.  Errors report the offending position and what was
expected there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import Poly, RATIONALS


class VectorFieldSyntaxError(ValueError):
    def __init__(self, position: int, message: str) -> None:
        super().__init__(f"position {position}: {message}")
        self.position = position


@dataclass(frozen=True)
class _Token:
    kind: str  # NUM VAR + - * ^ / ( ) ; END
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("NUM", text[i:j], i))
            i = j
            continue
        if ch == "x":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise VectorFieldSyntaxError(i, "expected a variable index after 'x'")
            tokens.append(_Token("VAR", text[i:j], i))
            i = j
            continue
        if ch == "−":  # unicode minus
            ch = "-"
        if ch in "+-*^/();":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise VectorFieldSyntaxError(
            i, f"unexpected character {text[i]!r}; expected a number, variable, or operator"
        )
    tokens.append(_Token("END", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], nvars: int) -> None:
        self.tokens = tokens
        self.k = 0
        self.nvars = nvars

    def peek(self) -> _Token:
        return self.tokens[self.k]

    def take(self) -> _Token:
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise VectorFieldSyntaxError(tok.pos, f"expected {what}, found {found!r}")
        return self.take()

    # expr := ['+'|'-'] term (('+'|'-') term)*
    def expr(self) -> Poly:
        sign = 1
        if self.peek().kind in "+-":
            sign = -1 if self.take().kind == "-" else 1
        acc = self.term() * sign
        while self.peek().kind in "+-":
            op = self.take().kind
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    # term := factor ('*' factor)*
    def term(self) -> Poly:
        acc = self.factor()
        while self.peek().kind == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    # factor := atom ['^' NUM]
    def factor(self) -> Poly:
        base = self.atom()
        if self.peek().kind == "^":
            self.take()
            exp = self.expect("NUM", "a nonnegative integer exponent")
            return base ** int(exp.text)
        return base

    # atom := NUM ['/' NUM] | VAR | '(' expr ')'
    def atom(self) -> Poly:
        tok = self.peek()
        if tok.kind == "NUM":
            self.take()
            value = Fraction(int(tok.text))
            if self.peek().kind == "/":
                self.take()
                denom = self.expect("NUM", "a denominator")
                if int(denom.text) == 0:
                    raise VectorFieldSyntaxError(denom.pos, "zero denominator")
                value = Fraction(int(tok.text), int(denom.text))
            return Poly.scalar(self.nvars, RATIONALS, value)
        if tok.kind == "VAR":
            self.take()
            index = int(tok.text[1:])
            if index >= self.nvars:
                raise VectorFieldSyntaxError(
                    tok.pos, f"variable {tok.text} out of range; dimension is {self.nvars}"
                )
            return Poly.variable(self.nvars, RATIONALS, index)
        if tok.kind == "(":
            self.take()
            inner = self.expr()
            self.expect(")", "a closing parenthesis")
            return inner
        found = tok.text or "end of input"
        raise VectorFieldSyntaxError(
            tok.pos, f"expected a number, variable, or '(' , found {found!r}"
        )


def parse_component(text: str, nvars: int) -> Poly:
    parser = _Parser(_tokenize(text), nvars)
    poly = parser.expr()
    tok = parser.peek()
    if tok.kind != "END":
        raise VectorFieldSyntaxError(tok.pos, f"expected an operator or end of input, found {tok.text!r}")
    return poly


def parse_vector_field(text: str, dimension: int) -> tuple[Poly, ...]:
    """Parse ';'-separated components into polynomials over the rationals."""
    pieces = text.split(";")
    if len(pieces) != dimension:
        raise VectorFieldSyntaxError(
            0, f"expected {dimension} components separated by ';', found {len(pieces)}"
        )
    out = []
    offset = 0
    for piece in pieces:
        try:
            out.append(parse_component(piece, dimension))
        except VectorFieldSyntaxError as exc:
            raise VectorFieldSyntaxError(offset + exc.position, str(exc).split(": ", 1)[1]) from None
        offset += len(piece) + 1
    return tuple(out)


def format_poly(poly: Poly) -> str:
    """Render a rational polynomial in the input grammar."""
    if not poly.terms:
        return "0"
    parts: list[str] = []
    for e in sorted(poly.terms, key=lambda t: (sum(t), tuple(-k for k in t))):
        c = poly.terms[e].scalar_part
        names = [f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k]
        if not names:
            body = str(abs(c))
        elif abs(c) == 1:
            body = "*".join(names)
        else:
            body = "*".join([str(abs(c))] + names)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def format_vector_field(components) -> str:
    return "; ".join(format_poly(c) for c in components)
